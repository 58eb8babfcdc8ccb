"""Arbitrary-precision evaluation, factorization, and verification of the
lambda polynomial: the cofactor of a + b in a^n + b^n for odd n.

The polynomial admits two equivalent forms, an alternating power sum and an
exact quotient; its prime factors obey a congruence law that powers both a
restricted factorization wheel and a residue audit.  A property suite
re-checks every supporting claim over integer grids.
"""

from lambdapoly.core import (
    DEFAULT_MAX_BITS,
    MAX_EXPONENT,
    LambdaInput,
    check_odd_exponent,
    evaluate,
    lambda_quotient,
    lambda_sum,
)
from lambdapoly.errors import CompositeExponentError, IntegrityError, ResourceLimitError
from lambdapoly.factor import (
    DEFAULT_CONFIG,
    AnnotatedFactor,
    DivisibilityScreen,
    FactorConfig,
    FactorizationResult,
    audit_congruences,
    classify_residue,
    divisibility_screen,
    factor_lambda,
    wheel_candidates,
    wheel_factor_pass,
)
from lambdapoly.modular import (
    DEFAULT_POLICY,
    PrimalityPolicy,
    is_probable_prime,
    mod_inverse,
    mod_pow,
    mth_root_mod_p,
    primes_up_to,
)
from lambdapoly.verify import (
    PROPERTY_IDS,
    GridSpec,
    PropertyOutcome,
    PropertyReport,
    check_property,
    check_root_bijection,
    merge_reports,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotatedFactor",
    "CompositeExponentError",
    "DEFAULT_CONFIG",
    "DEFAULT_MAX_BITS",
    "DEFAULT_POLICY",
    "DivisibilityScreen",
    "FactorConfig",
    "FactorizationResult",
    "GridSpec",
    "IntegrityError",
    "LambdaInput",
    "MAX_EXPONENT",
    "PROPERTY_IDS",
    "PrimalityPolicy",
    "PropertyOutcome",
    "PropertyReport",
    "ResourceLimitError",
    "audit_congruences",
    "check_odd_exponent",
    "check_property",
    "check_root_bijection",
    "classify_residue",
    "divisibility_screen",
    "evaluate",
    "factor_lambda",
    "is_probable_prime",
    "lambda_quotient",
    "lambda_sum",
    "merge_reports",
    "mod_inverse",
    "mod_pow",
    "mth_root_mod_p",
    "primes_up_to",
    "run_suite",
    "wheel_candidates",
    "wheel_factor_pass",
    "__version__",
]
