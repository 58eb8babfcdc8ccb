"""Command-line front end: eval, factor, root, and verify subcommands.

Output is either human-readable text or exactly one JSON document of the
shape {schema_version, command, status, data}.  Integers that can outgrow
double precision are serialized as decimal strings.  Exit codes: 0 success,
2 usage or argument error, 3 incomplete factorization, 4 property or audit
failure.  Configuration precedence is flags, then LAMBDA_* environment
variables, then built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from lambdapoly.core import LambdaInput, evaluate
from lambdapoly.errors import CompositeExponentError, IntegrityError, ResourceLimitError
from lambdapoly.factor import (
    CLASS_EQUALS_N,
    DEFAULT_CONFIG,
    AnnotatedFactor,
    FactorConfig,
    FactorizationResult,
    audit_congruences,
    factor_lambda,
)
from lambdapoly.modular import is_probable_prime, mth_root_mod_p
from lambdapoly.verify import (
    DEFAULT_COUNTEREXAMPLE_CAP,
    PROPERTIES,
    PROPERTY_IDS,
    GridSpec,
    PropertyReport,
    grid_points,
    merge_reports,
    run_suite,
)

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCOMPLETE = 3
EXIT_FAILED = 4

_STATUS = {
    EXIT_OK: "ok",
    EXIT_USAGE: "argument-error",
    EXIT_INCOMPLETE: "incomplete",
    EXIT_FAILED: "failed",
}

_GROUPING_THRESHOLD = 10**6

_ENV_SEED = "LAMBDA_SEED"
_ENV_TRIAL_BOUND = "LAMBDA_TRIAL_BOUND"
_ENV_RHO_BUDGET = "LAMBDA_RHO_BUDGET"


def parse_int(text: str) -> int:
    """Arbitrary-size integer, decimal or 0x-hex, with optional sign."""
    cleaned = text.strip()
    try:
        body = cleaned.lstrip("+-")
        if body[:2].lower() == "0x":
            return int(cleaned, 16)
        return int(cleaned, 10)
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def fmt_int(value: int) -> str:
    """Digits grouped in blocks of three once the magnitude tops a million."""
    if abs(value) > _GROUPING_THRESHOLD:
        return f"{value:,}"
    return str(value)


@dataclass(frozen=True)
class Settings:
    format: str
    seed: int
    jobs: int
    trial_bound: int
    rho_budget: int
    allow_composite_n: bool

    def factor_config(self, *, require_prime_n: bool | None = None) -> FactorConfig:
        if require_prime_n is None:
            require_prime_n = not self.allow_composite_n
        return FactorConfig(
            trial_bound=self.trial_bound,
            rho_budget=self.rho_budget,
            primality=DEFAULT_CONFIG.primality,
            require_prime_n=require_prime_n,
            seed=self.seed,
        )


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return parse_int(raw)
    except argparse.ArgumentTypeError:
        raise ValueError(f"environment variable {name} is not an integer: {raw!r}") from None


def _resolve_settings(args: argparse.Namespace) -> Settings:
    fmt = args.format or "human"
    seed = args.seed if args.seed is not None else _env_int(_ENV_SEED)
    trial_bound = (
        args.trial_bound if args.trial_bound is not None else _env_int(_ENV_TRIAL_BOUND)
    )
    rho_budget = (
        args.rho_budget if args.rho_budget is not None else _env_int(_ENV_RHO_BUDGET)
    )
    jobs = args.jobs if args.jobs is not None else 1
    if jobs < 1:
        raise ValueError(f"--jobs must be at least 1, got {jobs}")
    if trial_bound is not None and trial_bound < 2:
        raise ValueError(f"--trial-bound must be at least 2, got {trial_bound}")
    if rho_budget is not None and rho_budget < 0:
        raise ValueError(f"--rho-budget must be non-negative, got {rho_budget}")
    return Settings(
        format=fmt,
        seed=seed if seed is not None else 0,
        jobs=jobs,
        trial_bound=trial_bound if trial_bound is not None else DEFAULT_CONFIG.trial_bound,
        rho_budget=rho_budget if rho_budget is not None else DEFAULT_CONFIG.rho_budget,
        allow_composite_n=bool(args.allow_composite_n),
    )


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("common options")
    group.add_argument("--format", choices=("human", "json"), default=None,
                       help="output format (default: human)")
    group.add_argument("--seed", type=parse_int, default=None,
                       help="seed for the randomized factorization stage")
    group.add_argument("--jobs", type=int, default=None,
                       help="worker count for verify (default: 1)")
    group.add_argument("--trial-bound", type=parse_int, default=None,
                       help="largest trial divisor tested")
    group.add_argument("--rho-budget", type=parse_int, default=None,
                       help="iteration budget for the rho stage")
    group.add_argument("--allow-composite-n", action="store_true",
                       help="permit factoring with a composite exponent")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lambdapoly",
        description="Evaluate, factor, and verify the lambda polynomial of a^n + b^n.",
    )
    common = _common_flags()
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common],
                            help="evaluate lambda_n(a,b)")
    p_eval.add_argument("-a", type=parse_int, required=True)
    p_eval.add_argument("-b", type=parse_int, required=True)
    p_eval.add_argument("-n", type=parse_int, required=True)
    p_eval.add_argument("--check", action="store_true",
                        help="cross-check the two defining formulas")

    p_factor = sub.add_parser("factor", parents=[common],
                              help="factor lambda_n(a,b) and audit residues")
    p_factor.add_argument("-a", type=parse_int, required=True)
    p_factor.add_argument("-b", type=parse_int, required=True)
    p_factor.add_argument("-n", type=parse_int, required=True)

    p_root = sub.add_parser("root", parents=[common],
                            help="unique m-th root of c modulo a prime p")
    p_root.add_argument("-c", type=parse_int, required=True)
    p_root.add_argument("-m", type=parse_int, required=True)
    p_root.add_argument("-p", type=parse_int, required=True)

    p_verify = sub.add_parser("verify", parents=[common],
                              help="run the property suite over a grid")
    p_verify.add_argument("--a-min", type=parse_int, default=-10)
    p_verify.add_argument("--a-max", type=parse_int, default=10)
    p_verify.add_argument("--b-min", type=parse_int, default=-10)
    p_verify.add_argument("--b-max", type=parse_int, default=10)
    p_verify.add_argument("--n", dest="n_values", default="3,5,7",
                          help="comma-separated odd exponents (default: 3,5,7)")
    p_verify.add_argument("--properties", default=None,
                          help="comma-separated property ids (default: all)")
    p_verify.add_argument("--coprime-only", action="store_true",
                          help="restrict the grid to coprime (a, b)")
    p_verify.add_argument("--include-zero-pair", action="store_true",
                          help="keep the (0, 0) point in the grid")
    p_verify.add_argument("--counterexample-cap", type=int,
                          default=DEFAULT_COUNTEREXAMPLE_CAP,
                          help="max recorded counterexamples per property")
    p_verify.add_argument("--report-dir", default=None,
                          help="directory for report.csv and report.png")
    return parser


# --------------------------------------------------------------------------
# Serialization helpers
# --------------------------------------------------------------------------


def _factor_json(f: AnnotatedFactor) -> dict:
    return {
        "p": str(f.prime),
        "k": f.multiplicity,
        "residue": f.residue_mod_n,
        "class": f.classification,
        "provenance": f.provenance,
    }


def _factorization_json(result: FactorizationResult) -> dict:
    return {
        "a": str(result.input.a),
        "b": str(result.input.b),
        "n": result.input.n,
        "lambda": str(result.lambda_value),
        "factors": [_factor_json(f) for f in result.factors],
        "fully_factored": result.fully_factored,
        "cofactor": None
        if result.unfactored_cofactor is None
        else str(result.unfactored_cofactor),
    }


def _report_json(report: PropertyReport) -> dict:
    properties = {}
    for pid in report.properties:
        st = report.stats[pid]
        properties[pid] = {
            "checked": st.checked,
            "passed": st.passed,
            "failed": st.failed,
            "skipped": st.skipped,
            "counterexamples": [
                {
                    "ordinal": c.ordinal,
                    "a": str(c.a),
                    "b": str(c.b),
                    "n": c.n,
                    "detail": c.detail,
                }
                for c in st.counterexamples
            ],
        }
    grid = report.grid
    # wall_time is deliberately left out: identical runs must serialize to
    # identical bytes.
    return {
        "grid": {
            "a_min": grid.a_min,
            "a_max": grid.a_max,
            "b_min": grid.b_min,
            "b_max": grid.b_max,
            "n_values": list(grid.n_values),
            "coprime_only": grid.coprime_only,
            "exclude_zero_pair": grid.exclude_zero_pair,
        },
        "seed": report.seed,
        "counterexample_cap": report.counterexample_cap,
        "points": report.points,
        "failures": report.failures,
        "properties": properties,
    }


def _emit(settings: Settings, command: str, code: int, data: dict,
          human_lines: list[str]) -> int:
    if settings.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "status": _STATUS[code],
            "data": data,
        }
        print(json.dumps(doc, indent=2))
    else:
        for line in human_lines:
            print(line)
    return code


# --------------------------------------------------------------------------
# Subcommand handlers
# --------------------------------------------------------------------------


def _cmd_eval(args: argparse.Namespace, settings: Settings) -> tuple[int, dict, list[str]]:
    inp = LambdaInput(args.a, args.b, args.n)
    value = evaluate(inp, check=args.check)
    data = {
        "a": str(inp.a),
        "b": str(inp.b),
        "n": inp.n,
        "value": str(value),
        "checked": bool(args.check),
    }
    return EXIT_OK, data, [fmt_int(value)]


def _factor_note(f: AnnotatedFactor, n: int) -> str:
    if f.classification == CLASS_EQUALS_N:
        return f"{fmt_int(f.prime)} = n"
    return f"{fmt_int(f.prime)} ≡ {f.residue_mod_n} (mod {n})"


def _render_factorization(result: FactorizationResult, audit_line: str) -> str:
    parts = []
    for f in result.factors:
        term = fmt_int(f.prime)
        if f.multiplicity > 1:
            term += f"^{f.multiplicity}"
        parts.append(term)
    if result.unfactored_cofactor is not None:
        parts.append(f"{fmt_int(result.unfactored_cofactor)} (unfactored)")
    if not parts:
        parts.append("1")
    notes = "; ".join(_factor_note(f, result.input.n) for f in result.factors)
    line = f"{fmt_int(result.lambda_value)} = " + " · ".join(parts)
    if notes:
        line += f" [{notes}]"
    return line + f" audit: {audit_line}"


def _cmd_factor(args: argparse.Namespace, settings: Settings) -> tuple[int, dict, list[str]]:
    inp = LambdaInput(args.a, args.b, args.n)
    config = settings.factor_config()
    try:
        result = factor_lambda(inp, config)
    except CompositeExponentError:
        raise ValueError(
            f"exponent {inp.n} is composite; pass --allow-composite-n to factor anyway"
        ) from None

    violations: list[AnnotatedFactor] = []
    if not result.fully_factored:
        code = EXIT_INCOMPLETE
        audit = {"performed": False, "ok": None, "violations": []}
        audit_line = "SKIPPED (incomplete factorization)"
    elif settings.allow_composite_n and not is_probable_prime(inp.n):
        code = EXIT_OK
        audit = {"performed": False, "ok": None, "violations": []}
        audit_line = "SKIPPED (composite exponent)"
    else:
        violations = audit_congruences(result)
        if violations:
            code = EXIT_FAILED
            audit_line = "ANOMALOUS (" + ", ".join(fmt_int(v.prime) for v in violations) + ")"
        else:
            code = EXIT_OK
            audit_line = "OK"
        audit = {
            "performed": True,
            "ok": not violations,
            "violations": [_factor_json(v) for v in violations],
        }

    data = _factorization_json(result)
    data["audit"] = audit
    return code, data, [_render_factorization(result, audit_line)]


def _cmd_root(args: argparse.Namespace, settings: Settings) -> tuple[int, dict, list[str]]:
    root = mth_root_mod_p(args.c, args.m, args.p, check_prime=True)
    data = {
        "c": str(args.c),
        "m": str(args.m),
        "p": str(args.p),
        "root": str(root),
    }
    return EXIT_OK, data, [fmt_int(root)]


def _parse_n_values(raw: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part.strip(), 0) for part in raw.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"--n expects comma-separated integers, got {raw!r}") from None
    if not values:
        raise ValueError("--n expects at least one exponent")
    return values


def _parse_properties(raw: str | None) -> tuple[str, ...] | None:
    if raw is None:
        return None
    ids = tuple(part.strip() for part in raw.split(",") if part.strip())
    for pid in ids:
        if pid not in PROPERTY_IDS:
            raise ValueError(f"unknown property id {pid!r}")
    if not ids:
        raise ValueError("--properties expects at least one id")
    return ids


def _verify_worker(payload) -> PropertyReport:
    grid, properties, config, seed, cap, point_range = payload
    return run_suite(
        grid,
        properties,
        config,
        seed,
        counterexample_cap=cap,
        point_range=point_range,
    )


def _chunk_ranges(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total))
    base, extra = divmod(total, jobs)
    ranges = []
    start = 0
    for i in range(jobs):
        size = base + (1 if i < extra else 0)
        ranges.append((start, start + size))
        start += size
    return ranges


def _run_verify(grid: GridSpec, properties: tuple[str, ...] | None,
                settings: Settings, cap: int) -> PropertyReport:
    config = settings.factor_config(require_prime_n=True)
    if settings.jobs <= 1:
        return run_suite(grid, properties, config, settings.seed,
                         counterexample_cap=cap)
    total = sum(1 for _ in grid_points(grid))
    ranges = _chunk_ranges(total, settings.jobs)
    if len(ranges) <= 1:
        return run_suite(grid, properties, config, settings.seed,
                         counterexample_cap=cap)
    payloads = [
        (grid, properties, config, settings.seed, cap, r) for r in ranges
    ]
    with ProcessPoolExecutor(max_workers=len(ranges)) as pool:
        fragments = list(pool.map(_verify_worker, payloads))
    return merge_reports(fragments)


def _render_report(report: PropertyReport) -> list[str]:
    lines = [
        f"verified {len(report.properties)} properties over {report.points} "
        f"grid points in {report.wall_time:.2f}s"
    ]
    header = f"{'property':<16} {'checked':>8} {'passed':>8} {'failed':>8} {'skipped':>8}  claim"
    lines.append(header)
    for pid in report.properties:
        st = report.stats[pid]
        claim = PROPERTIES[pid].claim
        lines.append(
            f"{pid:<16} {st.checked:>8} {st.passed:>8} {st.failed:>8} "
            f"{st.skipped:>8}  {claim}"
        )
    for pid in report.properties:
        st = report.stats[pid]
        if st.counterexamples:
            c = st.counterexamples[0]
            lines.append(
                f"first counterexample for {pid}: "
                f"a={c.a}, b={c.b}, n={c.n}: {c.detail}"
            )
    verdict = "zero failures" if report.failures == 0 else f"{report.failures} FAILURES"
    lines.append(f"result: {verdict}")
    return lines


def _cmd_verify(args: argparse.Namespace, settings: Settings) -> tuple[int, dict, list[str]]:
    n_values = _parse_n_values(args.n_values)
    properties = _parse_properties(args.properties)
    if args.counterexample_cap < 0:
        raise ValueError("--counterexample-cap must be non-negative")
    grid = GridSpec(
        a_min=args.a_min,
        a_max=args.a_max,
        b_min=args.b_min,
        b_max=args.b_max,
        n_values=n_values,
        coprime_only=args.coprime_only,
        exclude_zero_pair=not args.include_zero_pair,
    )
    report = _run_verify(grid, properties, settings, args.counterexample_cap)
    data = _report_json(report)
    lines = _render_report(report)
    if args.report_dir is not None:
        from lambdapoly.report import write_report_files

        csv_path, figure_path = write_report_files(report, args.report_dir)
        data["report_files"] = {"csv": str(csv_path), "figure": str(figure_path)}
        lines.append(f"report written to {csv_path} and {figure_path}")
    code = EXIT_OK if report.failures == 0 else EXIT_FAILED
    return code, data, lines


_HANDLERS = {
    "eval": _cmd_eval,
    "factor": _cmd_factor,
    "root": _cmd_root,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        settings = _resolve_settings(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    handler = _HANDLERS[args.command]
    try:
        code, data, lines = handler(args, settings)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _emit(settings, args.command, EXIT_USAGE, {"error": str(exc)}, [])
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _emit(settings, args.command, EXIT_USAGE, {"error": str(exc)}, [])
    except IntegrityError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return _emit(settings, args.command, EXIT_FAILED, {"error": str(exc)}, [])
    return _emit(settings, args.command, code, data, lines)


if __name__ == "__main__":
    sys.exit(main())
