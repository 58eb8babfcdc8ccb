"""Property suite: guards, determinism, merging, and counterexample capture."""

import dataclasses

import pytest

import lambdapoly.verify as verify
from lambdapoly.factor import DEFAULT_CONFIG
from lambdapoly.verify import (
    FAIL,
    PASS,
    PROPERTY_IDS,
    SKIP,
    SKIP_HYPOTHESIS,
    SKIP_RESOURCE,
    GridSpec,
    PropertyDef,
    check_property,
    check_root_bijection,
    grid_points,
    merge_reports,
    run_suite,
)


def strip_wall_time(report):
    return dataclasses.replace(report, wall_time=0.0)


def test_property_ids_are_stable():
    assert PROPERTY_IDS == (
        "L1.1", "L1.2", "C1.3", "DEF-EQUIV", "L2.2", "R2.3", "L2.4", "L2.5",
        "C2.6", "C2.7", "L2.8", "P2.9", "P2.10", "L2.11", "T2.12", "C2.14",
        "C2.15", "C2.16", "L2.17", "FACTOR-IDENTITY",
    )


def test_check_property_examples():
    assert check_property("T2.12", 3, 2, 5).status == PASS
    assert check_property("L2.4", 7, -3, 9).status == PASS
    outcome = check_property("L2.8", 4, 2, 3)
    assert outcome.status == SKIP
    assert outcome.skip_reason == SKIP_HYPOTHESIS
    # Prime-n guard: T2.12 does not apply at a composite exponent.
    assert check_property("T2.12", 3, 2, 9).skip_reason == SKIP_HYPOTHESIS


def test_check_property_unknown_id():
    with pytest.raises(ValueError):
        check_property("BOGUS", 1, 2, 3)


def test_resource_limited_point_is_skipped():
    outcome = check_property("L2.2", 2**20000, 1, 4097)
    assert outcome.status == SKIP
    assert outcome.skip_reason == SKIP_RESOURCE


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(1, 0, 0, 1, (3,))
    with pytest.raises(ValueError):
        GridSpec(0, 1, 1, 0, (3,))
    with pytest.raises(ValueError):
        GridSpec(0, 1, 0, 1, ())
    with pytest.raises(ValueError):
        GridSpec(0, 1, 0, 1, (4,))


def test_grid_points_row_major_order():
    grid = GridSpec(-1, 0, 0, 1, (3, 5))
    assert list(grid_points(grid)) == [
        (0, -1, 0, 3),
        (1, -1, 1, 3),
        (2, 0, 1, 3),
        (3, -1, 0, 5),
        (4, -1, 1, 5),
        (5, 0, 1, 5),
    ]


def test_grid_points_filters():
    grid = GridSpec(0, 2, 0, 2, (3,), coprime_only=True)
    pts = [(a, b) for _, a, b, _ in grid_points(grid)]
    assert pts == [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)]
    full = GridSpec(0, 1, 0, 1, (3,), exclude_zero_pair=False)
    assert [(a, b) for _, a, b, _ in grid_points(full)] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_small_grid_has_zero_failures():
    grid = GridSpec(-6, 6, -6, 6, (3, 5))
    report = run_suite(grid)
    assert report.failures == 0
    assert report.points == 13 * 13 * 2 - 2
    for pid in PROPERTY_IDS:
        st = report.stats[pid]
        assert st.checked == st.passed + st.failed
        assert st.checked + st.skipped == report.points
        assert st.counterexamples == []


def test_empty_property_list():
    report = run_suite(GridSpec(-2, 2, -2, 2, (3,)), properties=[])
    assert report.stats == {}
    assert report.failures == 0


def test_unknown_property_rejected():
    with pytest.raises(ValueError):
        run_suite(GridSpec(0, 1, 0, 1, (3,)), properties=["NOPE"])


def test_zero_pair_point():
    grid = GridSpec(0, 0, 0, 0, (3,), exclude_zero_pair=False)
    report = run_suite(grid, properties=["L2.2", "R2.3", "L2.4"])
    assert report.points == 1
    assert report.stats["L2.2"].passed == 1
    assert report.stats["R2.3"].skipped == 1
    assert report.stats["R2.3"].checked == 0
    assert report.stats["L2.4"].passed == 1


def test_runs_are_deterministic():
    grid = GridSpec(-4, 4, -4, 4, (3, 5), coprime_only=True)
    r1 = run_suite(grid, seed=9)
    r2 = run_suite(grid, seed=9)
    assert strip_wall_time(r1) == strip_wall_time(r2)


def test_partition_merge_matches_single_run():
    grid = GridSpec(-5, 5, -5, 5, (3, 5))
    whole = run_suite(grid, seed=2)
    total = whole.points
    cut1, cut2 = total // 3, 2 * total // 3
    parts = [
        run_suite(grid, seed=2, point_range=(0, cut1)),
        run_suite(grid, seed=2, point_range=(cut1, cut2)),
        run_suite(grid, seed=2, point_range=(cut2, total)),
    ]
    merged = merge_reports(parts)
    assert strip_wall_time(merged) == strip_wall_time(whole)
    # Merge order does not matter.
    reordered = merge_reports([parts[2], parts[0], parts[1]])
    assert strip_wall_time(reordered) == strip_wall_time(whole)


def test_merge_rejects_mismatched_fragments():
    grid = GridSpec(-2, 2, -2, 2, (3,))
    with pytest.raises(ValueError):
        merge_reports([])
    with pytest.raises(ValueError):
        merge_reports([run_suite(grid, seed=1), run_suite(grid, seed=2)])


def test_counterexamples_capped_and_ordered(monkeypatch):
    def always_fails(ctx):
        return verify._fail(f"witness ({ctx.a}, {ctx.b})")

    monkeypatch.setitem(
        verify.PROPERTIES, "FAKE", PropertyDef("FAKE", "always fails", always_fails)
    )
    grid = GridSpec(0, 4, 0, 4, (3,))
    report = run_suite(grid, properties=["FAKE"], counterexample_cap=3)
    st = report.stats["FAKE"]
    assert st.failed == report.points
    assert st.checked == report.points
    assert len(st.counterexamples) == 3
    assert [c.ordinal for c in st.counterexamples] == [0, 1, 2]
    assert st.counterexamples[0].detail == "witness (0, 1)"

    # Partitioned runs merge to the identical capped, ordered list.
    parts = [
        run_suite(grid, properties=["FAKE"], counterexample_cap=3,
                  point_range=(0, 10)),
        run_suite(grid, properties=["FAKE"], counterexample_cap=3,
                  point_range=(10, report.points)),
    ]
    merged = merge_reports([parts[1], parts[0]])
    assert merged.stats["FAKE"].counterexamples == st.counterexamples
    assert merged.stats["FAKE"].failed == st.failed


def test_factorization_shared_between_properties(monkeypatch):
    # T2.12 and C2.14 both need the factorization; the point context must
    # compute it once.
    calls = []
    original = verify.factor_lambda

    def counting(inp, config=DEFAULT_CONFIG):
        calls.append(inp)
        return original(inp, config)

    monkeypatch.setattr(verify, "factor_lambda", counting)
    ctx = verify.PointContext(3, 2, 5, DEFAULT_CONFIG)
    assert verify.PROPERTIES["T2.12"].fn(ctx).status == PASS
    assert verify.PROPERTIES["C2.14"].fn(ctx).status == PASS
    assert len(calls) == 1


def test_incomplete_factorization_becomes_skip():
    config = dataclasses.replace(DEFAULT_CONFIG, trial_bound=29, rho_budget=0)
    outcome = check_property("T2.12", 2, 1, 29, config)
    assert outcome.status == SKIP
    assert outcome.skip_reason == verify.SKIP_INCOMPLETE


def test_root_bijection_check():
    small = check_root_bijection(7, 5)
    assert small.passed
    assert small.cases > 0
    wide = check_root_bijection(50, 10)
    assert wide.passed
    assert wide.failures == []
    with pytest.raises(ValueError):
        check_root_bijection(1, 5)
    with pytest.raises(ValueError):
        check_root_bijection(7, 1)
