import pytest

from wienerint import (
    CaterpillarSpec,
    Family,
    bounds,
    build_index,
    construct,
    measured_interval,
    path_wiener,
    solve,
    star_wiener,
    wiener,
)
from wienerint.errors import NotCovered, OutOfRange, ParityViolation, TooSmall
from wienerint.reports import longest_parity_run
from wienerint.spectrum import _ceil_half_plus_root, _floor_half_minus_root


def test_exact_root_arithmetic():
    # perfect squares and both rounding directions
    assert _floor_half_minus_root(16, 36) == 5
    assert _floor_half_minus_root(22, 52) == 7
    assert _ceil_half_plus_root(36, 4) == 5
    assert _ceil_half_plus_root(52, 6) == 7


def test_bounds_even_fixtures():
    b30 = bounds(30)
    assert (b30.d1_min, b30.d1_max, b30.d2_min, b30.d2_max) == (7, 7, 7, 7)
    assert b30.x2_max == 1
    b100 = bounds(100)
    assert (b100.d1_min, b100.d1_max) == (24, 39)
    assert (b100.d2_min, b100.d2_max) == (10, 24)
    assert b100.x2_max == 30
    assert b100.d3_max is None


def test_bounds_odd_fixtures():
    b21 = bounds(21)
    assert (b21.d3_max, b21.d4_min, b21.x4_max) == (5, 5, 1)
    b31 = bounds(31)
    assert (b31.d3_max, b31.d4_min, b31.x4_max) == (9, 6, 4)
    assert b31.d1_min is None


def test_bounds_guards():
    with pytest.raises(TooSmall):
        bounds(18)
    with pytest.raises(TooSmall):
        bounds(17)
    bounds(20)
    bounds(19)


def test_longest_parity_run_synthetic():
    values = {10, 14, 11, 12, 13, 15, 20}
    assert longest_parity_run(values.__contains__, 10, 20, 1) == (10, 15)
    evens = {16, 18, 20, 26}
    assert longest_parity_run(evens.__contains__, 16, 26, 2) == (16, 20)


def test_build_index_structure():
    idx = build_index(30)
    assert idx.parity_step == 1
    assert idx.lo == star_wiener(30) and idx.hi == path_wiener(30)
    assert len(idx.progressions) == 144
    assert idx.indexed_count == 675
    assert all(
        idx.progressions[i].base_w <= idx.progressions[i + 1].base_w
        for i in range(len(idx.progressions) - 1)
    )
    # spot-check witness soundness on a few progressions
    for prog in idx.progressions[::40]:
        assert wiener(construct(prog.witness)) == prog.base_w
        assert idx.contains(prog.base_w) and idx.contains(prog.top_w)


def test_build_index_guards():
    with pytest.raises(TooSmall):
        build_index(18)
    with pytest.raises(TooSmall):
        build_index(17)
    assert build_index(19).parity_step == 2


def test_odd_index_holds_only_even_values():
    idx = build_index(31)
    assert all(not idx.contains(w) for w in range(idx.lo + 1, idx.hi, 2))


def test_measured_interval_n30():
    report = measured_interval(build_index(30))
    assert report.parity_step == 1
    assert (report.measured_lo, report.measured_hi) == (2546, 2689)
    assert report.run_length == 144
    assert report.claimed_lo == wiener(construct(CaterpillarSpec(Family.G2, 30, 7, 1, -1)))
    assert report.claimed_hi == wiener(construct(CaterpillarSpec(Family.G1, 30, 7, 1, 1)))
    assert (report.claimed_lo, report.claimed_hi) == (2573, 2623)
    assert report.gaps == ()
    assert report.measured_lo <= report.claimed_lo <= report.claimed_hi <= report.measured_hi


def test_measured_interval_n31():
    report = measured_interval(build_index(31))
    assert report.parity_step == 2
    assert report.claimed_lo == wiener(construct(CaterpillarSpec(Family.G4, 31, 6, 4, 0)))
    assert report.claimed_hi == wiener(construct(CaterpillarSpec(Family.G3, 31, 9, 1, 1)))
    assert report.gaps == ()
    assert report.measured_lo % 2 == 0 and report.measured_hi % 2 == 0


def test_report_serialization_field_order():
    report = measured_interval(build_index(30))
    assert list(report.to_json_dict()) == [
        "n",
        "parity_step",
        "measured_lo",
        "measured_hi",
        "claimed_lo",
        "claimed_hi",
        "run_length",
        "gaps",
        "progression_count",
    ]


def test_solve_specials_and_errors():
    tree, witness = solve(10, 165)
    assert wiener(tree) == 165 and witness.family == "path"
    tree, witness = solve(10, 81)
    assert wiener(tree) == 81 and witness.family == "star"
    with pytest.raises(ParityViolation):
        solve(31, 1001)
    with pytest.raises(OutOfRange):
        solve(10, 80)
    with pytest.raises(OutOfRange):
        solve(10, 166)
    with pytest.raises(TooSmall):
        solve(1, 0)


def test_solve_small_n_uses_exhaustive_catalogue():
    tree, witness = solve(5, 18)
    assert wiener(tree) == 18 and witness.family == "catalog"
    with pytest.raises(NotCovered):
        solve(7, 38)  # in range with the right parity, but unreachable


def test_solve_mid_gap_ns_are_not_covered():
    with pytest.raises(NotCovered):
        solve(17, 500)
    with pytest.raises(NotCovered):
        solve(18, 600)


def test_solve_indexed_round_trip_and_determinism():
    report = measured_interval(build_index(30))
    w = report.measured_lo
    tree, witness = solve(30, w)
    assert tree.n == 30 and wiener(tree) == w
    again, witness2 = solve(30, w)
    assert again == tree and witness2 == witness
    # witness replays through the public construction path
    spec = CaterpillarSpec(Family[witness.family], witness.n, witness.d, witness.x, witness.s)
    assert wiener(construct(spec)) + 4 * witness.t == w


def test_solve_not_covered_inside_range():
    idx = build_index(30)
    w = next(v for v in range(idx.lo + 1, idx.hi) if not idx.contains(v))
    with pytest.raises(NotCovered):
        solve(30, w)
