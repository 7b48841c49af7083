from fractions import Fraction

import pytest

from wienerint import CaterpillarSpec, Family, construct, formula_value, param_domain, wiener
from wienerint.caterpillar import (
    increment_value,
    iter_specs,
    s_offset_table,
    x_step_value,
)
from wienerint.errors import InvalidSpec, ParityMismatch, TooSmall
from wienerint.tree_core import interior_path


def test_family_relationships():
    assert Family.B1.is_base and Family.B2.is_base
    assert Family.G1.base_family is Family.B1
    assert Family.G2.base_family is Family.B2
    assert Family.G3.base_family is Family.B1
    assert Family.G4.base_family is Family.B2
    assert Family.G1.seed_values == (-1, 0, 1, 2)
    assert Family.G3.seed_values == (0, 1)


def test_validation_errors():
    with pytest.raises(TooSmall):
        CaterpillarSpec(Family.B1, 16, 4, 1)
    with pytest.raises(ParityMismatch):
        CaterpillarSpec(Family.B1, 19, 4, 1)
    with pytest.raises(ParityMismatch):
        CaterpillarSpec(Family.G3, 20, 4, 1, 0)
    with pytest.raises(InvalidSpec):
        CaterpillarSpec(Family.B1, 18, 6, 1)  # d above range
    with pytest.raises(InvalidSpec):
        CaterpillarSpec(Family.B1, 18, 4, 2)  # x above range
    with pytest.raises(InvalidSpec):
        CaterpillarSpec(Family.B1, 18, 4, 1, 0)  # base takes no seed
    with pytest.raises(InvalidSpec):
        CaterpillarSpec(Family.G1, 20, 4, 1)  # seed required
    with pytest.raises(InvalidSpec):
        CaterpillarSpec(Family.G1, 20, 4, 1, 3)  # seed outside {-1,0,1,2}
    with pytest.raises(InvalidSpec):
        CaterpillarSpec(Family.G3, 19, 4, 1, 2)  # seed outside {0,1}


def test_param_domain_b1_at_18():
    dom = param_domain(Family.B1, 18)
    assert [(e.d, e.x_max) for e in dom.entries] == [(4, 1), (5, 3)]
    assert all(e.s_values == () for e in dom.entries)


def test_param_domain_g1_at_30_covers_full_ranges():
    dom = param_domain(Family.G1, 30)
    assert [e.d for e in dom.entries] == [7, 8, 9, 10]
    assert [e.x_max for e in dom.entries] == [2, 4, 6, 8]
    assert all(e.s_values == (-1, 0, 1, 2) for e in dom.entries)


def test_iter_specs_order_is_deterministic():
    specs = list(iter_specs(Family.G2, 20))
    assert specs[0] == CaterpillarSpec(Family.G2, 20, 4, 1, -1)
    assert [s.s for s in specs[:4]] == [-1, 0, 1, 2]
    assert specs == list(iter_specs(Family.G2, 20))


@pytest.mark.parametrize(
    "family,n,d,x,s",
    [
        (Family.B1, 18, 4, 1, None),
        (Family.B1, 24, 6, 2, None),
        (Family.B2, 20, 4, 2, None),
        (Family.G1, 30, 8, 3, 2),
        (Family.G2, 28, 6, 1, -1),
        (Family.G3, 21, 5, 1, 1),
        (Family.G4, 19, 4, 2, 0),
    ],
)
def test_construct_shapes(family, n, d, x, s):
    spec = CaterpillarSpec(family, n, d, x, s)
    tree = construct(spec)
    assert tree.n == n
    path = interior_path(tree)  # raises if not a caterpillar
    assert 0 in path or tree.degree(0) == 1
    # path vertices come first in the labeling, leaves afterwards
    assert set(path) <= set(range(2 * d + 1))


def test_construct_is_deterministic():
    spec = CaterpillarSpec(Family.G1, 30, 8, 3, -1)
    assert construct(spec) == construct(spec)


def test_seed_label_and_window_size():
    spec = CaterpillarSpec(Family.G1, 30, 7, 1, 2)
    assert spec.base_n == 28
    assert spec.k_central == 6
    assert spec.k_usable == 4
    assert spec.seed_label == 7 + 2
    base = CaterpillarSpec(Family.B1, 28, 7, 1)
    assert base.k_usable == 0 and base.seed_label is None


def test_formula_fixtures():
    assert formula_value(CaterpillarSpec(Family.B1, 18, 4, 1)) == 1080
    assert wiener(construct(CaterpillarSpec(Family.B1, 18, 4, 1))) == 633
    assert formula_value(CaterpillarSpec(Family.B2, 20, 4, 1)) == 841
    assert wiener(construct(CaterpillarSpec(Family.B2, 20, 4, 1))) == 841
    assert formula_value(CaterpillarSpec(Family.B1, 20, 5, 2)) == Fraction(4393, 3)
    assert wiener(construct(CaterpillarSpec(Family.B1, 20, 5, 2))) == 841


def test_increment_matches_direct_on_samples():
    for spec in iter_specs(Family.G4, 23):
        direct = wiener(construct(spec)) - wiener(construct(spec.base_spec))
        assert increment_value(spec) == direct


def test_x_step_value_shapes():
    assert x_step_value(CaterpillarSpec(Family.G1, 30, 8, 2, 0)) == 2 * 30 - 4 * 2
    assert x_step_value(CaterpillarSpec(Family.G2, 28, 6, 2, 1)) == 4 * 6 + 4 * 2 - 8
    assert x_step_value(CaterpillarSpec(Family.G3, 21, 5, 1, 0)) == 2 * (21 - 2 + 1)
    assert x_step_value(CaterpillarSpec(Family.G4, 19, 4, 2, 0)) == 4 * (2 + 8 - 2)


def test_s_offset_tables():
    assert s_offset_table(Family.G1) == {1: 1, 2: 6, -1: 3}
    assert s_offset_table(Family.G2) == {1: 1, 2: 6, -1: 3}
    assert s_offset_table(Family.G3) == {1: 2}
    assert s_offset_table(Family.G4) == {1: 2}
