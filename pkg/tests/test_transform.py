import random

import pytest

from wienerint import (
    CaterpillarSpec,
    Family,
    ToppleWindow,
    apply_move,
    build_tree,
    construct,
    eligible,
    max_steps,
    progression,
    schedule,
    wiener,
)
from wienerint.errors import Ineligible, InvalidSpec, NotCaterpillar, TooManySteps
from wienerint.transform import leaf_profile, window_for

# path 0-1-2-3-4 with two leaves on the middle vertex
SEVEN = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (2, 6)]


def test_single_move_worked_example():
    before = build_tree(7, SEVEN)
    assert wiener(before) == 44
    after = apply_move(before, 2)
    assert wiener(after) == 48
    # smallest leaf goes to the smaller-labeled neighbor
    assert after.edges == ((0, 1), (1, 2), (1, 5), (2, 3), (3, 4), (3, 6))


def test_move_rejects_ineligible_vertices():
    tree = build_tree(7, SEVEN)
    with pytest.raises(Ineligible):
        apply_move(tree, 1)  # no leaf neighbors
    with pytest.raises(Ineligible):
        apply_move(tree, 0)  # a leaf itself
    with pytest.raises(Ineligible):
        apply_move(tree, 9)
    star_ish = build_tree(4, [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(Ineligible):
        apply_move(star_ish, 0)  # three leaf neighbors but no path either side


def test_eligible_order_and_window_clipping():
    wide = build_tree(
        13,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6),
         (3, 7), (3, 8), (2, 9), (2, 10), (4, 11), (4, 12)],
    )
    assert eligible(wide, ToppleWindow(center=3, halfwidth=1)) == [3]
    assert eligible(wide, ToppleWindow(center=3, halfwidth=2)) == [3, 2, 4]
    # halfwidth clips donors, not receivers: nothing new appears beyond
    assert eligible(wide, ToppleWindow(center=3, halfwidth=5)) == [3, 2, 4]
    assert eligible(wide, ToppleWindow(center=3, halfwidth=0)) == []
    with pytest.raises(NotCaterpillar):
        eligible(wide, ToppleWindow(center=0, halfwidth=2))


def test_window_for_spec():
    spec = CaterpillarSpec(Family.G1, 30, 7, 1, 2)
    window = window_for(spec)
    assert window.center == spec.seed_label
    assert window.halfwidth == spec.k_usable


def test_leaf_profile():
    profile = leaf_profile(build_tree(7, SEVEN))
    assert profile.path == (1, 2, 3)
    assert profile.counts == (1, 2, 1)


@pytest.mark.parametrize("spec", [
    CaterpillarSpec(Family.G1, 30, 7, 1, 0),
    CaterpillarSpec(Family.G2, 24, 5, 2, -1),
    CaterpillarSpec(Family.G3, 25, 6, 1, 1),
    CaterpillarSpec(Family.G4, 21, 4, 1, 0),
])
def test_max_steps_is_square_and_order_free(spec):
    k = spec.k_usable
    count = max_steps(spec)
    assert count == k * k
    for seed in range(5):
        assert max_steps(spec, random.Random(seed)) == count


def test_schedule_walks_the_progression():
    spec = CaterpillarSpec(Family.G1, 30, 8, 2, -1)
    base = wiener(construct(spec))
    cap = max_steps(spec)
    assert cap == spec.k_usable ** 2
    for t in (0, 1, cap // 2, cap):
        assert wiener(schedule(spec, t)) == base + 4 * t
    with pytest.raises(TooManySteps):
        schedule(spec, cap + 1)
    with pytest.raises(InvalidSpec):
        schedule(spec, -1)


def test_schedule_preserves_vertex_count_and_shape():
    spec = CaterpillarSpec(Family.G2, 26, 5, 1, 1)
    tree = schedule(spec, max_steps(spec))
    assert tree.n == spec.n
    leaf_profile(tree)  # still a caterpillar


def test_random_tree_level_schedules_agree_with_chip_count():
    spec = CaterpillarSpec(Family.G1, 32, 8, 1, 0)
    window = window_for(spec)
    expected = max_steps(spec)
    base = wiener(construct(spec))
    for seed in range(4):
        rng = random.Random(seed)
        tree = construct(spec)
        steps = 0
        while True:
            ready = eligible(tree, window)
            if not ready:
                break
            tree = apply_move(tree, rng.choice(ready))
            steps += 1
        assert steps == expected
        assert wiener(tree) == base + 4 * expected


def test_progression_bundles_base_and_count():
    spec = CaterpillarSpec(Family.G4, 21, 4, 1, 0)
    prog = progression(spec)
    assert prog.base_w == wiener(construct(spec))
    assert prog.step == 4
    assert prog.count == max_steps(spec)
    assert prog.top_w == prog.base_w + 4 * prog.count
    assert prog.covers(prog.base_w) and prog.covers(prog.top_w)
    assert not prog.covers(prog.base_w + 2)
    assert prog.t_for(prog.base_w + 4) == 1
    with pytest.raises(ValueError):
        prog.t_for(prog.base_w + 2)


def test_base_families_admit_no_moves():
    spec = CaterpillarSpec(Family.B1, 18, 4, 1)
    assert max_steps(spec) == 0
    assert progression(spec).count == 0
