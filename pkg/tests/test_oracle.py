import random
from collections import Counter

import networkx as nx
import pytest

from wienerint import canonical_code, enumerate_trees, exact_interval, exact_spectrum, wiener
from wienerint.errors import TooLarge, TooSmall
from wienerint.oracle import (
    format_spectrum,
    iter_free_trees,
    iter_free_trees_slow,
    random_labeled_tree,
)

# unlabeled trees on 2..16 vertices
FREE_TREE_COUNTS = [1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320]


@pytest.mark.parametrize("n,count", list(enumerate(FREE_TREE_COUNTS, start=2)))
def test_free_tree_counts(n, count):
    assert enumerate_trees(n) == count


def test_enumeration_guards():
    with pytest.raises(TooSmall):
        enumerate_trees(1)
    with pytest.raises(TooLarge):
        enumerate_trees(23)
    # the guard is an argument, not a constant
    assert enumerate_trees(8, max_n=8) == 23
    with pytest.raises(TooLarge):
        enumerate_trees(8, max_n=7)


def test_trees_are_valid_and_distinct():
    codes = set()
    for tree in iter_free_trees(9):
        assert tree.n == 9
        codes.add(canonical_code(tree))
    assert len(codes) == 47


@pytest.mark.parametrize("n", range(2, 13))
def test_fast_and_slow_enumerators_agree(n):
    fast = Counter(wiener(t) for t in iter_free_trees(n))
    slow = Counter(wiener(t) for t in iter_free_trees_slow(n))
    assert fast == slow


@pytest.mark.parametrize("n", range(2, 11))
def test_counts_match_networkx(n):
    ours = sum(1 for _ in iter_free_trees(n))
    theirs = sum(1 for _ in nx.nonisomorphic_trees(n))
    assert ours == theirs


def test_exact_spectrum_fixtures():
    assert exact_spectrum(3).values == (4,)
    assert exact_spectrum(4).values == (9, 10)
    assert exact_spectrum(5).values == (16, 18, 20)
    s = exact_spectrum(10)
    assert s.min_value == 81 and s.max_value == 165
    assert s.tree_count == 106


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13])
def test_odd_spectra_are_even(n):
    assert all(w % 2 == 0 for w in exact_spectrum(n).values)


def test_exact_interval():
    r5 = exact_interval(5)
    assert (r5.measured_lo, r5.measured_hi, r5.run_length) == (16, 20, 3)
    assert r5.parity_step == 2
    r4 = exact_interval(4)
    assert (r4.measured_lo, r4.measured_hi, r4.run_length) == (9, 10, 2)
    assert r4.parity_step == 1


def test_spectrum_dump_format():
    text = format_spectrum(exact_spectrum(5))
    lines = text.splitlines()
    assert lines[0] == "# n 5 count 3 min 16 max 20 trees 3"
    assert lines[1:] == ["16", "18", "20"]


def test_random_labeled_tree_is_deterministic():
    a = random_labeled_tree(12, random.Random(99))
    b = random_labeled_tree(12, random.Random(99))
    assert a == b
    assert a.n == 12
