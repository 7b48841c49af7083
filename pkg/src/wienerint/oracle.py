"""Exhaustive free-tree enumeration: exact ground truth for small n.

The fast path walks canonical level sequences with the successor method
of Wright, Richmond, Odlyzko and McKay, emitting every unlabeled tree
exactly once in constant amortized time.  Because the whole package
leans on this module as its referee, the enumerator has a referee of
its own: a naive generator that grows trees one leaf at a time and
deduplicates by canonical code.  The two must agree tree for tree.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import TooLarge, TooSmall
from .reports import IntervalReport, longest_parity_run
from .tree_core import (
    Tree,
    build_tree,
    canonical_code,
    path_wiener,
    star_wiener,
    wiener,
)

__all__ = [
    "ExactSpectrum",
    "enumerate_trees",
    "iter_free_trees",
    "iter_free_trees_slow",
    "exact_spectrum",
    "exact_interval",
    "random_labeled_tree",
    "format_spectrum",
    "HARD_CAP",
    "SLOW_CAP",
]

# Around n = 22 there are ~2 million free trees; beyond that the sweep
# leaves desk scale.  The slow cross-checking generator holds a full
# level in memory, so it gets a much lower cap.
HARD_CAP = 22
SLOW_CAP = 14


# -- fast path: canonical level sequences ------------------------------------
#
# A rooted tree on n vertices is written as its preorder level sequence
# (root depth 0).  The Beyer-Hedetniemi successor rewinds the last
# vertex deeper than level 1 and re-copies the pattern; a level
# sequence stands for a free tree when the root's first subtree is the
# (weakly) smaller half under the height/size/lex order, which is
# exactly the WROM canonicity test.

def _successor(levels: list[int], p: int | None = None) -> list[int] | None:
    if p is None:
        p = len(levels) - 1
        while levels[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while levels[q] != levels[p] - 1:
        q -= 1
    result = list(levels)
    for i in range(p, len(result)):
        result[i] = result[i - p + q]
    return result


def _split_first_subtree(levels: list[int]) -> tuple[list[int], list[int]]:
    # first subtree of the root, shifted up one level, and the remainder
    cut = len(levels)
    seen_one = False
    for i, level in enumerate(levels):
        if level == 1:
            if seen_one:
                cut = i
                break
            seen_one = True
    left = [levels[i] - 1 for i in range(1, cut)]
    rest = [0] + levels[cut:]
    return left, rest


def _advance_to_free_tree(candidate: list[int]) -> list[int] | None:
    left, rest = _split_first_subtree(candidate)
    left_height = max(left)
    rest_height = max(rest)
    valid = rest_height >= left_height
    if valid and rest_height == left_height:
        if len(left) > len(rest):
            valid = False
        elif len(left) == len(rest) and left > rest:
            valid = False
    if valid:
        return candidate
    skipped = _successor(candidate, p=len(left))
    if skipped is not None and candidate[len(left)] > 2:
        new_left, _ = _split_first_subtree(skipped)
        tail = list(range(1, max(new_left) + 2))
        skipped[-len(tail):] = tail
    return skipped


def _levels_to_parents(levels: list[int]) -> list[int]:
    # parent of vertex i is the nearest previous vertex one level up
    parents = [-1] * len(levels)
    stack: list[int] = []
    for i, level in enumerate(levels):
        while stack and levels[stack[-1]] >= level:
            stack.pop()
        if stack:
            parents[i] = stack[-1]
        stack.append(i)
    return parents


def _iter_level_sequences(n: int) -> Iterator[list[int]]:
    levels: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while levels is not None:
        levels = _advance_to_free_tree(levels)
        if levels is None:
            return
        yield levels
        levels = _successor(levels)


def iter_free_trees(n: int, max_n: int = HARD_CAP) -> Iterator[Tree]:
    """Every unlabeled tree on n vertices exactly once, as a Tree.

    Vertex labels follow preorder from the canonical root.
    """
    if n < 2:
        raise TooSmall(f"enumeration needs n >= 2, got {n}")
    if n > max_n:
        raise TooLarge(f"n = {n} exceeds the enumeration cap {max_n}")
    if n == 2:
        yield build_tree(2, [(0, 1)])
        return
    for levels in _iter_level_sequences(n):
        parents = _levels_to_parents(levels)
        yield build_tree(n, [(parents[i], i) for i in range(1, n)])


def enumerate_trees(n: int, visitor: Callable[[Tree], None] | None = None, max_n: int = HARD_CAP) -> int:
    """Visit every free tree on n vertices once; return how many there were."""
    count = 0
    for tree in iter_free_trees(n, max_n=max_n):
        if visitor is not None:
            visitor(tree)
        count += 1
    return count


# -- slow path: grow and deduplicate -----------------------------------------

def iter_free_trees_slow(n: int, max_n: int = SLOW_CAP) -> Iterator[Tree]:
    """Independent referee enumerator: breadth-first growth with dedup.

    Every tree on k+1 vertices is some tree on k vertices plus one leaf,
    so growing all trees level by level and keeping one representative
    per canonical code enumerates everything.  Quadratic bookkeeping,
    tiny n only.
    """
    if n < 2:
        raise TooSmall(f"enumeration needs n >= 2, got {n}")
    if n > max_n:
        raise TooLarge(f"n = {n} exceeds the slow enumeration cap {max_n}")
    current = {canonical_code(build_tree(2, [(0, 1)])): build_tree(2, [(0, 1)])}
    for size in range(3, n + 1):
        grown: dict[str, Tree] = {}
        for tree in current.values():
            for v in range(tree.n):
                candidate = build_tree(size, list(tree.edges) + [(v, size - 1)])
                grown.setdefault(canonical_code(candidate), candidate)
        current = grown
    yield from current.values()


# -- spectra ------------------------------------------------------------------

@dataclass(frozen=True)
class ExactSpectrum:
    """All Wiener values attained by trees on n vertices."""

    n: int
    values: tuple[int, ...]
    tree_count: int

    @property
    def min_value(self) -> int:
        return self.values[0]

    @property
    def max_value(self) -> int:
        return self.values[-1]


def exact_spectrum(n: int, max_n: int = HARD_CAP) -> ExactSpectrum:
    """Exhaustive Wiener value set, sorted ascending."""
    values: set[int] = set()
    count = 0
    for tree in iter_free_trees(n, max_n=max_n):
        values.add(wiener(tree))
        count += 1
    return ExactSpectrum(n=n, values=tuple(sorted(values)), tree_count=count)


def exact_interval(n: int, max_n: int = HARD_CAP) -> IntervalReport:
    """Largest contiguous run in the exact spectrum.

    Step 1 for even n; step 2 for odd n, where every Wiener value is
    even and contiguity can only mean consecutive even numbers.
    """
    spectrum = exact_spectrum(n, max_n=max_n)
    step = 2 if n % 2 else 1
    members = set(spectrum.values)
    lo, hi = longest_parity_run(members.__contains__, star_wiener(n), path_wiener(n), step)
    return IntervalReport(
        n=n,
        parity_step=step,
        measured_lo=lo,
        measured_hi=hi,
        run_length=(hi - lo) // step + 1,
    )


def format_spectrum(spectrum: ExactSpectrum) -> str:
    """Dump format: summary header, then one value per line, ascending."""
    lines = [
        f"# n {spectrum.n} count {len(spectrum.values)}"
        f" min {spectrum.min_value} max {spectrum.max_value}"
        f" trees {spectrum.tree_count}"
    ]
    lines.extend(str(v) for v in spectrum.values)
    return "\n".join(lines) + "\n"


# -- random labeled trees -----------------------------------------------------

def random_labeled_tree(n: int, rng: random.Random) -> Tree:
    """Uniform random labeled tree via a Pruefer sequence."""
    if n < 2:
        raise TooSmall(f"random tree needs n >= 2, got {n}")
    if n == 2:
        return build_tree(2, [(0, 1)])
    sequence = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in sequence:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in sequence:
        u = heapq.heappop(leaves)
        edges.append((u, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return build_tree(n, edges)
