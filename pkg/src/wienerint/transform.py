"""The +4 leaf relocation move and its repeated scheduling.

One move takes a path vertex carrying at least two leaves, detaches two
of them and reattaches one to each path neighbor.  Moving exactly two
leaves one step apart raises the Wiener index by exactly 4 regardless
of everything else in the tree, so repeating the move walks an
arithmetic progression of step 4.

Bookkeeping is chip-firing: write down how many leaves hang off each
interior-path vertex, and a move topples a pile of two or more.  The
final configuration and the total number of moves are independent of
the order in which eligible vertices fire, which is what makes the
canonical schedule below merely a convention, not a requirement.  A
window seeded with a double leaf and single leaves on the k - 1 ring
positions either side admits exactly k * k moves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .caterpillar import CaterpillarSpec
from .caterpillar import construct as _construct
from .errors import Ineligible, InternalInvariant, InvalidSpec, NotCaterpillar, TooManySteps
from .tree_core import Tree, build_tree, wiener

__all__ = [
    "LeafProfile",
    "ToppleWindow",
    "Progression",
    "leaf_profile",
    "window_for",
    "eligible",
    "apply_move",
    "max_steps",
    "schedule",
    "progression",
]


@dataclass(frozen=True)
class LeafProfile:
    """Leaf counts along the interior path (the chip configuration)."""

    path: tuple[int, ...]
    counts: tuple[int, ...]


def leaf_profile(tree: Tree) -> LeafProfile:
    from .tree_core import interior_path

    path = interior_path(tree)
    on_path = set(path)
    counts = tuple(
        sum(1 for w in tree.adjacency[v] if w not in on_path) for v in path
    )
    return LeafProfile(path=path, counts=counts)


@dataclass(frozen=True)
class ToppleWindow:
    """Where moves are allowed: seed vertex label plus a half-width.

    Vertices at path distance strictly less than `halfwidth` from the
    center may donate leaves; the two boundary positions only receive.
    A half-width of zero (or less) admits no moves at all.
    """

    center: int
    halfwidth: int


def window_for(spec: CaterpillarSpec) -> ToppleWindow:
    """The relocation window of a constructed spec (empty for bases)."""
    center = spec.seed_label if spec.seed_label is not None else spec.d
    return ToppleWindow(center=center, halfwidth=spec.k_usable)


def _window_offsets(halfwidth: int):
    # canonical priority: closest to the seed first, left before right
    yield 0
    for j in range(1, halfwidth):
        yield -j
        yield j


def eligible(tree: Tree, window: ToppleWindow) -> list[int]:
    """Window vertices currently able to donate two leaves.

    Returned in canonical priority order (seed first, then outward,
    left before right), so callers wanting the canonical move take the
    head of the list.  Raises NotCaterpillar if the tree has no
    interior path or the window center is not on it.
    """
    profile = leaf_profile(tree)
    try:
        center_idx = profile.path.index(window.center)
    except ValueError:
        raise NotCaterpillar(
            f"window center {window.center} is not an interior-path vertex"
        ) from None
    if window.halfwidth <= 0:
        return []
    result = []
    last = len(profile.path) - 1
    for offset in _window_offsets(window.halfwidth):
        idx = center_idx + offset
        # donors need a path vertex on both sides to receive the leaves
        if 0 < idx < last and profile.counts[idx] >= 2:
            result.append(profile.path[idx])
    return result


def apply_move(tree: Tree, u: int) -> Tree:
    """Relocate two leaves of u, one to each non-leaf neighbor.

    Requires u to carry at least two leaves and to have exactly two
    non-leaf neighbors.  The two smallest-labeled leaves move; the
    smaller goes to the smaller-labeled neighbor.  Always raises the
    Wiener index by exactly 4.
    """
    if not 0 <= u < tree.n:
        raise Ineligible(f"vertex {u} does not exist")
    leaf_neighbors = sorted(w for w in tree.adjacency[u] if tree.is_leaf(w))
    path_neighbors = sorted(w for w in tree.adjacency[u] if not tree.is_leaf(w))
    if len(leaf_neighbors) < 2:
        raise Ineligible(f"vertex {u} has {len(leaf_neighbors)} leaf neighbors, needs 2")
    if len(path_neighbors) != 2:
        raise Ineligible(
            f"vertex {u} has {len(path_neighbors)} non-leaf neighbors, needs exactly 2"
        )
    v1, v2 = leaf_neighbors[0], leaf_neighbors[1]
    w1, w2 = path_neighbors
    dropped = {(min(u, v1), max(u, v1)), (min(u, v2), max(u, v2))}
    edges = [e for e in tree.edges if e not in dropped]
    edges.append((min(w1, v1), max(w1, v1)))
    edges.append((min(w2, v2), max(w2, v2)))
    return build_tree(tree.n, edges)


def _simulate_topples(profile: LeafProfile, window: ToppleWindow, rng: random.Random | None) -> int:
    """Count moves until the window stabilizes, on the chip model."""
    try:
        center_idx = profile.path.index(window.center)
    except ValueError:
        raise NotCaterpillar(
            f"window center {window.center} is not an interior-path vertex"
        ) from None
    if window.halfwidth <= 0:
        return 0
    counts = list(profile.counts)
    last = len(counts) - 1
    lo = max(1, center_idx - window.halfwidth + 1)
    hi = min(last - 1, center_idx + window.halfwidth - 1)
    # a stray configuration could cycle only through a bug; cap firmly
    cap = 8 * sum(counts) * (window.halfwidth + 1) ** 2 + 64
    steps = 0
    if rng is None:
        # order does not affect the count, so drain a worklist
        stack = [i for i in range(lo, hi + 1) if counts[i] >= 2]
        while stack:
            idx = stack.pop()
            if not lo <= idx <= hi or counts[idx] < 2:
                continue
            counts[idx] -= 2
            counts[idx - 1] += 1
            counts[idx + 1] += 1
            steps += 1
            if steps > cap:
                raise InternalInvariant("toppling failed to stabilize")
            stack += (idx - 1, idx, idx + 1)
        return steps
    while True:
        hot = [i for i in range(lo, hi + 1) if counts[i] >= 2]
        if not hot:
            return steps
        idx = rng.choice(hot)
        counts[idx] -= 2
        counts[idx - 1] += 1
        counts[idx + 1] += 1
        steps += 1
        if steps > cap:
            raise InternalInvariant("toppling failed to stabilize")


def max_steps(spec: CaterpillarSpec, rng: random.Random | None = None) -> int:
    """Total moves until no window vertex is eligible, by simulation.

    The count does not depend on the firing order (chip-firing is
    abelian); passing an rng fires random eligible vertices instead of
    a fixed order, which is useful precisely for testing that
    independence.  Clean windows of half-width k give k * k.
    """
    tree = _construct(spec)
    return _simulate_topples(leaf_profile(tree), window_for(spec), rng)


def schedule(spec: CaterpillarSpec, t: int) -> Tree:
    """The tree after t canonical moves from construct(spec).

    Every single move is re-verified to raise the Wiener index by
    exactly 4; a violation raises InternalInvariant rather than
    returning a wrong witness.
    """
    if t < 0:
        raise InvalidSpec(f"step count must be nonnegative, got {t}")
    tree = _construct(spec)
    if t == 0:
        return tree
    window = window_for(spec)
    capacity = _simulate_topples(leaf_profile(tree), window, None)
    if t > capacity:
        raise TooManySteps(f"schedule admits {capacity} moves, requested {t}")
    value = wiener(tree)
    for _ in range(t):
        candidates = eligible(tree, window)
        if not candidates:
            raise InternalInvariant("window stabilized before the promised step count")
        tree = apply_move(tree, candidates[0])
        new_value = wiener(tree)
        if new_value != value + 4:
            raise InternalInvariant(
                f"move changed Wiener index by {new_value - value}, expected +4"
            )
        value = new_value
    return tree


@dataclass(frozen=True)
class Progression:
    """Arithmetic set {base_w + 4 t : 0 <= t <= count} with its recipe."""

    base_w: int
    step: int
    count: int
    witness: CaterpillarSpec

    @property
    def top_w(self) -> int:
        return self.base_w + self.step * self.count

    def covers(self, w: int) -> bool:
        return (
            self.base_w <= w <= self.top_w and (w - self.base_w) % self.step == 0
        )

    def t_for(self, w: int) -> int:
        if not self.covers(w):
            raise ValueError(f"{w} not on this progression")
        return (w - self.base_w) // self.step


def progression(spec: CaterpillarSpec) -> Progression:
    """Base value and verified move capacity for one spec."""
    tree = _construct(spec)
    count = _simulate_topples(leaf_profile(tree), window_for(spec), None)
    return Progression(base_w=wiener(tree), step=4, count=count, witness=spec)
