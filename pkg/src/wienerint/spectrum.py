"""Catalogue of constructively reachable Wiener values and the inverse solver.

For a fixed vertex count the four families with a seeded window each
contribute an arithmetic progression of step 4 per parameter choice.
Overlaying every admissible progression gives a membership table over
[W(star), W(path)]; the largest contiguous run in that table is the
measured interval, reported side by side with the endpoints predicted
by the closed-form parameter thresholds.

solve(n, w) inverts the map: parity and range checks first, then the
two one-off extremes, then an exhaustive small-n catalogue, and for
large n a witness lookup in the index followed by a fully re-verified
reconstruction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .caterpillar import CaterpillarSpec, Family, construct, iter_specs
from .errors import (
    EmptyIndex,
    InternalInvariant,
    NotCovered,
    OutOfRange,
    Overflow,
    ParityViolation,
    TooSmall,
    WienerintError,
)
from .oracle import iter_free_trees
from .reports import IntervalReport, longest_parity_run
from .tree_core import Tree, build_tree, path_tree, path_wiener, star_tree, star_wiener, wiener
from .transform import Progression, progression, schedule

__all__ = [
    "ParameterBounds",
    "SpectrumIndex",
    "SolveWitness",
    "bounds",
    "build_index",
    "measured_interval",
    "solve",
]

# a bytes-per-value membership table; W(path) - W(star) grows as n^3 / 6
_MAX_SPAN = 1 << 26

# exhaustive enumeration stays snappy this far and the index takes over
# at even 20 / odd 19, leaving only 17 and 18 uncovered in between
_CATALOG_CAP = 16


def _floor_half_minus_root(t: int, m: int) -> int:
    """floor((t - sqrt(m)) / 2) in pure integer arithmetic."""
    r = math.isqrt(m)
    if r * r == m:
        return (t - r) // 2
    return (t - r - 1) // 2


def _ceil_half_plus_root(m: int, c: int) -> int:
    """ceil((sqrt(m) + c) / 2) in pure integer arithmetic."""
    r = math.isqrt(m)
    if r * r == m:
        return (r + c + 1) // 2
    return (r + c + 2) // 2


@dataclass(frozen=True)
class ParameterBounds:
    """Threshold parameter values behind the claimed interval endpoints.

    Even n populates the d1/d2/x2 fields, odd n the d3/d4/x4 fields;
    the other parity's fields are None.  These are reporting aids: the
    index always enumerates the full definitional parameter ranges.
    The secondary pair comes from a differently stated single-step
    bound and is kept for comparison only.
    """

    n: int
    d1_min: int | None = None
    d1_max: int | None = None
    d2_min: int | None = None
    d2_max: int | None = None
    x2_max: int | None = None
    d3_max: int | None = None
    d4_min: int | None = None
    x4_max: int | None = None
    secondary_d_max: int = 0
    secondary_d_min: int = 0


def bounds(n: int) -> ParameterBounds:
    """Exact integer thresholds for the claimed complete interval at n."""
    secondary_d_max = _floor_half_minus_root(n - 6, n + 3)
    secondary_d_min = _ceil_half_plus_root(n + 3, 8)
    if n % 2 == 0:
        if n < 20:
            raise TooSmall(f"even bounds need n >= 20, got {n}")
        d2_min = _ceil_half_plus_root(2 * n - 8, 6)
        return ParameterBounds(
            n=n,
            d1_min=-(-(n - 4) // 4),
            d1_max=_floor_half_minus_root(n - 8, 2 * n - 8),
            d2_min=d2_min,
            d2_max=(n - 2) // 4,
            x2_max=(n - 4 * d2_min) // 2,
            secondary_d_max=secondary_d_max,
            secondary_d_min=secondary_d_min,
        )
    if n < 19:
        raise TooSmall(f"odd bounds need n >= 19, got {n}")
    d4_min = _ceil_half_plus_root(2 * n - 6, 4)
    return ParameterBounds(
        n=n,
        d3_max=_floor_half_minus_root(n - 5, 2 * n - 6),
        d4_min=d4_min,
        x4_max=(n + 1 - 4 * d4_min) // 2,
        secondary_d_max=secondary_d_max,
        secondary_d_min=secondary_d_min,
    )


def _spec_order_key(spec: CaterpillarSpec, t: int = 0):
    s = spec.s if spec.s is not None else 0
    return (spec.d, spec.x, abs(s), t, s, spec.family.name)


@dataclass(frozen=True, eq=False)
class SpectrumIndex:
    """Every indexed Wiener value with a reconstruction witness.

    `progressions` is sorted by base value; `membership` is one byte
    per candidate value in [lo, hi] = [W(star), W(path)].  Treat a
    built index as read-only.
    """

    n: int
    parity_step: int
    progressions: tuple[Progression, ...]
    lo: int
    hi: int
    membership: bytearray

    def contains(self, w: int) -> bool:
        return self.lo <= w <= self.hi and bool(self.membership[w - self.lo])

    def covering(self, w: int) -> list[Progression]:
        return [p for p in self.progressions if p.covers(w)]

    @property
    def indexed_count(self) -> int:
        return sum(self.membership)


@lru_cache(maxsize=16)
def build_index(n: int) -> SpectrumIndex:
    """Overlay the progressions of every admissible spec at this n."""
    if n % 2 == 0:
        if n < 20:
            raise TooSmall(f"even index needs n >= 20, got {n}")
        families = (Family.G1, Family.G2)
        parity_step = 1
    else:
        if n < 19:
            raise TooSmall(f"odd index needs n >= 19, got {n}")
        families = (Family.G3, Family.G4)
        parity_step = 2
    lo = star_wiener(n)
    hi = path_wiener(n)
    if hi - lo + 1 > _MAX_SPAN:
        raise Overflow(f"membership table for n={n} needs {hi - lo + 1} cells")
    membership = bytearray(hi - lo + 1)
    progressions = []
    for family in families:
        for spec in iter_specs(family, n):
            prog = progression(spec)
            if prog.base_w < lo or prog.top_w > hi:
                raise InternalInvariant(
                    f"progression of {spec} escapes [{lo}, {hi}]"
                )
            start = prog.base_w - lo
            membership[start : start + 4 * prog.count + 1 : 4] = (
                b"\x01" * (prog.count + 1)
            )
            progressions.append(prog)
    progressions.sort(key=lambda p: (p.base_w, _spec_order_key(p.witness)))
    return SpectrumIndex(
        n=n,
        parity_step=parity_step,
        progressions=tuple(progressions),
        lo=lo,
        hi=hi,
        membership=membership,
    )


def _claimed_specs(n: int) -> tuple[CaterpillarSpec | None, CaterpillarSpec | None]:
    """Endpoint specs of the claimed interval, None when inadmissible."""
    try:
        b = bounds(n)
    except TooSmall:
        return None, None

    def attempt(family, d, x, s):
        try:
            return CaterpillarSpec(family, n, d, x, s)
        except WienerintError:
            return None

    if n % 2 == 0:
        return (
            attempt(Family.G2, b.d2_min, b.x2_max, -1),
            attempt(Family.G1, b.d1_max, 1, 1),
        )
    return (
        attempt(Family.G4, b.d4_min, b.x4_max, 0),
        attempt(Family.G3, b.d3_max, 1, 1),
    )


def measured_interval(index: SpectrumIndex) -> IntervalReport:
    """Largest contiguous run in the index, versus the claimed endpoints.

    Claimed endpoints are measured on the endpoint trees themselves,
    never read off a closed form.  Any claimed value missing from the
    index is listed as a gap, never dropped.
    """
    if not index.progressions:
        raise EmptyIndex(f"index for n={index.n} holds no progressions")
    step = index.parity_step
    measured_lo, measured_hi = longest_parity_run(
        index.contains, index.lo, index.hi, step
    )
    lo_spec, hi_spec = _claimed_specs(index.n)
    claimed_lo = wiener(construct(lo_spec)) if lo_spec is not None else None
    claimed_hi = wiener(construct(hi_spec)) if hi_spec is not None else None
    gaps = []
    if claimed_lo is not None and claimed_hi is not None:
        for w in range(claimed_lo, claimed_hi + 1, step):
            if not index.contains(w):
                gaps.append(w)
    return IntervalReport(
        n=index.n,
        parity_step=step,
        measured_lo=measured_lo,
        measured_hi=measured_hi,
        run_length=(measured_hi - measured_lo) // step + 1,
        claimed_lo=claimed_lo,
        claimed_hi=claimed_hi,
        gaps=tuple(gaps),
        progression_count=len(index.progressions),
    )


@dataclass(frozen=True)
class SolveWitness:
    """Reconstruction recipe attached to a solve answer.

    family is one of the four window families, or "path", "star",
    "catalog" for the cases settled without the index; d, x, s are
    None in those cases and t is 0.
    """

    family: str
    n: int
    d: int | None
    x: int | None
    s: int | None
    t: int
    wiener: int

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "d": self.d,
            "x": self.x,
            "s": self.s,
            "t": self.t,
            "wiener": self.wiener,
        }


@lru_cache(maxsize=8)
def _small_catalog(n: int) -> dict[int, tuple[tuple[int, int], ...]]:
    """First enumerated witness for every achievable value, n small."""
    catalog: dict[int, tuple[tuple[int, int], ...]] = {}
    for tree in iter_free_trees(n):
        catalog.setdefault(wiener(tree), tree.edges)
    return catalog


def solve(n: int, w: int) -> tuple[Tree, SolveWitness]:
    """A tree on n vertices with Wiener index exactly w, plus its recipe.

    Checks run in a fixed order: vertex count, parity (odd n admits
    only even values), range against the star/path extremes, the two
    extremes themselves, exhaustive catalogue for n <= 16, and the
    constructive index beyond that.  Every returned tree has been
    re-measured; a mismatch raises InternalInvariant instead of
    returning a bad witness.
    """
    if n < 2:
        raise TooSmall(f"need at least two vertices, got {n}")
    lo = star_wiener(n)
    hi = path_wiener(n)
    if n % 2 == 1 and w % 2 == 1:
        raise ParityViolation(
            f"every tree on {n} (odd) vertices has even Wiener index, got {w}"
        )
    if not lo <= w <= hi:
        raise OutOfRange(f"n={n} admits Wiener values in [{lo}, {hi}], got {w}")
    if w == hi:
        return path_tree(n), SolveWitness("path", n, None, None, None, 0, w)
    if w == lo:
        return star_tree(n), SolveWitness("star", n, None, None, None, 0, w)
    if n <= _CATALOG_CAP:
        edges = _small_catalog(n).get(w)
        if edges is None:
            raise NotCovered(f"no tree on {n} vertices has Wiener index {w}")
        tree = build_tree(n, edges)
        if wiener(tree) != w:
            raise InternalInvariant("catalogue witness failed re-measurement")
        return tree, SolveWitness("catalog", n, None, None, None, 0, w)
    if (n % 2 == 0 and n >= 20) or (n % 2 == 1 and n >= 19):
        index = build_index(n)
        if not index.contains(w):
            raise NotCovered(
                f"{w} is in range but outside the indexed values for n={n}"
            )
        candidates = index.covering(w)
        if not candidates:
            raise InternalInvariant(
                f"membership table lists {w} but no progression covers it"
            )
        best = min(candidates, key=lambda p: _spec_order_key(p.witness, p.t_for(w)))
        spec = best.witness
        t = best.t_for(w)
        tree = schedule(spec, t)
        if wiener(tree) != w:
            raise InternalInvariant("scheduled witness failed re-measurement")
        return tree, SolveWitness(spec.family.name, n, spec.d, spec.x, spec.s, t, w)
    raise NotCovered(
        f"n={n} is above the exhaustive catalogue and below the indexed families"
    )
