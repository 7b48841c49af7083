"""The six caterpillar families and their printed closed forms.

Two base families on an even number of vertices hang leaves off the
path u_{-d} .. u_d:

* B1(n, d, x): one leaf on each of the 2k-1 central vertices
  u_{-(k-1)} .. u_{k-1} with k = (n - 2d - 2) / 2, plus a single leaf
  on u_{-d-1+x} and on u_{d+1-x}.  Here x positions the outer leaves.
* B2(n, d, x): one leaf on each of the 2k-1 central vertices with
  k = d - 1, plus x leaves on each of u_{-(d-1)}, u_{d-1} and r leaves
  on each of u_{-d}, u_d with r = (n - 4d - 2x + 2) / 2.  Here x is a
  multiplicity.

Four derived families add one or two vertices to a base caterpillar:
G1/G2 (even n) append a leaf to u_s and a leaf to u_d of B1/B2 on n-2
vertices, with seed s in {-1, 0, 1, 2}; G3/G4 (odd n) append a single
leaf to u_s of B1/B2 on n-1 vertices, with s in {0, 1}.

Every family also carries a printed closed-form polynomial for its
Wiener index.  Those polynomials are evaluated here in exact rational
arithmetic, but they are audit targets, not truth: ground truth is
always the Wiener index of the constructed tree.  (The B1 closed form
in particular contradicts direct computation; see the audit module.)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import InvalidSpec, ParityMismatch, TooSmall
from .tree_core import Tree, build_tree

__all__ = [
    "Family",
    "CaterpillarSpec",
    "DomainEntry",
    "ParamDomain",
    "param_domain",
    "iter_specs",
    "construct",
    "formula_value",
    "increment_value",
    "x_step_value",
    "s_offset_table",
]

MIN_BASE_N = 18


class Family(enum.Enum):
    B1 = "B1"
    B2 = "B2"
    G1 = "G1"
    G2 = "G2"
    G3 = "G3"
    G4 = "G4"

    @property
    def is_base(self) -> bool:
        return self in (Family.B1, Family.B2)

    @property
    def base_family(self) -> "Family":
        return {
            Family.B1: Family.B1,
            Family.B2: Family.B2,
            Family.G1: Family.B1,
            Family.G2: Family.B2,
            Family.G3: Family.B1,
            Family.G4: Family.B2,
        }[self]

    @property
    def base_shift(self) -> int:
        """How many vertices the derived family adds to its base."""
        if self.is_base:
            return 0
        return 2 if self in (Family.G1, Family.G2) else 1

    @property
    def n_parity(self) -> int:
        """Required parity of n: 0 for even families, 1 for odd."""
        return 1 if self in (Family.G3, Family.G4) else 0

    @property
    def seed_values(self) -> tuple[int, ...]:
        if self.is_base:
            return ()
        return (-1, 0, 1, 2) if self in (Family.G1, Family.G2) else (0, 1)


@dataclass(frozen=True)
class CaterpillarSpec:
    """One admissible parameter tuple; invalid tuples cannot be built."""

    family: Family
    n: int
    d: int
    x: int
    s: int | None = None

    def __post_init__(self) -> None:
        _validate(self)

    # -- derived parameters --------------------------------------------------

    @property
    def base_n(self) -> int:
        return self.n - self.family.base_shift

    @property
    def base_spec(self) -> "CaterpillarSpec":
        if self.family.is_base:
            return self
        return CaterpillarSpec(self.family.base_family, self.base_n, self.d, self.x)

    @property
    def k_central(self) -> int:
        """Half-width of the single-leaf central block (block = 2k-1 vertices)."""
        if self.family.base_family is Family.B1:
            return (self.base_n - 2 * self.d - 2) // 2
        return self.d - 1

    @property
    def r(self) -> int:
        """Leaf multiplicity on the path ends; B2-shaped families only."""
        if self.family.base_family is not Family.B2:
            raise InvalidSpec(f"{self.family.value} has no r parameter")
        return (self.base_n - 4 * self.d - 2 * self.x + 2) // 2

    @property
    def k_usable(self) -> int:
        """Relocation window half-width around the seed (0 for base families)."""
        if self.family.is_base:
            return 0
        margin = 2 if self.family in (Family.G1, Family.G2) else 1
        return self.k_central - margin

    @property
    def seed_label(self) -> int | None:
        """Vertex label of u_s in the constructed tree, or None for bases."""
        if self.s is None:
            return None
        return self.s + self.d


def _validate(spec: CaterpillarSpec) -> None:
    family, n, d, x, s = spec.family, spec.n, spec.d, spec.x, spec.s
    if n % 2 != family.n_parity:
        want = "odd" if family.n_parity else "even"
        raise ParityMismatch(f"{family.value} needs {want} n, got {n}")
    if family.is_base:
        if s is not None:
            raise InvalidSpec(f"{family.value} takes no seed parameter")
    else:
        if s is None:
            raise InvalidSpec(f"{family.value} requires a seed s")
        if s not in family.seed_values:
            raise InvalidSpec(f"{family.value} seed must be one of {family.seed_values}, got {s}")
    base_n = spec.base_n
    if base_n < MIN_BASE_N:
        raise TooSmall(f"{family.value} needs a base of at least {MIN_BASE_N} vertices, got {base_n}")
    d_lo, d_hi = _d_range(family.base_family, base_n)
    if not d_lo <= d <= d_hi:
        raise InvalidSpec(f"{family.value}(n={n}): d must lie in [{d_lo}, {d_hi}], got {d}")
    x_hi = _x_max(family.base_family, base_n, d)
    if not 1 <= x <= x_hi:
        raise InvalidSpec(f"{family.value}(n={n}, d={d}): x must lie in [1, {x_hi}], got {x}")
    if s is not None and abs(s) > spec.k_central - 1:
        # the seed must land on a vertex that already carries a block leaf
        raise InvalidSpec(
            f"{family.value}(n={n}, d={d}): seed {s} falls outside the central leaf block"
        )


def _d_range(base: Family, base_n: int) -> tuple[int, int]:
    if base is Family.B1:
        return -((base_n - 2) // -4), (base_n - 8) // 2
    return 4, base_n // 4


def _x_max(base: Family, base_n: int, d: int) -> int:
    if base is Family.B1:
        return (4 + 4 * d - base_n) // 2
    return (base_n - 4 * d + 2) // 2


@dataclass(frozen=True)
class DomainEntry:
    d: int
    x_max: int
    s_values: tuple[int, ...]


@dataclass(frozen=True)
class ParamDomain:
    family: Family
    n: int
    entries: tuple[DomainEntry, ...]

    def __iter__(self) -> Iterator[DomainEntry]:
        return iter(self.entries)


def param_domain(family: Family, n: int) -> ParamDomain:
    """Exact admissible ranges: all d, and for each d the x range and seeds.

    Derived families inherit the base ranges at the reduced vertex
    count.  The ranges are the full definitional ones; the tighter
    thresholds used by the coverage analysis live in the spectrum
    module and do not restrict what can be built.
    """
    if n % 2 != family.n_parity:
        want = "odd" if family.n_parity else "even"
        raise ParityMismatch(f"{family.value} needs {want} n, got {n}")
    base_n = n - family.base_shift
    if base_n < MIN_BASE_N:
        raise TooSmall(f"{family.value} needs a base of at least {MIN_BASE_N} vertices, got {base_n}")
    d_lo, d_hi = _d_range(family.base_family, base_n)
    entries = []
    for d in range(d_lo, d_hi + 1):
        x_hi = _x_max(family.base_family, base_n, d)
        if x_hi < 1:
            continue
        entries.append(DomainEntry(d=d, x_max=x_hi, s_values=family.seed_values))
    return ParamDomain(family=family, n=n, entries=tuple(entries))


def iter_specs(family: Family, n: int) -> Iterator[CaterpillarSpec]:
    """All admissible specs of one family, in (d, x, s) ascending order."""
    for entry in param_domain(family, n):
        for x in range(1, entry.x_max + 1):
            if family.is_base:
                yield CaterpillarSpec(family, n, entry.d, x)
            else:
                for s in sorted(entry.s_values):
                    yield CaterpillarSpec(family, n, entry.d, x, s)


# -- construction -------------------------------------------------------------
#
# Deterministic labeling: path position p in [-d, d] gets label p + d,
# then leaves are numbered in a fixed order: central block left to
# right, the x leaves (left group before right group), the r leaves
# (left end before right end), the seed leaf, and finally the extra
# u_d leaf of G1/G2.  Serialized output is therefore byte-stable.

def construct(spec: CaterpillarSpec) -> Tree:
    """Build the caterpillar for an admissible spec."""
    d = spec.d
    base = spec.family.base_family
    edges = [(p + d, p + d + 1) for p in range(-d, d)]
    leaf_hosts: list[int] = []

    k = spec.k_central
    leaf_hosts.extend(range(-(k - 1), k))
    if base is Family.B1:
        leaf_hosts.append(-d - 1 + spec.x)
        leaf_hosts.append(d + 1 - spec.x)
    else:
        leaf_hosts.extend([-(d - 1)] * spec.x)
        leaf_hosts.extend([d - 1] * spec.x)
        leaf_hosts.extend([-d] * spec.r)
        leaf_hosts.extend([d] * spec.r)
    if spec.s is not None:
        leaf_hosts.append(spec.s)
        if spec.family in (Family.G1, Family.G2):
            leaf_hosts.append(d)

    label = 2 * d + 1
    for position in leaf_hosts:
        edges.append((position + d, label))
        label += 1
    if label != spec.n:
        raise InvalidSpec(
            f"{spec.family.value} spec produced {label} vertices instead of {spec.n}"
        )
    return build_tree(spec.n, edges)


# -- printed closed forms ------------------------------------------------------

def _b1_formula(n: int, d: int, x: int) -> Fraction:
    n_, d_, x_ = Fraction(n), Fraction(d), Fraction(x)
    return (
        n_**3 / 3
        + (Fraction(-3, 2) * d_ - Fraction(5, 4)) * n_**2
        + (4 * d_**2 + 10 * d_ + Fraction(13, 3) - 2 * x_) * n_
        + 2 * x_**2
        - Fraction(8, 3) * d_**3
        - 12 * d_**2
        - Fraction(46, 3) * d_
        - 7
    )


def _b2_formula(n: int, d: int, x: int) -> Fraction:
    n_, d_, x_ = Fraction(n), Fraction(d), Fraction(x)
    return (
        (d_ / 2 + 1) * n_**2
        + (-2 * d_ - 2) * n_
        - Fraction(8, 3) * d_**3
        + Fraction(32, 3) * d_
        - 5
        + 8 * x_
        - 8 * d_ * x_
        - 2 * x_**2
    )


def increment_value(spec: CaterpillarSpec) -> Fraction:
    """The printed increment a derived family adds to its base caterpillar."""
    n_, d_, x_ = Fraction(spec.n), Fraction(spec.d), Fraction(spec.x)
    if spec.family.is_base:
        raise InvalidSpec(f"{spec.family.value} is a base family with no increment")
    s_ = Fraction(spec.s)
    if spec.family is Family.G1:
        return n_**2 / 4 + Fraction(3, 2) * n_ + 2 * d_**2 + 3 * d_ + 2 * s_**2 - s_ - 2 * x_
    if spec.family is Family.G2:
        return (2 * d_ + 4) * n_ - 2 * d_**2 - 7 * d_ - 6 - 2 * x_ + 2 * s_**2 - s_
    if spec.family is Family.G3:
        return n_**2 / 4 - d_ * n_ + 2 * d_**2 + 5 * d_ + Fraction(11, 4) - 2 * x_ + 2 * s_**2
    return (2 + d_) * n_ - 2 * d_**2 - 3 * d_ - 1 + 2 * s_**2 - 2 * x_


def formula_value(spec: CaterpillarSpec) -> Fraction:
    """Exact rational value of the printed closed form for this spec.

    For derived families this is the printed base polynomial evaluated
    at the reduced vertex count plus the printed increment, exactly as
    stated.  The result may disagree with the constructed tree's Wiener
    index (it does for every B1-shaped absolute form); callers that
    need truth must measure the tree.
    """
    base = spec.family.base_family
    base_formula = _b1_formula if base is Family.B1 else _b2_formula
    value = base_formula(spec.base_n, spec.d, spec.x)
    if spec.family.is_base:
        return value
    return value + increment_value(spec)


def x_step_value(spec: CaterpillarSpec) -> Fraction:
    """Printed value of W(family(.., x-1, ..)) - W(family(.., x, ..))."""
    n_, d_, x_ = Fraction(spec.n), Fraction(spec.d), Fraction(spec.x)
    if spec.family is Family.G1:
        return 2 * n_ - 4 * x_
    if spec.family is Family.G2:
        return 4 * d_ + 4 * x_ - 8
    if spec.family is Family.G3:
        return 2 * (n_ - 2 * x_ + 1)
    if spec.family is Family.G4:
        return 4 * (x_ + 2 * d_ - 2)
    raise InvalidSpec(f"no printed x-step identity for {spec.family.value}")


def s_offset_table(family: Family) -> dict[int, int]:
    """Printed offsets W(s=sigma) - W(s=0) for each nonzero seed."""
    if family in (Family.G1, Family.G2):
        return {1: 1, 2: 6, -1: 3}
    if family in (Family.G3, Family.G4):
        return {1: 2}
    raise InvalidSpec(f"no printed seed offsets for {family.value}")
