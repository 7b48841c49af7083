"""Closed-form identities checked against direct computation.

Every identity gets a verdict over an explicit grid of admissible
specs: HOLDS when every delta is exactly zero, FAILS with the first
counterexample attached.  All formula arithmetic is exact rational; a
formula that returns a non-integer at integer parameters is itself a
defect and shows up as a fractional delta, never as a rounding
artifact.

A failed form can be refit: evaluate the family on a tensor grid
inside one structural regime, solve the interpolation system by exact
Gaussian elimination, and verify the result on leftover grid points
plus a disjoint holdout grid.  Underfitting (caps below the true
degree) is caught by that verification, not hidden by least squares.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

from .caterpillar import (
    CaterpillarSpec,
    Family,
    construct,
    formula_value,
    increment_value,
    iter_specs,
    param_domain,
    s_offset_table,
    x_step_value,
)
from .errors import InvalidGrid, InvalidSpec, SingularSystem, VerificationFailure
from .tree_core import canonical_code, wiener

__all__ = [
    "AuditRow",
    "AuditReport",
    "GluingRow",
    "GluingReport",
    "BatteryEntry",
    "FittedForm",
    "default_grid",
    "audit_family",
    "audit_increment",
    "audit_x_step",
    "audit_s_offset",
    "audit_gluing_b1_b2",
    "audit_gluing_shift",
    "audit_gluing_cross",
    "audit_battery",
    "fit_closed_form",
]

HOLDS = "HOLDS"
FAILS = "FAILS"


@dataclass(frozen=True)
class AuditRow:
    """One grid point: exact formula value against measured value."""

    spec: CaterpillarSpec
    formula: Fraction
    direct: int
    delta: Fraction


@dataclass(frozen=True)
class AuditReport:
    identity: str
    family: str
    rows: tuple[AuditRow, ...]

    @property
    def verdict(self) -> str:
        return HOLDS if all(row.delta == 0 for row in self.rows) else FAILS

    @property
    def counterexample(self) -> AuditRow | None:
        for row in self.rows:
            if row.delta != 0:
                return row
        return None

    def to_json_dict(self) -> dict:
        out = {
            "identity": self.identity,
            "family": self.family,
            "points": len(self.rows),
            "verdict": self.verdict,
        }
        bad = self.counterexample
        if bad is not None:
            out["counterexample"] = {
                "spec": _spec_params(bad.spec),
                "formula": str(bad.formula),
                "direct": bad.direct,
                "delta": str(bad.delta),
            }
        return out

    def to_text(self) -> str:
        lines = [f"{self.identity}: {self.verdict} ({len(self.rows)} points)"]
        bad = self.counterexample
        if bad is not None:
            lines.append(
                f"  counterexample {_spec_text(bad.spec)}: "
                f"formula {bad.formula} vs direct {bad.direct} (delta {bad.delta})"
            )
        return "\n".join(lines)


def _spec_params(spec: CaterpillarSpec) -> dict:
    return {"family": spec.family.name, "n": spec.n, "d": spec.d, "x": spec.x, "s": spec.s}


def _spec_text(spec: CaterpillarSpec) -> str:
    if spec.s is None:
        return f"{spec.family.name}({spec.n},{spec.d},{spec.x})"
    return f"{spec.family.name}({spec.n},{spec.d},{spec.x},{spec.s})"


def _check_grid(family: Family, grid: Iterable[CaterpillarSpec]) -> tuple[CaterpillarSpec, ...]:
    specs = tuple(grid)
    if not specs:
        raise InvalidGrid("empty grid")
    for spec in specs:
        if spec.family is not family:
            raise InvalidGrid(f"grid mixes {spec.family.name} into a {family.name} audit")
    return specs


def default_grid(family: Family, label: str) -> tuple[CaterpillarSpec, ...]:
    """Two disjoint stock grids per family, labeled "A" and "B".

    Each covers every admissible (d, x, s) over a window of vertex
    counts; the windows of A and B do not overlap, which is what makes
    cross-grid verdict agreement a meaningful stability check.
    """
    if label == "A":
        lo, hi = (19, 35) if family.n_parity == 1 else (18 if family.is_base else 20, 32)
    elif label == "B":
        lo, hi = (37, 51) if family.n_parity == 1 else (34, 48)
    else:
        raise InvalidGrid(f"unknown grid label {label!r}")
    specs = []
    for n in range(lo, hi + 1, 2):
        specs.extend(iter_specs(family, n))
    return tuple(specs)


def audit_family(family: Family, grid: Iterable[CaterpillarSpec]) -> AuditReport:
    """Printed closed form of W against direct measurement."""
    rows = []
    for spec in _check_grid(family, grid):
        f = formula_value(spec)
        direct = wiener(construct(spec))
        rows.append(AuditRow(spec, f, direct, f - direct))
    return AuditReport(identity=family.name, family=family.name, rows=tuple(rows))


def audit_increment(family: Family, grid: Iterable[CaterpillarSpec]) -> AuditReport:
    """Printed increment over the base family against measured W(G) - W(base)."""
    if family.is_base:
        raise InvalidGrid(f"{family.name} has no increment form")
    rows = []
    for spec in _check_grid(family, grid):
        f = increment_value(spec)
        direct = wiener(construct(spec)) - wiener(construct(spec.base_spec))
        rows.append(AuditRow(spec, f, direct, f - direct))
    return AuditReport(identity=f"{family.name}-increment", family=family.name, rows=tuple(rows))


def audit_x_step(family: Family, grid: Iterable[CaterpillarSpec]) -> AuditReport:
    """Printed single-step drop W(..x-1..) - W(..x..) against measurement.

    The printed form is indexed by the larger x of the pair, so a grid
    point at x is compared against the drop from its x+1 companion
    with the formula evaluated at x+1.  Points whose x+1 is out of
    range are skipped; at least one usable pair is required.
    """
    if family.is_base:
        raise InvalidGrid(f"{family.name} has no printed x-step form")
    rows = []
    for spec in _check_grid(family, grid):
        try:
            bumped = CaterpillarSpec(spec.family, spec.n, spec.d, spec.x + 1, spec.s)
        except InvalidSpec:
            continue
        f = x_step_value(bumped)
        direct = wiener(construct(spec)) - wiener(construct(bumped))
        rows.append(AuditRow(bumped, f, direct, f - direct))
    if not rows:
        raise InvalidGrid("no grid point admits the x+1 companion")
    return AuditReport(identity=f"{family.name}-x-step", family=family.name, rows=tuple(rows))


def audit_s_offset(family: Family, grid: Iterable[CaterpillarSpec]) -> AuditReport:
    """Printed seed offsets W(G(s)) - W(G(0)) against measurement.

    Consumes the s=0 points of the grid and derives the companions for
    every other seed value, so one grid drives all offsets.
    """
    if family.is_base:
        raise InvalidGrid(f"{family.name} has no seed vertex")
    table = s_offset_table(family)
    rows = []
    for spec in _check_grid(family, grid):
        if spec.s != 0:
            continue
        w0 = wiener(construct(spec))
        for s, offset in sorted(table.items()):
            seeded = CaterpillarSpec(spec.family, spec.n, spec.d, spec.x, s)
            direct = wiener(construct(seeded)) - w0
            rows.append(AuditRow(seeded, Fraction(offset), direct, offset - direct))
    if not rows:
        raise InvalidGrid("grid holds no s=0 points to anchor the offsets")
    return AuditReport(identity=f"{family.name}-s-offset", family=family.name, rows=tuple(rows))


@dataclass(frozen=True)
class GluingRow:
    """One structural identity instance: two specs, same unlabeled tree?"""

    spec_a: CaterpillarSpec
    spec_b: CaterpillarSpec
    equal: bool


@dataclass(frozen=True)
class GluingReport:
    identity: str
    rows: tuple[GluingRow, ...]

    @property
    def verdict(self) -> str:
        return HOLDS if all(row.equal for row in self.rows) else FAILS

    @property
    def counterexample(self) -> GluingRow | None:
        for row in self.rows:
            if not row.equal:
                return row
        return None

    def to_json_dict(self) -> dict:
        out = {
            "identity": self.identity,
            "points": len(self.rows),
            "verdict": self.verdict,
        }
        bad = self.counterexample
        if bad is not None:
            out["counterexample"] = {
                "spec_a": _spec_params(bad.spec_a),
                "spec_b": _spec_params(bad.spec_b),
            }
        return out

    def to_text(self) -> str:
        lines = [f"{self.identity}: {self.verdict} ({len(self.rows)} points)"]
        bad = self.counterexample
        if bad is not None:
            lines.append(
                f"  counterexample {_spec_text(bad.spec_a)} vs {_spec_text(bad.spec_b)}"
            )
        return "\n".join(lines)


def _gluing_row(spec_a: CaterpillarSpec, spec_b: CaterpillarSpec) -> GluingRow:
    equal = canonical_code(construct(spec_a)) == canonical_code(construct(spec_b))
    return GluingRow(spec_a, spec_b, equal)


def audit_gluing_b1_b2(ns: Iterable[int]) -> GluingReport:
    """B1 at minimal d and maximal x coincides with B2 at maximal d, x=1."""
    rows = []
    for n in ns:
        d1 = -(-(n - 2) // 4)
        x1 = (4 + 4 * d1 - n) // 2
        rows.append(
            _gluing_row(
                CaterpillarSpec(Family.B1, n, d1, x1),
                CaterpillarSpec(Family.B2, n, n // 4, 1),
            )
        )
    if not rows:
        raise InvalidGrid("no vertex counts supplied")
    return GluingReport(identity="B1-B2-join", rows=tuple(rows))


def audit_gluing_shift(family: Family, ns: Iterable[int]) -> GluingReport:
    """Maximal x at one d coincides with x=1 at the previous d (G3/G4)."""
    if family not in (Family.G3, Family.G4):
        raise InvalidGrid(f"d-shift identity applies to G3/G4, not {family.name}")
    rows = []
    for n in ns:
        for entry in _domain_entries(family, n):
            try:
                prev = CaterpillarSpec(family, n, entry.d - 1, 1, 0)
            except InvalidSpec:
                continue
            for s in (0, 1):
                rows.append(
                    _gluing_row(
                        CaterpillarSpec(family, n, entry.d, entry.x_max, s),
                        CaterpillarSpec(family, n, entry.d - 1, 1, s),
                    )
                )
    if not rows:
        raise InvalidGrid("no admissible d-shift pairs in range")
    return GluingReport(identity=f"{family.name}-d-shift", rows=tuple(rows))


def audit_gluing_cross(ns: Iterable[int]) -> GluingReport:
    """G3 at minimal d and maximal x coincides with G4 at maximal d, x=1."""
    rows = []
    for n in ns:
        d3 = -(-(n - 3) // 4)
        x3 = (4 + 4 * d3 - (n - 1)) // 2
        d4 = (n - 1) // 4
        for s in (0, 1):
            rows.append(
                _gluing_row(
                    CaterpillarSpec(Family.G3, n, d3, x3, s),
                    CaterpillarSpec(Family.G4, n, d4, 1, s),
                )
            )
    if not rows:
        raise InvalidGrid("no vertex counts supplied")
    return GluingReport(identity="G3-G4-join", rows=tuple(rows))


def _domain_entries(family: Family, n: int):
    return param_domain(family, n).entries


@dataclass(frozen=True)
class BatteryEntry:
    """One identity audited on the two stock grids."""

    identity: str
    report_a: AuditReport | GluingReport
    report_b: AuditReport | GluingReport

    @property
    def stable(self) -> bool:
        return self.report_a.verdict == self.report_b.verdict


def _gluing_ns(parity: int, label: str) -> range:
    if parity == 0:
        return range(18, 33, 2) if label == "A" else range(34, 49, 2)
    return range(21, 36, 2) if label == "A" else range(37, 52, 2)


def audit_battery(parity: str) -> tuple[BatteryEntry, ...]:
    """Every identity of one parity, audited on grids A and B."""
    if parity == "even":
        bases = (Family.B1, Family.B2)
        tops = (Family.G1, Family.G2)
    elif parity == "odd":
        bases = ()
        tops = (Family.G3, Family.G4)
    else:
        raise InvalidGrid(f"parity must be 'even' or 'odd', got {parity!r}")
    entries = []

    def run(identity: str, make: Callable[[str], AuditReport | GluingReport]) -> None:
        entries.append(BatteryEntry(identity, make("A"), make("B")))

    for family in bases:
        run(family.name, lambda lb, f=family: audit_family(f, default_grid(f, lb)))
    for family in tops:
        run(family.name, lambda lb, f=family: audit_family(f, default_grid(f, lb)))
        run(
            f"{family.name}-increment",
            lambda lb, f=family: audit_increment(f, default_grid(f, lb)),
        )
        run(
            f"{family.name}-x-step",
            lambda lb, f=family: audit_x_step(f, default_grid(f, lb)),
        )
        run(
            f"{family.name}-s-offset",
            lambda lb, f=family: audit_s_offset(f, default_grid(f, lb)),
        )
    if parity == "even":
        run("B1-B2-join", lambda lb: audit_gluing_b1_b2(_gluing_ns(0, lb)))
    else:
        run("G3-d-shift", lambda lb: audit_gluing_shift(Family.G3, _gluing_ns(1, lb)))
        run("G4-d-shift", lambda lb: audit_gluing_shift(Family.G4, _gluing_ns(1, lb)))
        run("G3-G4-join", lambda lb: audit_gluing_cross(_gluing_ns(1, lb)))
    return tuple(entries)


@dataclass(frozen=True)
class FittedForm:
    """Exact polynomial recovered from measurements.

    terms maps exponent tuples (one power per variable) to nonzero
    rational coefficients; verified_points counts the grid points the
    form reproduced exactly beyond those used to pin it down.
    """

    family: Family
    target: str
    variables: tuple[str, ...]
    caps: tuple[int, ...]
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]
    verified_points: int

    def evaluate(self, point: tuple[int, ...]) -> Fraction:
        total = Fraction(0)
        for powers, coeff in self.terms:
            term = coeff
            for value, power in zip(point, powers):
                term *= Fraction(value) ** power
            total += term
        return total

    def term_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for powers, coeff in self.terms:
            factors = []
            for name, power in zip(self.variables, powers):
                if power == 1:
                    factors.append(name)
                elif power > 1:
                    factors.append(f"{name}^{power}")
            if coeff.denominator == 1:
                c = str(coeff)
            else:
                c = f"({coeff})"
            if factors:
                mono = "*".join(factors)
                parts.append(mono if coeff == 1 else f"{c}*{mono}")
            else:
                parts.append(c)
        return " + ".join(parts)


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over exact rationals."""
    size = len(matrix)
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            raise SingularSystem(f"no pivot in column {col}")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = rows[col][col]
        rows[col] = [v / inv for v in rows[col]]
        for r in range(size):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[col])]
    return [rows[r][size] for r in range(size)]


def _measure_base(spec: CaterpillarSpec) -> int:
    return wiener(construct(spec))


def _measure_increment(spec: CaterpillarSpec) -> int:
    return wiener(construct(spec)) - wiener(construct(spec.base_spec))


# per family: target kind, variable names, default caps, fitting axes,
# holdout axes; every axes product must be admissible
_FIT_SETTINGS: dict[Family, tuple] = {
    Family.B1: (
        "wiener",
        ("n", "d", "x"),
        (3, 3, 2),
        ((38, 40, 42, 44), (12, 13, 14, 15), (1, 2, 3, 4)),
        ((46, 48, 50, 52, 54), (16, 17), (1, 2, 3)),
    ),
    Family.B2: (
        "wiener",
        ("n", "d", "x"),
        (3, 3, 2),
        ((38, 40, 42, 44), (5, 6, 7, 8), (1, 2, 3, 4)),
        ((46, 48, 50, 52, 54), (4, 9), (1, 2, 3)),
    ),
    Family.G1: (
        "increment",
        ("n", "d", "x", "s"),
        (2, 2, 1, 2),
        ((38, 40, 42), (12, 13, 14), (1, 2), (-1, 0, 1, 2)),
        ((44, 46), (12, 13), (1, 2), (-1, 0, 1, 2)),
    ),
    Family.G2: (
        "increment",
        ("n", "d", "x", "s"),
        (1, 2, 1, 2),
        ((38, 40, 42), (5, 6, 7), (1, 2), (-1, 0, 1, 2)),
        ((44, 46), (4, 8), (1, 2), (-1, 0, 1, 2)),
    ),
    Family.G3: (
        "increment",
        ("n", "d", "x", "s"),
        (2, 2, 1, 1),
        ((39, 41, 43), (12, 13, 14), (1, 2), (0, 1)),
        ((45, 47), (12, 13), (1, 2, 3), (0, 1)),
    ),
    Family.G4: (
        "increment",
        ("n", "d", "x", "s"),
        (1, 2, 1, 1),
        ((39, 41, 43), (5, 6, 7), (1, 2), (0, 1)),
        ((45, 47), (4, 8), (1, 2), (0, 1)),
    ),
}


def _spec_at(family: Family, point: tuple[int, ...]) -> CaterpillarSpec:
    if family.is_base:
        n, d, x = point
        return CaterpillarSpec(family, n, d, x)
    n, d, x, s = point
    return CaterpillarSpec(family, n, d, x, s)


def _monomial(point: tuple[int, ...], powers: tuple[int, ...]) -> Fraction:
    value = Fraction(1)
    for v, p in zip(point, powers):
        value *= Fraction(v) ** p
    return value


def fit_closed_form(family: Family, caps: dict[str, int] | None = None) -> FittedForm:
    """Recover the exact polynomial for W (bases) or the increment (G).

    Solves an exact interpolation system on a square sub-tensor of the
    fitting grid, then demands exact agreement on every remaining grid
    point and on a disjoint holdout grid.  Caps below the true degree
    surface as VerificationFailure; they are never silently absorbed.
    """
    target_kind, variables, default_caps, fit_axes, holdout_axes = _FIT_SETTINGS[family]
    cap_list = list(default_caps)
    if caps:
        for name, value in caps.items():
            if name not in variables:
                raise InvalidGrid(f"{family.name} has no parameter {name!r}")
            if value < 0:
                raise InvalidGrid(f"negative cap for {name!r}")
            cap_list[variables.index(name)] = value
    caps_t = tuple(cap_list)
    for name, cap, axis in zip(variables, caps_t, fit_axes):
        if cap + 1 > len(axis):
            raise InvalidGrid(
                f"cap {cap} on {name!r} needs {cap + 1} grid values, axis has {len(axis)}"
            )
    measure = _measure_base if target_kind == "wiener" else _measure_increment

    exponents = [
        powers
        for powers in product(*(range(c + 1) for c in caps_t))
    ]
    square_axes = [axis[: cap + 1] for axis, cap in zip(fit_axes, caps_t)]
    square_points = [tuple(p) for p in product(*square_axes)]
    matrix = [[_monomial(pt, powers) for powers in exponents] for pt in square_points]
    rhs = [Fraction(measure(_spec_at(family, pt))) for pt in square_points]
    coeffs = _solve_exact(matrix, rhs)
    terms = tuple(
        (powers, coeff)
        for powers, coeff in sorted(
            zip(exponents, coeffs),
            key=lambda item: (-sum(item[0]), tuple(-p for p in item[0])),
        )
        if coeff != 0
    )
    form = FittedForm(
        family=family,
        target=target_kind,
        variables=variables,
        caps=caps_t,
        terms=terms,
        verified_points=0,
    )
    seen = set(square_points)
    check_points = [
        tuple(p) for p in product(*fit_axes) if tuple(p) not in seen
    ] + [tuple(p) for p in product(*holdout_axes)]
    for pt in check_points:
        expected = Fraction(measure(_spec_at(family, pt)))
        if form.evaluate(pt) != expected:
            raise VerificationFailure(
                f"fitted {family.name} {target_kind} misses point {pt}: "
                f"form gives {form.evaluate(pt)}, direct gives {expected}"
            )
    return FittedForm(
        family=form.family,
        target=form.target,
        variables=form.variables,
        caps=form.caps,
        terms=form.terms,
        verified_points=len(check_points),
    )
