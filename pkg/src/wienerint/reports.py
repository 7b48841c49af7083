"""Interval report shared by the constructive index and the exact oracle."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class IntervalReport:
    """Largest parity-respecting contiguous run of Wiener values.

    ``parity_step`` is 1 for even vertex counts and 2 for odd ones
    (odd n forces even W, so only even values can ever be contiguous).
    ``claimed_lo``/``claimed_hi`` hold the endpoint values measured on
    the endpoint constructions when the report comes from the
    constructive index; the exhaustive oracle leaves them None.
    ``gaps`` lists every parity-consistent value missing between the
    claimed endpoints, so a shortfall is never silent.
    """

    n: int
    parity_step: int
    measured_lo: int
    measured_hi: int
    run_length: int
    claimed_lo: int | None = None
    claimed_hi: int | None = None
    gaps: tuple[int, ...] = ()
    progression_count: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "parity_step": self.parity_step,
            "measured_lo": self.measured_lo,
            "measured_hi": self.measured_hi,
            "claimed_lo": self.claimed_lo,
            "claimed_hi": self.claimed_hi,
            "run_length": self.run_length,
            "gaps": list(self.gaps),
            "progression_count": self.progression_count,
        }


def longest_parity_run(is_member, lo: int, hi: int, step: int) -> tuple[int, int]:
    """Endpoints of the longest run lo' <= v <= hi' with stride `step`.

    Only values congruent to lo modulo step participate for step 2 (the
    odd-n case starts at the star value, which is even).  Returns the
    run with the smallest left endpoint among ties.
    """
    best = (lo, lo)
    best_len = 0
    current_start: int | None = None
    v = lo
    while v <= hi:
        if is_member(v):
            if current_start is None:
                current_start = v
            length = (v - current_start) // step + 1
            if length > best_len:
                best_len = length
                best = (current_start, v)
        else:
            current_start = None
        v += step
    if best_len == 0:
        raise ValueError("no values in range")
    return best
