"""Exception hierarchy shared by all modules.

Three tiers matter to callers:

* construction and parameter errors (bad input, rejected spec) -- these
  map to CLI exit code 2;
* unsatisfiable queries (a well-formed question whose answer is "no such
  tree") -- exit code 3;
* internal invariant violations (the library caught itself producing a
  wrong answer) -- exit code 4.
"""

from __future__ import annotations


class WienerintError(Exception):
    """Base class for every error raised by this package."""


# -- tree construction ------------------------------------------------------

class TreeBuildError(WienerintError):
    """A vertex/edge list does not describe a valid labeled tree."""


class WrongEdgeCount(TreeBuildError):
    """Edge count differs from n - 1."""


class SelfLoop(TreeBuildError):
    """An edge joins a vertex to itself."""


class DuplicateEdge(TreeBuildError):
    """The same unordered pair appears twice."""


class LabelOutOfRange(TreeBuildError):
    """A vertex label falls outside [0, n - 1]."""


class Disconnected(TreeBuildError):
    """The edge set does not connect all n vertices."""


class MalformedEdgeList(TreeBuildError):
    """Edge-list text does not follow the serialization format."""


class Overflow(WienerintError):
    """A value cannot be represented exactly.

    Python integers are arbitrary precision, so ordinary Wiener
    arithmetic never overflows here.  The error is reserved for the
    reference oracle, whose distance matrix passes through 64-bit
    floats and must refuse inputs where that conversion could round.
    """


# -- parameters and specs ---------------------------------------------------

class ParityMismatch(WienerintError):
    """Vertex count parity does not match the requested family."""


class TooSmall(WienerintError):
    """Vertex count below the smallest size the operation supports."""


class TooLarge(WienerintError):
    """Vertex count above the hard cap of an exhaustive operation."""


class InvalidSpec(WienerintError):
    """A caterpillar parameter tuple violates its family's constraints."""


# -- leaf relocation --------------------------------------------------------

class NotCaterpillar(WienerintError):
    """The tree's interior vertices do not induce a path."""


class Ineligible(WienerintError):
    """The chosen vertex cannot donate two leaves."""


class TooManySteps(WienerintError):
    """Requested step count exceeds the schedule's capacity."""


# -- spectrum queries -------------------------------------------------------

class EmptyIndex(WienerintError):
    """No progression was admissible for this vertex count."""


class Unsatisfiable(WienerintError):
    """A solve query provably has no answer in the indexed set.

    Subclasses carry a short machine-readable reason used by the CLI.
    """

    reason = "unsatisfiable"


class ParityViolation(Unsatisfiable):
    """Odd vertex count admits only even Wiener values."""

    reason = "parity"


class OutOfRange(Unsatisfiable):
    """Target value lies outside [W(star), W(path)]."""

    reason = "range"


class NotCovered(Unsatisfiable):
    """Target value is feasible a priori but not constructively indexed."""

    reason = "not-covered"


# -- audit ------------------------------------------------------------------

class InvalidGrid(WienerintError):
    """An audit grid is empty or contains an inadmissible point."""


class SingularSystem(WienerintError):
    """The interpolation system has no unique solution."""


class VerificationFailure(WienerintError):
    """A fitted polynomial missed a held-out point."""


# -- self checks ------------------------------------------------------------

class InternalInvariant(WienerintError):
    """The library detected its own output violating a proven invariant."""
