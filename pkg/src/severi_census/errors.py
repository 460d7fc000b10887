"""Exception hierarchy.

Every domain error carries a stable machine-readable ``code`` (its class
name), which the CLI copies verbatim into error payloads.
"""

from __future__ import annotations


class SeveriCensusError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


# -- exact lattice geometry ------------------------------------------------

class NotConvex(SeveriCensusError):
    """Input points have a reflex turn or three consecutive collinear vertices."""


class Degenerate(SeveriCensusError):
    """Fewer than three distinct points, or zero area."""


class RankDeficient(SeveriCensusError):
    """Generators span a line or a point instead of the plane."""


# -- censuses ----------------------------------------------------------------

class GenusOutOfRange(SeveriCensusError):
    """Requested genus is outside the range supported by the polygon."""


# -- triangulations ----------------------------------------------------------

class NoGeneratingPoint(SeveriCensusError):
    """No single interior lattice point completes the boundary points to a
    generating set of the target sublattice."""


class NotAdmissible(SeveriCensusError):
    """The (index, kappa) pair violates the parity/range admissibility rules."""


class EvenIndexUnsupported(SeveriCensusError):
    """The axis construction only handles odd index; route even index through
    the incremental construction on the sublattice structure."""


class MissingHeights(SeveriCensusError):
    """Operation needs a lifting certificate but the triangulation has none."""


class NotRegular(SeveriCensusError):
    """Attached heights do not certify convexity of the lift."""


class DualityViolation(SeveriCensusError):
    """Slope lattice and vertex lattice fail the quarter-turn duality; this
    indicates a construction bug, not bad input."""


# -- numeric curve layer -----------------------------------------------------

class ZeroPolynomial(SeveriCensusError):
    """All coefficients vanish."""


class NonConvergence(SeveriCensusError):
    """Root finder exhausted its budget or failed the residual contract."""


class DegenerateNode(SeveriCensusError):
    """A critical point of multiplicity > 1 sits at a matched critical value."""


class AmbiguousMatch(SeveriCensusError):
    """A critical value lies within tolerance of both target values."""


class ToleranceConflict(SeveriCensusError):
    """Clustering is unstable between the configured tolerance and 10x it."""


class InvalidPartition(SeveriCensusError):
    """Block sizes violate the structural bounds for node partitions."""


# -- CLI ----------------------------------------------------------------------

class UsageError(SeveriCensusError):
    """Unknown subcommand, unknown flag, or malformed flag value."""


class IoError(SeveriCensusError):
    """File could not be read or written."""
