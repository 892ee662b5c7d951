"""Exception hierarchy.

Every domain error carries a ``code`` (the class name by default) so the
command line front end can report violations in a machine-readable way.
"""

from __future__ import annotations


class PolytropError(Exception):
    """Base class for all domain errors raised by this package."""

    def __init__(self, message: str = "", **detail):
        super().__init__(message or type(self).__name__)
        self.detail = detail

    @property
    def code(self) -> str:
        return type(self).__name__

    def report(self) -> dict:
        out = {"violation": self.code, "message": str(self)}
        if self.detail:
            out["detail"] = self.detail
        return out


# exact geometry
class DimensionMismatch(PolytropError, ValueError):
    pass


class Unbounded(PolytropError, ValueError):
    pass


class EmptyPolytope(PolytropError, ValueError):
    pass


class BadDimension(PolytropError, ValueError):
    pass


# periodic complexes
class PeriodicityError(PolytropError):
    """A candidate complex violates one of the periodic decomposition axioms."""


class NotFaceClosed(PeriodicityError):
    pass


class BadPairwiseIntersection(PeriodicityError):
    pass


class LatticeOverlap(PeriodicityError):
    pass


class NotGammaRational(PeriodicityError):
    pass


class CoverageGap(PeriodicityError):
    pass


class NotLatticeStable(PolytropError):
    pass


class NotCovered(PolytropError):
    pass


class LatticeMismatch(PolytropError):
    pass


# skeletons
class BadParams(PolytropError, ValueError):
    pass


class InconsistentOnFaces(PolytropError):
    pass


class MissingData(PolytropError, KeyError):
    pass


# tropical maps
class LatticeNotPreserved(PolytropError):
    pass


# measures
class UnknownCell(PolytropError, KeyError):
    pass


class CarrierMismatch(PolytropError):
    pass


class NonInjectivePiece(PolytropError):
    pass


class TargetNotSubdivisional(PolytropError):
    pass


class NotExpressible(PolytropError):
    pass


class NotSubdivisional(PolytropError):
    pass


class DegenerateWeighted(PolytropError):
    pass


# bogomolov engine
class StabilizerNotTrivial(PolytropError):
    pass


class NoMeasure(PolytropError):
    pass


class NotSimple(PolytropError):
    pass


class NotDegenerateHere(PolytropError):
    pass


# rank calculus
class NotSimpleFactor(PolytropError):
    pass


class Disconnected(PolytropError):
    pass


class GenusMismatch(PolytropError):
    pass
