"""Exception hierarchy shared by every module."""
from __future__ import annotations

from typing import Any


class PrekosmosError(Exception):
    """Base class; ``witness`` carries the first offending datum when known."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class ShapeMismatch(PrekosmosError):
    pass


class SectionInvalid(PrekosmosError):
    pass


class RetractionInvalid(PrekosmosError):
    pass


class NotCoequalizing(PrekosmosError):
    pass


class NotEqualizing(PrekosmosError):
    pass


class NotBijective(PrekosmosError):
    pass


class NotInvertible(PrekosmosError):
    pass


class InvalidPoint(PrekosmosError):
    pass


class NotComposable(PrekosmosError):
    pass


class CarrierTooLarge(PrekosmosError):
    pass


class NotDimTwo(PrekosmosError):
    pass


class NotUnital(PrekosmosError):
    pass


class NotTorsorMorphism(PrekosmosError):
    pass


class RoundTripFailure(PrekosmosError):
    pass


class ReconstructionMismatch(PrekosmosError):
    pass


class GroupMismatch(PrekosmosError):
    pass


class AxiomFailure(PrekosmosError):
    """Raised by validators; ``reports`` lists every failed equation."""

    def __init__(self, message: str, reports: list):
        first = reports[0].witness if reports else None
        super().__init__(message, first)
        self.reports = reports


class ActionLawFailure(AxiomFailure):
    pass


class TauNotIso(PrekosmosError):
    pass


class ParseError(PrekosmosError):
    pass
