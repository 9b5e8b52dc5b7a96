"""Exception hierarchy shared by every module.

Each error may carry a ``witness``: the smallest piece of data that shows
why an operation was refused (a monomial, a group pair, a basis triple...).
The CLI maps the three families below onto exit codes.
"""

from __future__ import annotations

from typing import Any


class OrbfrobError(Exception):
    def __init__(self, message: str = "", witness: Any = None):
        super().__init__(message)
        self.witness = witness


class ParseFailure(OrbfrobError):
    """Malformed user input (exit code 2)."""


class PreconditionError(OrbfrobError):
    """Input is well formed but mathematically unacceptable (exit code 3)."""


class ResourceLimit(OrbfrobError):
    """A configured size bound was exceeded (exit code 4)."""


# exact
class NotRootOfUnity(PreconditionError):
    pass


class BranchAmbiguity(PreconditionError):
    pass


class NonIsolated(PreconditionError):
    pass


class NotQuasiHomogeneous(PreconditionError):
    pass


# group
class NotFinite(ResourceLimit):
    pass


class FieldTooSmall(PreconditionError):
    pass


# frobenius / gfrob
class DegenerateEta(PreconditionError):
    pass


class Indeterminate(PreconditionError):
    pass


class InvalidRamond(PreconditionError):
    pass


class NotSubgroup(PreconditionError):
    pass


class GroupMismatch(PreconditionError):
    pass


class CharacterMismatch(PreconditionError):
    pass


# special
class DegenerateSectorMetric(PreconditionError):
    pass


class PreconditionFailed(PreconditionError):
    pass


class NoSolution(PreconditionError):
    pass


class NotUnique(PreconditionError):
    pass


class SearchSpaceTooLarge(ResourceLimit):
    pass


# jacobian
class NonIsolatedRestriction(PreconditionError):
    pass


class NoAdmissibleCocycle(PreconditionError):
    pass


class SignObstruction(PreconditionError):
    pass


# mirror
class NotEuler(PreconditionError):
    pass


class IncompatibleMultiplication(PreconditionError):
    pass


# tqft
class WiringMismatch(PreconditionError):
    pass


# cli
class InputSyntaxError(ParseFailure):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}", witness=(line, col))
        self.line = line
        self.col = col


class UndeclaredVariable(ParseFailure):
    pass


class WeightMismatch(ParseFailure):
    pass
