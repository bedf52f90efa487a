"""Exception hierarchy.

Every failure the library can signal is a subclass of :class:`AlcoveError`.
Input validation problems additionally derive from :class:`ValueError`;
failed verification checks derive from :class:`CheckFailure`.
"""


class AlcoveError(Exception):
    pass


class CheckFailure(AlcoveError):
    """A computed object disagreed with the statement it was checked against."""


# scalars / graphs
class ScalarParseError(AlcoveError, ValueError):
    pass


class RadicandMismatch(AlcoveError, ValueError):
    pass


class DiagonalNotTwo(AlcoveError, ValueError):
    pass


class SignPatternViolation(AlcoveError, ValueError):
    pass


class BondValueInvalid(AlcoveError, ValueError):
    pass


class LengthMismatch(AlcoveError, ValueError):
    pass


class BoundExceeded(AlcoveError):
    pass


class NotFiniteType(AlcoveError, ValueError):
    pass


# catalog
class InvalidRank(AlcoveError, ValueError):
    pass


class UnknownType(AlcoveError, ValueError):
    pass


class NotAutomorphism(AlcoveError, ValueError):
    pass


class AdjacentOrbit(AlcoveError, ValueError):
    pass


class CertificateFailure(CheckFailure):
    pass


# game
class NonNegativeAmplitude(AlcoveError, ValueError):
    pass


class IllegalMove(AlcoveError, ValueError):
    def __init__(self, step, vertex, amplitude):
        super().__init__(
            f"step {step}: vertex {vertex} has amplitude {amplitude} and cannot be fired"
        )
        self.step = step
        self.vertex = vertex
        self.amplitude = amplitude


class WontTerminate(AlcoveError):
    pass


class StepCapExceeded(AlcoveError):
    pass


class NodeCapExceeded(AlcoveError):
    pass


# strategy
class NotExtending(AlcoveError, ValueError):
    pass


class NoSinkReached(CheckFailure):
    pass


class TableMismatch(CheckFailure):
    pass


class SinkMismatch(CheckFailure):
    pass


class DiamondFailure(CheckFailure):
    pass


class NonConvergent(AlcoveError):
    pass


class EquivalenceFailure(CheckFailure):
    pass


# weyl
class NotInOrbit(CheckFailure):
    pass


class NotInPoset(AlcoveError, ValueError):
    pass


class FactorizationFailure(CheckFailure):
    pass


# poset
class GradingViolation(CheckFailure):
    pass


class InexactDivision(CheckFailure):
    pass


class NoAssignment(CheckFailure):
    pass


class IdentityFailure(CheckFailure):
    def __init__(self, clause, message):
        super().__init__(f"({clause}) {message}")
        self.clause = clause


class NotIsomorphic(CheckFailure):
    pass


# type A
class InvalidWindow(AlcoveError, ValueError):
    pass


class NotDominant(AlcoveError, ValueError):
    pass


class FormulaMismatch(CheckFailure):
    pass


# cli
class GateConflict(AlcoveError, ValueError):
    pass


class GateExceeded(AlcoveError):
    pass


class IoFailure(AlcoveError, OSError):
    pass
