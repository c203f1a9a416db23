"""Exception hierarchy shared by the exact core, reconstruction and geometry layers."""


class LatticeSchlichtError(Exception):
    """Base class for all toolkit errors."""


class InsufficientDepthError(LatticeSchlichtError, ValueError):
    """A Taylor prefix is too short for the requested order or truncation."""

    def __init__(self, needed: int, depth: int, what: str = "operation"):
        self.needed = needed
        self.depth = depth
        super().__init__(f"{what} needs depth >= {needed}, prefix has depth {depth}")


class NotNormalizedError(LatticeSchlichtError, ValueError):
    """A rational function violates P(0)=0, Q(0)!=0 or P'(0)/Q(0)=1."""


class FunctionParseError(LatticeSchlichtError, ValueError):
    """A function literal could not be parsed."""


class UnknownFunctionError(LatticeSchlichtError, KeyError):
    """A catalog id or alias does not exist."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown function"


class QuadratureError(LatticeSchlichtError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class EvaluationError(LatticeSchlichtError, ArithmeticError):
    """A function was evaluated at one of its zeros or poles."""


class InconclusiveRootTest(LatticeSchlichtError, ArithmeticError):
    """The exact zero-location recursion hit a singular step."""
