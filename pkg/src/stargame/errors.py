"""Exception types shared across the package."""


class StargameError(Exception):
    """Base class for all package errors."""


class ParseError(StargameError):
    """Malformed game, order, strategy or CNF input."""


class InvalidVertexError(StargameError):
    """A vertex id that does not belong to the game."""


class CapabilityError(StargameError):
    """Operation needs an explicit (fully enumerated) game."""


class InvalidStrategyError(StargameError):
    """A strategy entry that is not an edge of the game."""


class IncompleteStrategyError(StargameError):
    """A reachable A-vertex with successors has no decision."""


class UnknownSymbolError(StargameError):
    """A label symbol outside the labeling alphabet."""


class OrderError(StargameError):
    """An order that cannot be built or applied to a game."""


class DegenerateSpecError(StargameError):
    """A generator parameter outside the supported range."""


class PreconditionError(StargameError):
    """A documented operation precondition does not hold."""


class ResourceLimitError(StargameError):
    """An enumeration or search exceeded its configured limit."""


class InvariantError(StargameError):
    """A solver runtime check failed; carries the loop iteration."""

    def __init__(self, message: str, iteration: int | None = None):
        super().__init__(message if iteration is None
                         else f"iteration {iteration}: {message}")
        self.iteration = iteration
