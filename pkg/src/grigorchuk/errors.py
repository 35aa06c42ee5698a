"""Exception types raised across the package."""


class GrigorchukError(Exception):
    """Base class for all errors raised by this package."""


class DepthError(GrigorchukError, ValueError):
    """A vertex or portrait depth is out of range for the operation."""


class DepthMismatchError(GrigorchukError, ValueError):
    pass


class ResourceCapError(GrigorchukError):
    """A requested size exceeds a configured cap (memory/time guard)."""


class WordParseError(GrigorchukError, ValueError):
    def __init__(self, text, position):
        self.text = text
        self.position = position
        super().__init__(
            f"invalid letter {text[position]!r} at position {position}; "
            "words are spelled over 'abcd'"
        )


class DomainError(GrigorchukError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class OrderBudgetExceeded(GrigorchukError):
    """No power 2^k with k <= k_max gave the identity.

    This is a budget signal, not a claim of infinite order.
    """

    def __init__(self, word, k_max):
        self.word = word
        self.k_max = k_max
        super().__init__(f"order of {word!r} exceeds 2^{k_max}")


class InsufficientRadiusError(GrigorchukError):
    """An element needed for a true-length lookup lies outside the ball."""


class KeyCollisionError(GrigorchukError):
    """Two distinct group elements produced the same portrait key."""
