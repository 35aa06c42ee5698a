"""Grigorchuk's first group: word problem, tree portraits and growth computations."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DepthError,
    DepthMismatchError,
    DomainError,
    GrigorchukError,
    InsufficientRadiusError,
    KeyCollisionError,
    OrderBudgetExceeded,
    ResourceCapError,
    WordParseError,
)
from .group import (  # noqa: E402
    ReducedWord,
    WreathSplit,
    are_equal,
    classify_type,
    eta,
    eta_iterates,
    is_identity,
    order,
    parse_word,
    portrait_of,
    psi_split,
    reduce,
    reduced,
)
from .tree import FinitePortrait, Vertex, compose, wreath_compose, wreath_split  # noqa: E402
from .growth import BallTable, GrowthSeries, enumerate_ball  # noqa: E402
from .bounds import star_convolution, lower_bound_constants  # noqa: E402

__all__ = [
    "BallTable", "DepthError", "DepthMismatchError", "DomainError", "FinitePortrait",
    "GrigorchukError", "GrowthSeries", "InsufficientRadiusError", "KeyCollisionError",
    "OrderBudgetExceeded", "ReducedWord", "ResourceCapError", "Vertex", "WordParseError",
    "WreathSplit", "are_equal", "classify_type", "compose", "enumerate_ball", "eta",
    "eta_iterates", "is_identity", "lower_bound_constants", "order", "parse_word",
    "portrait_of", "psi_split", "reduce", "reduced", "star_convolution", "wreath_compose",
    "wreath_split",
]
