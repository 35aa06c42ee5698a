"""The first Grigorchuk group G = <a, b, c, d> acting on the binary tree.

Words are plain strings over ``"abcd"``; the empty string is the identity.
Every generator is an involution, so the inverse of a word is its reversal.

The generators satisfy the wreath recursion::

    a = phi(I, I; swap),  b = phi(a, c),  c = phi(a, d),  d = phi(I, b)

Internally, words are handled as byte codes ``a=0, b=1, c=2, d=3`` so that
fusing two of ``b, c, d`` into the third is an XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import OrderBudgetExceeded, WordParseError
from .tree import PORTRAIT_CAP, FinitePortrait, _check_depth

LETTERS = "abcd"
DEFAULT_K_MAX = 30

_TO_CODES = bytes.maketrans(b"abcd", b"\x00\x01\x02\x03")
_FROM_CODES = bytes.maketrans(b"\x00\x01\x02\x03", b"abcd")
_SKIP = 4  # placeholder for an identity produced by a rewriting rule

# Coordinates of b, c, d under psi: b -> (a, c), c -> (a, d), d -> (I, b).
_COORD0 = bytes([_SKIP, 0, 0, _SKIP] + [_SKIP] * 252)
_COORD1 = bytes([_SKIP, 2, 3, 1] + [_SKIP] * 252)


def parse_word(text: str) -> str:
    """Validate a word, raising :class:`WordParseError` at the first bad character."""
    for i, ch in enumerate(text):
        if ch not in LETTERS:
            raise WordParseError(text, i)
    return text


def _codes(w) -> bytes:
    if isinstance(w, ReducedWord):
        w = w.letters
    return w.encode("ascii").translate(_TO_CODES)


def _letters(codes) -> str:
    return bytes(codes).translate(_FROM_CODES).decode("ascii")


def _reduce_codes(data) -> bytearray:
    # Stack reduction for the rules xx -> 1 and xy -> z ({x, y, z} = {b, c, d}).
    out = bytearray()
    pop = out.pop
    push = out.append
    for x in data:
        if out:
            t = out[-1]
            if x == 0:
                if t == 0:
                    pop()
                    continue
            elif t:
                y = t ^ x
                if y:
                    out[-1] = y
                else:
                    pop()
                continue
        push(x)
    return out


def _split_reduced_codes(w) -> tuple[bytes, bytes]:
    # On a reduced word the b/c/d letters sit at every other position and the
    # parity of a's preceding them alternates, so both coordinates come out of
    # slicing plus a table lookup.
    if not w:
        return b"", b""
    start = 1 if w[0] == 0 else 0
    stars = bytes(w[start::2])
    even = 1 if start else 0  # offset of the stars preceded by an even count of a's
    odd = 1 - even
    out0 = bytearray(len(stars))
    out1 = bytearray(len(stars))
    out0[even::2] = stars[even::2].translate(_COORD0)
    out0[odd::2] = stars[odd::2].translate(_COORD1)
    out1[even::2] = stars[even::2].translate(_COORD1)
    out1[odd::2] = stars[odd::2].translate(_COORD0)
    skip = bytes([_SKIP])
    return bytes(out0).replace(skip, b""), bytes(out1).replace(skip, b"")


def _split_codes(w) -> tuple[bytes, bytes]:
    # General form, valid for any spelling: the segment between the i-th and
    # (i+1)-th letter a is preceded by i copies of a.
    segs = bytes(w).split(b"\x00")
    out0 = [b""] * len(segs)
    out1 = [b""] * len(segs)
    out0[0::2] = [s.translate(_COORD0) for s in segs[0::2]]
    out0[1::2] = [s.translate(_COORD1) for s in segs[1::2]]
    out1[0::2] = [s.translate(_COORD1) for s in segs[0::2]]
    out1[1::2] = [s.translate(_COORD0) for s in segs[1::2]]
    skip = bytes([_SKIP])
    return b"".join(out0).replace(skip, b""), b"".join(out1).replace(skip, b"")


def reduced(w: str) -> str:
    """Reduced spelling of ``w`` as a plain string (see :func:`reduce`)."""
    return _letters(_reduce_codes(_codes(w)))


def classify_type(w) -> str | None:
    """Shape of a reduced spelling: ``"I"`` a...a, ``"II"`` a...*, ``"III"`` *...a, ``"IV"`` *...*.

    The empty word has no type and gives ``None``.
    """
    letters = w.letters if isinstance(w, ReducedWord) else w
    if not letters:
        return None
    first_a = letters[0] == "a"
    last_a = letters[-1] == "a"
    if first_a and last_a:
        return "I"
    if first_a:
        return "II"
    if last_a:
        return "III"
    return "IV"


@dataclass(frozen=True)
class ReducedWord:
    """A spelling alternating between ``a`` and one of ``b, c, d``."""

    letters: str

    def __post_init__(self):
        parse_word(self.letters)
        for x, y in zip(self.letters, self.letters[1:]):
            if x == y or (x != "a" and y != "a"):
                raise ValueError(f"{self.letters!r} is not reduced")

    @property
    def type_tag(self) -> str | None:
        return classify_type(self.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters


def reduce(w: str) -> ReducedWord:
    """Rewrite ``w`` with ``xx -> 1`` and ``bc -> d`` (and permutations) to a reduced spelling.

    Linear time, single left-to-right pass.  The result never gets longer,
    and reducing twice changes nothing.
    """
    return ReducedWord(reduced(w))


class WreathSplit(NamedTuple):
    """``psi(g) = (g0, g1; sigma)`` with the coordinates spelled as words."""

    w0: str
    w1: str
    sigma: int


def psi_split(w: str) -> WreathSplit:
    """Reduce ``w`` and apply the coordinate rewriting rules.

    ``sigma`` is the parity of the number of a's; when it is 0 the element
    fixes both level-1 vertices.
    """
    codes = _reduce_codes(_codes(w))
    w0, w1 = _split_reduced_codes(codes)
    return WreathSplit(_letters(w0), _letters(w1), codes.count(0) & 1)


def phi_rules(w: str) -> WreathSplit:
    """Coordinate words of ``w`` exactly as spelled, without reducing first."""
    codes = _codes(w)
    w0, w1 = _split_codes(codes)
    return WreathSplit(_letters(w0), _letters(w1), codes.count(0) & 1)


def _is_identity_codes(codes) -> bool:
    work = [codes]
    while work:
        w = _reduce_codes(work.pop())
        if not w:
            continue
        if len(w) == 1 or w.count(0) & 1:
            return False
        w0, w1 = _split_reduced_codes(w)
        work.append(w1)
        work.append(w0)
    return True


def is_identity(w: str) -> bool:
    """Decide ``w == I`` in G in O(n log n) time.

    Reduce, reject an odd number of a's, then recurse on both coordinates;
    each coordinate of a reduced word of length n >= 2 has length at most
    (n + 1) / 2.
    """
    return _is_identity_codes(_codes(w))


def inverse(w: str) -> str:
    return w[::-1]


def conjugate(g: str, x: str) -> str:
    """``g^x = x^-1 g x``."""
    return inverse(x) + g + x


def are_equal(u: str, v: str) -> bool:
    return is_identity(u + inverse(v))


def order_exponent(w: str, k_max: int = DEFAULT_K_MAX) -> int:
    """Smallest ``k <= k_max`` with ``w^(2^k) == I``; raises :class:`OrderBudgetExceeded`."""
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    power = reduced(w)
    for k in range(k_max + 1):
        if is_identity(power):
            return k
        power = reduced(power + power)
    raise OrderBudgetExceeded(w, k_max)


def order(w: str, k_max: int = DEFAULT_K_MAX) -> int:
    """Order of ``w``; every element of G has order a power of two."""
    return 1 << order_exponent(w, k_max)


_ETA = str.maketrans({"a": "aba", "b": "d", "c": "b", "d": "c"})


def eta(w: str) -> str:
    """Letterwise substitution a -> aba, b -> d, c -> b, d -> c."""
    return w.translate(_ETA)


def eta_iterates(k: int) -> list[str]:
    """``x_1 = a`` and ``x_{i+1} = eta(x_i)``, for ``i < k``."""
    xs = []
    x = "a"
    for _ in range(k):
        xs.append(x)
        x = eta(x)
    return xs


def _generator_signs(letter, depth):
    signs = np.zeros((1 << depth) - 1, dtype=np.uint8)
    if letter == "a":
        if depth:
            signs[0] = 1
        return signs
    skip = {"b": 2, "c": 1, "d": 0}[letter]
    # letter b, c, d swaps below 1^k 0 unless k = skip (mod 3)
    for k in range(depth - 1):
        if k % 3 != skip:
            signs[(1 << (k + 2)) - 3] = 1
    return signs


@lru_cache(maxsize=None)
def generator_portrait(letter: str, depth: int) -> FinitePortrait:
    """Portrait of a generator truncated at ``depth``, built from its explicit sign pattern."""
    parse_word(letter)
    if len(letter) != 1:
        raise ValueError("expected a single letter")
    _check_depth(depth)
    return FinitePortrait(depth, _generator_signs(letter, depth))


@lru_cache(maxsize=64)
def _generator_leaves(depth):
    return tuple(generator_portrait(x, depth).leaf_permutation() for x in LETTERS)


def word_action(w: str, depth: int) -> np.ndarray:
    """Leaf permutation of ``w`` at ``depth``, by composing generator actions letter by letter."""
    gens = _generator_leaves(depth)
    perm = np.arange(1 << depth, dtype=np.int64)
    for code in _codes(w):
        perm = gens[code][perm]
    return perm


def portrait_of(w: str, depth: int, cap: int = PORTRAIT_CAP) -> FinitePortrait:
    """Action of ``w`` on the tree truncated at ``depth``.

    Letters are composed one by one without any rewriting, so this is an
    independent check on :func:`reduce` and :func:`is_identity`.
    """
    parse_word(w)
    _check_depth(depth, cap)
    return FinitePortrait.from_leaf_permutation(word_action(w, depth), depth)


def faithful_depth(length: int) -> int:
    """Portrait depth used to certify words of the given length: ceil(log2(length + 2)) + 3."""
    return (length + 1).bit_length() + 3
