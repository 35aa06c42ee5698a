"""Finite portraits of automorphisms of the rooted binary tree.

A vertex is a finite 0/1 word; the root is the empty word.  An
automorphism truncated at depth ``m`` is stored as its *portrait*: one
swap sign per vertex of level ``< m``, packed in heap order (root at
index 0, children of ``i`` at ``2i + 1`` and ``2i + 2``).  A depth-``m``
portrait is exactly an element of the finite group ``A_m``.

Composition uses left multiplication throughout the package::

    apply(compose(p, q), v) == apply(q, apply(p, v))

i.e. ``p * q`` acts by ``p`` first, then ``q``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DepthError, DepthMismatchError, ResourceCapError

ENUMERATION_CAP = 4
PORTRAIT_CAP = 24


@dataclass(frozen=True)
class Vertex:
    """A tree vertex as a tuple of bits read from the root."""

    bits: tuple[int, ...] = ()

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"vertex bits must be 0/1, got {self.bits!r}")

    @classmethod
    def parse(cls, text: str) -> "Vertex":
        if any(ch not in "01" for ch in text):
            raise ValueError(f"vertex strings use only '0' and '1': {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @property
    def level(self) -> int:
        return len(self.bits)

    @property
    def heap_index(self) -> int:
        value = 0
        for b in self.bits:
            value = 2 * value + b
        return (1 << len(self.bits)) - 1 + value

    def child(self, bit: int) -> "Vertex":
        return Vertex(self.bits + (bit,))

    def __str__(self):
        return "".join(map(str, self.bits)) or "r"


ROOT = Vertex()


def _check_depth(depth, cap=PORTRAIT_CAP):
    if depth < 0:
        raise DepthError(f"depth must be non-negative, got {depth}")
    if depth > cap:
        raise ResourceCapError(f"depth {depth} exceeds the portrait cap {cap}")


def _leaves_from_signs(signs, depth):
    img = np.zeros(1, dtype=np.int64)
    for j in range(depth):
        s = signs[(1 << j) - 1:(1 << (j + 1)) - 1].astype(np.int64)
        nxt = np.empty(1 << (j + 1), dtype=np.int64)
        nxt[0::2] = 2 * img + s
        nxt[1::2] = 2 * img + (1 - s)
        img = nxt
    return img


def _signs_from_leaves(perm, depth):
    signs = np.empty((1 << depth) - 1, dtype=np.uint8)
    for j in range(depth):
        shift = depth - j
        leftmost = np.arange(1 << j, dtype=np.int64) << shift
        signs[(1 << j) - 1:(1 << (j + 1)) - 1] = (perm[leftmost] >> (shift - 1)) & 1
    return signs


class FinitePortrait:
    """Depth-``m`` portrait: a 0/1 sign for each of the ``2**m - 1`` vertices above level ``m``.

    Instances are immutable and hashable; equality compares depth and signs.
    """

    __slots__ = ("_depth", "_signs", "_leaves", "_hash")

    def __init__(self, depth: int, signs: Iterable[int] | np.ndarray | None = None):
        _check_depth(depth)
        size = (1 << depth) - 1
        if signs is None:
            arr = np.zeros(size, dtype=np.uint8)
        else:
            arr = np.array(signs, dtype=np.uint8).ravel()
            if arr.shape[0] != size:
                raise ValueError(f"depth {depth} needs {size} signs, got {arr.shape[0]}")
            if np.any(arr > 1):
                raise ValueError("signs must be 0 or 1")
        arr.setflags(write=False)
        self._depth = depth
        self._signs = arr
        self._leaves = None
        self._hash = None

    @classmethod
    def identity(cls, depth: int) -> "FinitePortrait":
        return cls(depth)

    @classmethod
    def from_leaf_permutation(cls, perm, depth: int) -> "FinitePortrait":
        """Rebuild the portrait from its action on the ``2**depth`` leaves."""
        perm = np.asarray(perm, dtype=np.int64)
        if perm.shape != (1 << depth,):
            raise ValueError("leaf permutation has the wrong length")
        p = cls(depth, _signs_from_leaves(perm, depth))
        leaves = perm.copy()
        leaves.setflags(write=False)
        p._leaves = leaves
        return p

    @property
    def depth(self) -> int:
        return self._depth

    @property
    def signs(self) -> np.ndarray:
        return self._signs

    def sign(self, v: Vertex) -> int:
        if v.level >= self._depth:
            raise DepthError(f"no sign stored at level {v.level} of a depth-{self._depth} portrait")
        return int(self._signs[v.heap_index])

    def leaf_permutation(self) -> np.ndarray:
        """Action on level ``depth``: leaf ``x`` (bits read MSB first) maps to ``perm[x]``."""
        if self._leaves is None:
            leaves = _leaves_from_signs(self._signs, self._depth)
            leaves.setflags(write=False)
            self._leaves = leaves
        return self._leaves

    def is_identity(self) -> bool:
        return not self._signs.any()

    def key(self) -> bytes:
        """Compact canonical bytes (packed signs); injective for a fixed depth."""
        return np.packbits(self._signs).tobytes()

    def __mul__(self, other: "FinitePortrait") -> "FinitePortrait":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, FinitePortrait):
            return NotImplemented
        return self._depth == other._depth and np.array_equal(self._signs, other._signs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._depth, self._signs.tobytes()))
        return self._hash

    def __repr__(self):
        return f"FinitePortrait({self._depth}, {format_portrait(self)!r})"


def apply(p: FinitePortrait, v: Vertex) -> Vertex:
    """Image of ``v`` under ``p``: bit ``i`` flips iff the sign at the current prefix is 1."""
    if v.level > p.depth:
        raise DepthError(f"vertex of level {v.level} is deeper than portrait depth {p.depth}")
    out = []
    index = 0
    for i, b in enumerate(v.bits):
        out.append(b ^ int(p.signs[index]))
        index = 2 * index + 1 + b
    return Vertex(tuple(out))


def compose(p: FinitePortrait, q: FinitePortrait) -> FinitePortrait:
    """The product ``p * q``: act by ``p``, then by ``q``."""
    if p.depth != q.depth:
        raise DepthMismatchError(f"cannot compose depths {p.depth} and {q.depth}")
    return FinitePortrait.from_leaf_permutation(q.leaf_permutation()[p.leaf_permutation()], p.depth)


def inverse(p: FinitePortrait) -> FinitePortrait:
    perm = p.leaf_permutation()
    inv = np.empty_like(perm)
    inv[perm] = np.arange(perm.shape[0], dtype=perm.dtype)
    return FinitePortrait.from_leaf_permutation(inv, p.depth)


def power(p: FinitePortrait, n: int) -> FinitePortrait:
    result = FinitePortrait.identity(p.depth)
    base = p
    while n > 0:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


def portrait_order(p: FinitePortrait) -> int:
    """Order of ``p`` in ``A_m`` by repeated composition."""
    current = p
    n = 1
    while not current.is_identity():
        current = compose(current, p)
        n += 1
    return n


def wreath_compose(p0: FinitePortrait, p1: FinitePortrait, swap: int) -> FinitePortrait:
    """phi(p0, p1; swap): root sign ``swap``, ``p0`` on subtree 0, ``p1`` on subtree 1."""
    if p0.depth != p1.depth:
        raise DepthMismatchError(f"subtree portraits have depths {p0.depth} and {p1.depth}")
    if swap not in (0, 1):
        raise ValueError("swap must be 0 or 1")
    m = p0.depth
    signs = np.empty((1 << (m + 1)) - 1, dtype=np.uint8)
    signs[0] = swap
    for j in range(m):
        lo, hi = (1 << j) - 1, (1 << (j + 1)) - 1
        width = 1 << j
        start = (1 << (j + 1)) - 1
        signs[start:start + width] = p0.signs[lo:hi]
        signs[start + width:start + 2 * width] = p1.signs[lo:hi]
    return FinitePortrait(m + 1, signs)


def wreath_split(p: FinitePortrait) -> tuple[FinitePortrait, FinitePortrait, int]:
    """Inverse of :func:`wreath_compose`."""
    if p.depth < 1:
        raise DepthError("a depth-0 portrait has no root sign to split off")
    m = p.depth - 1
    s0 = np.empty((1 << m) - 1, dtype=np.uint8)
    s1 = np.empty_like(s0)
    for j in range(m):
        lo, hi = (1 << j) - 1, (1 << (j + 1)) - 1
        width = 1 << j
        start = (1 << (j + 1)) - 1
        s0[lo:hi] = p.signs[start:start + width]
        s1[lo:hi] = p.signs[start + width:start + 2 * width]
    return FinitePortrait(m, s0), FinitePortrait(m, s1), int(p.signs[0])


def subtree_embed(p: FinitePortrait, anchor: Vertex) -> FinitePortrait:
    """Copy ``p`` onto the subtree rooted at ``anchor``; trivial elsewhere."""
    m, k = p.depth, anchor.level
    _check_depth(m + k)
    signs = np.zeros((1 << (m + k)) - 1, dtype=np.uint8)
    offset = 0
    for b in anchor.bits:
        offset = 2 * offset + b
    for j in range(m):
        level = j + k
        width = 1 << j
        start = (1 << level) - 1 + offset * width
        signs[start:start + width] = p.signs[(1 << j) - 1:(1 << (j + 1)) - 1]
    return FinitePortrait(m + k, signs)


def vertex_swap(v: Vertex, depth: int) -> FinitePortrait:
    """The automorphism a_v swapping the two branches below ``v``."""
    if v.level >= depth:
        raise DepthError(f"a_v with |v| = {v.level} needs depth > {v.level}")
    signs = np.zeros((1 << depth) - 1, dtype=np.uint8)
    signs[v.heap_index] = 1
    return FinitePortrait(depth, signs)


def root_swap(depth: int) -> FinitePortrait:
    return vertex_swap(ROOT, depth)


def enumerate_Am(m: int, cap: int = ENUMERATION_CAP) -> set[FinitePortrait]:
    """All of A_m, by closure of the generators ``a_v`` (``|v| < m``) under composition."""
    if m < 0:
        raise DepthError("m must be non-negative")
    if m > cap:
        raise ResourceCapError(
            f"|A_{m}| = 2^{(1 << m) - 1}; enumeration refused above m = {cap}"
        )
    gens = []
    for level in range(m):
        for x in range(1 << level):
            bits = tuple((x >> (level - 1 - i)) & 1 for i in range(level))
            gens.append(vertex_swap(Vertex(bits), m).leaf_permutation())
    start = np.arange(1 << m, dtype=np.int64)
    seen = {start.tobytes(): start}
    queue = deque([start])
    while queue:
        perm = queue.popleft()
        for g in gens:
            nxt = g[perm]
            key = nxt.tobytes()
            if key not in seen:
                seen[key] = nxt
                queue.append(nxt)
    return {FinitePortrait.from_leaf_permutation(perm, m) for perm in seen.values()}


def infinite_order_witness(m: int, cap: int = PORTRAIT_CAP) -> FinitePortrait:
    """Depth-``m`` truncation of the automorphism with sign 1 exactly on the vertices 1^k."""
    if m < 1:
        raise DepthError("m must be at least 1")
    _check_depth(m, cap)
    signs = np.zeros((1 << m) - 1, dtype=np.uint8)
    for k in range(m):
        signs[(1 << (k + 1)) - 2] = 1  # heap index of 1^k
    return FinitePortrait(m, signs)


def format_portrait(p: FinitePortrait) -> str:
    """Level-by-level sign string, levels separated by ``|`` (e.g. ``"1|00"``)."""
    return "|".join(
        "".join(str(int(s)) for s in p.signs[(1 << j) - 1:(1 << (j + 1)) - 1])
        for j in range(p.depth)
    )


def parse_portrait(text: str) -> FinitePortrait:
    """Inverse of :func:`format_portrait`; the empty string is the depth-0 portrait."""
    text = text.strip()
    if not text:
        return FinitePortrait(0)
    levels = text.split("|")
    signs = []
    for j, chunk in enumerate(levels):
        if len(chunk) != 1 << j or any(ch not in "01" for ch in chunk):
            raise ValueError(f"level {j} must be {1 << j} characters of 0/1, got {chunk!r}")
        signs.extend(int(ch) for ch in chunk)
    return FinitePortrait(len(levels), signs)
