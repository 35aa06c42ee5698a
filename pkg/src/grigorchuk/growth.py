"""Cayley-ball enumeration and the growth function of G in generators {a, b, c, d}."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import InsufficientRadiusError, KeyCollisionError, ResourceCapError
from .group import LETTERS, are_equal, generator_portrait, portrait_of
from .tree import FinitePortrait

log = logging.getLogger(__name__)

RADIUS_CAP = 14
MIN_KEY_DEPTH = 8


def default_key_depth(radius: int) -> int:
    """max(ceil(log2(R + 2)) + 3, 8): deep enough that distinct ball elements get distinct keys."""
    return max((radius + 1).bit_length() + 3, MIN_KEY_DEPTH)


class BallEntry(NamedTuple):
    length: int
    witness: str
    certified: bool  # a colliding spelling was checked equal by the solver


@dataclass
class GrowthSeries:
    """gamma(0..N): the number of elements of length at most n."""

    values: list[int]
    meta: dict = field(default_factory=dict)

    @property
    def radius(self) -> int:
        return len(self.values) - 1

    @property
    def spheres(self) -> list[int]:
        return [self.values[0]] + [b - a for a, b in zip(self.values, self.values[1:])]

    def __getitem__(self, n):
        return self.values[n]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


class BallTable:
    """Elements of the ball, keyed by their portrait at ``key_depth``, with true lengths."""

    def __init__(self, key_depth: int, radius: int):
        self.key_depth = key_depth
        self.radius = radius
        self.entries: dict[bytes, BallEntry] = {}
        self.source = None

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.values())

    def key_of(self, word: str) -> bytes:
        return portrait_of(word, self.key_depth).key()

    def lookup(self, word: str) -> BallEntry:
        try:
            entry = self.entries[self.key_of(word)]
        except KeyError:
            raise InsufficientRadiusError(
                f"{word!r} is not in the radius-{self.radius} ball"
            ) from None
        if not are_equal(word, entry.witness):
            raise KeyCollisionError(f"{word!r} shares a key with {entry.witness!r}")
        return entry

    def length(self, word: str) -> int:
        """True Cayley length of the element spelled by ``word``."""
        return self.lookup(word).length

    def elements(self, max_length: int | None = None) -> list[BallEntry]:
        return [e for e in self.entries.values() if max_length is None or e.length <= max_length]

    def series(self) -> GrowthSeries:
        counts = [0] * (self.radius + 1)
        for e in self.entries.values():
            counts[e.length] += 1
        values = list(np.cumsum(counts).tolist())
        return GrowthSeries(values, {"element_count": len(self.entries), "radius": self.radius})


def enumerate_ball(
    radius: int,
    key_depth: int | None = None,
    *,
    cap: int = RADIUS_CAP,
    budget_secs: float | None = None,
    cache_dir=None,
) -> tuple[BallTable, GrowthSeries]:
    """Breadth-first search of the Cayley graph from I, right-multiplying by a, b, c, d.

    Elements are deduplicated by their portrait at ``key_depth``.  Every time
    a spelling lands on an existing key the solver confirms that the two
    spellings are equal; a failed confirmation raises
    :class:`KeyCollisionError`.  If ``budget_secs`` runs out the search stops
    after the current layer and ``meta["partial"]`` is set.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if radius > cap:
        raise ResourceCapError(f"radius {radius} exceeds the cap {cap}")
    if key_depth is None:
        key_depth = default_key_depth(radius)
    elif key_depth < (radius + 1).bit_length() + 3:
        raise ValueError(f"key depth {key_depth} is too shallow for radius {radius}")

    if cache_dir is not None:
        from .cache import load_ball

        cached = load_ball(cache_dir, radius, key_depth)
        if cached is not None:
            series = cached.series()
            series.meta.update(cache_id=str(cached.source), wall_time=0.0, partial=False)
            return cached, series

    started = time.perf_counter()
    table = BallTable(key_depth, radius)
    gens = [generator_portrait(x, key_depth).leaf_permutation() for x in LETTERS]
    identity = np.arange(1 << key_depth, dtype=np.int64)
    table.entries[FinitePortrait.from_leaf_permutation(identity, key_depth).key()] = BallEntry(0, "", False)
    frontier = [("", identity)]
    reached = 0
    for n in range(1, radius + 1):
        if budget_secs is not None and time.perf_counter() - started > budget_secs:
            log.warning("ball enumeration stopped at radius %d: budget exhausted", reached)
            break
        nxt = []
        for word, perm in frontier:
            for x, g in zip(LETTERS, gens):
                image = g[perm]
                candidate = word + x
                key = FinitePortrait.from_leaf_permutation(image, key_depth).key()
                entry = table.entries.get(key)
                if entry is None:
                    table.entries[key] = BallEntry(n, candidate, False)
                    nxt.append((candidate, image))
                else:
                    if not are_equal(candidate, entry.witness):
                        raise KeyCollisionError(
                            f"{candidate!r} and {entry.witness!r} agree to depth {key_depth} "
                            "but differ in G; the key depth is too small"
                        )
                    if not entry.certified:
                        table.entries[key] = entry._replace(certified=True)
        frontier = nxt
        reached = n
    table.radius = reached
    elapsed = time.perf_counter() - started
    series = table.series()
    series.meta.update(
        wall_time=elapsed,
        partial=reached < radius,
        requested_radius=radius,
        key_depth=key_depth,
        cache_id=None,
    )
    if cache_dir is not None and reached == radius:
        from .cache import save_ball

        series.meta["cache_id"] = str(save_ball(cache_dir, table))
    return table, series


def monotonicity_violations(series) -> list[int]:
    """Indices ``n`` with gamma(n + 1) <= gamma(n) (empty when increasing)."""
    v = list(series)
    return [n for n in range(len(v) - 1) if v[n + 1] <= v[n]]


def submultiplicative_violations(series) -> list[tuple[int, int]]:
    """Pairs ``(m, n)``, ``m <= n``, ``m + n <= N`` with gamma(m + n) > gamma(m) gamma(n)."""
    v = list(series)
    N = len(v) - 1
    return [
        (m, n)
        for m in range(N + 1)
        for n in range(m, N + 1 - m)
        if v[m + n] > v[m] * v[n]
    ]
