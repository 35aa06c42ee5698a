"""Empirical scaling of the word-problem solver.

Two input families, both reduced words at doubling lengths:

``random``
    uniformly random reduced words with an even number of a's;
``relator``
    ``sigma^k((ad)^4)`` for the substitution a -> aca, b -> d, c -> b, d -> c.
    These spell the identity, so the solver has to split all the way down.
"""

from __future__ import annotations

import csv
import gc
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .group import is_identity

_SIGMA = str.maketrans({"a": "aca", "b": "d", "c": "b", "d": "c"})


def random_reduced_word(n: int, rng: np.random.Generator) -> str:
    """Reduced word ``*a*a...`` of length ``n`` with uniform letters in place of ``*``.

    For ``n`` a multiple of 4 the number of a's is even.
    """
    letters = rng.choice(np.frombuffer(b"bcd", dtype=np.uint8), size=n)
    letters[1::2] = ord("a")
    return letters.tobytes().decode("ascii")


def relator_word(n: int) -> str:
    """``sigma^k((ad)^4)``; has length exactly ``n`` when ``n = 2^(k+3)``."""
    w = "adadadad"
    while len(w) < n:
        w = w.translate(_SIGMA)
    return w


@dataclass
class ScalingReport:
    """Timings per length.

    ``rows`` holds ``(n, best cpu seconds, best wall seconds)``.  ``samples``
    keeps every CPU time, one list per length, in sweep order, so that
    sample ``r`` of consecutive lengths was taken within the same sweep.
    """

    family: str
    seed: int
    reps: int
    rows: list[tuple[int, float, float]] = field(default_factory=list)
    samples: list[list[float]] = field(default_factory=list)

    @property
    def ratios(self) -> list[float]:
        """Time growth per doubling.

        With samples, the median over sweeps of t(2n) / t(n) measured in the
        same sweep; the machine's speed drifts over seconds and pairing
        cancels that drift.  Without samples, the ratio of best times.
        """
        if self.samples:
            return [
                float(np.median(np.asarray(b) / np.asarray(a)))
                for a, b in zip(self.samples, self.samples[1:])
            ]
        t = [r[1] for r in self.rows]
        return [b / a for a, b in zip(t, t[1:])]

    @property
    def top_ratios(self) -> list[float]:
        return self.ratios[-3:]

    @property
    def loglog_slope(self) -> float:
        """Least-squares slope of log t against log n over the lengths >= 2^10."""
        pts = [(n, t) for n, t, _ in self.rows if n >= 1024] or [(n, t) for n, t, _ in self.rows]
        x = np.log([n for n, _ in pts])
        y = np.log([t for _, t in pts])
        return float(np.polyfit(x, y, 1)[0])

    @property
    def nlogn_coefficient(self) -> float:
        """Slope of t(n)/n against log n; bounded when t grows like n log n."""
        x = [math.log(n) for n, _, _ in self.rows]
        y = [t / n for n, t, _ in self.rows]
        return float(np.polyfit(x, y, 1)[0])

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(f"# family={self.family} seed={self.seed} reps={self.reps}\n")
            writer = csv.writer(fh)
            writer.writerow(["n", "cpu_seconds", "wall_seconds", "cpu_seconds_per_letter"])
            for n, cpu, wall in self.rows:
                writer.writerow([n, f"{cpu:.6e}", f"{wall:.6e}", f"{cpu / n:.6e}"])


def run_scaling(max_len: int = 1 << 20, reps: int = 15, seed: int = 0,
                family: str = "random", min_len: int = 16) -> ScalingReport:
    """Time ``is_identity`` at lengths min_len, 2 min_len, ..., max_len.

    Each of the ``reps`` sweeps times every length once, alternating between
    ascending and descending order, so neighbouring lengths are always
    measured close together.  Rows keep the best CPU and wall time per
    length.  The collector is off while timing, as in ``timeit``.
    """
    if max_len > 1 << 24:
        raise ValueError("max_len is capped at 2^24")
    if family not in ("random", "relator"):
        raise ValueError(f"unknown family {family!r}")
    rng = np.random.default_rng(seed)
    lengths = []
    n = min_len
    while n <= max_len:
        lengths.append(n)
        n *= 2
    words = [random_reduced_word(n, rng) if family == "random" else relator_word(n) for n in lengths]
    cpu = [[] for _ in lengths]
    wall = [math.inf] * len(lengths)
    order = list(range(len(lengths)))
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for r in range(reps):
            for i in (order if r % 2 == 0 else order[::-1]):
                c0, w0 = time.process_time(), time.perf_counter()
                is_identity(words[i])
                # clamp to the clock resolution so tiny inputs never report zero time
                cpu[i].append(max(time.process_time() - c0, 1e-9))
                wall[i] = min(wall[i], max(time.perf_counter() - w0, 1e-9))
    finally:
        if gc_was_enabled:
            gc.enable()
    report = ScalingReport(family, seed, reps)
    report.rows = [(n, min(c), t) for n, c, t in zip(lengths, cpu, wall)]
    report.samples = cpu
    return report
