"""Star convolution and finite-range checks of the lower/upper growth recursions.

All series arithmetic is on Python integers, so the checks are exact even
when the values run to hundreds of digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

from .errors import DomainError

UPPER_SHIFT = 114
UPPER_FACTOR = 128
UPPER_COMPONENTS = 8
SHIFTED_FACTOR = 2**281


@dataclass
class BoundReport:
    """Per-n verdicts for one inequality over a finite range."""

    name: str
    params: dict
    verdicts: dict[int, bool] = field(default_factory=dict)
    details: dict[int, tuple] = field(default_factory=dict)

    @property
    def checked_range(self) -> tuple[int, int] | None:
        if not self.verdicts:
            return None
        return min(self.verdicts), max(self.verdicts)

    @property
    def failures(self) -> list[int]:
        return [n for n, ok in self.verdicts.items() if not ok]

    @property
    def passed(self) -> bool:
        return bool(self.verdicts) and not self.failures


def _values(f, n):
    if callable(f):
        return [f(i) for i in range(n + 1)]
    return list(f)


def star_convolution_table(f: Sequence[int], k: int, n: int, *, truncate: bool = False) -> list[int]:
    """``f^{*k}(0..n)``: sums of f(n_1)...f(n_k) over k-tuples with n_1 + ... + n_k <= m.

    Computed as k - 1 ordinary convolutions followed by a prefix sum.  With
    ``truncate=True``, values of ``f`` past the end of the sequence count as
    zero, which yields a lower bound on the true convolution.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < 0:
        raise ValueError("n must be non-negative")
    f = list(f)
    if n >= len(f) and not truncate:
        raise DomainError(f"series known up to {len(f) - 1}, convolution needs {n}")
    base = [f[i] if i < len(f) else 0 for i in range(n + 1)]
    exact = base[:]
    for _ in range(k - 1):
        nxt = [0] * (n + 1)
        for i, x in enumerate(exact):
            if not x:
                continue
            for j in range(n + 1 - i):
                nxt[i + j] += x * base[j]
        exact = nxt
    out = []
    running = 0
    for x in exact:
        running += x
        out.append(running)
    return out


def star_convolution(f: Sequence[int], k: int, n: int, *, truncate: bool = False) -> int:
    return star_convolution_table(f, k, n, truncate=truncate)[n]


class LowerBoundConstants(NamedTuple):
    A: float
    A_upper: float
    nu: float
    c: float
    branch: str


def lower_bound_constants(m: float, alpha: float, C: float) -> LowerBoundConstants:
    """Constants turning ``log f(n) >= c + m log f(alpha n)`` into ``log f(n) >= A n^nu``.

    ``c = log C``.  Returns ``nu = log m / log(1/alpha)`` and the guaranteed
    constant ``A`` (the lower end of the admissible range, ``A_upper`` the
    upper end).  The two branches ``c >= 0`` and ``c < 0`` agree at ``c = 0``.
    """
    if not m > 1:
        raise DomainError("m must exceed 1")
    if not C > 0:
        raise DomainError("C must be positive")
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    if alpha >= 1:
        raise DomainError("alpha >= 1 is incompatible with the recursion for unbounded f")
    c = math.log(C)
    log_alpha = math.log(alpha)
    nu = math.log(m) / -log_alpha
    if c >= 0:
        exponent = 1 / log_alpha
        branch = "c>=0"
    else:
        exponent = -(c - 1) / log_alpha
        branch = "c<0"
    return LowerBoundConstants(m ** (exponent - 1), m**exponent, nu, c, branch)


def verify_lower_recursion(
    f: Sequence | Callable,
    m: int,
    alpha: float,
    C: float,
    n_range: range | None = None,
) -> BoundReport:
    """Pointwise check of f(n) >= C f(floor(alpha n))^m, and of f(n) >= exp(A n^nu) where it holds.

    ``verdicts[n]`` is True when the premise fails (nothing to check) or
    when both premise and conclusion hold; ``details[n]`` keeps
    ``(premise, conclusion)``.
    """
    consts = lower_bound_constants(m, alpha, C)
    if n_range is None:
        if callable(f):
            raise ValueError("n_range is required when f is a callable")
        n_range = range(1, len(f))
    values = _values(f, max(n_range))
    exact_C = Fraction(C)
    report = BoundReport(
        "lower_recursion",
        {"m": m, "alpha": alpha, "C": C, "A": consts.A, "nu": consts.nu, "branch": consts.branch},
    )
    for n in n_range:
        fn = values[n]
        inner = values[math.floor(alpha * n)]
        if isinstance(fn, float) or isinstance(inner, float):
            premise = math.log(fn) >= math.log(C) + m * math.log(inner)
        else:
            premise = Fraction(fn) >= exact_C * Fraction(inner) ** m
        conclusion = None
        if premise:
            conclusion = math.log(fn) >= consts.A * n**consts.nu
        report.details[n] = (premise, conclusion)
        report.verdicts[n] = (not premise) or bool(conclusion)
    return report


def premise_range(report: BoundReport) -> int:
    """Number of checked n at which the recursion premise holds."""
    return sum(1 for premise, _ in report.details.values() if premise)


def search_lower_recursion(
    gamma: Sequence[int],
    ms: Sequence[int] = (2, 3, 4),
    alphas: Sequence[float] = (0.1, 0.2, 0.25, 1 / 3, 0.4, 0.5),
    Cs: Sequence[float] = (1e-3, 1e-2, 0.1, 0.5, 1.0),
    start: int = 1,
) -> BoundReport:
    """Grid search for the most informative (m, alpha, C) whose premise holds on gamma.

    Instances holding on the whole range come first, then the longest
    stretch; ties go to the largest exponent nu = log m / log(1/alpha) and
    then the largest C.  The finite data can only be consistent with the
    recursion; nothing is asserted about the true asymptotic constants.
    """
    best = None
    best_score = None
    n_range = range(start, len(gamma))
    for m in ms:
        for alpha in alphas:
            for C in Cs:
                report = verify_lower_recursion(gamma, m, alpha, C, n_range)
                nu = math.log(m) / math.log(1 / alpha)
                score = (all(p for p, _ in report.details.values()), premise_range(report), nu, C)
                if best_score is None or score > best_score:
                    best, best_score = report, score
    return best


def verify_upper_recursion(gamma: Sequence[int]) -> tuple[BoundReport, BoundReport]:
    """Exact checks of the two forms of the upper recursion on a computed series.

    * ``gamma(n) <= 128 * gamma^{*8}(floor(5n/6) + 114)`` for every computed n.
      Terms needing gamma beyond the computed radius are dropped, which only
      lowers the right-hand side, so a pass is a genuine pass.
    * ``gamma(m) <= 2^281 * gamma^{*8}(floor(5m/6))`` for every computed m.
    """
    gamma = list(gamma)
    N = len(gamma) - 1
    top = (5 * N) // 6 + UPPER_SHIFT
    conv = star_convolution_table(gamma, UPPER_COMPONENTS, top, truncate=True)
    pre = BoundReport(
        "upper_recursion",
        {"factor": UPPER_FACTOR, "k": UPPER_COMPONENTS, "shift": UPPER_SHIFT, "truncated_at": N},
    )
    for n in range(N + 1):
        rhs = UPPER_FACTOR * conv[(5 * n) // 6 + UPPER_SHIFT]
        pre.details[n] = (gamma[n], rhs)
        pre.verdicts[n] = gamma[n] <= rhs
    shifted = BoundReport("upper_recursion_shifted", {"factor": "2^281", "k": UPPER_COMPONENTS})
    for m in range(N + 1):
        rhs = SHIFTED_FACTOR * conv[(5 * m) // 6]
        shifted.details[m] = (gamma[m], rhs)
        shifted.verdicts[m] = gamma[m] <= rhs
    return pre, shifted


def sandwich_report(f: Sequence[int], k: int) -> BoundReport:
    """f(floor(n/k))^k <= f^{*k}(n) <= n^k f(n)^k for n >= 1.

    At n = 0 the right-hand side degenerates to 0 and is not checked.
    """
    f = list(f)
    N = len(f) - 1
    conv = star_convolution_table(f, k, N)
    report = BoundReport("sandwich", {"k": k})
    for n in range(1, N + 1):
        lo = f[n // k] ** k
        hi = n**k * f[n] ** k
        report.details[n] = (lo, conv[n], hi)
        report.verdicts[n] = lo <= conv[n] <= hi
    return report


def consistent_with_dominance(
    f: Sequence[int],
    g: Sequence[int],
    Cs: Sequence[float] = (1, 2, 4, 8, 16),
    alphas: Sequence[float] = (0.5, 1, 2, 3, 4),
) -> list[tuple[float, float]]:
    """Grid points (C, alpha) with f(n) <= C g(floor(alpha n)) wherever both sides are known.

    A non-empty result means the finite data are consistent with f being
    dominated by g; it proves nothing about the asymptotics.
    """
    f, g = list(f), list(g)
    hits = []
    for C in Cs:
        for alpha in alphas:
            pairs = [(n, math.floor(alpha * n)) for n in range(1, len(f))]
            pairs = [(n, j) for n, j in pairs if j < len(g)]
            if pairs and all(f[n] <= C * g[j] for n, j in pairs):
                hits.append((C, alpha))
    return hits
