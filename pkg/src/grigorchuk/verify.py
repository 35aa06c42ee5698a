"""Check suites run by ``grigorchuk verify`` and by the acceptance tests.

Each check returns a :class:`CheckResult`; nothing here raises on a failed
check, so a suite always reports every verdict.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field

from . import bounds, group, stabilizers, tree
from .errors import OrderBudgetExceeded
from .growth import (
    BallTable,
    GrowthSeries,
    enumerate_ball,
    monotonicity_violations,
    submultiplicative_violations,
)

# Spellings of the identity used to build equal pairs with different spellings.
RELATORS = ("aa", "bb", "cc", "dd", "bcd", "dcb", "adadadad", "dadadada", "acacacacacacacac")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}  ({self.seconds:.2f}s)  {self.detail}"

    def to_dict(self) -> dict:
        return asdict(self)


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def check_relations() -> CheckResult:
    """Defining relations hold and (ad)^2, (ac)^4, (ab)^8 do not, so the orders are exactly 4, 8, 16."""
    identities = {
        "a^2": "aa",
        "b^2": "bb",
        "c^2": "cc",
        "d^2": "dd",
        "bcd": "bcd",
        "[b,c]": "bcbc",
        "[b,d]": "bdbd",
        "[c,d]": "cdcd",
        "(ad)^4": "ad" * 4,
        "(ac)^8": "ac" * 8,
        "(ab)^16": "ab" * 16,
    }
    nontrivial = {"(ad)^2": "ad" * 2, "(ac)^4": "ac" * 4, "(ab)^8": "ab" * 8}
    with _Timer() as t:
        wrong = [k for k, w in identities.items() if not group.is_identity(w)]
        wrong += [k for k, w in nontrivial.items() if group.is_identity(w)]
    return CheckResult(
        "relations",
        not wrong and t.seconds < 1.0,
        "all relations verified" if not wrong else f"wrong: {wrong}",
        t.seconds,
    )


def check_finite_groups(max_m: int = 4) -> CheckResult:
    with _Timer() as t:
        sizes = {m: len(tree.enumerate_Am(m)) for m in range(1, max_m + 1)}
    ok = all(sizes[m] == 2 ** (2**m - 1) for m in sizes) and t.seconds < 30
    return CheckResult("A_m orders", ok, f"|A_m| = {sizes}", t.seconds, {"sizes": sizes})


def check_wreath_table(max_depth: int = 8) -> CheckResult:
    with _Timer() as t:
        rows = dict(stabilizers.psi_h_generator_table())
        table_ok = rows == stabilizers.PSI_H_TABLE
        circ_ok = True
        for m in range(1, max_depth + 1):
            sub = {x: group.generator_portrait(x, m - 1) for x in group.LETTERS}
            one = tree.FinitePortrait.identity(m - 1)
            circ_ok &= group.generator_portrait("b", m) == tree.wreath_compose(sub["a"], sub["c"], 0)
            circ_ok &= group.generator_portrait("c", m) == tree.wreath_compose(sub["a"], sub["d"], 0)
            circ_ok &= group.generator_portrait("d", m) == tree.wreath_compose(one, sub["b"], 0)
    return CheckResult(
        "psi table and recursion",
        table_ok and circ_ok and t.seconds < 1.0,
        f"table {'matches' if table_ok else 'differs'}; recursion at depths 1..{max_depth} "
        f"{'holds' if circ_ok else 'fails'}",
        t.seconds,
    )


def _respell(word: str, rng: random.Random, inserts: int = 2) -> str:
    for _ in range(inserts):
        pos = rng.randrange(len(word) + 1)
        rel = rng.choice(RELATORS)
        word = word[:pos] + rel + word[pos:]
    return word


def oracle_pairs(table: BallTable, samples: int, seed: int = 0) -> tuple[int, int, int]:
    """Compare portrait keys with the solver on sampled pairs.

    Half of the pairs are two random ball elements, half are one element
    against a respelling of itself.  Returns ``(checked, mismatches, equal_pairs)``.
    """
    rng = random.Random(seed)
    witnesses = [e.witness for e in table]
    mismatches = 0
    equal_pairs = 0
    for i in range(samples):
        u = rng.choice(witnesses)
        v = _respell(u, rng) if i % 2 else rng.choice(witnesses)
        keys_agree = table.key_of(u) == table.key_of(v)
        solver_agrees = group.are_equal(u, v)
        equal_pairs += solver_agrees
        mismatches += keys_agree != solver_agrees
    return samples, mismatches, equal_pairs


def check_ball(table: BallTable, series: GrowthSeries, samples: int = 100_000) -> list[CheckResult]:
    out = []
    with _Timer() as t:
        mono = monotonicity_violations(series)
        sub = submultiplicative_violations(series)
    out.append(
        CheckResult(
            "growth monotone and submultiplicative",
            series.radius >= 10 and not mono and not sub,
            f"radius {series.radius}, gamma(N) = {series.values[-1]}",
            t.seconds,
            {"values": series.values},
        )
    )
    with _Timer() as t:
        checked, mismatches, equal = oracle_pairs(table, samples)
    out.append(
        CheckResult(
            "solver vs portrait keys",
            mismatches == 0,
            f"{checked} pairs ({equal} equal), {mismatches} mismatches",
            t.seconds,
        )
    )
    return out


def _type_bound(tag, length):
    # Lemma bounds, doubled to stay in integers: 2 l(g_i) <= l - 1, l, l + 1.
    return {"I": length - 1, "II": length, "III": length, "IV": length + 1, None: 0}[tag]


def check_lemma7(table: BallTable) -> CheckResult:
    """Per-type halving, l(g0) + l(g1) <= l(g) + 1 and l(g) <= 2 l(g0) + 2 l(g1) + 50 on the whole ball."""
    failures = []
    with _Timer() as t:
        for e in table:
            w0, w1, _ = group.psi_split(e.witness)
            l0, l1 = table.length(w0), table.length(w1)
            bound = _type_bound(group.classify_type(e.witness), e.length)
            if 2 * max(l0, l1) > bound:
                failures.append(("halving", e.witness))
            if l0 + l1 > e.length + 1:
                failures.append(("sum", e.witness))
            if e.length > 2 * l0 + 2 * l1 + 50:
                failures.append(("reverse", e.witness))
    return CheckResult(
        "length contraction",
        not failures,
        f"{len(table)} elements, {len(failures)} violations",
        t.seconds,
        {"failures": failures[:20]},
    )


def check_cancellation(table: BallTable) -> CheckResult:
    """Cancellation bound and the three intermediate word-length inequalities on St(3) in the ball."""
    violations = []
    heart_violations = []
    count = 0
    min_slack = None
    with _Timer() as t:
        for e in table:
            if not stabilizers.in_stabilizer(e.witness, 3):
                continue
            count += 1
            res = stabilizers.check_cancellation(e.witness, table)
            if not res.holds:
                violations.append(e.witness)
            slack = res.rhs - res.lhs
            min_slack = slack if min_slack is None else min(min_slack, slack)
            for name, lhs, rhs in stabilizers.heart_inequalities(e.witness):
                if lhs > rhs:
                    heart_violations.append((name, e.witness))
    return CheckResult(
        "cancellation",
        count > 0 and not violations and not heart_violations,
        f"{count} elements of St(3); {len(violations)} + {len(heart_violations)} violations; "
        f"min slack {float(min_slack) if min_slack is not None else 'n/a'}",
        t.seconds,
        {"count": count},
    )


def check_periodicity(radius: int = 8, k_max: int = group.DEFAULT_K_MAX) -> CheckResult:
    with _Timer() as t:
        table, _ = enumerate_ball(radius)
        dist = Counter()
        exceeded = []
        for e in table:
            try:
                dist[group.order_exponent(e.witness, k_max)] += 1
            except OrderBudgetExceeded:
                exceeded.append(e.witness)
    return CheckResult(
        "orders are powers of 2",
        not exceeded,
        f"radius {radius}: exponent distribution {dict(sorted(dist.items()))}",
        t.seconds,
        {"distribution": dict(sorted(dist.items()))},
    )


def check_indices(max_level: int = 4) -> CheckResult:
    with _Timer() as t:
        indices = {n: stabilizers.build_coset_table(n).index for n in range(1, max_level + 1)}
        elements, table = stabilizers.subgroup_ad()
        dihedral = stabilizers.is_dihedral_of_order_8(elements, table, "a", "d")
    ok = (
        indices[1] == 2
        and all(indices[n] <= 2 ** (2**n - 1) for n in indices)
        and len(elements) == 8
        and dihedral
    )
    return CheckResult(
        "stabilizer indices and <a,d>",
        ok,
        f"[G:St(n)] = {indices}; |<a,d>| = {len(elements)}, D4 table {'ok' if dihedral else 'wrong'}",
        t.seconds,
        {"indices": indices},
    )


def check_eta(k: int = 15) -> CheckResult:
    with _Timer() as t:
        ok = stabilizers.eta_injectivity_run(k)
    return CheckResult(
        "eta iterates distinct", ok and t.seconds < 120, f"x_1..x_{k}", t.seconds
    )


def check_growth_bounds(series: GrowthSeries) -> list[CheckResult]:
    out = []
    with _Timer() as t:
        pre, shifted = bounds.verify_upper_recursion(series.values)
    out.append(
        CheckResult(
            "upper recursion",
            pre.passed and shifted.passed,
            f"n = 0..{series.radius}; failures {pre.failures + shifted.failures}",
            t.seconds,
        )
    )
    with _Timer() as t:
        oracle_ok = True
        for k in (1, 2, 3):
            for n in range(13):
                f = series.values[: n + 1] if len(series.values) > n else None
                if f is None:
                    continue
                brute = sum(
                    math.prod(f[i] for i in tup)
                    for tup in itertools.product(range(n + 1), repeat=k)
                    if sum(tup) <= n
                )
                oracle_ok &= bounds.star_convolution(f, k, n) == brute
        sandwiches = [bounds.sandwich_report(series.values, k) for k in (2, 3, 8)]
    out.append(
        CheckResult(
            "star convolution and sandwich",
            oracle_ok and all(r.passed for r in sandwiches),
            f"enumeration oracle {'agrees' if oracle_ok else 'disagrees'}; sandwich k=2,3,8 "
            f"{'holds' if all(r.passed for r in sandwiches) else 'fails'}",
            t.seconds,
        )
    )
    with _Timer() as t:
        best = bounds.search_lower_recursion(series.values)
    out.append(
        CheckResult(
            "lower recursion grid",
            best.passed,
            f"best {best.params}, premise on {bounds.premise_range(best)} of {len(best.verdicts)} n",
            t.seconds,
            {"params": best.params},
        )
    )
    return out


LOWER_GRID = [
    (m, alpha, C)
    for m, alpha, C in [
        (2, 0.5, 1.0),
        (4, 0.5, 1.0),
        (2, 0.25, 2.0),
        (3, 0.3, 0.5),
        (8, 0.125, 1.0),
        (2, 0.9, 10.0),
        (5, 0.75, 0.1),
        (16, 0.5, 3.0),
        (2, 0.01, 0.01),
        (7, 1 / 3, 1.0),
    ]
]


def check_constants() -> CheckResult:
    with _Timer() as t:
        worst = 0.0
        for m, alpha, C in LOWER_GRID:
            consts = bounds.lower_bound_constants(m, alpha, C)
            worst = max(worst, abs(consts.nu - math.log(m) / math.log(1 / alpha)))
        rejected = 0
        for alpha in (1.0, 1.5):
            try:
                bounds.lower_bound_constants(2, alpha, 1.0)
            except ValueError:
                rejected += 1
    return CheckResult(
        "lower-bound constants",
        worst <= 1e-12 and rejected == 2,
        f"max |nu - log m / log(1/alpha)| = {worst:.1e}; alpha >= 1 rejected {rejected}/2",
        t.seconds,
    )


def check_bench(max_len: int = 1 << 20, reps: int = 15, seed: int = 0,
                families=("random",)) -> list[CheckResult]:
    from .bench import run_scaling

    out = []
    for family in families:
        with _Timer() as t:
            report = run_scaling(max_len, reps=reps, seed=seed, family=family)
        ok = (
            max(report.top_ratios) <= 2.5
            and report.loglog_slope < 1.5
            and t.seconds < 60
        )
        out.append(
            CheckResult(
                f"word problem scaling ({family})",
                ok,
                f"top doubling ratios {[round(r, 2) for r in report.top_ratios]}, "
                f"log-log slope {report.loglog_slope:.3f}",
                t.seconds,
                {"rows": report.rows},
            )
        )
    return out


# The lemma scans need elements of St(3); radius 14 reaches 7 of them, radius 20 reaches 288.
LEMMA_RADIUS = 20

SUITES = ("relations", "tree", "wreath", "lemma7", "cancellation", "periodicity", "indices",
          "eta", "growth-bounds", "constants", "ball")


def run_suite(name: str, radius: int = 14, samples: int = 100_000, cache_dir=None,
              budget_secs=None, lemma_radius: int | None = None) -> list[CheckResult]:
    """Run one named suite (or ``"all"``) and return its results.

    The lemma7 and cancellation scans use ``lemma_radius`` when given, else
    ``radius``; under ``"all"`` they default to :data:`LEMMA_RADIUS`.
    """
    if name == "all":
        if lemma_radius is None:
            lemma_radius = LEMMA_RADIUS
        results = []
        for suite in SUITES:
            results.extend(run_suite(suite, radius, samples, cache_dir, budget_secs, lemma_radius))
        return results
    if name == "relations":
        return [check_relations()]
    if name == "tree":
        return [check_finite_groups()]
    if name == "wreath":
        return [check_wreath_table()]
    if name == "periodicity":
        return [check_periodicity()]
    if name == "indices":
        return [check_indices()]
    if name == "eta":
        return [check_eta()]
    if name == "constants":
        return [check_constants()]
    if name == "bench":
        return check_bench()
    ball_radius = radius
    if name in ("lemma7", "cancellation") and lemma_radius is not None:
        ball_radius = lemma_radius
    table, series = enumerate_ball(
        ball_radius, cap=max(ball_radius, 14), budget_secs=budget_secs, cache_dir=cache_dir
    )
    if series.meta.get("partial"):
        return [
            CheckResult(
                name,
                False,
                f"budget exhausted at radius {table.radius}; run `grigorchuk growth --radius "
                f"{ball_radius}` first to populate the cache",
                data={"budget": True},
            )
        ]
    if name == "lemma7":
        return [check_lemma7(table)]
    if name == "cancellation":
        return [check_cancellation(table)]
    if name == "growth-bounds":
        return check_growth_bounds(series)
    if name == "ball":
        return check_ball(table, series, samples)
    raise ValueError(f"unknown suite {name!r}")
