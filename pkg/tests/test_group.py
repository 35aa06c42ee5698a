import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grigorchuk import group
from grigorchuk.errors import OrderBudgetExceeded, WordParseError
from grigorchuk.group import (
    ReducedWord,
    are_equal,
    classify_type,
    eta,
    eta_iterates,
    faithful_depth,
    is_identity,
    order,
    parse_word,
    phi_rules,
    portrait_of,
    psi_split,
    reduce,
    reduced,
)
from grigorchuk.tree import FinitePortrait, compose, wreath_compose

from conftest import random_word

words = st.text(alphabet="abcd", max_size=60)
RELATORS = ["aa", "bb", "cc", "dd", "bcd", "cdb", "dbc", "adadadad", "acacacacacacacac", "ab" * 16]


def identity_word(rng, pieces=6):
    """A spelling of I: relators conjugated by random words and concatenated."""
    out = []
    for _ in range(pieces):
        x = random_word(rng, rng.randrange(0, 12))
        out.append(x[::-1] + rng.choice(RELATORS) + x)
    return "".join(out)


def test_parse_word_reports_position():
    assert parse_word("abcd") == "abcd"
    with pytest.raises(WordParseError) as exc:
        parse_word("abxd")
    assert exc.value.position == 2
    assert "position 2" in str(exc.value)


@pytest.mark.parametrize(
    "w, expected",
    [("bc", "d"), ("aa", ""), ("", ""), ("abba", ""), ("bcd", ""), ("abca", "ada"), ("dcb", "")],
)
def test_reduce_examples(w, expected):
    assert reduce(w).letters == expected


@settings(max_examples=500)
@given(words)
def test_reduce_is_reduced_idempotent_and_shorter(w):
    r = reduced(w)
    ReducedWord(r)  # validates the alternating shape
    assert len(r) <= len(w)
    assert reduced(r) == r


@settings(max_examples=300)
@given(words)
def test_reduce_preserves_the_element(w):
    assert portrait_of(w, 7) == portrait_of(reduced(w), 7)


def test_reduce_idempotent_on_long_random_words(rng):
    for _ in range(10_000):
        w = random_word(rng, rng.randrange(0, 1001))
        r = reduced(w)
        assert reduced(r) == r and len(r) <= len(w)


def test_reduced_word_rejects_unreduced():
    with pytest.raises(ValueError):
        ReducedWord("bc")
    with pytest.raises(ValueError):
        ReducedWord("aab")


@pytest.mark.parametrize(
    "w, tag", [("a", "I"), ("bab", "IV"), ("adad", "II"), ("dada", "III"), ("aba", "I"), ("b", "IV"), ("", None)]
)
def test_classify_type(w, tag):
    assert classify_type(w) == tag
    assert reduce(w).type_tag == tag


def test_adad_equals_dada():
    assert are_equal("adad", "dada")


@pytest.mark.parametrize(
    "w, split",
    [("b", ("a", "c", 0)), ("c", ("a", "d", 0)), ("d", ("", "b", 0)), ("a", ("", "", 1)), ("", ("", "", 0))],
)
def test_psi_split_generators(w, split):
    assert tuple(psi_split(w)) == split


@settings(max_examples=300)
@given(words)
def test_sigma_is_a_parity(w):
    assert psi_split(w).sigma == reduced(w).count("a") % 2
    assert phi_rules(w).sigma == w.count("a") % 2
    if psi_split(w).sigma:
        assert not is_identity(w)


@settings(max_examples=300)
@given(words)
def test_psi_split_realises_the_wreath_recursion(w):
    m = 6
    w0, w1, sigma = psi_split(w)
    expected = wreath_compose(portrait_of(w0, m - 1), portrait_of(w1, m - 1), sigma)
    assert portrait_of(w, m) == expected


@settings(max_examples=300)
@given(words)
def test_phi_rules_on_raw_spellings(w):
    m = 6
    w0, w1, sigma = phi_rules(w)
    assert portrait_of(w, m) == wreath_compose(portrait_of(w0, m - 1), portrait_of(w1, m - 1), sigma)


@settings(max_examples=300)
@given(words)
def test_split_lengths_by_type(w):
    r = reduced(w)
    w0, w1, _ = psi_split(r)
    bound2 = {"I": len(r) - 1, "II": len(r), "III": len(r), "IV": len(r) + 1, None: 0}[classify_type(r)]
    assert 2 * len(w0) <= bound2 and 2 * len(w1) <= bound2


@pytest.mark.parametrize("w", ["", "aa", "bb", "cc", "dd", "bcd", "bcbc", "bdbd", "cdcd", "ad" * 4, "ac" * 8, "ab" * 16])
def test_relations_hold(w):
    assert is_identity(w)


@pytest.mark.parametrize("w", ["a", "b", "c", "d", "ad" * 2, "ac" * 4, "ab" * 8, "ab", "abab"])
def test_nontrivial(w):
    assert not is_identity(w)
    assert not portrait_of(w, faithful_depth(len(w))).is_identity()


def test_ab8_nontrivial_at_depth_6():
    assert not portrait_of("ab" * 8, 6).is_identity()
    assert portrait_of("ab" * 16, 6).is_identity()


def test_ab_and_ba_differ():
    # regression pin for the composition convention
    assert not are_equal("ab", "ba")
    assert portrait_of("ab", 5) != portrait_of("ba", 5)
    assert portrait_of("ab", 5) == compose(portrait_of("a", 5), portrait_of("b", 5))


def test_solver_matches_portrait_oracle(rng):
    # 10^5 words: a third random, a third spelling I, a third one letter away from I
    checked = identities = 0
    for i in range(100_000):
        kind = i % 3
        if kind == 0:
            w = random_word(rng, rng.randrange(0, 40))
        else:
            w = identity_word(rng, pieces=rng.randrange(1, 4))
            if kind == 2:
                pos = rng.randrange(len(w) + 1)
                w = w[:pos] + rng.choice("abcd") + w[pos:]
        depth = faithful_depth(len(w))
        solver = is_identity(w)
        assert solver == portrait_of(w, depth).is_identity(), w
        identities += solver
        checked += 1
    assert identities > 30_000


def test_identity_spellings_are_trivial_at_depth_12(rng):
    for _ in range(200):
        w = identity_word(rng)
        assert is_identity(w)
        assert portrait_of(w, 12).is_identity()


def test_long_words_solve_without_recursion_limits():
    w = "ad" * 4 * 200_000
    assert is_identity(w)
    assert not is_identity(w + "b")


@settings(max_examples=200)
@given(words, words)
def test_are_equal_matches_portraits(u, v):
    depth = faithful_depth(len(u) + len(v))
    assert are_equal(u, v) == (portrait_of(u, depth) == portrait_of(v, depth))


@settings(max_examples=200)
@given(words, words)
def test_inverse_and_conjugate(g, x):
    assert is_identity(g + group.inverse(g))
    assert are_equal(group.conjugate(g, x), x[::-1] + g + x)
    assert are_equal(group.conjugate(g, ""), g)


@pytest.mark.parametrize("w, k", [("", 0), ("a", 1), ("ad", 2), ("ac", 3), ("ab", 4), ("b", 1)])
def test_order(w, k):
    assert order(w) == 2**k
    assert group.order_exponent(w) == k


def test_order_budget():
    with pytest.raises(OrderBudgetExceeded) as exc:
        order("ab", k_max=3)
    assert exc.value.k_max == 3
    with pytest.raises(ValueError):
        order("ab", k_max=-1)


def test_order_monotone_once_trivial(rng):
    for _ in range(50):
        w = random_word(rng, rng.randrange(1, 12))
        k = group.order_exponent(w)
        p = reduced(w)
        for j in range(k + 3):
            assert is_identity(p) == (j >= k)
            p = reduced(p + p)


def test_eta_examples():
    assert eta("a") == "aba"
    assert eta("aba") == "abadaba"
    assert eta_iterates(3) == ["a", "aba", "abadaba"]


@pytest.mark.slow
def test_eta_iterates_distinct_to_20():
    from grigorchuk.stabilizers import eta_injectivity_run

    assert eta_injectivity_run(20)


def test_generator_portraits():
    assert portrait_of("d", 2).is_identity()
    assert not portrait_of("d", 3).is_identity()
    assert portrait_of("b", 1).is_identity() and portrait_of("c", 1).is_identity()
    assert portrait_of("b", 2) == portrait_of("c", 2)
    assert portrait_of("b", 3) != portrait_of("c", 3)


@pytest.mark.parametrize("m", range(1, 9))
def test_wreath_recursion_of_generators(m):
    sub = {x: portrait_of(x, m - 1) for x in "abcd"}
    one = FinitePortrait.identity(m - 1)
    assert portrait_of("a", m) == wreath_compose(one, one, 1)
    assert portrait_of("b", m) == wreath_compose(sub["a"], sub["c"], 0)
    assert portrait_of("c", m) == wreath_compose(sub["a"], sub["d"], 0)
    assert portrait_of("d", m) == wreath_compose(one, sub["b"], 0)


@settings(max_examples=200)
@given(words, words)
def test_portrait_of_is_a_homomorphism(u, v):
    assert portrait_of(u + v, 6) == compose(portrait_of(u, 6), portrait_of(v, 6))


def test_faithful_depth():
    assert faithful_depth(0) == 4
    assert faithful_depth(14) == 7
    for n in range(2000):
        # (n + 1).bit_length() is ceil(log2(n + 2))
        assert faithful_depth(n) == math.ceil(math.log2(n + 2)) + 3


def test_radius8_ball_against_portraits(ball14):
    table, _ = ball14
    entries = [e for e in table if e.length <= 8]
    depth = faithful_depth(16)
    seen = {}
    for e in entries:
        key = portrait_of(e.witness, depth)
        assert key not in seen, (e.witness, seen.get(key))
        seen[key] = e.witness
    rnd = random.Random(1)
    for _ in range(2000):
        u, v = rnd.choice(entries).witness, rnd.choice(entries).witness
        assert are_equal(u, v) == (u == v)
