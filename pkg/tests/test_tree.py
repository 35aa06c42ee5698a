import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grigorchuk.errors import DepthError, DepthMismatchError, ResourceCapError
from grigorchuk.tree import (
    FinitePortrait,
    Vertex,
    apply,
    compose,
    enumerate_Am,
    format_portrait,
    infinite_order_witness,
    inverse,
    parse_portrait,
    portrait_order,
    power,
    root_swap,
    subtree_embed,
    vertex_swap,
    wreath_compose,
    wreath_split,
)


@st.composite
def portraits(draw, min_depth=0, max_depth=6, depth=None):
    m = depth if depth is not None else draw(st.integers(min_depth, max_depth))
    signs = draw(st.lists(st.integers(0, 1), min_size=(1 << m) - 1, max_size=(1 << m) - 1))
    return FinitePortrait(m, signs)


def all_vertices(level):
    return [Vertex(bits) for bits in itertools.product((0, 1), repeat=level)]


def test_vertex_heap_index():
    assert Vertex.parse("").heap_index == 0
    assert Vertex.parse("0").heap_index == 1
    assert Vertex.parse("1").heap_index == 2
    assert Vertex.parse("10").heap_index == 5
    with pytest.raises(ValueError):
        Vertex.parse("012")


def test_root_swap_acts_on_first_letter():
    a = root_swap(3)
    assert apply(a, Vertex.parse("011")) == Vertex.parse("111")
    assert apply(a, Vertex.parse("")) == Vertex.parse("")


@settings(max_examples=200)
@given(st.data())
def test_compose_is_act_first_then_second(data):
    m = data.draw(st.integers(1, 6))
    p = data.draw(portraits(depth=m))
    q = data.draw(portraits(depth=m))
    for v in all_vertices(m):
        assert apply(compose(p, q), v) == apply(q, apply(p, v))


@settings(max_examples=200)
@given(portraits(min_depth=1))
def test_inverse_and_identity(p):
    e = FinitePortrait.identity(p.depth)
    assert compose(p, inverse(p)) == e
    assert compose(inverse(p), p) == e
    assert compose(p, e) == p


@settings(max_examples=1000)
@given(portraits(max_depth=7), portraits(max_depth=7), st.integers(0, 1))
def test_wreath_round_trip(p0, p1, swap):
    if p0.depth != p1.depth:
        with pytest.raises(DepthMismatchError):
            wreath_compose(p0, p1, swap)
        return
    assert wreath_split(wreath_compose(p0, p1, swap)) == (p0, p1, swap)


@settings(max_examples=300)
@given(portraits(min_depth=1, max_depth=7))
def test_split_then_compose(p):
    assert wreath_compose(*wreath_split(p)) == p


@settings(max_examples=200)
@given(st.data())
def test_wreath_product_rule(data):
    # phi(f0, f1; s) * phi(g0, g1; t) = phi(f0 g_s, f1 g_{1-s}; s + t)
    m = data.draw(st.integers(0, 5))
    f0, f1, g0, g1 = (data.draw(portraits(depth=m)) for _ in range(4))
    s, t = data.draw(st.integers(0, 1)), data.draw(st.integers(0, 1))
    g = (g0, g1)
    lhs = compose(wreath_compose(f0, f1, s), wreath_compose(g0, g1, t))
    rhs = wreath_compose(compose(f0, g[s]), compose(f1, g[1 - s]), s ^ t)
    assert lhs == rhs


@settings(max_examples=200)
@given(portraits(max_depth=6))
def test_format_round_trip(p):
    assert parse_portrait(format_portrait(p)) == p


def test_format_example():
    assert format_portrait(root_swap(2)) == "1|00"
    assert parse_portrait("") == FinitePortrait(0)
    with pytest.raises(ValueError):
        parse_portrait("1|0")


@settings(max_examples=200)
@given(portraits(max_depth=6), portraits(max_depth=6))
def test_key_is_injective_per_depth(p, q):
    if p.depth == q.depth:
        assert (p.key() == q.key()) == (p == q)


def test_leaf_permutation_round_trip():
    rng = np.random.default_rng(0)
    for m in range(0, 7):
        for _ in range(20):
            p = FinitePortrait(m, rng.integers(0, 2, (1 << m) - 1))
            assert FinitePortrait.from_leaf_permutation(p.leaf_permutation(), m) == p


@pytest.mark.parametrize("m, size", [(1, 2), (2, 8), (3, 128), (4, 32768)])
def test_enumerate_Am(m, size):
    assert len(enumerate_Am(m)) == size == 2 ** (2**m - 1)


def test_enumerate_Am_refuses_large():
    with pytest.raises(ResourceCapError):
        enumerate_Am(5)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_odometer_order(m):
    assert portrait_order(infinite_order_witness(m)) == 2**m


def test_power_matches_repeated_compose():
    p = infinite_order_witness(5)
    q = FinitePortrait.identity(5)
    for n in range(40):
        assert power(p, n) == q
        q = compose(q, p)


def test_subtree_embed_and_vertex_swap():
    a = root_swap(1)
    assert subtree_embed(a, Vertex.parse("01")) == vertex_swap(Vertex.parse("01"), 3)
    with pytest.raises(DepthError):
        vertex_swap(Vertex.parse("01"), 2)


def test_depth_guards():
    with pytest.raises(DepthError):
        FinitePortrait(-1)
    with pytest.raises(ResourceCapError):
        FinitePortrait(25)
    with pytest.raises(DepthError):
        wreath_split(FinitePortrait(0))
    with pytest.raises(DepthMismatchError):
        compose(FinitePortrait(2), FinitePortrait(3))
