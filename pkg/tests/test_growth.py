import random

import pytest

from grigorchuk.errors import InsufficientRadiusError, KeyCollisionError, ResourceCapError
from grigorchuk.group import are_equal
from grigorchuk.growth import (
    BallEntry,
    BallTable,
    GrowthSeries,
    default_key_depth,
    enumerate_ball,
    monotonicity_violations,
    submultiplicative_violations,
)
from grigorchuk.verify import RELATORS, check_periodicity

# gamma(0..20) in generators {a, b, c, d}, recorded from the enumeration
GAMMA = [1, 5, 11, 23, 40, 68, 108, 176, 271, 427, 643, 999, 1487, 2259, 3313]
PERIODICITY_R8 = {0: 1, 1: 36, 2: 42, 3: 72, 4: 120}


def test_small_values():
    _, series = enumerate_ball(2)
    assert series.values == [1, 5, 11]
    assert series.spheres == [1, 4, 6]


def test_gamma_fixture(ball14):
    _, series = ball14
    assert series.values == GAMMA
    assert series.radius == 14 and len(series) == 15
    assert not series.meta["partial"]


def test_radius20_extends_radius14(ball14, ball20):
    _, s20 = ball20
    assert s20.values[:15] == GAMMA
    assert not monotonicity_violations(s20)
    assert not submultiplicative_violations(s20)


def test_monotone_and_submultiplicative(ball14):
    _, series = ball14
    assert monotonicity_violations(series) == []
    assert submultiplicative_violations(series) == []


def test_violation_helpers_detect_problems():
    assert monotonicity_violations([1, 5, 5, 7]) == [1]
    assert submultiplicative_violations([1, 2, 5]) == [(1, 1)]


def test_every_ball_element_is_distinct_and_lengths_are_geodesic(ball14):
    table, series = ball14
    assert len(table) == series.values[-1]
    for e in table:
        assert len(e.witness) == e.length


def test_key_injectivity(ball14):
    table, _ = ball14
    rng = random.Random(7)
    witnesses = [e.witness for e in table]
    for _ in range(10_000):
        u = rng.choice(witnesses)
        pos = rng.randrange(len(u) + 1)
        v = u[:pos] + rng.choice(RELATORS) + u[pos:]
        assert table.key_of(u) == table.key_of(v)
        assert are_equal(u, v)
    for _ in range(10_000):
        u, v = rng.sample(witnesses, 2)
        assert table.key_of(u) != table.key_of(v)
        assert not are_equal(u, v)


def test_lookup_and_length(ball14):
    table, _ = ball14
    assert table.length("") == 0
    assert table.length("bc") == 1
    assert table.length("adadadad") == 0
    assert table.length("abababab") == 8
    with pytest.raises(InsufficientRadiusError):
        table.length("ab" * 8 + "a")


def test_lookup_detects_key_collisions():
    # b and c agree on the first two levels but are different elements
    shallow = BallTable(2, 4)
    shallow.entries[shallow.key_of("b")] = BallEntry(1, "b", False)
    with pytest.raises(KeyCollisionError):
        shallow.lookup("c")


def test_enumeration_refuses_shallow_keys():
    with pytest.raises(ValueError):
        enumerate_ball(14, key_depth=4)


def test_failed_certification_aborts(monkeypatch):
    import grigorchuk.growth as growth

    monkeypatch.setattr(growth, "are_equal", lambda u, v: False)
    with pytest.raises(KeyCollisionError):
        enumerate_ball(2)


def test_collisions_are_certified(ball14):
    table, _ = ball14
    # every element except the longest shell is reached by several spellings
    inner = [e for e in table if 0 < e.length <= 10]
    assert sum(e.certified for e in inner) > 0.9 * len(inner)


def test_radius_cap():
    with pytest.raises(ResourceCapError):
        enumerate_ball(15)
    with pytest.raises(ValueError):
        enumerate_ball(-1)


def test_default_key_depth():
    assert default_key_depth(0) == 8
    assert default_key_depth(14) == 8
    assert default_key_depth(100) == 10


def test_budget_gives_partial_series():
    table, series = enumerate_ball(12, budget_secs=1e-9)
    assert series.meta["partial"]
    assert series.radius < 12
    assert table.radius == series.radius


def test_growth_series_container():
    s = GrowthSeries([1, 5, 11])
    assert s[1] == 5 and list(s) == [1, 5, 11] and s.radius == 2


def test_periodicity_distribution():
    result = check_periodicity(8)
    assert result.passed
    assert result.data["distribution"] == PERIODICITY_R8
    assert sum(PERIODICITY_R8.values()) == GAMMA[8]
