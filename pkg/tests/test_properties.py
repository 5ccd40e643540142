import random

import pytest

from fourcolor.errors import ScaleLimitError
from fourcolor.properties import (
    check_naive,
    check_property_A,
    check_property_B,
    replay_trail,
)
from fourcolor.schemes import COLORS, cycle_schemes, seed_schemes


def test_trigon_vacuously_holds():
    schemes = seed_schemes(3, 0)
    report = check_property_A(3, schemes)
    assert report.holds
    assert report.states_explored == 1


@pytest.mark.parametrize("k", [4, 5, 6, 7])
def test_polygon_seeds_satisfy_A(k):
    report = check_property_A(k, seed_schemes(k, 0))
    assert report.holds, report


def test_singleton_fails_A_with_shortest_trail():
    schemes = frozenset({(1, 2, 1, 2)})
    report = check_property_A(4, schemes)
    assert not report.holds
    assert report.violating_trail is not None
    assert len(report.violating_trail) == 1
    kind, idx = report.violating_trail[0]
    assert kind == "one"
    # replaying the trail reproduces the empty set
    survivors, _ = replay_trail(4, schemes, report.violating_trail)
    assert not survivors


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6, 7])
def test_polygon_outer_color_is_seed_color(k):
    report = check_property_B(k, seed_schemes(k, 0))
    assert report.holds
    assert 0 in report.outer_colors


def test_trigon_outer_colors_exactly_seed():
    report = check_property_B(3, seed_schemes(3, 0))
    assert report.outer_colors == {0}


def test_all_four_colors_everywhere_fails_B():
    schemes = frozenset({(0, 1, 2, 3), (1, 2, 3, 0)})
    report = check_property_B(4, schemes)
    assert not report.holds
    assert report.outer_colors == frozenset()
    assert report.violating_trail is not None


def test_pruned_mode_ignores_unsatisfiable_moves():
    schemes = frozenset({(1, 2, 1, 2)})
    strict = check_property_A(4, schemes)
    pruned = check_property_A(4, schemes, pruned=True)
    assert not strict.holds
    assert pruned.holds


def test_scale_cap_raises():
    with pytest.raises(ScaleLimitError):
        check_property_A(8, cycle_schemes(8), max_states=5)


def test_naive_rejects_large_inputs():
    with pytest.raises(ScaleLimitError):
        check_naive(6, frozenset(), "A")
    with pytest.raises(ScaleLimitError):
        check_naive(4, cycle_schemes(4, COLORS) | {(0, 0, 0, 0)}, "A")


def test_naive_agrees_on_known_cases():
    for schemes, k in [
        (seed_schemes(4, 0), 4),
        (frozenset({(1, 2, 1, 2)}), 4),
        (seed_schemes(3, 0), 3),
    ]:
        for prop in ("A", "B"):
            memoized = (check_property_A if prop == "A" else check_property_B)(k, schemes)
            naive = check_naive(k, schemes, prop)
            assert memoized.holds == naive.holds, (schemes, prop)
            if prop == "B":
                assert memoized.outer_colors == naive.outer_colors


def test_memoized_vs_naive_random_cross_validation():
    rng = random.Random(99)
    for _ in range(200):
        k = rng.randint(2, 5)
        pool = sorted(cycle_schemes(k))
        size = rng.randint(0, min(len(pool), 20))
        schemes = frozenset(rng.sample(pool, size))
        a_memo = check_property_A(k, schemes)
        a_naive = check_naive(k, schemes, "A")
        assert a_memo.holds == a_naive.holds
        b_memo = check_property_B(k, schemes)
        b_naive = check_naive(k, schemes, "B")
        assert b_memo.holds == b_naive.holds
        assert b_memo.outer_colors == b_naive.outer_colors


def test_violating_trails_replay():
    rng = random.Random(5)
    found = 0
    for _ in range(200):
        k = rng.randint(4, 5)
        pool = sorted(cycle_schemes(k))
        schemes = frozenset(rng.sample(pool, rng.randint(1, 6)))
        report = check_property_A(k, schemes)
        if not report.holds:
            found += 1
            survivors, _ = replay_trail(k, schemes, report.violating_trail)
            assert not survivors
    assert found > 10  # sparse sets do fail sometimes


def test_per_interval_reading_is_weaker():
    rng = random.Random(17)
    for _ in range(100):
        k = rng.randint(3, 5)
        pool = sorted(cycle_schemes(k))
        schemes = frozenset(rng.sample(pool, rng.randint(1, 10)))
        one_scheme = check_property_B(k, schemes)
        per_interval = check_property_B(k, schemes, per_interval=True)
        assert one_scheme.outer_colors <= per_interval.outer_colors
