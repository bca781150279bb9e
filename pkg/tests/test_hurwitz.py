from fractions import Fraction

import pytest

from torusqm.hurwitz import (
    BudgetExceeded,
    brute_force_counts,
    brute_force_n,
    label_factor,
    n_connected_series,
    n_prime_series,
    n_series,
    oracle_cost,
    set_partitions,
)
from torusqm.series import partition_gf

PROFILES = [((2,), (2,)), ((3,),), ((2, 2),), ((4,),), ((2,), (3,))]


@pytest.mark.parametrize("profile", PROFILES)
def test_series_match_monodromy_oracle(profile):
    order = 4
    series = {
        "all": n_series(profile, order),
        "prime": n_prime_series(profile, order),
        "connected": n_connected_series(profile, order),
    }
    for d in range(order + 1):
        bf = brute_force_counts(profile, d)
        for variant, s in series.items():
            assert s[d] == bf[variant], (variant, d)


def test_unramified_counts():
    # covers of the torus with no branching, all components, weighted by 1/|Aut|
    assert n_series((), 6) == partition_gf(6)
    conn = [brute_force_n((), d, "connected") for d in range(5)]
    assert conn == [0, 1, Fraction(3, 2), Fraction(4, 3), Fraction(7, 4)]


def test_empty_profile_connected_is_zero_series():
    assert n_connected_series((), 5).is_zero()


def test_degree_zero_with_branching_is_empty():
    assert brute_force_counts(((2,),), 0)["all"] == 0
    assert n_series(((2,),), 3)[0] == 0


def test_single_transposition_never_occurs():
    # a commutator is even, so one transposition cannot be the branching
    assert n_series(((2,),), 8).is_zero()


def test_set_partitions_bell_numbers():
    assert [sum(1 for _ in set_partitions(range(n))) for n in range(6)] == [1, 1, 2, 5, 15, 52]


def test_label_factor():
    assert label_factor(((2, 2), (3,))) == 2
    assert label_factor(((2, 2, 2), (2, 2))) == 12


def test_budget():
    assert oracle_cost(((2,), (2,)), 3) == 36 * 3
    with pytest.raises(BudgetExceeded):
        brute_force_n(((2,), (2,)), 5, budget=1000)


def test_variant_name():
    with pytest.raises(ValueError):
        brute_force_n(((2,),), 2, variant="nope")


def test_oracle_degree_six():
    profile = ((3, 3),)
    bf = brute_force_counts(profile, 6)
    assert bf["connected"] == n_connected_series(profile, 6)[6] == Fraction(189, 2)
    assert bf["prime"] == n_prime_series(profile, 6)[6]
