import warnings
from fractions import Fraction

import pytest

from torusqm.graphs import orientations, parse_graph
from torusqm.hurwitz import n_connected_series
from torusqm.quasimodular import fit_quasimodular, min_fit_order, parse_qmpoly
from torusqm.siegel_veech import (
    c_connected_series,
    c_prime_series,
    c_series,
    fit_sv,
    sv_assemble,
    sv_brute_force,
    sv_constant_term,
    sv_graph_sum,
    sv_series,
)
from torusqm.series import QSeries


@pytest.mark.parametrize("profile", [((2,), (2,)), ((3,),), ((2, 2),)])
@pytest.mark.parametrize("p", [-1, 1, 2])
def test_series_match_weighted_oracle(profile, p):
    order = 4
    series = {v: sv_series(profile, p, order, v) for v in ("all", "prime", "connected")}
    for d in range(order + 1):
        bf = sv_brute_force(profile, d, p)
        for v, s in series.items():
            assert s[d] == bf[v], (v, d)


def test_p1_weights_by_degree():
    # S_1 of any permutation is its degree
    profile = ((2,), (2,))
    n = n_connected_series(profile, 8)
    c = c_connected_series(profile, 1, 8)
    assert all(c[d] == d * n[d] for d in range(9))


def test_unknown_variant():
    with pytest.raises(ValueError):
        sv_series(((3,),), 1, 4, "bogus")


@pytest.mark.parametrize("profile", [((3,),), ((2,), (2,)), ((2, 2),)])
@pytest.mark.parametrize("p", [-1, 1])
def test_graph_assembly(profile, p):
    total, _ = sv_assemble(profile, p, 7)
    assert total == c_prime_series(profile, p, 7)


def test_marked_edge_sums():
    g = parse_graph("1-2,1-2,1-2")
    whole = QSeries.zero(8)
    for o in orientations(g):
        whole = whole + sv_graph_sum(o, (0, 0, 0), 8)
    parts = [sv_constant_term(g, (0, 0, 0), i, 8, verify=True) for i in range(3)]
    assert parts[0] + parts[1] + parts[2] == whole


def test_marked_edge_with_derivative():
    sv_constant_term(parse_graph("1-2,1-2"), (2, 0), 0, 8, verify=True)
    sv_constant_term(parse_graph("1-2,2-3,1-3"), (0, 2, 0), 1, 8, verify=True)


def test_sv_constant_term_checks():
    g = parse_graph("1-2,1-2")
    with pytest.raises(ValueError):
        sv_constant_term(g, (0, 0), 2, 5)
    with pytest.raises(ValueError):
        sv_constant_term(parse_graph("1-1"), (0,), 0, 5)


def test_fit_odd_and_even_p():
    profile = ((3,),)
    s = c_connected_series(profile, -1, min_fit_order(4))
    assert fit_sv(s, profile, -1) == parse_qmpoly("5/3*G2^2 - 5/18*G4 + 5/12*G2 + 1/64")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert fit_sv(c_series(profile, 2, 8), profile, 2) is None
    assert caught


def test_minus_one_for_two_transpositions():
    profile = ((2,), (2,))
    order = 12
    assert c_connected_series(profile, -1, order) == n_connected_series(profile, order) * Fraction(5, 4)
