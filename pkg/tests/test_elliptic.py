from fractions import Fraction

import pytest

from torusqm.elliptic import (
    constant_term_graph,
    constant_term_product,
    fourier_expansion,
    graph_sum_by_constant_term,
    laurent_expansion,
    zeta0_Z_power,
    zeta0_Z_series,
)
from torusqm.graphs import graph_sum_S, orientations, parse_graph
from torusqm.quasimodular import (
    QMPoly,
    fit_quasimodular,
    min_fit_order,
    parse_qmpoly,
    qm_to_series,
    sigma_series,
)
from torusqm.series import QSeries, dq


def test_laurent_leading_terms():
    Z = laurent_expansion("Z", 5)
    P = laurent_expansion("P", 4)
    assert Z.residue() == QMPoly.constant(-1)
    assert Z[0].is_zero()
    assert P[-2] == QMPoly.constant(1)
    assert P[0] == QMPoly.gen(2) * 2


def test_z_derivative_is_p():
    # P = dZ/du termwise on the Laurent side
    Z = laurent_expansion("Z", 9)
    P = laurent_expansion("P", 8)
    for k in range(-2, 9):
        assert P[k] == Z[k + 1] * (k + 1)


def test_laurent_exact_range():
    with pytest.raises(KeyError):
        laurent_expansion("P", 4)[6]


@pytest.mark.parametrize("e", [1, 2, 3, 4, 5])
def test_zeta0_power_both_sides(e):
    p = zeta0_Z_power(e)
    assert qm_to_series(p, 12) == zeta0_Z_series(e, 12)


def test_zeta0_small_powers():
    assert zeta0_Z_power(1) == QMPoly.constant(Fraction(1, 2))
    assert zeta0_Z_power(2) == parse_qmpoly("-2*G2 + 1/6")
    with pytest.raises(ValueError):
        zeta0_Z_power(0)


def test_p_has_no_constant_term():
    P = fourier_expansion("P", 20, 10)
    assert P.constant_term().is_zero()


def test_p_squared_constant_term_is_double_edge():
    order = 12
    P = fourier_expansion("P", 4 * order, order)
    direct = sum(
        (graph_sum_S(o, (0, 0), order) for o in orientations(parse_graph("1-2,1-2"))),
        QSeries.zero(order),
    )
    assert (P * P).constant_term() == direct == dq(sigma_series(1, order)) * 2


def test_l_identity_fourier_side():
    order = 10
    Z = fourier_expansion("Z", 4 * order, order)
    P = fourier_expansion("P", 4 * order, order)
    L = fourier_expansion("L", 4 * order, order)
    G2 = qm_to_series(QMPoly.gen(2), order)
    lhs = (L * P).constant_term()
    rhs = ((P * Fraction(1, 2) - G2 + Fraction(1, 12)) * P).constant_term() - (Z * Z * P).constant_term() / 2
    assert lhs == rhs


def test_p_cubed_is_quasimodular():
    order = min_fit_order(6)
    P = fourier_expansion("P", 3 * order, order)
    fit = fit_quasimodular((P * P * P).constant_term(), 6)
    assert fit.max_weight() == 6


@pytest.mark.parametrize(
    "text,m",
    [
        ("1-2", (0,)),
        ("1-2,1-2", (2, 0)),
        ("1-2,1-2,1-2", (0, 0, 0)),
        ("1-2,2-3,1-3", (0, 0, 0)),
        ("1-2,1-2,2-3,2-3", (0, 2, 0, 0)),
        ("1-2,1-3,1-4,2-3,2-4,3-4", (0,) * 6),
    ],
)
def test_constant_term_equals_direct_sum(text, m):
    constant_term_graph(parse_graph(text), m, 8, verify=True)


def test_loops_split_off():
    g = parse_graph("1-1,1-2,1-2,2-2")
    got = graph_sum_by_constant_term(g, (0, 0, 0, 2), 9, verify=True)
    expected = sigma_series(1, 9) * sigma_series(3, 9) * dq(sigma_series(1, 9)) * 2
    assert got == expected


def test_graph_checks():
    with pytest.raises(ValueError):
        constant_term_graph(parse_graph("1-1"), (0,), 5)
    with pytest.raises(ValueError):
        constant_term_graph(parse_graph("1-2"), (1,), 5)
    with pytest.raises(TypeError):
        constant_term_graph("1-2", (0,), 5)


def test_product_of_unknown_kind():
    with pytest.raises(ValueError):
        constant_term_product(2, [(1, 2, "Q", 0)], 4)
