from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusqm.quasimodular import (
    NoQuasimodularFit,
    QMPoly,
    UnderdeterminedFit,
    bernoulli,
    dq_qm,
    eisenstein_qm,
    eisenstein_series,
    fit_quasimodular,
    format_qmpoly,
    min_fit_order,
    monomial_basis,
    parse_qmpoly,
    qm_to_series,
    sigma_series,
)
from torusqm.series import QSeries, dq


def divisor_sum(n, m):
    return sum(d**m for d in range(1, n + 1) if n % d == 0)


def test_bernoulli():
    assert [bernoulli(n) for n in (0, 1, 2, 4, 6)] == [1, Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42)]
    assert bernoulli(3) == 0


def test_g2_expansion():
    assert list(eisenstein_series(2, 4)) == [Fraction(-1, 24), 1, 3, 4, 7]


def test_constant_terms():
    assert eisenstein_series(4, 0)[0] == Fraction(1, 240)
    assert eisenstein_series(6, 0)[0] == Fraction(-1, 504)


@pytest.mark.parametrize("k", [3, 0, -2])
def test_bad_weight(k):
    with pytest.raises(ValueError):
        eisenstein_series(k, 5)


@pytest.mark.parametrize("m", [0, 1, 2, 3, 5])
def test_sigma_by_divisors(m):
    s = sigma_series(m, 25)
    assert s[0] == 0
    assert [s[n] for n in range(1, 26)] == [divisor_sum(n, m) for n in range(1, 26)]


def test_sigma3_is_g4_without_constant():
    g4 = eisenstein_series(4, 30)
    assert sigma_series(3, 30) - (g4 - g4[0]) == QSeries.zero(30)


def test_sigma2_has_no_fit():
    with pytest.raises(NoQuasimodularFit) as exc:
        fit_quasimodular(sigma_series(2, 30), 12)
    assert exc.value.index <= 30


def test_fit_known_form():
    target = parse_qmpoly("-8/3*G2^3 + 2/3*G4*G2 + 7/180*G6")
    assert fit_quasimodular(qm_to_series(target, 15), 6) == target


def test_underdetermined():
    with pytest.raises(UnderdeterminedFit):
        fit_quasimodular(eisenstein_series(2, 5), 6)


def test_min_fit_order_is_tight():
    s = qm_to_series(QMPoly.gen(6), 20)
    fit_quasimodular(s.truncate(min_fit_order(6)), 6)
    with pytest.raises(UnderdeterminedFit):
        fit_quasimodular(s.truncate(min_fit_order(6) - 1), 6)


def test_basis_dimensions():
    # monomials G2^a G4^b G6^c of weight <= k
    assert [len(monomial_basis(k)) for k in (0, 2, 4, 6, 12)] == [1, 2, 4, 7, 23]


@pytest.mark.parametrize("k", [8, 10, 12, 14])
def test_higher_eisenstein_from_divisor_sums(k):
    s = qm_to_series(eisenstein_qm(k), 20)
    assert s[0] == -bernoulli(k) / (2 * k)
    assert [s[n] for n in range(1, 21)] == [divisor_sum(n, k - 1) for n in range(1, 21)]


def test_g8_relation():
    assert eisenstein_qm(8) == QMPoly({(0, 2, 0): 120})


@pytest.mark.parametrize("text", ["G2", "G4", "G6", "G2^2*G4", "G2*G6 - 3*G4^2", "-2*G2 + 1/6"])
def test_dq_matches_series(text):
    p = parse_qmpoly(text)
    assert qm_to_series(dq_qm(p), 20) == dq(qm_to_series(p, 20))


def test_format_order_and_round_trip():
    p = QMPoly({(3, 0, 0): Fraction(-8, 3), (1, 1, 0): Fraction(2, 3), (0, 0, 1): Fraction(7, 180)})
    assert format_qmpoly(p) == "-8/3*G2^3 + 2/3*G2*G4 + 7/180*G6"
    assert parse_qmpoly(format_qmpoly(p)) == p
    assert [t["exp"] for t in p.to_json()] == [[0, 0, 1], [1, 1, 0], [3, 0, 0]]
    assert QMPoly.from_json(p.to_json()) == p


def test_homogeneous_parts():
    p = parse_qmpoly("G2^2 + G4 + G2 + 1")
    assert p.weights() == [0, 2, 4]
    assert p.homogeneous_part(4) == parse_qmpoly("G2^2 + G4")
    assert p.max_weight() == 4


@st.composite
def qmpolys(draw):
    k = draw(st.sampled_from(range(0, 13, 2)))
    basis = monomial_basis(k)
    coeffs = draw(st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=30), min_size=len(basis), max_size=len(basis)))
    return k, QMPoly(dict(zip(basis, coeffs)))


@settings(max_examples=40, deadline=None)
@given(qmpolys())
def test_fit_round_trip(kp):
    k, p = kp
    assert fit_quasimodular(qm_to_series(p, min_fit_order(k)), k) == p
