from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusqm.partitions import (
    P_ell,
    char_value,
    class_size,
    complete,
    dim_irrep,
    f_mu,
    format_profile,
    hook_lengths,
    normalize,
    p_ell,
    parse_profile,
    partitions_of,
    profile_weight,
    t_p,
    t_p_character,
)


def test_partitions_of_small():
    assert partitions_of(0) == ((),)
    assert partitions_of(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


def test_s3_character_table():
    # rows (3), (2,1), (1,1,1); columns identity, transposition, 3-cycle
    table = {
        (3,): (1, 1, 1),
        (2, 1): (2, 0, -1),
        (1, 1, 1): (1, -1, 1),
    }
    for lam, row in table.items():
        assert tuple(char_value(lam, s) for s in ((), (2,), (3,))) == row


def test_s4_sample_values():
    assert char_value((3, 1), (2, 2)) == -1
    assert char_value((2, 2), (3,)) == -1
    assert char_value((2, 2), (4,)) == 0
    assert char_value((2, 1, 1), (4,)) == 1


def test_class_sizes_sum_to_factorial():
    for d in range(1, 8):
        assert sum(class_size(s, d) for s in partitions_of(d)) == factorial(d)
    assert class_size((2,), 4) == 6
    assert class_size((2, 2), 4) == 3


def test_hooks_and_dimension():
    assert sorted(hook_lengths((2, 1))) == [1, 1, 3]
    assert dim_irrep((3, 2)) == 5
    assert dim_irrep((3, 2, 1)) == 16


@pytest.mark.parametrize("d", range(1, 8))
def test_first_orthogonality(d):
    parts = partitions_of(d)
    for lam in parts:
        for mu in parts:
            total = sum(class_size(s, d) * char_value(lam, s) * char_value(mu, s) for s in parts)
            assert total == (factorial(d) if lam == mu else 0)


def test_f2_is_content_sum():
    for lam in partitions_of(6):
        contents = sum(j - i for i, row in enumerate(lam) for j in range(row))
        assert f_mu((2,), lam) == contents


def test_f_mu_too_big():
    assert f_mu((4,), (2, 1)) == 0


def test_p_ell_constant():
    # P_1 on the empty partition vanishes, p_1 carries the zeta(-1) shift
    assert P_ell(1, ()) == 0
    assert p_ell(1, ()) == Fraction(-1, 24)
    assert P_ell(1, (3, 1)) == 4


@pytest.mark.parametrize("p", [-1, 1, 2, 3])
def test_hook_moment_matches_characters(p):
    for d in range(1, 7):
        for lam in partitions_of(d):
            assert t_p(lam, p) == t_p_character(lam, p)


def test_t1_is_size():
    for lam in partitions_of(7):
        assert t_p(lam, 1) == 7


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=0, max_size=6))
def test_conjugate_characters_flip_by_sign(parts):
    lam = normalize(parts)
    d = sum(lam)
    conj = tuple(sum(1 for x in lam if x > j) for j in range(lam[0])) if lam else ()
    for s in partitions_of(d):
        sign = (-1) ** (d - len(s))
        assert char_value(conj, s) == sign * char_value(lam, s)


def test_complete():
    assert complete((2,), 4) == (2, 1, 1)
    with pytest.raises(ValueError):
        complete((3, 2), 4)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("(2),(2)", ((2,), (2,))),
        ("(3)", ((3,),)),
        ("(2,2),(3,1)", ((2, 2), (3,))),
        (" ( 2 , 2 ) , ( 3 ) ", ((2, 2), (3,))),
        ("", ()),
    ],
)
def test_parse_profile(text, expected):
    assert parse_profile(text) == expected


@pytest.mark.parametrize("text", ["(1)", "(1,1)", "()", "(2),", "(2)(x)", "2,2", "(0)", "(-2)"])
def test_parse_profile_rejects(text):
    with pytest.raises(ValueError):
        parse_profile(text)


def test_profile_round_trip_and_weight():
    prof = parse_profile("(2,2),(3)")
    assert parse_profile(format_profile(prof)) == prof
    assert profile_weight(prof) == 6 + 4
