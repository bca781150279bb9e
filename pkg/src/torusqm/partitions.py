"""Partitions, symmetric group characters and shifted symmetric functions."""

import re
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .quasimodular import bernoulli
from .series import QSeries, partition_gf, series_div


def normalize(parts):
    """Sorted, weakly decreasing tuple of positive parts."""
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if parts and parts[-1] <= 0:
        raise ValueError(f"partition parts must be positive: {parts}")
    return parts


def size(lam):
    return sum(lam)


def wt(lam):
    return sum(lam) + len(lam)


@lru_cache(maxsize=None)
def partitions_of(d, max_part=None):
    """All partitions of d, in reverse lexicographic order."""
    if d < 0:
        raise ValueError("d must be non-negative")
    if max_part is None or max_part > d:
        max_part = d
    if d == 0:
        return ((),)
    out = []
    for first in range(max_part, 0, -1):
        for rest in partitions_of(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def multiplicities(lam):
    m = {}
    for p in lam:
        m[p] = m.get(p, 0) + 1
    return m


def complete(sigma, d):
    sigma = normalize(sigma)
    if sum(sigma) > d:
        raise ValueError(f"{sigma} does not fit in degree {d}")
    return sigma + (1,) * (d - sum(sigma))


def centralizer_order(sigma):
    return prod(k**m * factorial(m) for k, m in multiplicities(sigma).items())


def class_size(sigma, d):
    sigma = normalize(sigma)
    if sum(sigma) > d:
        return 0
    return factorial(d) // centralizer_order(complete(sigma, d))


@lru_cache(maxsize=None)
def _mn(lam, sigma):
    # Murnaghan-Nakayama on beta numbers; strips removed in order of sigma
    if not sigma:
        return 1
    k, rest = sigma[0], sigma[1:]
    n = len(lam)
    beta = [lam[i] + n - 1 - i for i in range(n)]
    bset = set(beta)
    total = 0
    for i, b in enumerate(beta):
        nb = b - k
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for x in beta if nb < x < b)
        newbeta = sorted([x for x in beta if x != b] + [nb], reverse=True)
        mu = tuple(x - (n - 1 - j) for j, x in enumerate(newbeta))
        mu = tuple(p for p in mu if p > 0)
        total += (-1) ** height * _mn(mu, rest)
    return total


def char_value(lam, sigma):
    """chi^lam at the class of sigma (completed with fixed points)."""
    lam = normalize(lam)
    d = sum(lam)
    sigma = complete(sigma, d)
    return _mn(lam, sigma)


@lru_cache(maxsize=None)
def hook_lengths(lam):
    lam = normalize(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    return tuple(lam[i] - j - 1 + conj[j] - i for i in range(len(lam)) for j in range(lam[i]))


@lru_cache(maxsize=None)
def dim_irrep(lam):
    lam = normalize(lam)
    return factorial(sum(lam)) // prod(hook_lengths(lam))


@lru_cache(maxsize=None)
def f_mu(mu, lam):
    """Central character z_mu chi^lam(mu)/dim lam; zero if mu does not fit."""
    mu = normalize(mu)
    lam = normalize(lam)
    d = sum(lam)
    if sum(mu) > d:
        return Fraction(0)
    return Fraction(class_size(mu, d) * char_value(lam, mu), dim_irrep(lam))


def P_ell(ell, lam):
    if ell < 1:
        raise ValueError("ell must be positive")
    half = Fraction(1, 2)
    return sum(
        ((p - i + half) ** ell - (-i + half) ** ell for i, p in enumerate(normalize(lam), 1)),
        Fraction(0),
    )


def p_ell(ell, lam):
    """P_ell plus the regularizing constant (1 - 2^-ell) zeta(-ell)."""
    zeta = -bernoulli(ell + 1) / (ell + 1)
    return P_ell(ell, lam) + (1 - Fraction(1, 2**ell)) * zeta


def P_mu(mu, lam):
    return prod((P_ell(k, lam) for k in mu), start=Fraction(1))


def t_p(lam, p):
    """Hook length moment sum_cells hook^(p-1)."""
    return sum((Fraction(h) ** (p - 1) for h in hook_lengths(normalize(lam))), Fraction(0))


def sv_weight(sigma, p):
    """sum_j sigma_j^p over the parts as given."""
    return sum((Fraction(s) ** p for s in sigma), Fraction(0))


def t_p_character(lam, p):
    """Character-sum form of T_p, kept as an independent check of t_p."""
    lam = normalize(lam)
    d = sum(lam)
    total = Fraction(0)
    for tau in partitions_of(d):
        total += class_size(tau, d) * sv_weight(tau, p) * char_value(lam, tau) ** 2
    return total / factorial(d) if d else total


def partition_sum(F, order):
    """sum_lambda F(lambda) q^|lambda|."""
    return QSeries([sum((Fraction(F(lam)) for lam in partitions_of(d)), Fraction(0))
                    for d in range(order + 1)])


def q_bracket(F, order):
    return series_div(partition_sum(F, order), partition_gf(order))


_PART = re.compile(r"\(\s*([0-9\s,]*)\)")


def parse_profile(text):
    """'(3)', '(2),(2)', '(2,2),(3)' or '' for the empty profile.

    Parts equal to 1 are stripped; a partition made only of 1s is rejected.
    """
    text = text.strip()
    if not text:
        return ()
    out = []
    pos = 0
    while pos < len(text):
        m = _PART.match(text, pos)
        if not m:
            raise ValueError(f"malformed profile near {text[pos:]!r}")
        body = m.group(1).strip()
        if not body:
            raise ValueError("empty partition in profile")
        try:
            parts = [int(x) for x in body.split(",")]
        except ValueError:
            raise ValueError(f"malformed partition {m.group(0)!r}") from None
        out.append(parts)
        pos = m.end()
        rest = text[pos:].lstrip()
        if rest.startswith(","):
            rest = rest[1:].lstrip()
            if not rest:
                raise ValueError("trailing comma in profile")
        pos = len(text) - len(rest)
    return make_profile(out)


def make_profile(parts_list):
    prof = []
    for parts in parts_list:
        mu = tuple(p for p in normalize(parts) if p != 1)
        if not mu:
            raise ValueError(f"partition {tuple(parts)} has no ramification")
        prof.append(mu)
    return tuple(prof)


def format_profile(profile):
    return ",".join("(" + ",".join(map(str, mu)) + ")" for mu in profile)


def profile_weight(profile):
    return sum(wt(mu) for mu in profile)
