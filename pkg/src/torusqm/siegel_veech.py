"""Siegel-Veech weighted counts of torus covers.

Each cover is weighted by S_p(alpha) = sum of p-th powers of the cycle
lengths of its horizontal monodromy alpha, fixed points included.  On the
character side that weight becomes the hook moment T_p.
"""

import warnings
from fractions import Fraction
from functools import lru_cache
from math import prod

from .elliptic import constant_term_product
from .graphs import (
    GlobalGraph,
    _Accumulator,
    _balanced_widths,
    assemble,
    check_equal,
    orientations,
    per_graph_series,
)
from .hurwitz import (
    brute_force_counts,
    canonical,
    cycle_type,
    label_factor,
    n_connected_series,
    ramification_points,
    set_partitions,
    sub_profile,
)
from .partitions import f_mu, partition_sum, profile_weight, q_bracket, sv_weight, t_p
from .quasimodular import fit_quasimodular
from .series import QSeries
from .triple import VertexFunction


def _product_f(profile):
    def F(lam):
        out = Fraction(1)
        for mu in profile:
            out *= f_mu(mu, lam)
            if not out:
                break
        return out

    return F


@lru_cache(maxsize=None)
def _c_series(profile, p, order):
    F = _product_f(profile)
    return partition_sum(lambda lam: t_p(lam, p) * F(lam), order)


def c_series(profile, p, order):
    """sum_lambda T_p(lambda) prod_i f_mu_i(lambda) q^|lambda|."""
    return _c_series(canonical(profile), p, order)


@lru_cache(maxsize=None)
def _c_prime(profile, p, order):
    F = _product_f(profile)
    weighted = q_bracket(lambda lam: t_p(lam, p) * F(lam), order)
    return weighted - q_bracket(lambda lam: t_p(lam, p), order) * q_bracket(F, order)


def c_prime_series(profile, p, order):
    """<T_p prod f> - <T_p><prod f>: covers without unramified components."""
    return _c_prime(canonical(profile), p, order)


@lru_cache(maxsize=None)
def _c_connected(profile, p, order):
    if not profile:
        return QSeries.zero(order)
    # the SV weight of a cover is the sum over its components, so each
    # splitting contributes once per choice of the weighted block
    c = label_factor(profile)
    rest = QSeries.zero(order)
    for blocks in set_partitions(ramification_points(profile)):
        if len(blocks) < 2:
            continue
        pieces = [sub_profile(profile, b) for b in blocks]
        factor = Fraction(prod(label_factor(x) for x in pieces), c)
        conn = [n_connected_series(x, order) for x in pieces]
        for i0, marked in enumerate(pieces):
            term = _c_connected(marked, p, order)
            for j, s in enumerate(conn):
                if j != i0:
                    term = term * s
            rest = rest + term * factor
    return _c_prime(profile, p, order) - rest


def c_connected_series(profile, p, order):
    return _c_connected(canonical(profile), p, order)


SV_VARIANTS = {"all": c_series, "prime": c_prime_series, "connected": c_connected_series}


def sv_series(profile, p, order, variant="connected"):
    try:
        fn = SV_VARIANTS[variant]
    except KeyError:
        raise ValueError(f"variant must be one of {tuple(SV_VARIANTS)}") from None
    return fn(profile, p, order)


def fit_sv(series, profile, p, margin=None):
    """Fit at mixed weight wt(Pi) + p + 1; None (with a warning) for even p."""
    if p % 2 == 0:
        warnings.warn("quasimodularity is only expected for odd p; fit skipped", stacklevel=2)
        return None
    kw = {} if margin is None else {"margin": margin}
    return fit_quasimodular(series, profile_weight(profile) + p + 1, **kw)


# graph sums


def sv_graph_sum(orientation, m, order, i0=None):
    """sum_{h,w} (sum_e h_e / w_e) prod_e w_e^(m_e+1) q^(h_e w_e), balanced.

    With i0 given only that edge carries the h/w prefactor.
    """
    m = tuple(m)
    if len(m) != len(orientation.arcs):
        raise ValueError("one exponent per edge")
    if any(x % 2 for x in m):
        raise ValueError("edge exponents must be even")
    hmin = orientation.h_min()
    acc = _Accumulator(order)
    for widths in _balanced_widths(orientation.arcs, hmin, order):
        base = prod(w ** (k + 1) for w, k in zip(widths, m))
        shift = sum(h * w for h, w in zip(hmin, widths))
        for k, (w, h0) in enumerate(zip(widths, hmin)):
            if i0 is not None and k != i0:
                continue
            # sum_{h >= h0} h q^(h w) = q^w / (1 - q^w)^2
            acc.add(Fraction(base, w), shift + (1 - h0) * w, widths + (w,))
    return acc.series()


def sv_per_graph(graph, profile, order, p):
    """c'_p contribution of one labeled graph, orientations summed, no 1/|Aut|."""
    if len(profile) != graph.n:
        raise ValueError("one partition per vertex")
    return per_graph_series(graph, [VertexFunction.f(mu) for mu in profile], order, sv_power=p)


def sv_assemble(profile, p, order, slack=0, workers=1):
    """c'_p as a graph sum, with per-graph details."""
    fs = [VertexFunction.f(mu) for mu in profile]
    if not fs:
        return QSeries.zero(order), []
    return assemble(fs, order, slack=slack, sv_power=p, workers=workers)


def sv_constant_term(graph, m, i0, order, verify=False):
    """Constant term with edge i0 replaced by L (m = 0) or Dq P^(m-2).

    Equals the orientation sum of sv_graph_sum(., m, order, i0).
    """
    if not isinstance(graph, GlobalGraph):
        raise TypeError("expected a GlobalGraph")
    if graph.loops:
        raise ValueError("sv_constant_term needs a reduced graph (no loops)")
    if any(x % 2 for x in m):
        raise ValueError("edge exponents must be even")
    if not 0 <= i0 < len(graph.edges):
        raise ValueError("i0 must index an edge")
    factors = []
    for k, ((a, b), mm) in enumerate(zip(graph.edges, m)):
        if k != i0:
            factors.append((a, b, "P", mm))
        elif mm == 0:
            factors.append((a, b, "L", 0))
        else:
            factors.append((a, b, "DP", mm - 2))
    out = constant_term_product(graph.n, factors, order)
    if verify:
        direct = QSeries.zero(order)
        for o in orientations(graph):
            direct = direct + sv_graph_sum(o, m, order, i0)
        check_equal(out, direct, "SV constant term vs graph sum")
    return out


def sv_brute_force(profile, d, p, budget=10**8):
    """Hurwitz tuples weighted by S_p of the complete cycle type of alpha, / d!."""
    return brute_force_counts(profile, d, budget, weight=lambda a, b, g: sv_weight(cycle_type(a), p))
