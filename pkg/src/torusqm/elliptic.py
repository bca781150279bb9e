"""Fourier and Laurent expansions of Z, P^(m), L and constant terms in zeta.

Z is the (shifted) Weierstrass zeta function, P the Weierstrass P-function
and L the combination -Z^2/2 + P/2 - G2 + 1/12.  Fourier expansions live on
|q| < |zeta| < 1.  Coefficients of zeta^k for k < 0 always have q-valuation
at least |k|, which is what makes truncation in zeta safe.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, inf

from .graphs import CrossCheckError, GlobalGraph, check_equal, graph_sum_S, orientations
from .quasimodular import QMPoly, dq_qm, eisenstein_qm, qm_to_series, sigma_series
from .series import QSeries

# Fourier side


def _geom(k, start, order, power=0, weight=1):
    """sum_{h >= start} h^power * weight * q^(h k) as a coefficient list."""
    out = [0] * (order + 1)
    h = start
    while h * k <= order:
        out[h * k] += weight * h**power
        h += 1
    return out


def _edge_coeffs(kind, m, k, order):
    """Coefficient of zeta^k (k != 0) in P^(m), L or Dq P^(m); integer lists."""
    a = abs(k)
    if kind == "P":
        sign = 1 if k > 0 or m % 2 == 0 else -1
        return _geom(a, 0 if k > 0 else 1, order, 0, sign * a ** (m + 1))
    if kind == "L":
        return _geom(a, 1, order, 1, 1)
    if kind == "DP":
        # q d/dq of a^(m+1) q^(h a) is h a^(m+2) q^(h a)
        sign = 1 if k > 0 or m % 2 == 0 else -1
        return _geom(a, 1, order, 1, sign * a ** (m + 2))
    raise ValueError(kind)


def _valuation(cs):
    for i, c in enumerate(cs):
        if c:
            return i
    return None


class ZetaExpansion:
    """sum_k c_k(q) zeta^k, exact for |k| <= radius and q-degree <= q_order."""

    __slots__ = ("coeffs", "radius", "q_order")

    def __init__(self, coeffs, radius, q_order):
        self.radius = radius
        self.q_order = q_order
        self.coeffs = {}
        for k, c in coeffs.items():
            if abs(k) > radius:
                continue
            c = list(c.coeffs if isinstance(c, QSeries) else c)[: q_order + 1]
            c += [0] * (q_order + 1 - len(c))
            if any(c):
                self.coeffs[k] = [Fraction(x) for x in c]

    def __getitem__(self, k):
        if abs(k) > self.radius:
            raise KeyError(f"zeta^{k} is outside the exact range |k| <= {self.radius}")
        return QSeries(self.coeffs.get(k, [0] * (self.q_order + 1)))

    def constant_term(self):
        return self[0]

    @classmethod
    def scalar(cls, s, radius, q_order):
        return cls({0: s if isinstance(s, QSeries) else QSeries.constant(s, q_order)}, radius, q_order)

    def _lift(self, other):
        if isinstance(other, ZetaExpansion):
            return other
        if isinstance(other, (int, Fraction, QSeries)):
            return ZetaExpansion.scalar(other, self.radius, self.q_order)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = min(self.q_order, other.q_order)
        r = min(self.radius, other.radius)
        out = {}
        for src in (self.coeffs, other.coeffs):
            for k, c in src.items():
                acc = out.setdefault(k, [Fraction(0)] * (n + 1))
                for i in range(n + 1):
                    acc[i] += c[i]
        return ZetaExpansion(out, r, n)

    __radd__ = __add__

    def __neg__(self):
        return ZetaExpansion({k: [-x for x in c] for k, c in self.coeffs.items()}, self.radius, self.q_order)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ZetaExpansion({k: [x * other for x in c] for k, c in self.coeffs.items()}, self.radius, self.q_order)
        if isinstance(other, QSeries):
            other = self._lift(other)
            return _zmul(self, other, min(self.radius, other.radius))
        if isinstance(other, ZetaExpansion):
            n = min(self.q_order, other.q_order)
            return _zmul(self, other, min(self.radius, other.radius) - n)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e):
        out = ZetaExpansion.scalar(1, self.radius, self.q_order)
        for _ in range(e):
            out = out * self
        return out


def _zmul(a, b, radius):
    if radius < 0:
        raise ValueError("zeta truncation too small for this product; raise K")
    n = min(a.q_order, b.q_order)
    bitems = [(k, c, _valuation(c)) for k, c in b.coeffs.items()]
    out = {}
    for j, x in a.coeffs.items():
        vx = _valuation(x)
        for i, y, vy in bitems:
            k = i + j
            if abs(k) > radius or vx + vy > n:
                continue
            acc = out.setdefault(k, [Fraction(0)] * (n + 1))
            for s in range(vx, n + 1 - vy):
                xs = x[s]
                if xs:
                    for t in range(vy, n + 1 - s):
                        if y[t]:
                            acc[s + t] += xs * y[t]
    return ZetaExpansion(out, radius, n)


def fourier_expansion(which, K, N, m=0):
    """Expansion of 'Z', 'L', 'P' (the m-th derivative P^(m)) or 'DP' (q d/dq P^(m))."""
    coeffs = {}
    if which == "Z":
        coeffs[0] = [Fraction(1, 2)]
        for k in range(1, K + 1):
            coeffs[k] = _geom(k, 0, N)
            coeffs[-k] = _geom(k, 1, N, 0, -1)
    elif which in ("P", "L", "DP"):
        if m < 0:
            raise ValueError("m must be non-negative")
        for k in range(1, K + 1):
            coeffs[k] = _edge_coeffs(which, m, k, N)
            coeffs[-k] = _edge_coeffs(which, m, -k, N)
    else:
        raise ValueError(f"unknown function {which!r}")
    return ZetaExpansion(coeffs, K, N)


# Laurent side, in u = 2 pi i z


class LaurentU:
    """sum_k c_k u^k with QMPoly coefficients, exact for k <= max_degree."""

    def __init__(self, coeffs, max_degree):
        self.max_degree = max_degree
        self.coeffs = {k: c for k, c in coeffs.items() if k <= max_degree and not c.is_zero()}

    def valuation(self):
        return min(self.coeffs, default=self.max_degree + 1)

    def __getitem__(self, k):
        if k > self.max_degree:
            raise KeyError(f"u^{k} beyond the exact range")
        return self.coeffs.get(k, QMPoly())

    def residue(self):
        return self[-1]

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QMPoly)):
            other = LaurentU({0: other if isinstance(other, QMPoly) else QMPoly.constant(other)}, self.max_degree)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, QMPoly()) + c
        return LaurentU(out, min(self.max_degree, other.max_degree))

    __radd__ = __add__

    def __neg__(self):
        return LaurentU({k: -c for k, c in self.coeffs.items()}, self.max_degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QMPoly)):
            return LaurentU({k: c * other for k, c in self.coeffs.items()}, self.max_degree)
        top = min(self.max_degree + other.valuation(), other.max_degree + self.valuation())
        out = {}
        for i, x in self.coeffs.items():
            for j, y in other.coeffs.items():
                if i + j <= top:
                    out[i + j] = out.get(i + j, QMPoly()) + x * y
        return LaurentU(out, top)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = LaurentU({0: QMPoly.constant(1)}, inf)
        for _ in range(e):
            out = out * self
        return out


def laurent_expansion(which, max_u_degree):
    c = {}
    if which == "Z":
        c[-1] = QMPoly.constant(-1)
        for k in range(0, max_u_degree):
            if 2 * k + 1 > max_u_degree:
                break
            c[2 * k + 1] = eisenstein_qm(2 * k + 2) * Fraction(2, factorial(2 * k + 1))
    elif which == "P":
        c[-2] = QMPoly.constant(1)
        for k in range(0, max_u_degree // 2 + 1):
            c[2 * k] = eisenstein_qm(2 * k + 2) * Fraction(2, factorial(2 * k))
    elif which == "L":
        c[0] = QMPoly.gen(2) * 2 + Fraction(1, 12)
        for k in range(1, max_u_degree // 2 + 1):
            c[2 * k] = dq_qm(eisenstein_qm(2 * k)) * Fraction(2, factorial(2 * k))
    else:
        raise ValueError(f"unknown function {which!r}")
    return LaurentU(c, max_u_degree)


@lru_cache(maxsize=None)
def _zeta0_Z_power(e):
    if e == 0:
        return QMPoly.constant(1)
    if e % 2:
        Z = laurent_expansion("Z", e - 2 if e >= 2 else 0)
        return (Z**e).residue() * Fraction(-1, 2)
    # [zeta^0](Z - 1/2)^(e+1) = 0 determines the even power from the others
    total = QMPoly()
    for j in range(e + 2):
        if j == e:
            continue
        total = total + _zeta0_Z_power(j) * (comb(e + 1, j) * Fraction(-1, 2) ** (e + 1 - j))
    return total * Fraction(2, e + 1)


def zeta0_Z_series(e, N):
    """[zeta^0] Z^e computed on the Fourier side."""
    Z = fourier_expansion("Z", max(e, 1) * N, N)
    return (Z**e).constant_term()


def zeta0_Z_power(e, N=None):
    """[zeta^0] Z^e as a quasimodular polynomial; checked against the Fourier side if N is given."""
    if e < 1:
        raise ValueError("e must be positive")
    p = _zeta0_Z_power(e)
    if N is not None:
        check_equal(qm_to_series(p, N), zeta0_Z_series(e, N), f"[zeta^0]Z^{e}")
    return p


# constant terms of graph products


def _int_mul(x, y, n):
    out = [0] * (n + 1)
    vx = _valuation(x)
    vy = _valuation(y)
    if vx is None or vy is None:
        return out
    for s in range(vx, n + 1 - vy):
        xs = x[s]
        if xs:
            for t in range(vy, n + 1 - s):
                yt = y[t]
                if yt:
                    out[s + t] += xs * yt
    return out


def constant_term_product(n_vertices, factors, order):
    """[zeta_n^0 ... zeta_1^0] of prod f(z_a - z_b) over factors (a, b, kind, m), a < b.

    Variables are eliminated in label order; each factor is expanded in
    zeta_a / zeta_b, keeping |k| <= order (larger widths cannot occur).
    """
    for a, b, _, _ in factors:
        if not a < b:
            raise ValueError("factors need a < b; split off loops first")
    tables = []
    for a, b, kind, m in factors:
        tab = {}
        for k in range(-order, order + 1):
            if k:
                c = _edge_coeffs(kind, m, k, order)
                if any(c):
                    tab[k] = c
        tables.append((a, b, tab))
    state = {(0,) * n_vertices: [1] + [0] * order}
    for v in range(1, n_vertices + 1):
        for a, b, tab in tables:
            if a != v:
                continue
            new = {}
            for exp, c in state.items():
                vc = _valuation(c)
                for k, f in tab.items():
                    if vc + (k < 0) * -k > order:
                        continue
                    prodc = _int_mul(c, f, order)
                    if not any(prodc):
                        continue
                    e = list(exp)
                    e[a - 1] += k
                    e[b - 1] -= k
                    e = tuple(e)
                    acc = new.get(e)
                    if acc is None:
                        new[e] = prodc
                    else:
                        for i, x in enumerate(prodc):
                            acc[i] += x
            state = new
        state = {e: c for e, c in state.items() if e[v - 1] == 0 and any(c)}
    return QSeries(state.get((0,) * n_vertices, [0] * (order + 1)), order)


def _direct_sum(graph, m, order):
    total = QSeries.zero(order)
    for o in orientations(graph):
        total = total + graph_sum_S(o, m, order)
    return total


def constant_term_graph(graph, m, order, verify=False):
    """[zeta^0] of prod_e P^(m_e)(z_a - z_b) for a loop-free graph.

    Equals the orientation-summed graph sum; verify=True recomputes that
    directly and raises CrossCheckError on disagreement.
    """
    if not isinstance(graph, GlobalGraph):
        raise TypeError("expected a GlobalGraph")
    if graph.loops:
        raise ValueError("constant_term_graph needs a reduced graph (no loops)")
    if any(x % 2 for x in m):
        raise ValueError("edge exponents must be even")
    factors = [(i, j, "P", mm) for (i, j), mm in zip(graph.edges, m)]
    out = constant_term_product(graph.n, factors, order)
    if verify:
        check_equal(out, _direct_sum(graph, m, order), "constant term vs graph sum")
    return out


def graph_sum_by_constant_term(graph, m, order, verify=False):
    """Orientation-summed graph sum with loops split off first.

    A loop with exponent m contributes sum_{w,h>=1} w^(m+1) q^(hw), i.e.
    sigma_series(m + 1); the reduced graph goes through constant_term_graph.
    """
    if any(x % 2 for x in m):
        raise ValueError("edge exponents must be even")
    factor = QSeries.constant(1, order)
    kept_edges, kept_m = [], []
    for e, mm in zip(graph.edges, m):
        if e[0] == e[1]:
            factor = factor * sigma_series(mm + 1, order)
        else:
            kept_edges.append(e)
            kept_m.append(mm)
    # graph.edges is sorted, so kept_m stays parallel to the reduced edges
    reduced = GlobalGraph(graph.n, tuple(kept_edges))
    out = factor * constant_term_graph(reduced, kept_m, order)
    if verify:
        check_equal(out, _direct_sum(graph, m, order), "constant term vs graph sum")
    return out


__all__ = [
    "CrossCheckError",
    "LaurentU",
    "ZetaExpansion",
    "constant_term_graph",
    "constant_term_product",
    "fourier_expansion",
    "graph_sum_by_constant_term",
    "laurent_expansion",
    "zeta0_Z_power",
    "zeta0_Z_series",
]
