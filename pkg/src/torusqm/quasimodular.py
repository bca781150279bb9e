"""Eisenstein series and the ring Q[G2, G4, G6] of quasimodular forms.

Normalization: G_k = -B_k/(2k) + sum_{n>=1} sigma_{k-1}(n) q^n.
"""

import re
from fractions import Fraction
from functools import lru_cache
from math import comb

from .series import QSeries


class FitError(ValueError):
    pass


class UnderdeterminedFit(FitError):
    """Too few coefficients to pin down (and certify) the fit."""


class NoQuasimodularFit(FitError):
    """The series is not a combination of the allowed monomials."""

    def __init__(self, msg, index):
        super().__init__(msg)
        self.index = index


@lru_cache(maxsize=None)
def bernoulli(n):
    if n < 0:
        raise ValueError("n must be non-negative")
    # sum_{k<=n} C(n+1,k) B_k = 0, which gives B_1 = -1/2
    bs = [Fraction(1)]
    for m in range(1, n + 1):
        bs.append(-sum(comb(m + 1, k) * bs[k] for k in range(m)) / (m + 1))
    return bs[n]


@lru_cache(maxsize=None)
def _sigma_table(m, order):
    out = [0] * (order + 1)
    for d in range(1, order + 1):
        dm = d**m
        for n in range(d, order + 1, d):
            out[n] += dm
    return tuple(out)


def sigma_series(m, order):
    """sum_n sigma_m(n) q^n, zero constant term."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return QSeries(_sigma_table(m, order))


def eisenstein_series(k, order):
    if k < 2 or k % 2:
        raise ValueError(f"Eisenstein series need even k >= 2, got {k}")
    cs = list(_sigma_table(k - 1, order))
    return QSeries([-bernoulli(k) / (2 * k)] + cs[1:])


# extra equations beyond the basis dimension that must also match
DEFAULT_MARGIN = 8


def weight(exp):
    a, b, c = exp
    return 2 * a + 4 * b + 6 * c


def _exp_key(exp):
    return (weight(exp), *exp)


@lru_cache(maxsize=None)
def monomial_basis(max_weight):
    """All (a,b,c) with 2a+4b+6c <= max_weight, sorted by (weight, a, b, c)."""
    out = []
    for c in range(max_weight // 6 + 1):
        for b in range((max_weight - 6 * c) // 4 + 1):
            for a in range((max_weight - 6 * c - 4 * b) // 2 + 1):
                out.append((a, b, c))
    return tuple(sorted(out, key=_exp_key))


class QMPoly:
    """Polynomial in G2, G4, G6 with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for exp, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(exp)] = c
        self.terms = dict(sorted(clean.items(), key=lambda t: _exp_key(t[0])))

    @classmethod
    def constant(cls, c):
        return cls({(0, 0, 0): c})

    @classmethod
    def gen(cls, k):
        return cls({{2: (1, 0, 0), 4: (0, 1, 0), 6: (0, 0, 1)}[k]: 1})

    def max_weight(self):
        return max((weight(e) for e in self.terms), default=0)

    def weights(self):
        return sorted({weight(e) for e in self.terms})

    def homogeneous_part(self, k):
        return QMPoly({e: c for e, c in self.terms.items() if weight(e) == k})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QMPoly.constant(other)
        if isinstance(other, QMPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def _coerce(self, other):
        if isinstance(other, QMPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return QMPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return QMPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return QMPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QMPoly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, QMPoly):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return QMPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k):
        out = QMPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        return f"QMPoly({self})"

    def __str__(self):
        return format_qmpoly(self)

    def to_json(self):
        return [{"exp": list(e), "coeff": str(c)} for e, c in self.terms.items()]

    @classmethod
    def from_json(cls, doc):
        return cls({tuple(t["exp"]): Fraction(t["coeff"]) for t in doc})


def _mono_str(exp):
    parts = []
    for g, k in zip(("G2", "G4", "G6"), exp):
        if k == 1:
            parts.append(g)
        elif k > 1:
            parts.append(f"{g}^{k}")
    return "*".join(parts)


def format_qmpoly(p):
    """Highest weight first, e.g. '-8/3*G2^3 + 2/3*G2*G4 + 7/180*G6'."""
    items = sorted(p.terms.items(), key=lambda t: _exp_key(t[0]), reverse=True)
    if not items:
        return "0"
    out = []
    for i, (e, c) in enumerate(items):
        mono = _mono_str(e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_qmpoly(text):
    """Inverse of format_qmpoly; also accepts '7/180*G6', 'G4*G2', '1/6'."""
    text = text.strip()
    if text == "0":
        return QMPoly()
    terms = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or not m.group(2).strip():
            raise ValueError(f"malformed polynomial near {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(sign)
        exp = [0, 0, 0]
        for factor in m.group(2).split("*"):
            factor = factor.strip()
            if factor.startswith("G"):
                base, _, power = factor.partition("^")
                idx = {"G2": 0, "G4": 1, "G6": 2}.get(base)
                if idx is None:
                    raise ValueError(f"unknown generator {base!r}")
                exp[idx] += int(power) if power else 1
            else:
                coef *= Fraction(factor)
        terms[tuple(exp)] = terms.get(tuple(exp), 0) + coef
        pos = m.end()
    return QMPoly(terms)


def min_fit_order(max_weight, margin=DEFAULT_MARGIN):
    """Smallest truncation order at which fit_quasimodular can run."""
    return len(monomial_basis(max_weight)) + margin - 1


@lru_cache(maxsize=None)
def _monomial_coeffs(exp, order):
    a, b, c = exp
    s = QSeries.constant(1, order)
    for k, power in ((2, a), (4, b), (6, c)):
        if power:
            s = s * eisenstein_series(k, order) ** power
    return s.coeffs


def monomial_series(exp, order):
    return QSeries(_monomial_coeffs(tuple(exp), order))


def qm_to_series(p, order):
    out = [Fraction(0)] * (order + 1)
    for e, c in p.terms.items():
        for n, x in enumerate(_monomial_coeffs(e, order)):
            out[n] += c * x
    return QSeries(out)


def _solve_on_basis(s, basis, margin):
    n_eq = s.order + 1
    dim = len(basis)
    if n_eq < dim + margin:
        raise UnderdeterminedFit(
            f"order {s.order} gives {n_eq} equations, need {dim} unknowns + {margin} checks"
        )
    cols = [_monomial_coeffs(e, s.order) for e in basis]
    # incremental elimination, taking equations in increasing q-degree
    pivots = []  # (pivot column, reduced row, reduced rhs)
    for n in range(n_eq):
        row = [cols[j][n] for j in range(dim)]
        rhs = s.coeffs[n]
        for pc, prow, prhs in pivots:
            f = row[pc]
            if f:
                row = [x - f * y for x, y in zip(row, prow)]
                rhs -= f * prhs
        pc = next((j for j in range(dim) if row[j]), None)
        if pc is None:
            continue
        inv = 1 / row[pc]
        row = [x * inv for x in row]
        rhs *= inv
        # keep earlier pivot rows reduced in the new pivot column
        new = []
        for qc, qrow, qrhs in pivots:
            f = qrow[pc]
            if f:
                qrow = [x - f * y for x, y in zip(qrow, row)]
                qrhs -= f * rhs
            new.append((qc, qrow, qrhs))
        pivots = new + [(pc, row, rhs)]
        if len(pivots) == dim:
            break
    if len(pivots) < dim:
        raise UnderdeterminedFit(
            f"rank {len(pivots)} < {dim}: the truncated monomials are dependent"
        )
    sol = {basis[pc]: rhs for pc, _, rhs in pivots}
    return QMPoly(sol)


def fit_on_basis(s, basis, margin=DEFAULT_MARGIN):
    """Fit s as a combination of the given monomials, checking every coefficient."""
    p = _solve_on_basis(s, tuple(basis), margin)
    pred = qm_to_series(p, s.order)
    for n in range(s.order + 1):
        if pred.coeffs[n] != s.coeffs[n]:
            raise NoQuasimodularFit(
                f"no fit: coefficient of q^{n} is {s.coeffs[n]}, best candidate gives {pred.coeffs[n]}",
                n,
            )
    return p


def fit_quasimodular(s, max_weight, margin=DEFAULT_MARGIN):
    """Recognize s as a quasimodular form of mixed weight <= max_weight.

    Raises UnderdeterminedFit when s is too short, NoQuasimodularFit (with the
    first bad coefficient) when no polynomial matches every coefficient.
    """
    if s.is_zero():
        return QMPoly()
    return fit_on_basis(s, monomial_basis(max_weight), margin)


@lru_cache(maxsize=None)
def eisenstein_qm(k):
    """G_k as a polynomial in G4, G6 (G2 for k = 2)."""
    if k in (2, 4, 6):
        return QMPoly.gen(k)
    if k < 2 or k % 2:
        raise ValueError(f"need even k >= 2, got {k}")
    basis = [(0, b, c) for b in range(k // 4 + 1) for c in range(k // 6 + 1) if 4 * b + 6 * c == k]
    return fit_on_basis(eisenstein_series(k, len(basis) + 10), basis)


# Ramanujan's system in this normalization
_DG = {
    (1, 0, 0): QMPoly({(2, 0, 0): -2, (0, 1, 0): Fraction(5, 6)}),
    (0, 1, 0): QMPoly({(1, 1, 0): -8, (0, 0, 1): Fraction(7, 10)}),
    (0, 0, 1): QMPoly({(1, 0, 1): -12, (0, 2, 0): Fraction(400, 7)}),
}


def dq_qm(p):
    """q d/dq on Q[G2,G4,G6], via the derivatives of the generators."""
    out = QMPoly()
    for (a, b, c), coef in p.terms.items():
        for i, (k, g) in enumerate(((a, (1, 0, 0)), (b, (0, 1, 0)), (c, (0, 0, 1)))):
            if not k:
                continue
            rest = [a, b, c]
            rest[i] -= 1
            out = out + QMPoly({tuple(rest): coef * k}) * _DG[g]
    return out
