"""Truncated power series in q with exact rational coefficients."""

from fractions import Fraction
from functools import lru_cache


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class QSeries:
    """Coefficients c_0..c_order of a power series in q, exact.

    Binary operations between series of different orders truncate to the
    smaller order.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order=None):
        cs = [_frac(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative")
            cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        if not cs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = tuple(cs)

    @property
    def order(self):
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order):
        return cls([c], order)

    @classmethod
    def zero(cls, order):
        return cls([], order)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coeffs[: order + 1])

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QSeries({format_series(self)}, order={self.order})"

    def is_zero(self):
        return not any(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = min(self.order, other.order)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([c * other for c in self.coeffs])
        if isinstance(other, QSeries):
            return series_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([c / other for c in self.coeffs])
        if isinstance(other, QSeries):
            return series_div(self, other)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = QSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def to_json(self):
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc):
        return cls([Fraction(c) for c in doc["coeffs"]], doc["order"])


def series_mul(a, b):
    n = min(a.order, b.order)
    x, y = a.coeffs, b.coeffs
    out = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        xi = x[i]
        if not xi:
            continue
        for j in range(n + 1 - i):
            if y[j]:
                out[i + j] += xi * y[j]
    return QSeries(out)


def series_div(a, b):
    """The unique c with b*c = a to the common order."""
    if not b.coeffs[0]:
        raise ZeroDivisionError("series division needs a nonzero constant term")
    n = min(a.order, b.order)
    inv0 = 1 / b.coeffs[0]
    out = []
    for k in range(n + 1):
        acc = a.coeffs[k]
        for j in range(1, k + 1):
            if b.coeffs[j]:
                acc -= b.coeffs[j] * out[k - j]
        out.append(acc * inv0)
    return QSeries(out)


def dq(a):
    """q d/dq."""
    return QSeries([n * c for n, c in enumerate(a.coeffs)])


@lru_cache(maxsize=None)
def partition_counts(order):
    # Euler's recurrence by adding parts of size k one at a time
    p = [1] + [0] * order
    for k in range(1, order + 1):
        for n in range(k, order + 1):
            p[n] += p[n - k]
    return tuple(p)


def partition_gf(order):
    if order < 0:
        raise ValueError("order must be non-negative")
    return QSeries(partition_counts(order))


def euler_product(order):
    """prod_{n>=1} (1 - q^n), expanded factor by factor."""
    c = [1] + [0] * order
    for n in range(1, order + 1):
        for i in range(order, n - 1, -1):
            c[i] -= c[i - n]
    return QSeries(c)


def format_series(s, var="q"):
    terms = []
    for n, c in enumerate(s.coeffs):
        if not c:
            continue
        if n == 0:
            mono = str(abs(c))
        else:
            mono = var if n == 1 else f"{var}^{n}"
            if abs(c) != 1:
                mono = f"{abs(c)}*{mono}"
        terms.append(("-" if c < 0 else "+", mono))
    if not terms:
        return "0"
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return " ".join([head] + [f"{s} {m}" for s, m in terms[1:]])


def poly_div_one_minus(c, w):
    """In place: c <- c / (1 - q^w), truncated to len(c)."""
    for n in range(w, len(c)):
        c[n] += c[n - w]
    return c
