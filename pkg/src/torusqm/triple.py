"""Triple Hurwitz numbers of the sphere with numbered profiles over 0 and infinity.

A(w-, w+, F) is a character sum; A' removes unramified components by
inclusion-exclusion over index subsets.  With F = P_l/l (a completed
cycle) the vertex numbers become polynomial in the widths.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, prod

from .partitions import P_ell, P_mu, char_value, f_mu, multiplicities, normalize, partitions_of


@dataclass(frozen=True)
class VertexFunction:
    """A function on partitions placed at a vertex.

    kind is 'f' (central character f_mu), 'completed' (P_l / l),
    'one' (constant 1) or 'P' (product of P_k over the parts of mu).
    """

    kind: str
    arg: tuple = ()

    @classmethod
    def f(cls, mu):
        return cls("f", normalize(mu))

    @classmethod
    def completed(cls, ell):
        return cls("completed", (int(ell),))

    @classmethod
    def one(cls):
        return cls("one")

    @classmethod
    def P(cls, mu):
        return cls("P", normalize(mu))

    def __call__(self, lam):
        if self.kind == "f":
            return f_mu(self.arg, lam)
        if self.kind == "completed":
            return P_ell(self.arg[0], lam) / self.arg[0]
        if self.kind == "one":
            return Fraction(1)
        if self.kind == "P":
            return P_mu(self.arg, lam)
        raise ValueError(f"unknown vertex function {self.kind}")

    def valence_bound(self):
        if self.kind == "f":
            return sum(self.arg) + len(self.arg)
        if self.kind == "completed":
            return self.arg[0] + 1
        if self.kind == "P":
            return sum(self.arg) + len(self.arg)
        return 0


ONE = VertexFunction.one()


def _key(w):
    return tuple(sorted(w, reverse=True))


@lru_cache(maxsize=None)
def _a_number(wm, wp, F):
    d = sum(wm)
    if d != sum(wp):
        return Fraction(0)
    if F.kind == "one":
        # second orthogonality relation
        if wm != wp:
            return Fraction(0)
        return Fraction(prod(factorial(m) for m in multiplicities(wm).values()), prod(wm))
    total = Fraction(0)
    for lam in partitions_of(d):
        x = char_value(lam, wm)
        if not x:
            continue
        y = char_value(lam, wp)
        if y:
            total += x * y * F(lam)
    return total / (prod(wm) * prod(wp))


def a_number(wm, wp, F):
    return _a_number(_key(wm), _key(wp), F)


def a_number_by_characters(wm, wp, F):
    """The character sum even for F = 1, bypassing orthogonality."""
    wm, wp = _key(wm), _key(wp)
    if sum(wm) != sum(wp):
        return Fraction(0)
    total = sum(
        (char_value(lam, wm) * char_value(lam, wp) * F(lam) for lam in partitions_of(sum(wm))),
        Fraction(0),
    )
    return total / (prod(wm) * prod(wp))


def _sub_tuples(w):
    """(subset, complement) pairs over index subsets of w."""
    n = len(w)
    for mask in range(1 << n):
        inside = tuple(w[i] for i in range(n) if mask >> i & 1)
        outside = tuple(w[i] for i in range(n) if not mask >> i & 1)
        yield inside, outside


@lru_cache(maxsize=None)
def _a_prime(wm, wp, F):
    if sum(wm) != sum(wp):
        return Fraction(0)
    if F.kind == "one":
        return Fraction(1) if not wm and not wp else Fraction(0)
    if not wm and not wp:
        return Fraction(F(()))
    total = _a_number(wm, wp, F)
    for um, rm in _sub_tuples(wm):
        for up, rp in _sub_tuples(wp):
            if len(rm) + len(rp) == 0 or sum(um) != sum(up):
                continue
            rest = _a_number(_key(rm), _key(rp), ONE)
            if rest:
                total -= _a_prime(_key(um), _key(up), F) * rest
    return total


def a_prime(wm, wp, F):
    """A' : the part of A coming from covers without unramified components."""
    return _a_prime(_key(wm), _key(wp), F)


def abar_prime(wm, wp, ell):
    return _a_prime(_key(wm), _key(wp), VertexFunction.completed(ell))


# polynomiality of completed-cycle vertex numbers


class SSZFitError(ValueError):
    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


@dataclass
class SSZResult:
    m: int
    n: int
    ell: int
    degree: int
    variables: tuple  # free variables; the last output width is eliminated
    poly: dict  # exponent tuple over variables -> Fraction
    status: str  # 'polynomial' or 'vanishes'
    fit_points: int
    checked_points: int
    wall_points: int

    def is_even(self):
        return all(sum(e) % 2 == self.degree % 2 for e in self.poly)

    def evaluate(self, values):
        return sum(
            (c * prod(v**k for v, k in zip(values, e)) for e, c in self.poly.items()),
            Fraction(0),
        )

    def format(self):
        if not self.poly:
            return "0"
        items = sorted(self.poly.items(), key=lambda t: (-sum(t[0]), [-k for k in t[0]]))
        out = []
        for i, (e, c) in enumerate(items):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            sign = "-" if c < 0 else ("" if i == 0 else "+")
            out.append(f"{sign}{body}" if i == 0 else f"{sign} {body}")
        return " ".join(out)


def _monomials(nvars, degree):
    out = []
    for e in product(range(degree + 1), repeat=nvars):
        if sum(e) <= degree:
            out.append(e)
    return sorted(out, key=lambda e: (sum(e), e))


def _on_wall(wm, wp):
    # some proper nonempty sub-sums agree
    sm = {}
    for um, _ in _sub_tuples(wm):
        sm.setdefault(sum(um), []).append(len(um))
    for up, _ in _sub_tuples(wp):
        s = sum(up)
        if s == 0 or s == sum(wp):
            continue
        if s in sm:
            return True
    return False


def ssz_grid(m, n, radius):
    """Points (w-, w+) with all entries in 1..radius and equal sums."""
    for free in product(range(1, radius + 1), repeat=m + n - 1):
        wm = free[:m]
        wp_head = free[m:]
        last = sum(wm) - sum(wp_head)
        if 1 <= last <= radius:
            yield free, wm, wp_head + (last,)


def ssz_poly_fit(m, n, ell, grid_radius):
    """Fit abar_prime(., ., ell) with m inputs and n outputs by one polynomial.

    The polynomial is written in the free widths w-_1..w-_m, w+_1..w+_{n-1};
    the remaining width is fixed by |w-| = |w+|.  Every grid point, including
    those on walls, must agree with it.
    """
    if m < 1 or n < 1:
        raise ValueError("need at least one input and one output width")
    degree = ell + 1 - m - n
    names = tuple(f"wm{i}" for i in range(1, m + 1)) + tuple(f"wp{j}" for j in range(1, n))
    points = list(ssz_grid(m, n, grid_radius))
    walls = sum(1 for _, wm, wp in points if _on_wall(wm, wp))
    if degree < 0 or degree % 2:
        for free, wm, wp in points:
            v = abar_prime(wm, wp, ell)
            if v:
                raise SSZFitError(f"expected 0 at {wm},{wp}, got {v}", (wm, wp))
        return SSZResult(m, n, ell, degree, names, {}, "vanishes", 0, len(points), walls)

    monos = _monomials(len(names), degree)
    pivots = []  # incremental elimination as in the quasimodular fit
    used = set()
    for idx, (free, wm, wp) in enumerate(points):
        row = [Fraction(prod(x**k for x, k in zip(free, e))) for e in monos]
        rhs = abar_prime(wm, wp, ell)
        for pc, prow, prhs in pivots:
            f = row[pc]
            if f:
                row = [x - f * y for x, y in zip(row, prow)]
                rhs -= f * prhs
        pc = next((j for j in range(len(monos)) if row[j]), None)
        if pc is None:
            continue
        inv = 1 / row[pc]
        row = [x * inv for x in row]
        rhs *= inv
        new = []
        for qc, qrow, qrhs in pivots:
            f = qrow[pc]
            if f:
                qrow = [x - f * y for x, y in zip(qrow, row)]
                qrhs -= f * rhs
            new.append((qc, qrow, qrhs))
        pivots = new + [(pc, row, rhs)]
        used.add(idx)
        if len(pivots) == len(monos):
            break
    if len(pivots) < len(monos):
        raise SSZFitError(f"grid radius {grid_radius} too small to determine a degree-{degree} fit", None)
    poly = {monos[pc]: rhs for pc, _, rhs in pivots if rhs}
    result = SSZResult(m, n, ell, degree, names, poly, "polynomial", len(used), 0, walls)
    checked = 0
    for idx, (free, wm, wp) in enumerate(points):
        if idx in used:
            continue
        v = abar_prime(wm, wp, ell)
        if result.evaluate(free) != v:
            raise SSZFitError(
                f"polynomial predicts {result.evaluate(free)} at {wm},{wp} but value is {v}",
                (wm, wp),
            )
        checked += 1
    result.checked_points = checked
    return result
