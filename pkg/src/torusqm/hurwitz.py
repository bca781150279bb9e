"""Counting torus covers with prescribed branching.

N(Pi) counts all covers, N'(Pi) those without unramified components and
N°(Pi) the connected ones.  Each count is weighted by 1/|Aut| and packaged
as a series in q whose exponent is the degree.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial, prod

from .partitions import class_size, f_mu, make_profile, multiplicities, partitions_of
from .series import QSeries, partition_gf, series_div

VARIANTS = ("all", "prime", "connected")


class BudgetExceeded(RuntimeError):
    pass


def canonical(profile):
    return tuple(sorted(tuple(mu) for mu in profile))


@lru_cache(maxsize=None)
def _n_coeffs(profile, order):
    out = []
    for d in range(order + 1):
        total = Fraction(0)
        for lam in partitions_of(d):
            term = Fraction(1)
            for mu in profile:
                term *= f_mu(mu, lam)
                if not term:
                    break
            total += term
        out.append(total)
    return tuple(out)


def n_series(profile, order):
    """sum_d N_d(Pi) q^d with N_d(Pi) = sum_{lambda |- d} prod_i f_mu_i(lambda)."""
    return QSeries(_n_coeffs(canonical(profile), order))


def n_prime_series(profile, order):
    return series_div(n_series(profile, order), partition_gf(order))


def ramification_points(profile):
    return [(i, j) for i, mu in enumerate(profile) for j in range(len(mu))]


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def sub_profile(profile, block):
    """The profile carried by a set of ramification points, empty branch points dropped."""
    chosen = {}
    for i, j in block:
        chosen.setdefault(i, []).append(profile[i][j])
    return canonical(tuple(sorted(v, reverse=True)) for _, v in sorted(chosen.items()))


def label_factor(profile):
    """Number of ways to number equal parts within each branch point."""
    return prod(factorial(m) for mu in profile for m in multiplicities(mu).values())


def proper_splittings(profile):
    """Set partitions of the ramification points into at least two blocks."""
    points = ramification_points(profile)
    for blocks in set_partitions(points):
        if len(blocks) >= 2:
            yield [sub_profile(profile, b) for b in blocks]


@lru_cache(maxsize=None)
def _connected(profile, order):
    nprime = n_prime_series(profile, order)
    if not profile:
        return QSeries.zero(order)
    # with numbered ramification points every splitting of them into
    # components is counted exactly once, hence the label factors
    c = label_factor(profile)
    rest = QSeries.zero(order)
    for pieces in proper_splittings(profile):
        term = QSeries.constant(Fraction(prod(label_factor(p) for p in pieces), c), order)
        for p in pieces:
            term = term * _connected(p, order)
        rest = rest + term
    return nprime - rest


def n_connected_series(profile, order):
    return _connected(canonical(profile), order)


# brute-force monodromy enumeration


def cycle_type(perm):
    seen = [False] * len(perm)
    out = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        n = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            n += 1
        out.append(n)
    return tuple(sorted(out, reverse=True))


def _inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _orbits(d, gens):
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(d):
            a, b = find(x), find(g[x])
            if a != b:
                parent[a] = b
    groups = {}
    for x in range(d):
        groups.setdefault(find(x), []).append(x)
    return list(groups.values())


def oracle_cost(profile, d):
    """Loop count of the enumeration: (d!)^2 times the classes of all but the last gamma."""
    profile = make_profile(profile) if profile else ()
    cost = factorial(d) ** 2
    for mu in profile[:-1]:
        if sum(mu) > d:
            return 0
        cost *= class_size(mu, d)
    return cost


def enumerate_tuples(profile, d, budget=10**8):
    """Yield (alpha, beta, gammas) with [beta^-1 alpha^-1 beta alpha] = gamma_n...gamma_1.

    Permutations act on 0..d-1 and compose right to left.
    """
    cost = oracle_cost(profile, d)
    if cost > budget:
        raise BudgetExceeded(f"oracle needs {cost} iterations, budget is {budget}")
    targets = []
    for mu in profile:
        if sum(mu) > d:
            return
        targets.append(tuple(sorted(mu + (1,) * (d - sum(mu)), reverse=True)))
    perms = list(permutations(range(d)))
    types = {p: cycle_type(p) for p in perms}
    by_type = {}
    for p, t in types.items():
        by_type.setdefault(t, []).append(p)
    inv = {p: _inverse(p) for p in perms}
    n = len(profile)
    ident = tuple(range(d))

    def prefixes(k, acc):
        # acc = gamma_k ... gamma_1 composed so far
        if k == n - 1:
            yield (), acc
            return
        for g in by_type.get(targets[k], []):
            nacc = tuple(g[acc[x]] for x in range(d))
            for rest, total in prefixes(k + 1, nacc):
                yield (g,) + rest, total

    for a in perms:
        ai = inv[a]
        for b in perms:
            bi = inv[b]
            comm = tuple(bi[ai[b[a[x]]]] for x in range(d))
            if n == 0:
                if comm == ident:
                    yield a, b, ()
                continue
            for head, acc in prefixes(0, ident):
                ai_acc = inv[acc]
                last = tuple(comm[ai_acc[x]] for x in range(d))
                if types[last] == targets[-1]:
                    yield a, b, head + (last,)


def _classify(d, a, b, gammas):
    orbits = _orbits(d, (a, b) + gammas)
    connected = len(orbits) == 1
    prime = all(any(g[x] != x for g in gammas for x in orb) for orb in orbits)
    return connected, prime


def brute_force_counts(profile, d, budget=10**8, weight=None):
    """All three variants at once: {'all', 'prime', 'connected'} -> weighted count / d!.

    weight(alpha, beta, gammas) defaults to 1.
    """
    profile = make_profile(profile) if profile else ()
    totals = {v: Fraction(0) for v in VARIANTS}
    for a, b, gammas in enumerate_tuples(profile, d, budget):
        w = 1 if weight is None else weight(a, b, gammas)
        totals["all"] += w
        connected, prime = _classify(d, a, b, gammas)
        if prime:
            totals["prime"] += w
        if connected and d > 0:
            totals["connected"] += w
    return {v: t / factorial(d) for v, t in totals.items()}


def brute_force_n(profile, d, variant="all", budget=10**8):
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    return brute_force_counts(profile, d, budget)[variant]
