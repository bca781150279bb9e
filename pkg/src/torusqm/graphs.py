"""Global graphs of cylinder decompositions and their width/height sums.

Vertices are the branch points 1..n, edges are horizontal cylinders.  For an
oriented graph the heights h_e range over h >= 0 when the edge goes up in
label order (target > source) and h >= 1 otherwise, loops included.  With the
widths fixed the height sum is a product of geometric series, so only the
widths are enumerated.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial, prod

from .partitions import make_profile
from .series import QSeries, poly_div_one_minus
from .triple import VertexFunction, a_prime


@dataclass(frozen=True)
class GlobalGraph:
    n: int
    edges: tuple  # sorted pairs (i, j), i <= j, vertices 1..n

    def __post_init__(self):
        edges = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        for i, j in edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {(i, j)} outside vertices 1..{self.n}")
        object.__setattr__(self, "edges", edges)

    @property
    def loops(self):
        return tuple(e for e in self.edges if e[0] == e[1])

    def reduced(self):
        return GlobalGraph(self.n, tuple(e for e in self.edges if e[0] != e[1]))

    def valence(self, v):
        return sum((i == v) + (j == v) for i, j in self.edges)

    def isolated(self):
        return [v for v in range(1, self.n + 1) if not self.valence(v)]

    def is_connected(self):
        seen = {1} if self.n else set()
        changed = True
        while changed:
            changed = False
            for i, j in self.edges:
                if (i in seen) != (j in seen):
                    seen |= {i, j}
                    changed = True
        return len(seen) == self.n

    def relabel(self, perm):
        """perm maps old label (1-based) to new label."""
        return GlobalGraph(self.n, tuple((perm[i], perm[j]) for i, j in self.edges))

    def __str__(self):
        return ",".join(f"{i}-{j}" for i, j in self.edges)


def parse_graph(text, n=None):
    edges = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        a, b = tok.split("-")
        edges.append((int(a), int(b)))
    top = max((max(e) for e in edges), default=0)
    return GlobalGraph(n if n is not None else top, tuple(edges))


def automorphism_order(graph):
    counts = {}
    for e in graph.edges:
        counts[e] = counts.get(e, 0) + 1
    return prod(factorial(k) for k in counts.values())


@dataclass(frozen=True)
class Orientation:
    graph: GlobalGraph
    arcs: tuple  # (source, target) per edge, parallel to graph.edges; loops (v, v)

    def h_min(self):
        return tuple(0 if t > s else 1 for s, t in self.arcs)


def orientations(graph):
    choices = [((i, j),) if i == j else ((i, j), (j, i)) for i, j in graph.edges]
    for arcs in product(*choices):
        yield Orientation(graph, arcs)


def _balanced_widths(arcs, hmin, order):
    """Width tuples with flow balance at every vertex and sum h_min*w <= order.

    Every width is at most order: in a balanced flow each edge lies on a
    directed cycle, and each cycle passes through an edge with h_min = 1.
    """
    m = len(arcs)
    last = {}
    for k, (s, t) in enumerate(arcs):
        if s != t:
            last[s] = k
            last[t] = k
    closes = [[v for v in {s, t} if s != t and last[v] == k] for k, (s, t) in enumerate(arcs)]
    net = {}
    w = [0] * m

    def rec(k, cost):
        if k == m:
            yield tuple(w)
            return
        s, t = arcs[k]
        budget = order - cost
        if s == t:
            for x in range(1, budget + 1):
                w[k] = x
                yield from rec(k + 1, cost + x)
            return
        cl = closes[k]
        if cl:
            v = cl[0]
            cur = net.get(v, 0)
            x = -cur if v == s else cur
            cands = (x,) if 1 <= x <= order else ()
        else:
            top = budget if hmin[k] else order
            cands = range(1, top + 1)
        for x in cands:
            c = cost + hmin[k] * x
            if c > order:
                break
            net[s] = net.get(s, 0) + x
            net[t] = net.get(t, 0) - x
            if all(net.get(v, 0) == 0 for v in cl):
                w[k] = x
                yield from rec(k + 1, c)
            net[s] -= x
            net[t] += x

    # quick rejection: a vertex whose non-loop arcs all point the same way
    ins, outs = {}, {}
    for s, t in arcs:
        if s != t:
            outs[s] = outs.get(s, 0) + 1
            ins[t] = ins.get(t, 0) + 1
    for v in set(ins) | set(outs):
        if not ins.get(v) or not outs.get(v):
            return
    yield from rec(0, 0)


class _Accumulator:
    """Collects terms coef * q^shift / prod(1 - q^w) grouped by denominator."""

    def __init__(self, order):
        self.order = order
        self.groups = {}

    def add(self, coef, shift, divisors):
        if not coef or shift > self.order:
            return
        key = tuple(sorted(divisors))
        arr = self.groups.get(key)
        if arr is None:
            arr = self.groups[key] = [0] * (self.order + 1)
        arr[shift] += coef

    def series(self):
        total = [Fraction(0)] * (self.order + 1)
        for key, arr in self.groups.items():
            arr = list(arr)
            for w in key:
                poly_div_one_minus(arr, w)
            for i, x in enumerate(arr):
                total[i] += x
        return QSeries(total)


def _vertex_widths(orientation, widths):
    ins = {v: [] for v in range(1, orientation.graph.n + 1)}
    outs = {v: [] for v in range(1, orientation.graph.n + 1)}
    for (s, t), w in zip(orientation.arcs, widths):
        outs[s].append(w)
        ins[t].append(w)
    return ins, outs


def graph_sum_S(orientation, m, order):
    """sum over widths and heights of prod w_e^(m_e+1) q^(h_e w_e), balanced at each vertex."""
    m = tuple(m)
    if len(m) != len(orientation.arcs):
        raise ValueError("one exponent per edge")
    if any(x % 2 for x in m):
        raise ValueError("edge exponents must be even")
    hmin = orientation.h_min()
    acc = _Accumulator(order)
    for widths in _balanced_widths(orientation.arcs, hmin, order):
        coef = prod(w ** (k + 1) for w, k in zip(widths, m))
        shift = sum(h * w for h, w in zip(hmin, widths))
        acc.add(coef, shift, widths)
    return acc.series()


def graph_series(orientation, functions, order, sv_power=None, sv_edge=None):
    """sum_{h,w} prod_e w_e q^(h_e w_e) prod_v A'(w_v-, w_v+, F_v), balanced.

    With sv_power = p every term is also weighted by sum_e h_e w_e^p (or by
    the single edge sv_edge).
    """
    n = orientation.graph.n
    if len(functions) != n:
        raise ValueError("one vertex function per vertex")
    hmin = orientation.h_min()
    acc = _Accumulator(order)
    for widths in _balanced_widths(orientation.arcs, hmin, order):
        ins, outs = _vertex_widths(orientation, widths)
        val = Fraction(prod(widths))
        for v in range(1, n + 1):
            val *= a_prime(ins[v], outs[v], functions[v - 1])
            if not val:
                break
        if not val:
            continue
        shift = sum(h * w for h, w in zip(hmin, widths))
        if sv_power is None:
            acc.add(val, shift, widths)
            continue
        # sum_{h >= hmin} h q^(h w) = q^w / (1 - q^w)^2 for hmin in {0, 1}
        for k, (w, h0) in enumerate(zip(widths, hmin)):
            if sv_edge is not None and k != sv_edge:
                continue
            acc.add(val * Fraction(w) ** sv_power, shift + (1 - h0) * w, widths + (w,))
    return acc.series()


def graph_series_nprime(orientation, profile, order):
    return graph_series(orientation, [VertexFunction.f(mu) for mu in profile], order)


def graph_bracket_completed(orientation, ells, order):
    return graph_series(orientation, [VertexFunction.completed(l) for l in ells], order)


def enumerate_graphs_bounded(bounds):
    """Labeled multigraphs on len(bounds) vertices, every valence in 1..bound."""
    n = len(bounds)
    if n == 0:
        return [GlobalGraph(0, ())]
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    deg = [0] * (n + 1)
    chosen = []
    out = []

    def rec(k):
        if k == len(pairs):
            if all(deg[1:]):
                out.append(GlobalGraph(n, tuple(chosen)))
            return
        i, j = pairs[k]
        if i == j:
            top = (bounds[i - 1] - deg[i]) // 2
        else:
            top = min(bounds[i - 1] - deg[i], bounds[j - 1] - deg[j])
        for mult in range(top + 1):
            if i == j:
                deg[i] += 2 * mult
            else:
                deg[i] += mult
                deg[j] += mult
            chosen.extend([(i, j)] * mult)
            rec(k + 1)
            del chosen[len(chosen) - mult:]
            if i == j:
                deg[i] -= 2 * mult
            else:
                deg[i] -= mult
                deg[j] -= mult

    rec(0)
    return sorted(out, key=lambda g: (len(g.edges), g.edges))


def enumerate_graphs(profile=None, completed=False, ells=None, slack=0):
    """Graphs for a profile (f_mu vertices) or a list of completed cycle lengths."""
    if completed:
        bounds = [l + 1 + slack for l in ells]
    else:
        bounds = [sum(mu) + len(mu) + slack for mu in profile]
    return enumerate_graphs_bounded(bounds)


def _graph_total(args):
    graph, functions, order, sv_power = args
    total = QSeries.zero(order)
    for o in orientations(graph):
        total = total + graph_series(o, functions, order, sv_power)
    return total


def per_graph_series(graph, functions, order, sv_power=None):
    """Orientation-summed series of one labeled graph (no automorphism factor)."""
    return _graph_total((graph, tuple(functions), order, sv_power))


def assemble(functions, order, graphs=None, slack=0, sv_power=None, workers=1):
    """sum_Gamma 1/|Aut Gamma| sum_G (graph series), with per-graph details."""
    functions = tuple(functions)
    if graphs is None:
        graphs = enumerate_graphs_bounded([F.valence_bound() + slack for F in functions])
    jobs = [(g, functions, order, sv_power) for g in graphs]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_graph_total, jobs))
    else:
        parts = [_graph_total(j) for j in jobs]
    total = QSeries.zero(order)
    details = []
    for g, s in zip(graphs, parts):
        aut = automorphism_order(g)
        total = total + s / aut
        details.append((g, aut, s))
    if not functions:
        total = QSeries.constant(1, order)
    return total, details


def assemble_total(profile, order, slack=0, workers=1):
    """N'(Pi) as a sum over global graphs."""
    profile = make_profile(profile) if profile else ()
    fs = [VertexFunction.f(mu) for mu in profile]
    return assemble(fs, order, slack=slack, workers=workers)[0]


def assemble_completed(ells, order, slack=0, workers=1):
    """<prod P_l / l>_q as a sum over global graphs."""
    fs = [VertexFunction.completed(l) for l in ells]
    return assemble(fs, order, slack=slack, workers=workers)[0]


class CrossCheckError(AssertionError):
    def __init__(self, msg, index):
        super().__init__(msg)
        self.index = index


def first_difference(a, b):
    n = min(a.order, b.order)
    for i in range(n + 1):
        if a[i] != b[i]:
            return i
    return None


def check_equal(a, b, what):
    i = first_difference(a, b)
    if i is not None:
        raise CrossCheckError(f"{what}: coefficient of q^{i} differs ({a[i]} vs {b[i]})", i)
