"""Command-line front end: `torusqm <command> ...`.

Exit codes: 0 success, 2 usage error, 3 fit failure, 4 cross-check
mismatch, 5 oracle budget exceeded.
"""

import argparse
import json
import os
import sys
import warnings

from . import acceptance
from .elliptic import graph_sum_by_constant_term, zeta0_Z_power, zeta0_Z_series
from .graphs import CrossCheckError, GlobalGraph, assemble, first_difference
from .hurwitz import (
    BudgetExceeded,
    brute_force_counts,
    n_connected_series,
    n_prime_series,
    n_series,
)
from .partitions import format_profile, parse_profile, profile_weight
from .quasimodular import FitError, fit_quasimodular, format_qmpoly, min_fit_order, qm_to_series
from .series import format_series
from .siegel_veech import c_prime_series, sv_assemble, sv_constant_term, sv_series
from .triple import SSZFitError, VertexFunction, a_number, a_prime, ssz_poly_fit

EXIT_OK, EXIT_USAGE, EXIT_FIT, EXIT_MISMATCH, EXIT_BUDGET = 0, 2, 3, 4, 5
SCHEMA = 1
COUNT_SERIES = {"all": n_series, "prime": n_prime_series, "connected": n_connected_series}


class UsageError(ValueError):
    pass


def _ints(text, what):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def _profile(text):
    try:
        return parse_profile(text)
    except ValueError as exc:
        raise UsageError(f"bad profile {text!r}: {exc}") from None


def _check(name, passed, detail=""):
    return {"name": name, "pass": bool(passed), "detail": detail}


class Output:
    """Collects one JSON document or a list of text lines."""

    def __init__(self, args, command):
        self.fmt = args.format
        self.doc = {"schema": SCHEMA, "command": command, "config": _config(args)}
        self.lines = []

    def set(self, key, value):
        self.doc[key] = value

    def text(self, line):
        self.lines.append(line)

    def series(self, s, key="series", label=None):
        self.doc[key] = s.to_json()
        self.text(f"{label or key}: {format_series(s)}")

    def poly(self, p, key="qmpoly", label="fit"):
        self.doc[key] = p.to_json()
        self.doc[key + "_text"] = format_qmpoly(p)
        self.text(f"{label}: {format_qmpoly(p)}")

    def checks(self, items):
        self.doc.setdefault("checks", []).extend(items)
        for c in items:
            self.text(f"{'PASS' if c['pass'] else 'FAIL'} {c['name']}" + (f" ({c['detail']})" if c["detail"] else ""))

    def emit(self, stream=sys.stdout):
        if self.fmt == "json":
            stream.write(json.dumps(self.doc, indent=2, ensure_ascii=False) + "\n")
        else:
            stream.write("\n".join(self.lines) + ("\n" if self.lines else ""))

    def failed(self):
        return any(not c["pass"] for c in self.doc.get("checks", []))


def _config(args):
    cfg = {"output": args.format, "oracle_budget": args.budget}
    if hasattr(args, "order"):
        cfg["order"] = args.order
    if isinstance(getattr(args, "fit", None), bool):
        cfg["fit"] = args.fit
    elif hasattr(args, "fit"):
        cfg["fit_max_weight"] = args.fit
    return cfg


def _fit_weight(args, default):
    if args.fit is None:
        return None
    return default if args.fit == "auto" else int(args.fit)


def _order(args):
    if args.order < 0:
        raise UsageError("--order must be non-negative")
    return args.order


# commands


def cmd_count(args):
    profile = _profile(args.profile)
    order = _order(args)
    out = Output(args, "count")
    out.set("profile", format_profile(profile))
    out.set("variant", args.variant)
    s = COUNT_SERIES[args.variant](profile, order)
    out.series(s)
    if args.oracle:
        bad = []
        for d in range(order + 1):
            got = brute_force_counts(profile, d, args.budget)[args.variant]
            if got != s[d]:
                bad.append(f"q^{d}: oracle {got}, series {s[d]}")
        out.checks([_check(f"brute-force oracle, d <= {order}", not bad, "; ".join(bad))])
    w = _fit_weight(args, profile_weight(profile))
    if w is not None:
        out.poly(fit_quasimodular(s, w))
    return out


def cmd_graphs(args):
    profile = _profile(args.profile)
    order = _order(args)
    out = Output(args, "graphs")
    out.set("profile", format_profile(profile))
    fs = [VertexFunction.f(mu) for mu in profile]
    total, details = assemble(fs, order, slack=args.slack, workers=args.threads)
    w = _fit_weight(args, profile_weight(profile))
    if args.per_graph:
        rows = []
        for g, aut, s in details:
            row = {"graph": str(g), "aut": aut, "series": s.to_json()}
            line = f"[{g}] aut={aut}: {format_series(s)}"
            if w is not None:
                try:
                    p = fit_quasimodular(s, w)
                    row["qmpoly"] = p.to_json()
                    row["qmpoly_text"] = format_qmpoly(p)
                    line += f"  = {format_qmpoly(p)}"
                except FitError as exc:
                    row["fit_error"] = str(exc)
                    line += f"  ({exc})"
            rows.append(row)
            out.text(line)
        out.set("graphs", rows)
    out.series(total, label="total")
    i = first_difference(total, n_prime_series(profile, order))
    out.checks([_check("graph sum equals N' from characters", i is None, "" if i is None else f"first difference at q^{i}")])
    if w is not None:
        out.poly(fit_quasimodular(total, w))
    return out


def cmd_triple(args):
    wm, wp = _ints(args.win, "--win"), _ints(args.wout, "--wout")
    mu = _ints(args.mu.strip().strip("()"), "--mu")
    if any(x <= 0 for x in wm + wp + mu):
        raise UsageError("widths and parts must be positive")
    if args.completed:
        if len(mu) != 1:
            raise UsageError("--completed takes a single cycle length, e.g. --mu (3)")
        F = VertexFunction.completed(mu[0])
    else:
        F = VertexFunction.f(mu)
    out = Output(args, "triple")
    out.set("win", wm)
    out.set("wout", wp)
    out.set("mu", mu)
    out.set("completed", args.completed)
    a, ap = a_number(wm, wp, F), a_prime(wm, wp, F)
    out.set("a", str(a))
    out.set("a_prime", str(ap))
    out.text(f"A = {a}")
    out.text(f"A' = {ap}")
    return out


def cmd_ssz(args):
    if args.m < 1 or args.n < 1 or args.ell < 1 or args.radius < 1:
        raise UsageError("--m, --n, --ell and --radius must be positive")
    r = ssz_poly_fit(args.m, args.n, args.ell, args.radius)
    out = Output(args, "ssz-check")
    out.set("status", r.status)
    out.set("degree", r.degree)
    out.set("variables", list(r.variables))
    out.set("polynomial", r.format())
    out.set("terms", [{"exp": list(e), "coeff": str(c)} for e, c in sorted(r.poly.items())])
    out.text(f"{r.status}: {r.format()}  [variables {', '.join(r.variables)}]")
    out.checks(
        [
            _check("single polynomial on the whole grid", True, f"{r.fit_points} fit, {r.checked_points} checked, {r.wall_points} on walls"),
            _check("even", r.is_even()),
        ]
    )
    return out


def cmd_zconst(args):
    e = args.power
    if e < 1:
        raise UsageError("--power must be at least 1")
    order = args.order if args.order is not None else max(12, min_fit_order(e) if args.fit else 0)
    if order < 0:
        raise UsageError("--order must be non-negative")
    args.order = order
    out = Output(args, "zconst")
    out.set("power", e)
    sym = zeta0_Z_power(e)
    s = zeta0_Z_series(e, order)
    out.poly(sym, key="qmpoly", label="[zeta^0] Z^%d" % e)
    out.series(s)
    checks = [_check("Fourier side matches the symbolic polynomial", s == qm_to_series(sym, order))]
    if args.fit:
        fitted = fit_quasimodular(s, e)
        out.set("fit", fitted.to_json())
        checks.append(_check("fit of the Fourier side equals the symbolic polynomial", fitted == sym))
    out.checks(checks)
    return out


def _parse_edges(text):
    edges = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            a, b = (int(x) for x in tok.split("-"))
        except ValueError:
            raise UsageError(f"bad edge {tok!r}; write edges as i-j") from None
        if a < 1 or b < 1:
            raise UsageError("vertices are numbered from 1")
        edges.append((min(a, b), max(a, b)))
    if not edges:
        raise UsageError("--graph needs at least one edge")
    return edges


def cmd_cterm(args):
    order = _order(args)
    edges = _parse_edges(args.graph)
    m = _ints(args.m, "--m") if args.m else [0] * len(edges)
    if len(m) != len(edges):
        raise UsageError("--m needs one exponent per edge")
    if any(x % 2 or x < 0 for x in m):
        raise UsageError("edge exponents must be even and non-negative")
    n = args.vertices or max(max(e) for e in edges)
    # GlobalGraph sorts edges; carry each exponent (and the marked edge) along
    tagged = sorted((e, mm, k) for k, (e, mm) in enumerate(zip(edges, m)))
    graph = GlobalGraph(n, tuple(e for e, _, _ in tagged))
    ms = [mm for _, mm, _ in tagged]
    out = Output(args, "cterm")
    out.set("graph", str(graph))
    out.set("m", ms)
    if args.sv_edge is None:
        s = graph_sum_by_constant_term(graph, ms, order, verify=not args.no_verify)
    else:
        if not 0 <= args.sv_edge < len(edges):
            raise UsageError("--sv-edge must index an edge (0-based, in the order given)")
        i0 = next(i for i, (_, _, k) in enumerate(tagged) if k == args.sv_edge)
        s = sv_constant_term(graph, ms, i0, order, verify=not args.no_verify)
        out.set("sv_edge", args.sv_edge)
    out.series(s)
    if not args.no_verify:
        out.checks([_check("constant term equals the direct graph sum", True)])
    w = _fit_weight(args, sum(x + 2 for x in ms))
    if w is not None:
        out.poly(fit_quasimodular(s, w))
    return out


def cmd_sv(args):
    profile = _profile(args.profile)
    order = _order(args)
    out = Output(args, "sv")
    out.set("profile", format_profile(profile))
    out.set("p", args.p)
    out.set("variant", args.variant)
    s = sv_series(profile, args.p, order, args.variant)
    out.series(s)
    if args.per_graph:
        total, details = sv_assemble(profile, args.p, order, slack=args.slack, workers=args.threads)
        out.set("graphs", [{"graph": str(g), "aut": aut, "series": x.to_json()} for g, aut, x in details])
        for g, aut, x in details:
            out.text(f"[{g}] aut={aut}: {format_series(x)}")
        i = first_difference(total, c_prime_series(profile, args.p, order))
        out.checks([_check("graph sum equals c' from characters", i is None, "" if i is None else f"first difference at q^{i}")])
    if args.fit is not None:
        if args.p % 2 == 0:
            print("warning: even p is not expected to be quasimodular; fit skipped", file=sys.stderr)
        else:
            w = profile_weight(profile) + args.p + 1 if args.fit == "auto" else int(args.fit)
            out.poly(fit_quasimodular(s, w))
    return out


def cmd_selftest(args):
    numbers = None
    if args.criteria:
        numbers = set(_ints(args.criteria, "--criteria"))
        unknown = numbers - {k for k, _, _ in acceptance.CRITERIA}
        if unknown:
            raise UsageError(f"no such criteria: {sorted(unknown)}")
    out = Output(args, "selftest")
    for k, title, checks in acceptance.run_all(numbers):
        out.text(f"criterion {k}: {title}")
        out.checks([_check(f"{k}: {c.name}", c.passed, "" if c.volatile else c.detail) for c in checks])
    return out


# parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes for graph sums")
    common.add_argument("--budget", type=int, default=10**8, help="oracle loop-count budget")

    parser = argparse.ArgumentParser(prog="torusqm", description="Exact counting of torus covers and quasimodular fits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    fit_kw = dict(nargs="?", const="auto", default=None, metavar="W", help="fit at max weight W (default: the natural weight)")

    p = add("count", cmd_count, "N, N' or N° as a q-series")
    p.add_argument("--profile", required=True, help='e.g. "(2),(2)" or "(3)"; "" for no branch points')
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--variant", choices=tuple(COUNT_SERIES), default="connected")
    p.add_argument("--fit", **fit_kw)
    p.add_argument("--oracle", action="store_true", help="cross-check every coefficient by brute force")

    p = add("graphs", cmd_graphs, "N' as a sum over global graphs")
    p.add_argument("--profile", required=True)
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--per-graph", action="store_true")
    p.add_argument("--fit", **fit_kw)
    p.add_argument("--slack", type=int, default=0, help="raise every valence bound by this much")

    p = add("triple", cmd_triple, "triple Hurwitz numbers A and A'")
    p.add_argument("--win", required=True, help="widths over 0, e.g. 2,3")
    p.add_argument("--wout", required=True, help="widths over infinity, e.g. 5")
    p.add_argument("--mu", required=True, help="partition over 1, e.g. (3)")
    p.add_argument("--completed", action="store_true", help="use the completed cycle P_l/l")

    p = add("ssz-check", cmd_ssz, "global polynomiality of completed-cycle vertex numbers")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--radius", type=int, default=6)

    p = add("zconst", cmd_zconst, "[zeta^0] Z^e")
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--fit", action="store_true")

    p = add("cterm", cmd_cterm, "graph sum by constant-term extraction")
    p.add_argument("--graph", required=True, help='edges, e.g. "1-2,1-2,1-2"')
    p.add_argument("--m", default=None, help="even exponent per edge, e.g. 0,0,0")
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--vertices", type=int, default=None)
    p.add_argument("--sv-edge", type=int, default=None, help="mark this edge (0-based) for the SV weight")
    p.add_argument("--no-verify", action="store_true", help="skip the direct-sum cross-check")
    p.add_argument("--fit", **fit_kw)

    p = add("sv", cmd_sv, "Siegel-Veech weighted counts")
    p.add_argument("--profile", required=True)
    p.add_argument("--p", type=int, default=-1)
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--variant", choices=("all", "prime", "connected"), default="connected")
    p.add_argument("--fit", **fit_kw)
    p.add_argument("--per-graph", action="store_true")
    p.add_argument("--slack", type=int, default=0)

    p = add("selftest", cmd_selftest, "run the acceptance suite")
    p.add_argument("--criteria", default=None, help="comma-separated subset, e.g. 1,5")
    return parser


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "threads", 1) < 1 or args.budget < 1:
        print("error: --threads and --budget must be positive", file=stderr)
        return EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            out = args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_BUDGET
    except CrossCheckError as exc:
        print(f"error: cross-check failed: {exc}", file=stderr)
        return EXIT_MISMATCH
    except (FitError, SSZFitError) as exc:
        print(f"error: fit failed: {exc}", file=stderr)
        return EXIT_FIT
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    out.emit(stdout)
    return EXIT_MISMATCH if out.failed() else EXIT_OK


def main():
    sys.exit(run())
