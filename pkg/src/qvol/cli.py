"""Command-line front end.

Every subcommand evaluates one or more identities and prints reports; the
exit status is 0 when all of them hold, 1 when one fails, 2 on bad input and
3 when an enumeration cap is hit.
"""
from __future__ import annotations

import argparse
import json
import os
import resource
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict

from . import __version__
from .acceptance import (CRITERIA, SHARDS, CriterionReport, Settings, VerificationReport, criterion_13,
                         merge, run_task, tasks)
from .constructions import build_schur_poset, check_forest_hooks, check_schur_poset, forest_from_parents, Forest, qfact
from .ehrhart import eq_ehrhart, ehrhart_series, fit_ehrhart_polynomial
from .mpoly import MLaurent, Partition
from .poset import CapExceeded, PosetError, des, linear_extensions, load_poset, maj, maj_gf, ppartition_gf_bounded
from .qalg import QPoly, QRat, QSeries, expand_series
from .qint import IntegrationError, qint_order_polytope, simplex_volume, truncated_simplex_closed_form
from .selberg import SelbergSpec, askey_closed_form, askey_direct, selberg_closed_form, selberg_direct, selberg_via_poset
from .tableaux import (RPPShape, enumerate_gt, gansner_closed_form, gansner_integral, gf_gt,
                       gf_rpp_fixed_rdiag, rpp_fixed_rdiag_via_poset, rpp_series,
                       warnaar_closed_form, warnaar_integral)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_MAX_EXTENSIONS = 10 ** 7


class UsageError(ValueError):
    pass


# -- argument helpers -------------------------------------------------------------------

def _partition(text: str) -> Partition:
    try:
        parts = json.loads(text)
    except json.JSONDecodeError:
        parts = [int(p) for p in text.split(",") if p.strip()]
    if isinstance(parts, int):
        parts = [parts]
    if not isinstance(parts, list) or any(not isinstance(p, int) for p in parts):
        raise argparse.ArgumentTypeError(f"expected a JSON array of integers, got {text!r}")
    if any(a < b for a, b in zip(parts, parts[1:])) or any(p < 0 for p in parts):
        raise argparse.ArgumentTypeError(f"{parts} is not a partition")
    return Partition(tuple(p for p in parts if p))


def _int_list(text: str) -> list[int]:
    try:
        vals = json.loads(text) if text.strip().startswith("[") else [int(p) for p in text.split(",") if p.strip()]
    except (ValueError, json.JSONDecodeError):
        raise argparse.ArgumentTypeError(f"expected a list of integers, got {text!r}")
    return [int(v) for v in vals]


def _report(identity: str, params: dict, lhs, rhs, mode: str = "exact") -> VerificationReport:
    return VerificationReport(identity, params, str(lhs), str(rhs), lhs == rhs, mode)


def _series_report(identity: str, params: dict, lhs: QSeries, rhs: QSeries) -> VerificationReport:
    return _report(identity, params, lhs, rhs, f"series({lhs.order})")


def _parts(p: Partition) -> list[int]:
    return list(p.parts)


# -- subcommands ------------------------------------------------------------------------

def cmd_qvol(args) -> dict:
    P, omega = load_poset(args.poset)
    n = P.n
    one = MLaurent.const(1)
    params = {"poset": P.to_json(omega)}
    if args.r is None:
        V = qint_order_polytope(one, P, omega, s=args.s, method=args.method, cap=args.max_extensions)
        rhs = QRat(maj_gf(P, omega)) / qfact(n) * QRat.qpow(args.s * n)
        return {"value": V, "reports": [_report("volume-maj", params, V, rhs)]}
    params.update(r=args.r, s=args.s)
    V = qint_order_polytope(one, P, omega, r=args.r, s=args.s, method=args.method, cap=args.max_extensions)
    S = QRat(ppartition_gf_bounded(P, omega, [args.s] * n, [args.r] * n)) * QRat(QPoly([1, -1])) ** n
    return {"value": V, "reports": [_report("box-volume-sum", params, V, S)]}


def cmd_simplex(args) -> dict:
    perm = args.perm
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise UsageError(f"{perm} is not a permutation")
    n = len(perm)
    if args.r is None:
        V = simplex_volume(perm, None, args.s)
        rhs = QRat.qpow(maj(perm) + args.s * n) / qfact(n)
        return {"value": V, "reports": [_report("simplex-volume", {"perm": perm, "s": args.s}, V, rhs)]}
    if args.r <= args.s:
        raise UsageError("need r > s")
    V = simplex_volume(perm, args.r, args.s)
    rhs = truncated_simplex_closed_form(perm, QRat.qpow(args.r), QRat.qpow(args.s))
    return {"value": V, "reports": [_report("truncated-simplex", {"perm": perm, "r": args.r, "s": args.s}, V, rhs)]}


def cmd_lin_ext(args) -> dict:
    P, omega = load_poset(args.poset)
    words = list(linear_extensions(P, omega, args.max_extensions))
    table = [{"word": list(w), "des": des(w), "maj": maj(w)} for w in words]
    counts: dict[int, int] = {}
    for row in table:
        counts[row["maj"]] = counts.get(row["maj"], 0) + 1
    enum = QPoly([counts.get(k, 0) for k in range(max(counts, default=0) + 1)])
    rep = _report("maj-enumeration", {"poset": P.to_json(omega)}, enum, maj_gf(P, omega))
    return {"value": table, "reports": [rep]}


def cmd_forest(args) -> dict:
    if args.poset:
        P, omega = load_poset(args.poset)
        if omega != tuple(range(1, P.n + 1)):
            raise UsageError("forest posets are read with their identity labeling")
        F = Forest(P)
    else:
        F = forest_from_parents([p or None for p in args.parents])
    a = args.a if args.a is not None else [0] * F.n
    if len(a) != F.n or any(x < 0 for x in a):
        raise UsageError("need one nonnegative exponent per element")
    c = check_forest_hooks(F, a, method=args.method)
    params = {"covers": [list(x) for x in F.poset.covers], "a": a}
    return {"value": c.lhs, "reports": [_report("forest", params, c.lhs, c.rhs)]}


def cmd_selberg(args) -> dict:
    spec = SelbergSpec(args.n, args.alpha, args.beta, args.m)
    params = {"n": args.n, "alpha": args.alpha, "beta": args.beta, "m": args.m, "route": args.route}
    if args.route == "askey":
        v = askey_direct(spec)
        return {"value": v, "reports": [_report("cube-form", params, v, askey_closed_form(spec))]}
    route = {"direct": selberg_direct, "closed": selberg_closed_form, "poset": selberg_via_poset}[args.route]
    v = route(spec)
    return {"value": v, "reports": [_report("selberg", params, v, selberg_closed_form(spec))]}


def cmd_schur_poset(args) -> dict:
    SP = build_schur_poset(args.n, args.lam)
    out = {"value": {"poset": SP.poset0.to_json(), "names": list(SP.poset0.names or ()),
                     "diagonal_sizes": list(SP.diag_sizes)}, "reports": []}
    if args.mu is not None:
        c = check_schur_poset(args.n, args.lam, args.mu)
        out["reports"].append(_report("schur-poset-volume",
                                      {"n": args.n, "lambda": _parts(args.lam), "mu": _parts(args.mu)}, c.lhs, c.rhs))
    return out


def cmd_rpp(args) -> dict:
    D = args.series_degree
    closed = gf_rpp_fixed_rdiag(args.n, args.lam, args.mu)
    params = {"n": args.n, "lambda": _parts(args.lam), "mu": _parts(args.mu)}
    enum = rpp_series(RPPShape.shifted(args.n, args.lam), D, 0, args.mu)
    return {"value": closed, "reports": [
        _report("shifted-rpp-poset", params, rpp_fixed_rdiag_via_poset(args.n, args.lam, args.mu), closed),
        _series_report("shifted-rpp-enumeration", params, enum, expand_series(closed, D)),
    ]}


def cmd_gt(args) -> dict:
    D = args.series_degree
    params = {"n": args.n, "lambda": _parts(args.lam), "mu": _parts(args.mu)}
    g1, g2 = gf_gt(args.n, args.lam, args.mu, 1), gf_gt(args.n, args.lam, args.mu, 2)
    cnt: dict[int, int] = {}
    for G in enumerate_gt(args.n, args.lam, args.mu, max_size=D):
        cnt[G.size] = cnt.get(G.size, 0) + 1
    return {"value": g1, "reports": [
        _report("gt-two-forms", params, g1, g2),
        _series_report("gt-enumeration", params, QSeries.from_counts(cnt, D), expand_series(g1, D)),
    ]}


def cmd_warnaar(args) -> dict:
    params = {"n": args.n, "lambda": _parts(args.lam), "mu": _parts(args.mu), "alpha": args.alpha}
    v = warnaar_integral(args.n, args.lam, args.mu, args.alpha)
    return {"value": v, "reports": [_report("schur-pair-integral", params, v,
                                            warnaar_closed_form(args.n, args.lam, args.mu, args.alpha))]}


def cmd_gansner(args) -> dict:
    params = {"n": args.n, "lambda": _parts(args.lam), "alpha": args.alpha}
    v = gansner_integral(args.n, args.lam, args.alpha)
    return {"value": v, "reports": [_report("shifted-integral-product", params, v,
                                            gansner_closed_form(args.n, args.lam, args.alpha))]}


def cmd_ehrhart(args) -> dict:
    P, omega = load_poset(args.poset)
    if omega != tuple(range(1, P.n + 1)):
        raise UsageError("Delta(P) is defined by the element indices; omit omega")
    if args.m is not None:
        if args.m < 0:
            raise UsageError("dilation must be nonnegative")
        return {"value": eq_ehrhart(P, args.m), "reports": []}
    if args.series:
        return {"value": ehrhart_series(P), "reports": []}
    E = fit_ehrhart_polynomial(P)
    return {"value": E, "reports": []}


def _worker(cfg: Settings, task: tuple[int, int, int]) -> CriterionReport:
    return run_task(cfg, *task)


def _threads() -> int:
    raw = os.environ.get("QVOL_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise UsageError("QVOL_THREADS must be an integer")
    return os.cpu_count() or 1


def _peak_mb() -> float:
    own = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    kids = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss
    return max(own, kids) / 1024.0


def run_verify_all(cfg: Settings, numbers: list[int], threads: int, emit=None) -> list[CriterionReport]:
    """Run the selected criteria, reporting each as soon as it and all
    earlier ones are done; criterion 13 then checks the whole run."""
    start = time.monotonic()
    base = [k for k in numbers if k != 13]
    work = tasks(base)
    reports: list[CriterionReport] = []

    def collect(results):
        for k in base:
            rep = merge([results(t) for t in work if t[0] == k])
            reports.append(rep)
            if emit:
                emit(rep)

    if threads > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(work))) as pool:
            # heaviest items first so the pool drains evenly
            order = sorted(work, key=lambda t: t[0] not in SHARDS)
            futs = {t: pool.submit(_worker, cfg, t) for t in order}
            collect(lambda t: futs[t].result())
    else:
        collect(lambda t: run_task(cfg, *t))
    if 13 in numbers:
        reports.append(criterion_13(cfg, reports, time.monotonic() - start, _peak_mb()))
        if emit:
            emit(reports[-1])
    return reports


def cmd_verify_all(args) -> dict:
    cfg = Settings(max_size=args.max_size, series_degree=args.series_degree)
    numbers = args.criteria or list(range(1, 14))
    bad = [k for k in numbers if k not in CRITERIA and k != 13]
    if bad:
        raise UsageError(f"unknown criteria {bad}")
    text = args.format == "text"

    def emit(rep: CriterionReport):
        if text:
            print(rep.summary(), flush=True)
            for f in rep.failures[: args.show_failures]:
                print(f"    {f.identity} {json.dumps(f.params, sort_keys=True)}")
                print(f"      lhs = {f.lhs}")
                print(f"      rhs = {f.rhs}")
            for note in rep.notes:
                print(f"    note: {note}")

    reports = run_verify_all(cfg, numbers, _threads(), emit)
    return {"criteria": reports}


# -- rendering --------------------------------------------------------------------------

def _jsonable(v):
    if isinstance(v, (QRat, QPoly, QSeries)):
        return {"text": str(v), "json": v.to_json()}
    if hasattr(v, "to_json"):
        return v.to_json()
    if isinstance(v, VerificationReport):
        return asdict(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def _render(command: str, result: dict, fmt: str) -> tuple[str, bool]:
    if "criteria" in result:
        reps = result["criteria"]
        ok = all(r.passed for r in reps)
        if fmt == "json":
            return json.dumps({"command": command, "passed": ok, "criteria": [r.to_json() for r in reps]},
                              sort_keys=True, indent=1), ok
        return "", ok
    reports = result.get("reports", [])
    ok = all(r.equal for r in reports)
    if fmt == "json":
        payload = {"command": command, "value": _jsonable(result.get("value")),
                   "reports": [asdict(r) for r in reports], "passed": ok}
        return json.dumps(payload, sort_keys=True, indent=1), ok
    lines = []
    value = result.get("value")
    if isinstance(value, list):
        lines += [json.dumps(v, sort_keys=True) for v in value]
    elif value is not None and hasattr(value, "coeffs") and not isinstance(value, (QPoly, QSeries)):
        lines += [f"c{k} = {c}" for k, c in enumerate(value.coeffs)]
    elif value is not None and hasattr(value, "numerator"):
        lines += [f"t^{d}: {p}" for d, p in sorted(value.numerator.items())]
        lines.append(f"denominator: (t;q)_{value.n + 1}")
    elif isinstance(value, dict):
        lines.append(json.dumps(_jsonable(value), sort_keys=True))
    elif value is not None:
        lines.append(str(value))
    for r in reports:
        status = "holds" if r.equal else "FAILS"
        lines.append(f"{r.identity} {json.dumps(r.params, sort_keys=True)} [{r.mode}]: {status}")
        if not r.equal:
            lines.append(f"  lhs = {r.lhs}")
            lines.append(f"  rhs = {r.rhs}")
    return "\n".join(lines), ok


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text", help="output format")
    common.add_argument("--max-extensions", type=int, default=DEFAULT_MAX_EXTENSIONS,
                        help="cap on enumerated linear extensions (exit 3 when exceeded)")
    common.add_argument("--series-degree", type=int, default=20, help="truncation degree for series checks")

    p = argparse.ArgumentParser(prog="qvol", description="Exact multiple q-integrals over order polytopes.")
    p.add_argument("--version", action="version", version=f"qvol {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("qvol", parents=[common], help="q-volume of an order polytope against its maj generating function")
    s.add_argument("--poset", required=True, help="poset JSON file {n, covers, omega}")
    s.add_argument("--r", type=int, default=None, help="lower box bound q^r (default: 0)")
    s.add_argument("--s", type=int, default=0, help="upper box bound q^s")
    s.add_argument("--method", choices=("direct", "decomposition"), default="direct")
    s.set_defaults(func=cmd_qvol)

    s = sub.add_parser("simplex", parents=[common], help="q-volume of a (truncated) simplex")
    s.add_argument("--perm", type=_int_list, required=True, help="permutation, e.g. 2,1,3")
    s.add_argument("--r", type=int, default=None)
    s.add_argument("--s", type=int, default=0)
    s.set_defaults(func=cmd_simplex)

    s = sub.add_parser("lin-ext", parents=[common], help="linear extensions with des and maj")
    s.add_argument("--poset", required=True)
    s.set_defaults(func=cmd_lin_ext)

    s = sub.add_parser("forest", parents=[common], help="monomial integral over a forest against its hook product")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--parents", type=_int_list, help="parent of each element (0 for a root); parents must be larger")
    g.add_argument("--poset", help="poset JSON file of a naturally labeled forest")
    s.add_argument("--a", type=_int_list, default=None, help="exponents a_i")
    s.add_argument("--method", choices=("iterated", "direct", "decomposition"), default="iterated")
    s.set_defaults(func=cmd_forest)

    s = sub.add_parser("selberg", parents=[common], help="q-Selberg integral by one route against the closed form")
    for name in ("n", "alpha", "beta", "m"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.add_argument("--route", choices=("direct", "closed", "poset", "askey"), default="direct")
    s.set_defaults(func=cmd_selberg)

    s = sub.add_parser("schur-poset", parents=[common], help="export the Schur poset; with --mu check its volume")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lambda", dest="lam", type=_partition, default=Partition(()))
    s.add_argument("--mu", type=_partition, default=None)
    s.set_defaults(func=cmd_schur_poset)

    for name, func, hlp in (("rpp", cmd_rpp, "shifted RPPs with fixed reverse diagonal"),
                            ("gt", cmd_gt, "Gelfand-Tsetlin patterns with fixed bottom row")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--lambda", dest="lam", type=_partition, default=Partition(()))
        s.add_argument("--mu", type=_partition, default=Partition(()))
        s.set_defaults(func=func)

    s = sub.add_parser("warnaar", parents=[common], help="integral of s_lambda s_mu x^(alpha-1) Dbar^2 over a chain")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lambda", dest="lam", type=_partition, default=Partition(()))
    s.add_argument("--mu", type=_partition, default=Partition(()))
    s.add_argument("--alpha", type=int, default=1)
    s.set_defaults(func=cmd_warnaar)

    s = sub.add_parser("gansner", parents=[common], help="integral of s_lambda x^(alpha-1) Dbar over a chain")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lambda", dest="lam", type=_partition, default=Partition(()))
    s.add_argument("--alpha", type=int, default=1)
    s.set_defaults(func=cmd_gansner)

    s = sub.add_parser("ehrhart", parents=[common], help="q-Ehrhart function, series or polynomial of Delta(P)")
    s.add_argument("--poset", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--m", type=int)
    g.add_argument("--series", action="store_true")
    g.add_argument("--fit", action="store_true")
    s.set_defaults(func=cmd_ehrhart)

    s = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    s.add_argument("--max-size", type=int, default=8, help="largest Selberg poset")
    s.add_argument("--criteria", type=_int_list, default=None, help="subset of criteria, e.g. 1,2,13")
    s.add_argument("--show-failures", type=int, default=3, help="failing instances printed per criterion (text)")
    s.set_defaults(func=cmd_verify_all)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except CapExceeded as exc:
        print(f"qvol: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, PosetError, IntegrationError, OSError, KeyError, ValueError) as exc:
        print(f"qvol: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out, ok = _render(args.command, result, args.format)
    if out:
        print(out)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
