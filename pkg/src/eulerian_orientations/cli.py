"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource ceiling.
Ceilings are read from flags, then ``EO_*`` environment variables, then
defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import __version__, config
from .errors import ConfigurationError, DomainError, ResourceError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CheckReport:
    name: str
    status: str
    detail: str
    wall_time_ms: int


# ---------------------------------------------------------------------------
# checks: each returns (passed, detail)

CheckFn = Callable[[argparse.Namespace], Tuple[bool, str]]
CHECKS: Dict[str, CheckFn] = {}


def check(name: str):
    def register(fn: CheckFn) -> CheckFn:
        CHECKS[name] = fn
        return fn

    return register


def _first_mismatch(got, want) -> str:
    for i, (a, b) in enumerate(zip(got, want)):
        if a != b:
            return f"index {i}: got {a}, expected {b}"
    if len(got) != len(want):
        return f"length {len(got)} != {len(want)}"
    return ""


def _opt(args, name, default):
    value = getattr(args, name, None)
    return default if value is None else value


@check("system-vs-closed-form")
def _check_system(args) -> Tuple[bool, str]:
    from .closedform import Family, explicit_triple, gf_main
    from .fesolver import cross_validate, extract_Q, residuals, solve

    N = _opt(args, "order", 10)
    config.require(N, config.max_order(), "order")
    sols = {}
    for kind, family in (("quartic", Family.QUARTIC), ("colourful", Family.GENERAL)):
        sol = solve(kind, N)
        sols[kind] = sol
        bad = {k: v for k, v in residuals(sol).items() if v}
        if bad:
            name, cells = next(iter(bad.items()))
            return False, f"{kind}: equation {name} fails at {cells[0]}"
        X = sol.C.x_window[1]
        closed = explicit_triple(family, 2 * N + 1, max(X, 2 * N + 2))
        cv = cross_validate(sol, closed)
        if not cv["identical"]:
            return False, f"{kind}: first mismatch {cv['max_mismatch']}"
    qc = extract_Q(sols["colourful"])
    g = gf_main("general", max(qc.order, 1))
    for n in range(1, qc.order + 1):
        if qc[n] != 2 * g[n]:
            return False, f"Q^c != 2G at t^{n}"
    q = extract_Q(sols["quartic"])
    Q = gf_main("quartic", max(q.order, 1))
    for n in range(1, q.order + 1):
        if q[n] != Q[n]:
            return False, f"Q from system differs at t^{n}"
    return True, f"order {N}"


@check("oracle-eo")
def _check_oracle_eo(args):
    from .closedform import gf_main
    from .maps import aggregate_eo_count

    E = _opt(args, "edges", 3)
    got = [aggregate_eo_count("general", n) for n in range(1, E + 1)]
    want = gf_main("general", E).integers()[1:]
    return got == want, _first_mismatch(got, want) or f"g = {got}"


@check("oracle-quartic")
def _check_oracle_quartic(args):
    from .closedform import gf_main
    from .maps import aggregate_eo_count

    V = min(_opt(args, "edges", 6) // 2, 3)
    got = [aggregate_eo_count("quartic", n) for n in range(1, V + 1)]
    want = gf_main("quartic", max(V, 1)).integers()[1 : V + 1]
    return got == want, _first_mismatch(got, want) or f"q = {got}"


@check("oracle-partial")
def _check_oracle_partial(args):
    from .closedform import gf_main
    from .maps import aggregate_eo_count

    E = _opt(args, "edges", 3)
    got = [aggregate_eo_count("partial", n) for n in range(1, E + 1)]
    want = gf_main("quartic", E).integers()[1:]
    return got == want, _first_mismatch(got, want) or f"partial = {got}"


@check("patch-tables")
def _check_patches(args):
    from .fesolver import solve
    from .maps import PatchKind, classify_patch, enumerate_patches, example_d_patch

    for kind, colourful in (("quartic", False), ("colourful", True)):
        sol = solve(kind, 4)
        for tag, series in (("patch", sol.P), ("c-patch", sol.C), ("d-patch", sol.D)):
            table = enumerate_patches(PatchKind.parse(tag, colourful), 3, 1)
            for j in range(4):
                for n in range(4 - j):
                    found = table.get((j, n), {})
                    top = 13 if tag == "c-patch" else (1 if tag == "d-patch" else 0)
                    for k in range(top + 1):
                        if found.get(k, 0) != series.coeff(j, n, k):
                            return False, f"{kind} {tag} y^{j} t^{n} x^{k}: {found.get(k, 0)} vs {series.coeff(j, n, k)}"
    info = classify_patch(example_d_patch())
    if not (info.is_dpatch and (info.quadrangles, info.digons, info.half_outer) == (6, 3, 3)):
        return False, "explicit D-patch is not classified as t^6 x^3 y^3"
    return True, "j + n <= 3"


@check("bijection-roundtrip")
def _check_bijection(args):
    from .bijection import phi, psi, vfe_statistics
    from .maps import enumerate_labelled_maps

    E = _opt(args, "edges", 3)
    count = 0
    for n in range(1, E + 1):
        for L in enumerate_labelled_maps(n):
            M = phi(L)
            problems = M.validate()
            if problems:
                return False, f"phi output invalid: {problems[0]}"
            actual, predicted = vfe_statistics(L, M)
            if actual != predicted:
                return False, f"statistics {actual} != {predicted}"
            L2 = psi(M)
            if L2.canonical() != L.canonical() or phi(L2).canonical() != M.canonical():
                return False, f"round trip fails on {L.base}"
            count += 1
    return True, f"{count} labelled maps"


@check("phi4-refinement")
def _check_phi4(args):
    from .bijection import iter_labelled_quadrangulations, phi4

    F = min(_opt(args, "edges", 4) // 2, 3) or 1
    for n in range(1, F + 1):
        for q in iter_labelled_quadrangulations(n):
            m = phi4(q)
            if m.base.n_edges != n or m.base.n_faces != len(q.local_minima()):
                return False, f"edge or face count wrong on {q.base}"
            flat_faces = sum(1 for c in q.base.faces if len({q.label(d) for d in c}) == 2)
            flat_edges = sum(1 for d, a in m.base.edges() if m.label(d) == m.label(a))
            if flat_faces != flat_edges:
                return False, f"two-label faces {flat_faces} != flat edges {flat_edges}"
    return True, f"quadrangulations with <= {F} faces"


@check("colourful-2to1")
def _check_colourful(args):
    from collections import Counter

    from .bijection import colourful_pair, is_colourful, iter_labelled_quadrangulations
    from .maps import enumerate_labelled_maps

    F = min(_opt(args, "edges", 2), 3)
    for n in range(1, F + 1):
        colourful = Counter()
        for q in iter_labelled_quadrangulations(n):
            if is_colourful(q):
                colourful[q.canonical()] += 1
        hits = Counter()
        for L in enumerate_labelled_maps(n):
            for q in colourful_pair(L):
                hits[q.canonical()] += 1
        if set(hits) != set(colourful) or set(hits.values()) != {1}:
            return False, f"pairs do not partition the colourful quadrangulations with {n} faces"
    return True, f"<= {F} faces"


@check("cat-identity")
def _check_cat(args):
    from .closedform import check_cat_identity

    N = _opt(args, "order", 20)
    ok, residual = check_cat_identity(N)
    return ok, f"order {N}" if ok else f"residual terms {sorted(residual.terms())[:1]}"


@check("vandermonde")
def _check_vandermonde(args):
    from .closedform import check_vandermonde

    K = _opt(args, "order", 12)
    for k in range(K + 1):
        for n in range(k + 1):
            for l in range(K + 1):
                if not check_vandermonde(k, l, n):
                    return False, f"k={k} l={l} n={n}"
    return True, f"k, l <= {K}"


@check("omega-ode")
def _check_omega_ode(args):
    from .closedform import check_omega_ode

    N = _opt(args, "order", 50)
    for fam in ("quartic", "general"):
        res = check_omega_ode(fam, N)
        if res.valuation() is not None:
            return False, f"{fam}: residual at r^{res.valuation()}"
    return True, f"order {N}"


@check("R-ode")
def _check_R_ode(args):
    from .closedform import check_R_ode

    N = _opt(args, "order", 50)
    for fam in ("quartic", "general"):
        res = check_R_ode(fam, N)
        if res.valuation() is not None:
            return False, f"{fam}: residual at t^{res.valuation()}"
    return True, f"order {N}"


@check("tutte33")
def _check_tutte(args):
    from .maps import tutte_sum_33

    E = min(_opt(args, "edges", 3), 3)
    want = [6, 78, 1326][:E]
    got = [int(tutte_sum_33(e)) for e in range(1, E + 1)]
    return got == want, _first_mismatch(got, want) or f"sums {got}"


@check("forest-link")
def _check_forest(args):
    from .trees import check_forest_link

    for n, (brute, from_r, from_q) in check_forest_link(2).items():
        if brute != from_r or (from_q is not None and brute != from_q):
            return False, f"{n} faces: brute force {brute}, predicted {from_r}"
    return True, "n = 2, 3, 4"


@check("trees")
def _check_trees(args):
    from .closedform import series_R
    from .trees import count_balanced_trees, tree_R

    for fam, top in (("quartic", 4), ("general", 5)):
        R = series_R(fam, top)
        for n in range(2, top + 1):
            if count_balanced_trees(fam, n) != -R[n]:
                return False, f"{fam} primitive trees at size {n}"
        for u in (1, 2, -1):
            Ru = tree_R(fam, u, top)
            for n in range(2, top + 1):
                if count_balanced_trees(fam, n, "marked", u) != Ru[n]:
                    return False, f"{fam} marked trees at size {n}, u = {u}"
        if tree_R(fam, -1, top) != R:
            return False, f"{fam}: R(t, -1) differs from R"
    return True, "exhaustive range"


@check("asym-constants")
def _check_asym(args):
    import mpmath

    from .asym import constants, rho_lambda_formula, rho_omega_formula, singular_slope_fit

    bits = config.precision_bits()
    for fam in ("quartic", "general"):
        c = constants(fam, bits)
        with mpmath.workprec(bits):
            if abs(c.mu * c.rho - 1) > mpmath.mpf(10) ** -50:
                return False, f"{fam}: mu rho != 1"
        s = singular_slope_fit(fam, ("1e-3", "1e-4"), bits)
        if abs(s / c.slope - 1) > 0.05:
            return False, f"{fam}: slope fit {mpmath.nstr(s, 8)} vs {mpmath.nstr(c.slope, 8)}"
    with mpmath.workprec(bits):
        if abs(rho_lambda_formula(Fraction(2, 3), bits) - constants("quartic", bits).rho) > mpmath.mpf(10) ** -50:
            return False, "quartic radius formula"
        if abs(rho_omega_formula(0, bits) - constants("general", bits).rho) > mpmath.mpf(10) ** -50:
            return False, "general radius formula"
    return True, f"{bits} bits"


@check("growth-report")
def _check_growth(args):
    import mpmath

    from .asym import constants, growth_rows

    n_max = _opt(args, "n_max", 200)
    for fam in ("quartic", "general"):
        rows = growth_rows(fam, n_max)
        if any(r >= 0 for n, r, _, _ in rows if n >= 2):
            return False, f"{fam}: some r_n >= 0"
        mu = constants(fam).mu
        ratio = mpmath.mpf(rows[-2][2])
        if abs(abs(ratio) / mu - 1) > 0.02:
            return False, f"{fam}: ratio at n = {n_max - 1} is {rows[-2][2]}"
    return True, f"n <= {n_max}"


# ---------------------------------------------------------------------------
# subcommands


def _write(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {out}: {exc.strerror}") from exc


def cmd_sequence(args) -> int:
    from .closedform import gf_main

    if args.count < 0:
        raise UsageError("--count must be non-negative")
    config.require(args.count, config.max_order(), "count")
    values = gf_main(args.family, args.count).integers()[1:] if args.count else []
    if args.format == "json":
        _write(json.dumps({"family": args.family, "values": [str(v) for v in values]}) + "\n", args.out)
    else:
        _write(" ".join(map(str, values)) + "\n", args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    from .fesolver import solve
    from .fps import to_json

    config.require(args.order, config.max_order(), "order")
    sol = solve(args.system, args.order)
    doc = {
        "system": sol.kind.value,
        "order": sol.order,
        "P": to_json(sol.P),
        "C": to_json(sol.C),
        "D": to_json(sol.D),
    }
    _write(json.dumps(doc, sort_keys=True) + "\n", args.out)
    return EXIT_OK


_MAP_FILTERS = {
    "none": {},
    "quartic": {"vertex_degrees": {4}},
    "eulerian": {"vertex_degrees": "even"},
    "bipartite": {"face_degrees": "even"},
    "quadrangulation": {"face_degrees": {4}},
}


def cmd_enumerate(args) -> int:
    from .maps import EVEN, enumerate_rooted_maps, format_map

    kwargs = {k: (EVEN if v == "even" else v) for k, v in _MAP_FILTERS[args.filter].items()}
    lines = [format_map(m) for m in enumerate_rooted_maps(args.edges, **kwargs)]
    _write("".join(line + "\n" for line in lines), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all:
        names = sorted(CHECKS)
    elif args.check:
        names = [args.check]
    else:
        raise UsageError("give --check NAME or --all")
    for name in names:
        if name not in CHECKS:
            raise UsageError(f"unknown check {name!r}; available: {', '.join(sorted(CHECKS))}")
    reports: List[CheckReport] = []
    resource_hit = False
    for name in names:
        start = time.perf_counter()
        try:
            ok, detail = CHECKS[name](args)
            status = "pass" if ok else "fail"
        except ResourceError as exc:
            status, detail = "skipped", f"resource ceiling: {exc}"
            resource_hit = True
        except (DomainError, ConfigurationError) as exc:
            status, detail = "fail", f"{type(exc).__name__}: {exc}"
        elapsed = int((time.perf_counter() - start) * 1000)
        reports.append(CheckReport(name, status, detail or "", elapsed))
    if args.format == "json":
        _write(json.dumps([asdict(r) for r in reports], indent=1) + "\n", args.out)
    else:
        _write("".join(f"{r.status.upper():7} {r.name}: {r.detail} ({r.wall_time_ms} ms)\n" for r in reports), args.out)
    if any(r.status == "fail" for r in reports):
        return EXIT_FAIL
    if resource_hit:
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_asym(args) -> int:
    from .asym import constants, growth_report, singular_slope_fit

    if args.report == "growth":
        _write(growth_report(args.family, args.n_max), args.out)
        return EXIT_OK
    import mpmath

    c = constants(args.family)
    doc = {"family": args.family, "rho": mpmath.nstr(c.rho, 50), "mu": mpmath.nstr(c.mu, 50), "kappa": str(c.kappa), "slope": mpmath.nstr(c.slope, 50)}
    if args.report == "slope":
        s = singular_slope_fit(args.family, (args.eps1, args.eps2))
        doc["slope_fit"] = mpmath.nstr(s, 20)
        doc["note"] = "two-point fit; the O(eps) remainder has no proven bound, so this is an estimate"
    _write(json.dumps(doc, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_trees(args) -> int:
    from .closedform import series_R
    from .trees import count_balanced_trees, tree_R

    R = series_R(args.family, args.max_size)
    Ru = tree_R(args.family, args.u, args.max_size) if args.mode == "marked" else None
    rows = []
    for n in range(2, args.max_size + 1):
        brute = count_balanced_trees(args.family, n, args.mode, args.u)
        series = -R[n] if Ru is None else Ru[n]
        rows.append({"size": n, "brute_force": str(brute), "series": str(series)})
    if args.format == "json":
        _write(json.dumps({"family": args.family, "mode": args.mode, "rows": rows}) + "\n", args.out)
    else:
        _write("".join(f"{r['size']} {r['brute_force']} {r['series']}\n" for r in rows), args.out)
    return EXIT_OK if all(r["brute_force"] == r["series"] for r in rows) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eulerian-orientations", description="Exact enumeration of planar Eulerian orientations.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--max-edges", type=int, help="ceiling on map sizes (EO_MAX_EDGES)")
    p.add_argument("--max-order", type=int, help="ceiling on series orders (EO_MAX_ORDER)")
    p.add_argument("--precision-bits", type=int, help="working precision (EO_PRECISION_BITS)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("sequence", help="print q_n or g_n")
    s.add_argument("--family", choices=["quartic", "general"], required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sequence)

    s = sub.add_parser("solve-system", help="solve the functional equations and write JSON")
    s.add_argument("--system", choices=["quartic", "colourful", "colorful"], required=True)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("enumerate", help="list rooted planar maps, one per line")
    s.add_argument("--edges", type=int, required=True)
    s.add_argument("--filter", choices=sorted(_MAP_FILTERS), default="none")
    s.add_argument("--out")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", help="run registered checks")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--check")
    g.add_argument("--all", action="store_true")
    s.add_argument("--order", type=int)
    s.add_argument("--edges", type=int)
    s.add_argument("--n-max", type=int)
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("asym", help="growth table (CSV) or asymptotic constants (JSON)")
    s.add_argument("--family", choices=["quartic", "general"], required=True)
    s.add_argument("--n-max", type=int, default=200)
    s.add_argument("--report", choices=["growth", "constants", "slope"], default="growth")
    s.add_argument("--eps1", default="1e-3")
    s.add_argument("--eps2", default="1e-4")
    s.add_argument("--out")
    s.set_defaults(func=cmd_asym)

    s = sub.add_parser("trees", help="balanced-tree counts against the series")
    s.add_argument("--family", choices=["quartic", "general"], required=True)
    s.add_argument("--max-size", type=int, default=4)
    s.add_argument("--mode", choices=["primitive", "marked"], default="primitive")
    s.add_argument("--u", type=Fraction, default=None)
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.add_argument("--out")
    s.set_defaults(func=cmd_trees)
    return p


_OVERRIDES = (("max_edges", "EO_MAX_EDGES"), ("max_order", "EO_MAX_ORDER"), ("precision_bits", "EO_PRECISION_BITS"))


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    saved = {env: os.environ.get(env) for _, env in _OVERRIDES}
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        # flags win over the environment for the duration of this call only
        for flag, env in _OVERRIDES:
            value = getattr(args, flag)
            if value is not None:
                os.environ[env] = str(value)
        if getattr(args, "mode", None) == "marked" and args.u is None:
            raise UsageError("--mode marked needs --u")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"resource ceiling: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        for env, value in saved.items():
            if value is None:
                os.environ.pop(env, None)
            else:
                os.environ[env] = value


if __name__ == "__main__":
    sys.exit(main())
