"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import time
from collections import Counter
from fractions import Fraction

import mpmath
import pytest

from eulerian_orientations.asym import constants, growth_rows, rho_lambda_formula, rho_omega_formula, singular_slope_fit
from eulerian_orientations.bijection import (
    colourful_pair,
    is_colourful,
    iter_labelled_quadrangulations,
    phi,
    psi,
    vfe_statistics,
)
from eulerian_orientations.closedform import (
    check_cat_identity,
    check_omega_ode,
    check_R_ode,
    check_vandermonde,
    explicit_triple,
    gf_main,
    series_R,
)
from eulerian_orientations.fesolver import cross_validate, extract_Q, residuals, solve
from eulerian_orientations.maps import aggregate_eo_count, enumerate_labelled_maps, tutte_sum_33
from eulerian_orientations.trees import check_forest_link, count_balanced_trees, tree_R


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def test_criterion_01_sequences(report):
    start = time.perf_counter()
    Q = gf_main("quartic", 30)
    G = gf_main("general", 30)
    elapsed = time.perf_counter() - start
    ok = Q.integers()[1:4] == [4, 35, 402] and G.integers()[1:4] == [1, 5, 33] and elapsed < 5
    report(1, ok, f"Q and G to order 30 in {elapsed:.3f} s")


def test_criterion_02_R(report):
    Rq = series_R("quartic", 500)
    Rg = series_R("general", 500)
    ok = Rq.integers()[1:6] == [1, -3, -12, -105, -1206] and Rg.integers()[1:6] == [1, -2, -4, -20, -132]
    ok = ok and Rq.is_integral() and Rg.is_integral()
    report(2, ok, "five printed coefficients per family; integral to order 500")


def test_criterion_03_pipeline(report):
    start = time.perf_counter()
    N = 10
    sols = {}
    problems = []
    for kind, family in (("quartic", "quartic"), ("colourful", "general")):
        sol = solve(kind, N)
        sols[kind] = sol
        if any(residuals(sol).values()):
            problems.append(f"{kind} residuals")
        closed = explicit_triple(family, 2 * N + 1, max(sol.C.x_window[1], 2 * N + 2))
        cv = cross_validate(sol, closed)
        if not cv["identical"]:
            problems.append(f"{kind} differs from closed form at {cv['max_mismatch']}")
    Qc = extract_Q(sols["colourful"])
    G = gf_main("general", Qc.order)
    if any(Qc[n] != 2 * G[n] for n in range(1, Qc.order + 1)):
        problems.append("Q^c != 2G")
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        problems.append("too slow")
    report(3, not problems, f"N = 10 in {elapsed:.1f} s" + (f"; {problems}" if problems else ""))


def test_criterion_04_oracle(report):
    start = time.perf_counter()
    g = [aggregate_eo_count("general", n) for n in (1, 2, 3)]
    q = [aggregate_eo_count("quartic", n) for n in (1, 2, 3)]
    p = [aggregate_eo_count("partial", n) for n in (1, 2)]
    elapsed = time.perf_counter() - start
    ok = g == [1, 5, 33] and q == [4, 35, 402] and p == [4, 35] and elapsed < 600
    report(4, ok, f"g = {g}, q = {q}, partial = {p} in {elapsed:.1f} s")


def test_criterion_05_bijection(report, labelled_maps):
    checked = 0
    ok = True
    for n in (1, 2, 3):
        for lm in labelled_maps[n]:
            mob = phi(lm)
            actual, predicted = vfe_statistics(lm, mob)
            back = psi(mob)
            ok &= not mob.validate() and actual == predicted
            ok &= back.canonical() == lm.canonical() and phi(back).canonical() == mob.canonical()
            checked += 1
    for n in (1, 2):
        colourful = {q.canonical() for q in iter_labelled_quadrangulations(n) if is_colourful(q)}
        hits = Counter(q.canonical() for lm in labelled_maps[n] for q in colourful_pair(lm))
        ok &= len(colourful) == 2 * gf_main("general", n)[n]
        ok &= set(hits) == colourful and set(hits.values()) == {1}
    report(5, ok, f"round trips on {checked} labelled maps; colourful counts 2, 10")


def test_criterion_06_identities(report):
    cat_ok, _ = check_cat_identity(20)
    vdm_ok = all(check_vandermonde(k, l, n) for k in range(13) for n in range(k + 1) for l in range(13))
    ode_ok = all(
        check_omega_ode(f, 50).valuation() is None and check_R_ode(f, 50).valuation() is None
        for f in ("quartic", "general")
    )
    report(6, cat_ok and vdm_ok and ode_ok, f"Cat {cat_ok}, Vandermonde {vdm_ok}, ODEs {ode_ok}")


def test_criterion_07_tutte(report):
    start = time.perf_counter()
    sums = [int(tutte_sum_33(e)) for e in (1, 2, 3)]
    elapsed = time.perf_counter() - start
    report(7, sums == [6, 78, 1326] and elapsed < 120, f"sums {sums} in {elapsed:.2f} s")


def test_criterion_08_trees(report):
    prim_q = [int(count_balanced_trees("quartic", n)) for n in (2, 3)]
    prim_g = [int(count_balanced_trees("general", n)) for n in (2, 3, 4)]
    ok = prim_q == [3, 12] and prim_g == [2, 4, 20]
    for fam, top in (("quartic", 4), ("general", 5)):
        R = series_R(fam, top)
        ok &= all(count_balanced_trees(fam, n) == -R[n] for n in range(2, top + 1))
        for u in (1, 2, -1):
            Ru = tree_R(fam, u, top)
            ok &= all(count_balanced_trees(fam, n, "marked", u) == Ru[n] for n in range(2, top + 1))
    report(8, ok, f"primitive {prim_q} and {prim_g}; marked sums at u = 1, 2, -1")


def test_criterion_09_asymptotics(report):
    start = time.perf_counter()
    details = []
    ok = True
    tol50 = mpmath.mpf(10) ** -50
    for fam in ("quartic", "general"):
        c = constants(fam, 256)
        rows = growth_rows(fam, 200, 256)
        r199, r200 = rows[198][1], rows[199][1]
        with mpmath.workprec(256):
            ratio = abs(mpmath.mpf(r200) / r199) * c.rho
            ok &= abs(ratio - 1) < 0.02
            ok &= abs(c.mu * c.rho - 1) < tol50
            slope = singular_slope_fit(fam, ("1e-3", "1e-4"), 256)
            rel = abs(slope / c.slope - 1)
            ok &= rel < 0.05
        details.append(f"{fam}: ratio {mpmath.nstr(ratio, 6)}, slope off {mpmath.nstr(100 * rel, 3)}%")
    with mpmath.workprec(256):
        ok &= abs(rho_lambda_formula(Fraction(2, 3)) - constants("quartic").rho) < tol50
        ok &= abs(rho_omega_formula(0) - constants("general").rho) < tol50
    elapsed = time.perf_counter() - start
    ok &= elapsed < 300
    report(9, ok, "; ".join(details) + f"; {elapsed:.1f} s")


def test_criterion_10_forest(report):
    table = check_forest_link(2)
    ok = table[3] == (6, 6, 6) and table[4] == (42, 42, 42)
    report(10, ok, f"n = 3: {table[3][0]}, n = 4: {table[4][0]}")
