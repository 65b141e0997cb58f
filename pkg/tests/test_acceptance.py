"""Acceptance suite: one test per criterion, each collecting its sub-checks before asserting.

Runtime budgets are measured with ``time.perf_counter`` on the machine running the suite.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from cfmodsym.cf import cf_expand, convergent_matrices, det2, dual, dual_from_digits, enumerate_omega, from_digits
from cfmodsym.curves import curve_ap
from cfmodsym.partition import (Probes, clt_report, conditional_mgf, divisor_density, divisor_mask,
                                ensemble_scan, interval_density, mean_fit,
                                partition_vector, residual_report, uniform)
from cfmodsym.symbols import eval_symbol, hecke_matrix, residual_symbol_reports
from cfmodsym.exact import matvec
from cfmodsym.transfer import (OperatorGrid, check_key_relation, dominant_spectrum, gauss_density, s0_gradient,
                               s0_hessian, solve_s0)
from cfmodsym.twists import nonvanishing_constant, nonvanishing_survey

from conftest import CURVE_11A1

LEVY_SLOPE = 12 * math.log(2) / math.pi ** 2  # 0.8428
MEAN_GRID = (500, 1000, 2000, 4000)
THREADS = (1, 4, 8)


class Checks:
    def __init__(self):
        self.failed: list[str] = []
        self.t0 = time.perf_counter()

    def __call__(self, ok, msg: str):
        if not ok:
            self.failed.append(msg)

    def runtime(self, limit: float):
        dt = time.perf_counter() - self.t0
        self(dt < limit, f"runtime {dt:.1f} s exceeds {limit} s")

    def done(self):
        assert not self.failed, "; ".join(self.failed)


def _level2_probes(k: int) -> Probes:
    ones = np.ones(k, dtype=np.int64)
    return Probes(directions=[ones], moduli=[2], mgf=[np.zeros(k), 0.05 * np.ones(k)],
                  congruences=[(ones, 2)])


@pytest.fixture(scope="module")
def scans2(table2):
    """N = 2 uniform scans on the mean-slope grid (threads = 1) with their wall times."""
    out = {}
    for M in MEAN_GRID:
        t0 = time.perf_counter()
        out[M] = (ensemble_scan(table2, M, uniform(), _level2_probes(table2.k), threads=1),
                  time.perf_counter() - t0)
    return out


@pytest.fixture(scope="module")
def scan5000(table2):
    t0 = time.perf_counter()
    st = ensemble_scan(table2, 5000, uniform(), Probes(moduli=[2]), threads=1)
    return st, time.perf_counter() - t0


def _symbol_densities(table):
    return {"uniform": uniform(),
            "interval_phi_N": interval_density(0, Fraction(1, 2), divisor_mask(table, 11), "r")}


@pytest.fixture(scope="module")
def symbol_residuals(e11):
    t0 = time.perf_counter()
    reps = residual_symbol_reports([e11.plus, e11.minus], e11.table, 4000, 3, 1, _symbol_densities(e11.table),
                                   threads=1)
    return reps, time.perf_counter() - t0


def _scan_integers(st) -> tuple:
    """Integer content of a scan: histograms, residue counts, congruence weights."""
    res = tuple((q, kk, np.asarray(v).tobytes()) for q, d in sorted(st.residues.items())
                for kk, v in sorted(d.items()))
    hist = tuple(tuple(sorted(h.items())) for h in st.histograms)
    cong = tuple(np.asarray(c).tobytes() for c in st.cong_weight)
    return st.sample_count, st.total_weight, np.asarray(st.first).tobytes(), hist, res, cong


# ------------------------------------------------------------------ 1


def test_c01_exact_combinatorics(table2):
    chk = Checks()
    count = 0
    for r in enumerate_omega(500):
        d = cf_expand(r)
        gs = convergent_matrices(d)
        count += 1
        dets = [det2(g) for g in gs]
        chk(dets == [(-1) ** i for i in range(1, len(d) + 1)], f"det law at {r}")
        chk(int(partition_vector(table2, r).sum()) == len(d), f"sum of partition vector at {r}")
        chk(dual_from_digits(d) == dual(r), f"dual parity law at {r}")
        (_, _), (q_prev, q_last) = gs[-1]
        chk(from_digits(d[::-1]) == Fraction(q_prev, q_last), f"digit reversal at {r}")
        if len(chk.failed) > 20:
            break
    chk(count == 76115 or len(chk.failed) > 20, f"|Omega_500| = {count}")
    chk.runtime(10)
    chk.done()


# ------------------------------------------------------------------ 2


def test_c02_operator_ground_truth(tables):
    chk = Checks()
    for N, table in tables.items():
        grid = OperatorGrid(table, n=48)
        sol = dominant_spectrum(grid, 1.0, gap=False)
        chk(abs(sol.lam - 1) <= 1e-9, f"N={N}: lambda(1,0) = {sol.lam}")
        if N == 1:
            h = np.tile(gauss_density(grid.nodes), grid.k)
            resid = np.max(np.abs(grid.operator(1.0) @ h - h)) / np.max(h)
            chk(resid <= 1e-8, f"Gauss density residual {resid:.2e}")
    chk.runtime(60)
    chk.done()


# ------------------------------------------------------------------ 3


def test_c03_subdominant_constant(tables):
    chk = Checks()
    lam = [dominant_spectrum(OperatorGrid(tables[1], n=n), 1.0).lam2_abs for n in (48, 96)]
    chk(abs(lam[0] - lam[1]) <= 1e-6, f"n=48 vs n=96: {lam[0]!r} vs {lam[1]!r}")
    chk(abs(lam[1] - 0.3036630) <= 1e-5, f"|lambda_2| = {lam[1]!r}")
    chk.runtime(30)
    chk.done()


# ------------------------------------------------------------------ 4


def test_c04_key_relation(tables):
    chk = Checks()
    r1 = check_key_relation(OperatorGrid(tables[1], n=48), uniform(), 1.25, cutoff=4000)
    chk(r1.discrepancy <= 1e-5, f"N=1, s=1.25: discrepancy {r1.discrepancy:.2e}")
    r2 = check_key_relation(OperatorGrid(tables[2], n=48), divisor_density(tables[2], 1), 1.3, cutoff=4000)
    chk(r2.discrepancy <= 1e-4, f"N=2, s=1.3: discrepancy {r2.discrepancy:.2e}")
    for lab, r in (("N=1", r1), ("N=2", r2)):
        chk(r.one_vs_two is not None and r.one_vs_two <= 1e-10, f"{lab}: one-term vs two-term {r.one_vs_two}")
    chk.runtime(300)
    chk.done()


# ------------------------------------------------------------------ 5


def test_c05_pressure(table2, scans2):
    chk = Checks()
    grid = OperatorGrid(table2, n=32, m_max=1024)
    s0 = solve_s0(grid)
    chk(abs(s0 - 1) <= 1e-10, f"s0(0) = {s0!r}")
    hes = s0_hessian(grid)
    H = hes["hessian_raw"]
    chk(hes["asymmetry"] <= 1e-6 * np.max(np.abs(H)), f"Hessian asymmetry {hes['asymmetry']:.2e}")
    sv = hes["singular_values"]
    rank = int(np.sum(sv > 1e-6 * sv[0]))
    chk(rank == grid.k, f"Hessian is singular: rank {rank} of {grid.k}, singular values {np.round(sv, 8)}")
    predicted = 2 * float(np.sum(s0_gradient(grid)))
    empirical = mean_fit([scans2[M][0] for M in MEAN_GRID])["slope"]
    chk(abs(predicted - empirical) <= 0.05 * abs(empirical), f"slope {predicted} vs empirical {empirical}")
    for lab, v in (("predicted", predicted), ("empirical", empirical)):
        chk(abs(v - 0.8428) <= 0.1 * 0.8428, f"{lab} slope {v} not within 10% of 0.8428")
    chk(abs(predicted - LEVY_SLOPE) < 1e-3, f"predicted slope {predicted} vs 12 log 2 / pi^2")
    chk.runtime(600 - sum(t for _, t in scans2.values()))
    chk.done()


# ------------------------------------------------------------------ 6


def test_c06_clt(scans2):
    chk = Checks()
    ks = [clt_report(scans2[M][0])["ks"] for M in MEAN_GRID]
    chk(ks[-1] < ks[0], f"KS does not decrease from M=500 to 4000: {ks}")
    chk(ks[-1] <= 0.05, f"KS at M=4000 is {ks[-1]}")
    chk(sum(t for _, t in scans2.values()) < 300, "runtime")
    chk.done()


# ------------------------------------------------------------------ 7


def test_c07_partition_residues(scan5000):
    chk = Checks()
    st, dt = scan5000
    rep = residual_report(st, 2)
    chk(rep["full_max_deviation"] <= 0.02, f"full-vector deviation {rep['full_max_deviation']:.4f}")
    chk(rep["marginal_max_deviation"] <= 0.01, f"marginal deviation {rep['marginal_max_deviation']:.4f}")
    chk(dt < 300, f"runtime {dt:.1f} s")
    chk.done()


# ------------------------------------------------------------------ 8


def test_c08_eigensymbol_exactness(e11):
    chk = Checks()
    sp = e11.space
    for es in (e11.plus, e11.minus):
        y = es.values
        chk(sp.satisfies_relations(y), f"sign {es.sign}: Manin relations")
        chk(sp.star_of(y) == [es.sign * v for v in y], f"sign {es.sign}: star eigenvalue")
        for p in (2, 3, 5, 7, 13, 17, 19):
            ap = curve_ap(CURVE_11A1, p)
            chk(matvec(hecke_matrix(sp, p), y) == [ap * v for v in y], f"sign {es.sign}: T_{p}")
    chk.runtime(30)
    chk.done()


# ------------------------------------------------------------------ 9


@pytest.mark.parametrize("sign", [1, -1])
def test_c09_atkin_lehner(e11, sign):
    chk = Checks()
    es = e11.by_sign(sign)
    bad = []
    for n in range(11, 111, 11):
        for a in range(1, n):
            if math.gcd(a, n) != 1:
                continue
            r = Fraction(a, n)
            if eval_symbol(es, e11.table, r) != -eval_symbol(es, e11.table, dual(r)):
                bad.append((a, n))
    chk(not bad, f"sign {sign:+d}: {len(bad)} failures, first {bad[:4]}")
    chk.runtime(30)
    chk.done()


# ------------------------------------------------------------------ 10


def test_c10_symbol_residues(symbol_residuals):
    chk = Checks()
    reps, dt = symbol_residuals
    for rep in reps:
        for lab, ens in rep["ensembles"].items():
            chk(abs(ens["sum"] - 1) < 1e-12, f"sign {rep['sign']} {lab}: probabilities sum {ens['sum']}")
            chk(ens["max_deviation"] <= 0.02, f"sign {rep['sign']} {lab}: deviation {ens['max_deviation']:.4f}")
    chk(dt < 300, f"runtime {dt:.1f} s")
    chk.done()


# ------------------------------------------------------------------ 11


def test_c11_noncorrelation(scans2):
    chk = Checks()
    st, dt = scans2[4000]
    for a in (0, 1):
        r0 = conditional_mgf(st, 0, a, 0)
        chk(r0 == 1, f"residue {a}: ratio at w=0 is {r0!r}")
        r = conditional_mgf(st, 0, a, 1)
        chk(abs(r.real - 1) <= 0.05 and r.imag == 0, f"residue {a}: ratio at w=0.05 is {r!r}")
    chk(dt < 300, f"runtime {dt:.1f} s")
    chk.done()


# ------------------------------------------------------------------ 12


def test_c12_nonvanishing_survey(e11):
    chk = Checks()
    res = nonvanishing_survey(e11, 300, 3)
    frac = res.fraction()
    c = nonvanishing_constant(3)
    chk(frac >= 0.2285, f"fraction {frac}")
    chk(frac >= c, f"fraction {frac} below c = {c}")
    g = res.growth([100, 200, 300])
    for M, ratio in g["ratio_to_linear"].items():
        chk(ratio >= 0.8, f"count at M={M} is {ratio:.3f} of linear growth")
    chk(not res.skipped, f"{len(res.skipped)} characters skipped")
    chk.runtime(600)
    chk.done()


# ------------------------------------------------------------------ 13


def test_c13_thread_determinism(table2, scans2, scan5000, symbol_residuals, e11):
    chk = Checks()
    ref = _scan_integers(scans2[4000][0])
    ref5000 = _scan_integers(scan5000[0])
    ref_sym = symbol_residuals[0]
    for t in THREADS[1:]:
        st = ensemble_scan(table2, 4000, uniform(), _level2_probes(table2.k), threads=t)
        chk(_scan_integers(st) == ref, f"N=2 M=4000 scan differs at threads={t}")
        chk(conditional_mgf(st, 0, 1, 1) == conditional_mgf(scans2[4000][0], 0, 1, 1),
            f"MGF ratio differs at threads={t}")
        st = ensemble_scan(table2, 5000, uniform(), Probes(moduli=[2]), threads=t)
        chk(_scan_integers(st) == ref5000, f"N=2 M=5000 residues differ at threads={t}")
        reps = residual_symbol_reports([e11.plus, e11.minus], e11.table, 4000, 3, 1,
                                       _symbol_densities(e11.table), threads=t)
        chk(reps == ref_sym, f"symbol residue frequencies differ at threads={t}")
    chk.done()
