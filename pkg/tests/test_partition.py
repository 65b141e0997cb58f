from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cfmodsym.cf import cf_expand, convergent_matrices, dual, enumerate_omega, sigma_arrays
from cfmodsym.cosets import build_coset_table
from cfmodsym.partition import (EmptyEnsembleError, Probes, canonical_digits, clt_report, conditional_mgf,
                                divisor_density, divisor_mask, dual_partition_vector, ensemble_scan,
                                ensemble_weight_sum, final_coset, interval_density, ks_distance,
                                linear_residue_report, partition_vector, residual_report, scan_arrays, uniform,
                                variance_fit)

from test_cf import rationals


def brute_vector(table, r):
    v = np.zeros(table.k, dtype=np.int64)
    for g in convergent_matrices(cf_expand(r)):
        v[table.coset_of(g)] += 1
    return v


def test_example_vector(table2):
    assert partition_vector(table2, Fraction(3, 7)).tolist() == [1, 0, 0, 0, 1, 0]


@given(rationals, st.sampled_from([1, 2, 3, 5, 11]))
def test_vector_laws(r, N):
    table = build_coset_table(N)
    c = partition_vector(table, r)
    assert np.array_equal(c, brute_vector(table, r))
    assert c.sum() == len(cf_expand(r))
    assert final_coset(table, r) == table.coset_of(convergent_matrices(cf_expand(r))[-1])
    assert np.array_equal(dual_partition_vector(table, r), partition_vector(table, dual(r)))


def test_canonical_digits():
    assert canonical_digits((2, 3, 1)) == (2, 4)
    assert canonical_digits((1,)) == (1,)


def test_vectorized_kernel_matches(tables):
    for N in (2, 11):
        table = tables[N]
        a, n = sigma_arrays(2, 120)
        ch = scan_arrays(table, a, n)
        for i in range(0, a.size, 7):
            r = Fraction(int(a[i]), int(n[i]))
            assert np.array_equal(ch.counts[i], partition_vector(table, r))
            assert ch.final[i] == final_coset(table, r)
            assert Fraction(int(ch.dual_num[i]), int(n[i])) == dual(r)


def test_small_ensemble_oracle(table2):
    """Omega_10 by hand-rolled enumeration: length distribution and parity split."""
    lengths = Counter(len(cf_expand(r)) for r in enumerate_omega(10))
    st_ = ensemble_scan(table2, 10, probes=Probes(directions=[np.ones(6, dtype=np.int64)]))
    assert st_.sample_count == 31 == sum(lengths.values())
    assert st_.histograms[0] == dict(lengths)
    det_plus = sum((len(cf_expand(r)) + 1) // 2 for r in enumerate_omega(10))
    assert st_.first[3:].sum() == det_plus  # odd indices i have det -1


def test_thread_independence(table2):
    w = [0.05 * np.ones(6), np.zeros(6)]
    pr = Probes(mgf=w, moduli=[2, 3], directions=[np.ones(6, dtype=np.int64)],
                congruences=[(np.ones(6, dtype=np.int64), 2)])
    outs = [ensemble_scan(table2, 700, uniform(), pr, threads=t, chunk_target=1 << 12) for t in (1, 4, 8)]
    for o in outs[1:]:
        assert o.histograms == outs[0].histograms
        assert np.array_equal(o.residues[2]["full"], outs[0].residues[2]["full"])
        assert np.array_equal(o.second, outs[0].second)
        assert np.array_equal(o.mgf, outs[0].mgf)  # fixed merge order: bit-identical floats


def test_densities(table2):
    m = divisor_mask(table2, 2)
    assert sum(m) == 2  # (1:0) with both determinants
    assert ensemble_weight_sum(table2, 60, uniform()) == sum(1 for _ in enumerate_omega(60))
    dens = interval_density(0, Fraction(1, 2), constrain="r")
    assert ensemble_weight_sum(table2, 60, dens) == sum(1 for r in enumerate_omega(60) if r <= Fraction(1, 2))
    dual_dens = interval_density(0, Fraction(1, 2), constrain="dual")
    assert ensemble_weight_sum(table2, 60, dual_dens) == sum(
        1 for r in enumerate_omega(60) if dual(r) <= Fraction(1, 2))
    phi2 = divisor_density(table2, 2)
    expect = sum(1 for r in enumerate_omega(60)
                 if table2.bottom_class(final_coset(table2, r))[1] % 2 == 0)
    assert ensemble_weight_sum(table2, 60, phi2) == expect
    with pytest.raises(EmptyEnsembleError):
        ensemble_scan(table2, 10, interval_density(Fraction(1, 1000), Fraction(1, 999), constrain="r"))


def test_reports(table2):
    ones = np.ones(6, dtype=np.int64)
    st_ = ensemble_scan(table2, 400, probes=Probes(directions=[ones], moduli=[2],
                                                  mgf=[np.zeros(6), 0.05 * np.ones(6)],
                                                  congruences=[(ones, 2)]))
    rep = residual_report(st_, 2)
    assert rep["full_sum"] == pytest.approx(1.0, abs=1e-12)
    lin = linear_residue_report(st_, 0, 3, shift=1)
    assert lin["sum"] == pytest.approx(1.0, abs=1e-12)
    for a in (0, 1):
        assert conditional_mgf(st_, 0, a, 0) == 1.0
    clt = clt_report(st_)
    assert clt["ks"] < clt["ks_raw"]
    assert sum(h["count"] for h in clt["histogram"]) == st_.sample_count


def test_ks_distance_exact_normal():
    vals = np.linspace(-3, 3, 2001)
    from scipy.stats import norm
    w = np.diff(norm.cdf(np.linspace(-3.0015, 3.0015, 2002)))
    assert ks_distance(vals, w, 0.0, 1.0, lattice=False) < 5e-3


def test_variance_fit_guards(table2):
    sts = [ensemble_scan(table2, M, probes=Probes(directions=[np.ones(6, dtype=np.int64)]))
           for M in (50, 100, 200, 400)]
    fit = variance_fit(sts)
    assert fit["C"] > 0 and 0 <= fit["R2"] <= 1
    with pytest.raises(ValueError):
        variance_fit(sts[:3])
    with pytest.raises(ValueError):
        variance_fit(sts[1:] + sts[:1])
