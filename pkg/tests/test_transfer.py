import math

import numpy as np
import pytest
from scipy.special import zeta

from cfmodsym.cf import totients

from cfmodsym.cosets import build_coset_table
from cfmodsym.partition import divisor_density, uniform
from cfmodsym.transfer import (OperatorGrid, check_key_relation, constant_row_sums, dirichlet_series_direct,
                               dlambda_ds, dlambda_dw, dominant_spectrum, far_from_one_sweep, gauss_density,
                               operator_series, residue_constant, s0_gradient, solve_s0, totient_tail)


@pytest.fixture(scope="module")
def grid1():
    return OperatorGrid(build_coset_table(1), n=40, m_max=1024)


@pytest.fixture(scope="module")
def grid2():
    return OperatorGrid(build_coset_table(2), n=24, m_max=512)


def test_row_sums_are_hurwitz(grid1):
    for s in (1.0, 1.4):
        got, ref = constant_row_sums(grid1, s)
        assert np.max(np.abs(got - ref)) < 1e-13


def test_gauss_density(grid1):
    sol = dominant_spectrum(grid1, 1.0)
    assert abs(sol.lam - 1) < 1e-12
    h = gauss_density(grid1.nodes)
    phi = sol.eigenfunction[: grid1.n]
    assert np.max(np.abs(phi / phi[0] - h / h[0])) < 1e-10
    assert abs(sol.lam2_abs - 0.3036630028987) < 1e-8


def test_hellmann_feynman(grid1):
    sol = dominant_spectrum(grid1, 1.0, gap=False)
    assert abs(dlambda_ds(grid1, sol) + math.pi ** 2 / (6 * math.log(2))) < 1e-10
    h = 1e-5
    fd = (dominant_spectrum(grid1, 1 + h, gap=False).lam - dominant_spectrum(grid1, 1 - h, gap=False).lam) / (2 * h)
    assert abs(fd - dlambda_ds(grid1, sol)) < 1e-7


def test_det_sign_symmetry_is_exact(grid2):
    """lambda(s, w + c D) = lambda(s, w): the det-sign direction D is a null direction."""
    D = np.array([1, 1, 1, -1, -1, -1], dtype=float)
    w = np.array([0.03, -0.02, 0.01, 0.0, 0.02, -0.01])
    a = dominant_spectrum(grid2, 1.1, w, gap=False).lam
    b = dominant_spectrum(grid2, 1.1, w + 0.3 * D, gap=False).lam
    assert abs(a - b) < 1e-12


def test_dlambda_dw_matches_fd(grid2):
    w = np.array([0.03, -0.02, 0.01, 0.0, 0.02, -0.01])
    sol = dominant_spectrum(grid2, 1.1, w, gap=False)
    an = dlambda_dw(grid2, sol)
    h = 1e-6
    for u in (0, 4):
        e = np.zeros(6)
        e[u] = h
        fd = (dominant_spectrum(grid2, 1.1, w + e, gap=False).lam
              - dominant_spectrum(grid2, 1.1, w - e, gap=False).lam) / (2 * h)
        assert abs(fd - an[u]) < 1e-7


def test_s0_and_gradient(grid2):
    assert abs(solve_s0(grid2) - 1.0) < 1e-12
    g = s0_gradient(grid2)
    assert np.allclose(g, g[0], atol=1e-8)  # coset symmetry at w = 0
    assert abs(2 * g.sum() - 12 * math.log(2) / math.pi ** 2) < 1e-6
    ga = s0_gradient(grid2, method="analytic")
    assert np.max(np.abs(ga - g)) < 1e-7


def test_totient_tail():
    phi = totients(400)
    block = sum(float(phi[n]) * n ** -3.0 for n in range(201, 401))
    assert abs(totient_tail(1.5, 200) - totient_tail(1.5, 400) - block) < 1e-14
    assert abs(totient_tail(1.5, 1) - (zeta(2.0) / zeta(3.0) - 1)) < 1e-14


def test_key_relation_level1(grid1):
    res = check_key_relation(grid1, uniform(), 1.25, cutoff=1500)
    exact = zeta(1.5) / zeta(2.5) - 1
    assert abs(res.two_term - exact) < 1e-12
    assert res.one_vs_two < 1e-12
    assert res.discrepancy < 1e-4
    assert res.direct.tail_bound >= abs(exact - res.direct.partial) - 1e-12


def test_literal_ordering_differs_off_center(grid2):
    w = np.array([0.1, 0.0, 0.0, 0.0, 0.0, 0.0])
    two = operator_series(grid2, divisor_density(grid2.table, 1), 1.3, w, "two")
    lit = operator_series(grid2, divisor_density(grid2.table, 1), 1.3, w, "literal")
    assert abs(two - lit) > 1e-3
    direct = dirichlet_series_direct(grid2.table, divisor_density(grid2.table, 1), 1.3, w, 1500)
    assert abs(two - direct.completed) < abs(lit - direct.completed)


def test_residue_constant(grid1):
    rc = residue_constant(grid1, uniform())
    assert abs(rc["value"] - 3 / math.pi ** 2) < 1e-10
    assert abs(rc["quadrature"] - rc["value"]) < 1e-10
    assert abs(rc["literal"] - 1 / (2 * math.log(2))) < 1e-12


def test_far_from_one_sweep(grid1):
    rows = far_from_one_sweep(grid1, [0.0, 5.0], [0.0])
    assert rows[0]["distance"] < 1e-10 and rows[1]["distance"] > 1e-2
