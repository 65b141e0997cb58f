import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from cfmodsym.chebyshev import ChebGrid, hurwitz_zeta, jacobi_rule


def test_interpolation_diff_quad():
    g = ChebGrid(32)
    f = np.exp(g.x) * np.cos(3 * g.x)
    y = np.linspace(0, 1, 57)
    assert np.max(np.abs(g.interpolate(f, y) - np.exp(y) * np.cos(3 * y))) < 1e-13
    df = np.exp(g.x) * (np.cos(3 * g.x) - 3 * np.sin(3 * g.x))
    assert np.max(np.abs(g.diff @ f - df)) < 1e-10
    exact = float(mpmath.quad(lambda t: mpmath.exp(t) * mpmath.cos(3 * t), [0, 1]))
    assert abs(g.quad @ f - exact) < 1e-14
    assert np.array_equal(g.x[g.reflect_index()], 1 - g.x) or np.allclose(g.x[g.reflect_index()], 1 - g.x, atol=1e-15)


def test_interpolation_at_nodes():
    g = ChebGrid(16)
    assert np.allclose(g.lagrange(g.x[:3]), np.eye(16)[:3])
    with pytest.raises(ValueError):
        ChebGrid(4)


def test_jacobi_rule():
    t, w = jacobi_rule(8, 0.5)
    exact = float(mpmath.quad(lambda x: (1 + x) ** 0.5 * x ** 4, [-1, 1]))
    assert abs(np.sum(w * t ** 4) - exact) < 1e-14


@given(st.floats(1.05, 6.0), st.floats(0.01, 3.0))
def test_hurwitz_against_mpmath(s, a):
    ref = float(mpmath.zeta(s, a))
    assert abs(hurwitz_zeta(s, np.array([a]))[0] - ref) <= 1e-13 * max(1.0, abs(ref))


def test_hurwitz_complex():
    s = complex(1.3, 7.0)
    ref = complex(mpmath.zeta(s, 1.7))
    assert abs(hurwitz_zeta(s, np.array([1.7]))[0] - ref) < 1e-12
