"""Collocation discretization of the skewed Gauss transfer operator and its spectral data.

Functions on [0, 1] x cosets are stored as vectors of length n k, coset-major, with
the det +1 cosets first.  Every branch [[0,1],[1,m]] has determinant -1, so the
operator maps the det +1 half into the det -1 half and back: in this ordering it has
the block form [[0, B], [C, 0]].  Conjugating by the det sign flips its sign, so its
spectrum is symmetric under lambda -> -lambda.  The dominant eigenvalue is therefore
computed from B C, whose leading eigenvalue is lambda^2 and is simple.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import zeta as _zeta

from .cf import denominator_chunks, sigma_arrays, totients
from .chebyshev import ChebGrid, hurwitz_zeta, jacobi_rule
from .cosets import CosetTable
from .partition import Density, scan_arrays

CONTRACTION_RHO = 0.5  # contraction ratio of the inverse branches in the Gauss map setting


class NonConvergenceError(RuntimeError):
    pass


class OperatorGrid:
    """Collocation grid, branch cutoff and cached branch blocks for one level."""

    def __init__(self, table: CosetTable, n: int = 48, m_max: int = 4096, tail: bool = True,
                 block: int = 256):
        if m_max < table.level:
            raise ValueError("m_max must be at least the level")
        self.table = table
        self.cheb = ChebGrid(n)
        self.n = n
        self.m_max = m_max
        self.tail = tail
        self.block = block
        self._cache: dict = {}

    @property
    def level(self) -> int:
        return self.table.level

    @property
    def k(self) -> int:
        return self.table.k

    @property
    def nodes(self) -> np.ndarray:
        return self.cheb.x

    def describe(self) -> dict:
        return {"level": self.level, "n": self.n, "m_max": self.m_max, "tail": self.tail,
                "table": self.table.describe()}

    # -------------------------------------------------------------- branch blocks

    def blocks(self, s: complex, xs: np.ndarray | None = None, mmin: int = 1,
               deriv: bool = False) -> np.ndarray:
        """A[t, i, j] = sum_{m >= mmin, m = t mod N} (m + x_i)^{-2s} l_j(1/(m + x_i)).

        With ``deriv`` the s-derivative of the same sum is returned instead.
        """
        if complex(s).real <= 0.5:
            raise ValueError("operator needs Re(s) > 1/2")
        xs = self.nodes if xs is None else np.asarray(xs, dtype=float)
        key = (complex(s), xs.tobytes(), mmin, deriv)
        if key not in self._cache:
            self._cache[key] = self._assemble(complex(s), xs, mmin, deriv)
        return self._cache[key]

    def _assemble(self, s: complex, xs: np.ndarray, mmin: int, deriv: bool) -> np.ndarray:
        N, n = self.level, self.n
        real = s.imag == 0.0
        sv = s.real if real else s
        dtype = float if real else complex
        out = np.zeros((N, xs.size, n), dtype=dtype)
        for start in range(mmin, self.m_max + 1, self.block):
            ms = np.arange(start, min(start + self.block, self.m_max + 1), dtype=float)
            z = ms[:, None] + xs[None, :]  # (B, X)
            weight = z ** (-2 * sv)
            if deriv:
                weight = -2.0 * np.log(z) * weight
            basis = self.cheb.lagrange(1.0 / z).reshape(ms.size, xs.size, n)
            contrib = weight[:, :, None] * basis
            res = ms.astype(np.int64) % N
            for t in np.unique(res):
                out[t] += contrib[res == t].sum(axis=0)
        if self.tail:
            for t in range(N):
                m0 = self.m_max + 1 + ((t - self.m_max - 1) % N)
                out[t] += self._tail(sv, xs, m0, deriv)
        return out

    def _tail(self, s, xs: np.ndarray, m0: int, deriv: bool) -> np.ndarray:
        """Euler-Maclaurin for sum_{q >= 0} f(m0 + N q), f(m) = (m + x)^{-2s} l_j(1/(m + x)).

        The s-derivative uses a fourth-order central difference of this (analytic in s)
        expression: Gauss-Jacobi is exact for the polynomial integrand but not once a
        log(y) factor is inserted.
        """
        if deriv:
            h = 1e-4
            f = lambda d: self._tail(s + d, xs, m0, False)  # noqa: E731
            return (8 * (f(h) - f(-h)) - (f(2 * h) - f(-2 * h))) / (12 * h)
        N, cheb = self.level, self.cheb
        z = m0 + xs  # (X,)
        y0 = 1.0 / z
        L0 = cheb.lagrange(y0)  # (X, n)
        dL0 = L0 @ cheb.diff  # derivative of each basis function at y0
        sigma = float(np.real(s))
        npts = self.n // 2 + 2
        t, wt = jacobi_rule(npts, 2 * sigma - 2)
        # integral_0^{y0} y^{2s-2} l_j(y) dy, mapped from [-1, 1]
        yq = y0[:, None] * (1 + t[None, :]) / 2  # (X, P)
        Lq = cheb.lagrange(yq.ravel()).reshape(xs.size, npts, self.n)
        extra = yq ** (2j * np.imag(s)) if np.imag(s) != 0 else np.ones_like(yq)
        pref = (y0 / 2) ** (2 * sigma - 1)
        integral = pref[:, None] * np.einsum("xp,p,xpj->xj", extra, wt, Lq) / N
        zs = z[:, None] ** (-2 * s)
        f0 = zs * L0
        fp = zs * (-2 * s / z[:, None] * L0 - dL0 / z[:, None] ** 2)  # df/dm
        fppp = zs * (-2 * s) * (2 * s + 1) * (2 * s + 2) / z[:, None] ** 3 * L0
        return integral + f0 / 2 - N * fp / 12 + N ** 3 * fppp / 720

    # -------------------------------------------------------------- operators

    def assemble(self, A: np.ndarray, w: np.ndarray | None, rows_coset: list[int] | None = None) -> np.ndarray:
        """Scatter residue blocks A[t] into the coset-structured matrix.

        Row block v, column block act(v, t) receives exp(w[act(v, t)]) A[t].
        """
        k, n, N = self.k, self.n, self.level
        wv = np.zeros(k) if w is None else np.asarray(w)
        ew = np.exp(wv)
        rows = list(range(k)) if rows_coset is None else rows_coset
        X = A.shape[1]
        dtype = complex if (np.iscomplexobj(A) or np.iscomplexobj(ew)) else float
        out = np.zeros((len(rows) * X, k * n), dtype=dtype)
        act = self.table.digit_action
        for r, v in enumerate(rows):
            for t in range(N):
                u = int(act[v, t])
                out[r * X:(r + 1) * X, u * n:(u + 1) * n] += ew[u] * A[t]
        return out

    def operator(self, s: complex, w=None) -> np.ndarray:
        """Matrix of L_{s,w} on nodal values."""
        return self.assemble(self.blocks(s), w)

    def operator_ds(self, s: complex, w=None) -> np.ndarray:
        return self.assemble(self.blocks(s, deriv=True), w)

    def final_operator(self, s: complex, w=None) -> np.ndarray:
        """Branches m >= 2 only."""
        return self.assemble(self.blocks(s, mmin=2), w)

    def eval_row(self, s: complex, w=None, mmin: int = 1, coset: int | None = None) -> np.ndarray:
        """Row functional f -> (L f)(0, v) (or the m >= mmin part) for the coset v."""
        v = self.table.identity if coset is None else coset
        A = self.blocks(s, xs=np.zeros(1), mmin=mmin)
        return self.assemble(A, w, rows_coset=[v])[0]

    def interpolate_at(self, values: np.ndarray, x: float, coset: int) -> complex:
        n = self.n
        return (self.cheb.lagrange(np.array([x])) @ values[coset * n:(coset + 1) * n])[0]

    def nodal(self, density: Density) -> np.ndarray:
        """Samples of a density Psi(x, v) at the nodes (indicator of an interval is sampled as is)."""
        k, n = self.k, self.n
        x = np.tile(self.nodes, k)
        v = np.repeat(np.arange(k), n)
        out = np.ones(k * n)
        if density.mask is not None:
            out = out * np.asarray(density.mask)[v]
        if density.interval is not None:
            lo, hi = density.interval
            out = out * ((x >= float(lo)) & (x <= float(hi)))
        if density.smooth is not None:
            out = out * np.asarray(density.smooth(x, v), dtype=float)
        return out

    def reflect(self, values: np.ndarray) -> np.ndarray:
        """(J f)(x, v) = f(1 - x, v) on nodal values."""
        k, n = self.k, self.n
        return values.reshape(k, n)[:, ::-1].reshape(-1)

    def det_signs(self) -> np.ndarray:
        return np.repeat(np.where(np.arange(self.k) < self.k // 2, 1.0, -1.0), self.n)

    def weights_measure(self) -> np.ndarray:
        """Quadrature for integral dx d(v/k) (coset probability measure)."""
        return np.tile(self.cheb.quad, self.k) / self.k


# ------------------------------------------------------------------ spectral data


@dataclass
class SpectralSolution:
    s: complex
    w: np.ndarray
    lam: complex
    eigenfunction: np.ndarray
    eigenmeasure: np.ndarray
    lam2_abs: float
    gap: float
    residual: float
    iterations: int
    flags: list = field(default_factory=list)

    def to_json(self) -> dict:
        def c(z):
            z = complex(z)
            return [z.real, z.imag]

        return {"s": c(self.s), "w": [c(x) for x in np.asarray(self.w)], "lambda": c(self.lam),
                "lambda2_abs": self.lam2_abs, "gap": self.gap, "residual": self.residual,
                "iterations": self.iterations, "flags": self.flags}


def _power(K: np.ndarray, v: np.ndarray, tol: float, maxit: int) -> tuple[complex, np.ndarray, int]:
    """Power iteration followed by shifted inverse-iteration polishing."""
    v = v / np.linalg.norm(v)
    mu = 0.0
    it = 0
    for it in range(1, maxit + 1):
        Kv = K @ v
        mu_new = np.vdot(v, Kv) / np.vdot(v, v)
        v = Kv / np.linalg.norm(Kv)
        if abs(mu_new - mu) <= tol * abs(mu_new) and it > 3:
            mu = mu_new
            break
        mu = mu_new
    else:
        raise NonConvergenceError(f"power iteration did not converge in {maxit} steps")
    eye = np.eye(K.shape[0])
    for _ in range(3):  # polish: one LU solve per step with the converged shift
        try:
            x = np.linalg.solve(K - mu * eye, v)
        except np.linalg.LinAlgError:
            break
        v = x / np.linalg.norm(x)
        mu = np.vdot(v, K @ v) / np.vdot(v, v)
    return mu, v, it


def _block_modulus(K: np.ndarray, p: int, tol: float, maxit: int, seed: int = 7) -> float:
    """Largest eigenvalue modulus of K by orthogonal (block power) iteration with Ritz values."""
    rng = np.random.default_rng(seed)
    Q, _ = np.linalg.qr(rng.standard_normal((K.shape[0], p)))
    prev = None
    for _ in range(maxit):
        Z = K @ Q
        Q, _ = np.linalg.qr(Z)
        ritz = np.linalg.eigvals(Q.conj().T @ K @ Q)
        val = float(np.max(np.abs(ritz)))
        if prev is not None and abs(val - prev) <= tol * max(val, 1e-300):
            return val
        prev = val
    return prev


def dominant_spectrum(grid: OperatorGrid, s: complex = 1.0, w=None, L: np.ndarray | None = None,
                      tol: float = 1e-13, maxit: int = 2000, gap: bool = True,
                      seed: int = 7) -> SpectralSolution:
    """Dominant eigenpair of L_{s,w}, eigenmeasure and the subdominant modulus."""
    k, n = grid.k, grid.n
    wv = np.zeros(k) if w is None else np.asarray(w)
    L = grid.operator(s, wv) if L is None else L
    h = (k // 2) * n
    B, C = L[:h, h:], L[h:, :h]
    K = B @ C
    mu, phi_p, it = _power(K, np.ones(h, dtype=K.dtype), tol, maxit)
    mu_l, eta_p, _ = _power(K.T, np.ones(h, dtype=K.dtype), tol, maxit)
    lam = np.sqrt(complex(mu)) if (np.iscomplexobj(K) or mu.real < 0) else math.sqrt(mu.real)
    phi = np.concatenate([phi_p, C @ phi_p / lam])
    eta = np.concatenate([eta_p, eta_p @ B / lam])
    # normalise: integral of phi over dx d(v/k) equals 1, then <eta, phi> = 1
    phi = phi / (grid.weights_measure() @ phi)
    eta = eta / (eta @ phi)
    resid = float(np.max(np.abs(L @ phi - lam * phi)) / np.max(np.abs(phi)))
    flags = []
    lam2 = float("nan")
    if gap:
        defl = K - mu * np.outer(phi_p, eta_p) / (eta_p @ phi_p)
        mu2 = _block_modulus(defl, min(6, h), 1e-12, 500, seed)
        lam2 = math.sqrt(mu2)
        if abs(lam) - lam2 < 1e-6:
            flags.append("near-degenerate gap")
    g = lam2 / abs(lam) if gap else float("nan")
    if isinstance(lam, float) or (complex(lam).imag == 0 and not np.iscomplexobj(phi)):
        lam_out = float(np.real(lam))
    else:
        lam_out = complex(lam)
    return SpectralSolution(complex(s), wv, lam_out, phi, eta, lam2, g, resid, it, flags)


def lambda_value(grid: OperatorGrid, s: complex, w=None) -> complex:
    return dominant_spectrum(grid, s, w, gap=False).lam


def dlambda_ds(grid: OperatorGrid, sol: SpectralSolution) -> complex:
    """Hellmann-Feynman: <eta, dL/ds phi> / <eta, phi>."""
    dL = grid.operator_ds(sol.s, sol.w)
    val = sol.eigenmeasure @ (dL @ sol.eigenfunction) / (sol.eigenmeasure @ sol.eigenfunction)
    return val if np.iscomplexobj(val) and val.imag != 0 else float(np.real(val))


def dlambda_dw(grid: OperatorGrid, sol: SpectralSolution) -> np.ndarray:
    """d lambda / d w_u = lambda <eta_u, phi_u> / <eta, phi> (the weight sits on column block u)."""
    k, n = grid.k, grid.n
    e = sol.eigenmeasure.reshape(k, n)
    p = sol.eigenfunction.reshape(k, n)
    return sol.lam * (e * p).sum(axis=1) / (sol.eigenmeasure @ sol.eigenfunction)


# ------------------------------------------------------------------ pressure equation


def solve_s0(grid: OperatorGrid, w=None, s_init: complex = 1.0, tol: float = 1e-12,
             maxit: int = 30) -> complex:
    """Root of lambda(s, w) = 1 by Newton with the Hellmann-Feynman derivative."""
    k = grid.k
    wv = np.zeros(k) if w is None else np.asarray(w)
    s = complex(s_init)
    for _ in range(maxit):
        if s.real <= 0.75:
            raise NonConvergenceError("Newton left the half-plane Re(s) > 3/4")
        s_eval = s.real if (s.imag == 0 and not np.iscomplexobj(wv)) else s
        sol = dominant_spectrum(grid, s_eval, wv, gap=False)
        f = sol.lam - 1.0
        if abs(f) <= tol:
            return s_eval
        step = f / dlambda_ds(grid, sol)
        s = s - step
        if not np.isfinite(abs(s)):
            break
    raise NonConvergenceError("Newton iteration for s0 did not converge")


def s0_gradient(grid: OperatorGrid, h: float = 1e-4, method: str = "fd") -> np.ndarray:
    """Gradient of s0 at w = 0: central differences (default) or the implicit-function form."""
    k = grid.k
    if method == "analytic":
        sol = dominant_spectrum(grid, 1.0, np.zeros(k), gap=False)
        return -dlambda_dw(grid, sol) / dlambda_ds(grid, sol)
    g = np.zeros(k)
    for u in range(k):
        e = np.zeros(k)
        e[u] = h
        g[u] = (np.real(solve_s0(grid, e)) - np.real(solve_s0(grid, -e))) / (2 * h)
    return g


def _grad_at(grid: OperatorGrid, w: np.ndarray) -> np.ndarray:
    s = solve_s0(grid, w)
    sol = dominant_spectrum(grid, s, w, gap=False)
    return np.real(-dlambda_dw(grid, sol) / dlambda_ds(grid, sol))


def s0_hessian(grid: OperatorGrid, h: float = 1e-4) -> dict:
    """Central differences of the implicit-function gradient; reports asymmetry and conditioning."""
    k = grid.k
    H = np.zeros((k, k))
    for j in range(k):
        e = np.zeros(k)
        e[j] = h
        H[:, j] = (_grad_at(grid, e) - _grad_at(grid, -e)) / (2 * h)
    asym = float(np.max(np.abs(H - H.T)))
    Hs = (H + H.T) / 2
    sv = np.linalg.svd(Hs, compute_uv=False)
    return {"hessian_raw": H, "hessian": Hs, "asymmetry": asym, "min_singular": float(sv[-1]),
            "singular_values": sv}


# ------------------------------------------------------------------ Dirichlet series


@dataclass
class SeriesValue:
    s: float
    cutoff: int
    partial: complex
    tail_bound: float | None
    tail_estimate: complex | None
    completed: complex
    model: dict


def totient_tail(s: float, X: int) -> float:
    """sum_{n > X} phi(n) n^{-2s} from zeta(2s-1)/zeta(2s) minus the head."""
    if 2 * s <= 2:
        raise ValueError("needs 2s > 2")
    phi = totients(X).astype(float)
    head = float(np.sum(phi[1:] * np.arange(1, X + 1, dtype=float) ** (-2 * s)))
    return float(_zeta(2 * s - 1) / _zeta(2 * s) - head)


def dirichlet_series_direct(table: CosetTable, density: Density, s: float, w=None,
                            cutoff: int = 4000, complete: bool = True) -> SeriesValue:
    """Sum over r in Omega_cutoff of Psi(r) exp(w.c(r)) Q(r)^{-2s}, with tail bound and estimate.

    The bound uses |Psi| <= max|Psi|, c >= 0 and l(r) <= 2 log_2 n + 1.  The estimate is an
    Abel-summation completion with A(t) = sum_{n<=t} a_n modelled as C t^kappa + B t^(kappa-1),
    fitted on the upper half of the range; it is a heuristic, reported separately.
    """
    k = table.k
    wv = np.zeros(k) if w is None else np.asarray(w)
    if np.real(s) <= 1:
        raise ValueError("direct series needs s > 1")
    wmax = max(0.0, float(np.max(np.real(wv))))
    s_eff = s - wmax / math.log(2)
    if s_eff <= 1:
        raise ValueError("parameters outside the absolutely convergent range")
    a_n = np.zeros(cutoff + 1, dtype=complex)
    psi_max = 0.0
    for lo, hi in denominator_chunks(cutoff):
        a, n = sigma_arrays(lo, hi)
        ch = scan_arrays(table, a, n)
        psi = density.weights(table, ch).astype(float)
        psi_max = max(psi_max, float(np.max(np.abs(psi))) if psi.size else 0.0)
        term = psi * np.exp(ch.counts.astype(float) @ wv)
        a_n += np.bincount(n, weights=term.real, minlength=cutoff + 1)
        if np.iscomplexobj(term):
            a_n += 1j * np.bincount(n, weights=term.imag, minlength=cutoff + 1)
    nn = np.arange(cutoff + 1, dtype=float)
    nn[0] = 1.0
    partial = complex(np.sum(a_n[2:] * nn[2:] ** (-2 * s)))
    if density.smooth is not None:
        psi_max = max(psi_max, 1.0)  # conservative when Psi is only sampled
    bound = psi_max * math.exp(wmax) * totient_tail(s_eff, cutoff)
    est, model = None, {}
    if complete and np.all(np.imag(wv) == 0):
        est, model = _abel_tail(a_n.real, s, cutoff, np.all(wv == 0))
    completed = partial + (est if est is not None else 0.0)
    if completed.imag == 0:
        completed = completed.real
        partial = partial.real
    return SeriesValue(s, cutoff, partial, bound, est, completed, model)


def _abel_tail(a_n: np.ndarray, s: float, X: int, kappa_is_two: bool) -> tuple[float, dict]:
    A = np.cumsum(a_n)
    t = np.arange(X // 2, X + 1, dtype=float)
    At = A[X // 2:]
    if kappa_is_two:
        kappa = 2.0
    else:
        sel = At > 0
        kappa = float(np.polyfit(np.log(t[sel]), np.log(At[sel]), 1)[0])
    D = np.vstack([t ** kappa, t ** (kappa - 1)]).T
    (C, B), *_ = np.linalg.lstsq(D, At, rcond=None)
    if 2 * s <= kappa:
        return None, {"kappa": kappa}
    tail = (-A[X] * X ** (-2 * s) + 2 * s * (C * X ** (kappa - 2 * s) / (2 * s - kappa)
                                            + B * X ** (kappa - 1 - 2 * s) / (2 * s - kappa + 1)))
    return float(tail), {"kappa": kappa, "C": float(C), "B": float(B)}


# ------------------------------------------------------------------ key relation


def _neumann(Op: np.ndarray, g: np.ndarray, tol: float = 1e-14, maxit: int = 20000) -> np.ndarray:
    total = g.copy()
    term = g.copy()
    scale = max(np.max(np.abs(g)), 1e-300)
    for _ in range(maxit):
        term = Op @ term
        total = total + term
        if np.max(np.abs(term)) < tol * max(scale, np.max(np.abs(total))):
            return total
    raise NonConvergenceError("Neumann series did not converge (spectral radius >= 1?)")


@dataclass
class KeyRelationResult:
    two_term: complex
    one_term: complex | None
    literal_order: complex
    direct: SeriesValue
    discrepancy: float
    discrepancy_raw: float
    one_vs_two: float | None
    literal_discrepancy: float

    def to_json(self) -> dict:
        def c(z):
            return None if z is None else [complex(z).real, complex(z).imag]

        return {"two_term": c(self.two_term), "one_term": c(self.one_term),
                "literal_order": c(self.literal_order), "direct_partial": c(self.direct.partial),
                "direct_completed": c(self.direct.completed), "tail_bound": self.direct.tail_bound,
                "tail_estimate": c(self.direct.tail_estimate), "discrepancy": self.discrepancy,
                "discrepancy_raw": self.discrepancy_raw, "one_vs_two": self.one_vs_two,
                "literal_discrepancy": self.literal_discrepancy, "model": self.direct.model}


def operator_series(grid: OperatorGrid, density: Density, s: complex, w=None,
                    form: str = "two") -> complex:
    """Operator-side value of the weighted Dirichlet series at (0, I).

    form="two":     (I - L^2)^{-1} F Psi + L (I - L^2)^{-1} F J Psi   (F applied first)
    form="one":     (I - L)^{-1} F Psi, valid when J Psi = Psi
    form="literal": F (I - L^2)^{-1} Psi + F L (I - L^2)^{-1} J Psi   (F applied last)
    """
    k = grid.k
    wv = np.zeros(k) if w is None else np.asarray(w)
    L = grid.operator(s, wv)
    F = grid.final_operator(s, wv)
    row_L = grid.eval_row(s, wv)
    row_F = grid.eval_row(s, wv, mmin=2)
    psi = grid.nodal(density)
    jpsi = grid.reflect(psi)
    L2 = L @ L
    if form == "two":
        G, GJ = F @ psi, F @ jpsi
        H, HJ = _neumann(L2, G), _neumann(L2, GJ)
        return row_F @ psi + row_L @ (L @ H) + row_L @ HJ
    if form == "one":
        G = F @ psi
        return row_F @ psi + row_L @ _neumann(L, G)
    if form == "literal":
        H, HJ = _neumann(L2, psi), _neumann(L2, jpsi)
        return row_F @ H + row_F @ (L @ HJ)
    raise ValueError(f"unknown form {form}")


def check_key_relation(grid: OperatorGrid, density: Density, s: float, w=None,
                       cutoff: int = 4000) -> KeyRelationResult:
    k = grid.k
    wv = np.zeros(k) if w is None else np.asarray(w)
    two = operator_series(grid, density, s, wv, "two")
    lit = operator_series(grid, density, s, wv, "literal")
    psi = grid.nodal(density)
    symmetric = np.allclose(psi, grid.reflect(psi), rtol=0, atol=1e-15)
    one = operator_series(grid, density, s, wv, "one") if symmetric else None
    direct = dirichlet_series_direct(grid.table, density, s, wv, cutoff)
    return KeyRelationResult(
        two, one, lit, direct,
        float(abs(two - direct.completed)), float(abs(two - direct.partial)),
        None if one is None else float(abs(one - two)), float(abs(lit - direct.completed)),
    )


# ------------------------------------------------------------------ residue constant


def residue_constant(grid: OperatorGrid, density: Density) -> dict:
    """Residue at s = 1 of the series sum Psi(r) Q(r)^{-2s}.

    ``spectral`` (returned as ``value``):
        -1/(2 lambda') [(P+ + P-) F Psi + (P+ - P-) F J Psi](0, I), with P+ the projector on
        lambda = 1 and P- the projector on its parity partner -1.
    ``quadrature``: (3 / pi^2) integral Psi dx d(v/k).  Equal to the residue when the part of
        Psi that is odd in the det sign does not depend on x; r* and the parity of the length
        are correlated, so the two differ otherwise.
    ``literal``: (1 / (2 log 2)) integral Psi dx d(v/k), the closed form without the
        1/|lambda'| = 6 log 2 / pi^2 factor, kept for comparison.
    """
    psi = grid.nodal(density)
    integral = float(grid.weights_measure() @ psi)
    sol = dominant_spectrum(grid, 1.0, gap=False)
    lam_s = dlambda_ds(grid, sol)
    F = grid.final_operator(1.0)
    G, GJ = F @ psi, F @ grid.reflect(psi)
    D = grid.det_signs()
    phi, eta = sol.eigenfunction, sol.eigenmeasure
    nrm = eta @ phi
    v = grid.table.identity
    phi0 = np.real(grid.interpolate_at(phi, 0.0, v))
    dphi0 = np.real(grid.interpolate_at(D * phi, 0.0, v))
    p_plus = lambda g: phi0 * (eta @ g) / nrm  # noqa: E731
    p_minus = lambda g: dphi0 * ((eta * D) @ g) / nrm  # noqa: E731
    spectral = -(p_plus(G) + p_minus(G) + p_plus(GJ) - p_minus(GJ)) / (2 * lam_s)
    spectral = float(np.real(spectral))
    return {"integral": integral, "literal": integral / (2 * math.log(2)),
            "quadrature": 3 * integral / math.pi ** 2, "spectral": spectral, "value": spectral,
            "dlambda_ds": float(np.real(lam_s))}


# ------------------------------------------------------------------ diagnostics


def constant_row_sums(grid: OperatorGrid, s: float) -> tuple[np.ndarray, np.ndarray]:
    """(L 1)(x_i) from the matrix and zeta(2s, 1 + x_i) for comparison."""
    L = grid.operator(s)
    ones = np.ones(grid.k * grid.n)
    return (L @ ones)[: grid.n], hurwitz_zeta(2 * s, 1.0 + grid.nodes)


def gauss_density(x: np.ndarray) -> np.ndarray:
    return 1.0 / ((1.0 + x) * math.log(2.0))


def far_from_one_sweep(grid: OperatorGrid, ts, ys, direction=None, sigma: float = 1.0) -> list[dict]:
    """Distance from 1 of the full discrete spectrum of L_{sigma + it, i y d}."""
    k = grid.k
    d = np.zeros(k) if direction is None else np.asarray(direction, dtype=float)
    if direction is None:
        d[0] = 1.0
    rows = []
    for t in ts:
        for y in ys:
            ev = np.linalg.eigvals(grid.operator(complex(sigma, t), 1j * y * d))
            rows.append({"t": float(t), "y": float(y), "distance": float(np.min(np.abs(ev - 1.0))),
                         "spectral_radius": float(np.max(np.abs(ev)))})
    return rows
