"""Modular partition vectors and weighted ensemble statistics over Omega_M."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy import stats as sps

from .cf import as_rational, cf_expand, denominator_chunks, sigma_arrays
from .cosets import CosetTable

FULL_RESIDUE_LIMIT = 1 << 22  # largest q^k for which full-vector residue classes are tabulated


class EmptyEnsembleError(ValueError):
    """The density vanishes on every sample of the ensemble."""


# ---------------------------------------------------------------- single rationals


def partition_vector(table: CosetTable, r) -> np.ndarray:
    """c_u(r) = #{i : g_i(r) in u}, tracked through the digit action."""
    counts = np.zeros(table.k, dtype=np.int64)
    u = table.identity
    for m in cf_expand(as_rational(r, allow_one=False)):
        u = table.act_digit(u, m)
        counts[u] += 1
    return counts


def final_coset(table: CosetTable, r) -> int:
    """Coset of g(r) = g_l(r)."""
    u = table.identity
    for m in cf_expand(as_rational(r, allow_one=False)):
        u = table.act_digit(u, m)
    return u


def canonical_digits(digits: Sequence[int]) -> tuple[int, ...]:
    """Rewrite a trailing digit 1 into the m_l >= 2 form: [.., a, 1] = [.., a + 1]."""
    d = list(digits)
    while len(d) > 1 and d[-1] == 1:
        d.pop()
        d[-1] += 1
    return tuple(d)


def dual_partition_vector(table: CosetTable, r) -> np.ndarray:
    """c(r*), computed from the reversed digits and the parity law for r*."""
    digits = cf_expand(as_rational(r, allow_one=False))
    rev = digits[::-1]
    if len(digits) % 2 == 0:
        # 1 - [0; a_1, a_2, ...] = [0; 1, a_1 - 1, a_2, ...]; normalise a leading zero digit
        rev = (1, rev[0] - 1) + rev[1:] if rev[0] > 1 else (1 + rev[1],) + rev[2:]
    rev = canonical_digits(rev)
    counts = np.zeros(table.k, dtype=np.int64)
    u = table.identity
    for m in rev:
        u = table.act_digit(u, m)
        counts[u] += 1
    return counts


def exact_law_failures(table: CosetTable, M: int, limit: int = 20) -> dict:
    """Check the exact laws on every r in Omega_M; failing rationals are listed up to ``limit``.

    Laws: det g_i = (-1)^i, sum_u c_u(r) = l(r), the dual parity law for r* and the
    reversal law [0; m_l, ..., m_1] = Q_{l-1}/Q_l.
    """
    from .cf import convergent_matrices, det2, dual, dual_from_digits, enumerate_omega, from_digits

    fails = {"determinant": [], "length": [], "dual_parity": [], "reversal": []}
    count = 0
    for r in enumerate_omega(M):
        count += 1
        d = cf_expand(r)
        gs = convergent_matrices(d)
        checks = {
            "determinant": all(det2(g) == (-1) ** i for i, g in enumerate(gs, 1)),
            "length": int(partition_vector(table, r).sum()) == len(d),
            "dual_parity": dual_from_digits(d) == dual(r),
            "reversal": from_digits(d[::-1]) == Fraction(gs[-1][1][0], gs[-1][1][1]),
        }
        for law, ok in checks.items():
            if not ok and len(fails[law]) < limit:
                fails[law].append(str(r))
    return {"M": M, "checked": count, "failures": fails,
            "total_failures": sum(len(v) for v in fails.values())}


# ---------------------------------------------------------------- vectorised kernel


@dataclass
class ChunkScan:
    a: np.ndarray
    n: np.ndarray
    counts: np.ndarray  # (len, k)
    final: np.ndarray  # coset of g(r)
    dual_num: np.ndarray  # numerator of r*


def scan_arrays(table: CosetTable, a: np.ndarray, n: np.ndarray) -> ChunkScan:
    """Partition vectors of a/n for whole arrays at once (Euclid in lock step)."""
    size = a.size
    k, N = table.k, table.level
    counts = np.zeros((size, k), dtype=np.int16)
    cos = np.full(size, table.identity, dtype=np.int64)
    num = a.astype(np.int64).copy()
    den = n.astype(np.int64).copy()
    q_prev = np.zeros(size, dtype=np.int64)
    q_cur = np.ones(size, dtype=np.int64)
    length = np.zeros(size, dtype=np.int64)
    act = table.digit_action
    idx = np.arange(size)
    while idx.size:
        nu, de = num[idx], den[idx]
        m = de // nu
        c = act[cos[idx], m % N].astype(np.int64)
        cos[idx] = c
        counts[idx, c] += 1
        length[idx] += 1
        qp, qc = q_prev[idx], q_cur[idx]
        q_prev[idx] = qc
        q_cur[idx] = qp + m * qc
        rem = de - m * nu
        den[idx] = nu
        num[idx] = rem
        idx = idx[rem > 0]
    dual_num = np.where(length % 2 == 1, q_prev, n - q_prev)
    return ChunkScan(a, n, counts, cos, dual_num)


# ---------------------------------------------------------------- densities


@dataclass(frozen=True)
class Density:
    """Weight Psi(r) = Psi(x, g(r)) with x = r* (dual mode) or x = r.

    kind: uniform | coset_mask | interval_mask | smooth.
    """

    kind: str = "uniform"
    mask: tuple[float, ...] | None = None
    interval: tuple[Fraction, Fraction] | None = None
    constrain: str = "dual"
    smooth: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
    label: str = "uniform"

    def __post_init__(self):
        if self.kind not in {"uniform", "coset_mask", "interval_mask", "smooth"}:
            raise ValueError(f"unknown density kind {self.kind}")
        if self.constrain not in {"dual", "r"}:
            raise ValueError("constrain must be 'dual' or 'r'")
        if self.mask is not None and min(self.mask) < 0:
            raise ValueError("density must be nonnegative")
        if self.interval is not None:
            lo, hi = self.interval
            if not (0 <= lo <= hi <= 1):
                raise ValueError("interval must lie in [0, 1]")

    @property
    def integral(self) -> bool:
        if self.kind == "smooth":
            return False
        return self.mask is None or all(float(v).is_integer() for v in self.mask)

    def describe(self) -> dict:
        out = {"kind": self.kind, "label": self.label, "constrain": self.constrain}
        if self.mask is not None:
            out["mask"] = list(self.mask)
        if self.interval is not None:
            out["interval"] = [str(self.interval[0]), str(self.interval[1])]
        return out

    def weights(self, table: CosetTable, chunk: ChunkScan) -> np.ndarray:
        size = chunk.a.size
        dtype = np.int64 if self.integral else np.float64
        w = np.ones(size, dtype=dtype)
        if self.mask is not None:
            mask = np.asarray(self.mask, dtype=dtype)
            if mask.size != table.k:
                raise ValueError("mask length must equal the coset count")
            w = w * mask[chunk.final]
        xnum = chunk.dual_num if self.constrain == "dual" else chunk.a
        if self.interval is not None:
            lo, hi = self.interval
            inside = (xnum * lo.denominator >= lo.numerator * chunk.n) & (
                xnum * hi.denominator <= hi.numerator * chunk.n
            )
            w = w * inside
        if self.smooth is not None:
            w = w * np.asarray(self.smooth(xnum / chunk.n, chunk.final), dtype=float)
        return w


def uniform() -> Density:
    return Density()


def coset_mask(mask: Sequence[float], label: str = "mask") -> Density:
    return Density("coset_mask", mask=tuple(float(v) for v in mask), label=label)


def divisor_mask(table: CosetTable, d: int) -> tuple[float, ...]:
    """phi_d: 1 on cosets whose bottom row (c, delta) has gcd(delta, N) = d."""
    N = table.level
    if N % d:
        raise ValueError(f"{d} does not divide the level {N}")
    return tuple(1.0 if math.gcd(table.bottom_class(u)[1], N) == d else 0.0 for u in range(table.k))


def divisor_density(table: CosetTable, d: int) -> Density:
    return coset_mask(divisor_mask(table, d), label=f"phi_{d}")


def interval_density(
    lo, hi, mask: Sequence[float] | None = None, constrain: str = "dual", label: str | None = None
) -> Density:
    interval = (Fraction(lo), Fraction(hi))
    lab = label or f"interval[{interval[0]},{interval[1]}]({constrain})"
    return Density(
        "interval_mask",
        mask=None if mask is None else tuple(float(v) for v in mask),
        interval=interval,
        constrain=constrain,
        label=lab,
    )


def smooth_density(f: Callable, label: str = "smooth", constrain: str = "dual") -> Density:
    return Density("smooth", smooth=f, label=label, constrain=constrain)


# ---------------------------------------------------------------- ensemble scans


@dataclass
class Probes:
    mgf: list[np.ndarray] = field(default_factory=list)  # complex w-points of length k
    moduli: list[int] = field(default_factory=list)
    directions: list[np.ndarray] = field(default_factory=list)
    congruences: list[tuple[np.ndarray, int]] = field(default_factory=list)
    dual_statistic: bool = False


@dataclass
class EnsembleStats:
    level: int
    M: int
    k: int
    density: dict
    probes: Probes
    sample_count: int = 0
    total_weight: float | int = 0
    first: np.ndarray | None = None
    second: np.ndarray | None = None
    mgf: np.ndarray | None = None
    residues: dict = field(default_factory=dict)
    histograms: list[dict] = field(default_factory=list)
    cong_weight: list[np.ndarray] = field(default_factory=list)
    cong_mgf: list[np.ndarray] = field(default_factory=list)

    def distribution(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """(values, weights) of the i-th linear statistic, values sorted."""
        h = self.histograms[i]
        vals = np.array(sorted(h))
        return vals, np.array([h[v] for v in sorted(h)])

    def normalized_mgf(self) -> np.ndarray:
        return self.mgf / self.total_weight

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, np.ndarray):
                if np.iscomplexobj(x):
                    return {"re": x.real.tolist(), "im": x.imag.tolist()}
                return x.tolist()
            return x

        return {
            "level": self.level,
            "M": self.M,
            "density": self.density,
            "probes": {
                "mgf": [enc(np.asarray(w)) for w in self.probes.mgf],
                "moduli": self.probes.moduli,
                "directions": [enc(np.asarray(d)) for d in self.probes.directions],
                "congruences": [[enc(np.asarray(d)), q] for d, q in self.probes.congruences],
                "dual_statistic": self.probes.dual_statistic,
            },
            "sample_count": self.sample_count,
            "total_weight": enc(self.total_weight),
            "first": enc(self.first),
            "second": enc(self.second),
            "mgf": enc(self.mgf),
            "residues": {
                str(q): {kk: enc(v) for kk, v in d.items()} for q, d in self.residues.items()
            },
            "cong_weight": [enc(c) for c in self.cong_weight],
            "cong_mgf": [enc(c) for c in self.cong_mgf],
        }


def _is_integer_vector(v: np.ndarray) -> bool:
    return bool(np.all(np.isreal(v)) and np.all(np.asarray(v).real == np.round(np.asarray(v).real)))


def _chunk_stats(table: CosetTable, lo: int, hi: int, density: Density, probes: Probes) -> dict:
    a, n = sigma_arrays(lo, hi)
    chunk = scan_arrays(table, a, n)
    w = density.weights(table, chunk)
    if probes.dual_statistic:
        counts = scan_arrays(table, chunk.dual_num, n).counts
    else:
        counts = chunk.counts
    keep = w != 0
    w, counts = w[keep], counts[keep].astype(np.int64)
    out: dict = {"sample_count": int(keep.sum()), "total_weight": w.sum()}
    wc = counts * w[:, None]
    out["first"] = wc.sum(axis=0)
    out["second"] = wc.T @ counts
    if probes.mgf:
        W = np.array(probes.mgf, dtype=complex)  # (p, k)
        out["mgf"] = (np.exp(counts @ W.T) * w[:, None]).sum(axis=0)
    res = {}
    for q in probes.moduli:
        red = counts % q
        marg = np.stack([np.bincount(red[:, u], weights=w, minlength=q) for u in range(table.k)])
        entry = {"marginal": marg.round().astype(np.int64) if density.integral else marg}
        if q ** table.k <= FULL_RESIDUE_LIMIT:
            code = red @ (q ** np.arange(table.k, dtype=np.int64))
            full = np.bincount(code, weights=w, minlength=q ** table.k)
            entry["full"] = full.round().astype(np.int64) if density.integral else full
        res[q] = entry
    out["residues"] = res
    hists = []
    for d in probes.directions:
        d = np.asarray(d)
        if _is_integer_vector(d):
            vals = counts @ np.round(d.real).astype(np.int64)
        else:
            vals = np.round(counts @ d.astype(float), 12)
        uniq, inv = np.unique(vals, return_inverse=True)
        wsum = np.bincount(inv, weights=w, minlength=uniq.size)
        if density.integral:
            wsum = wsum.round().astype(np.int64)
        hists.append({(int(v) if isinstance(v, np.integer) else float(v)): x for v, x in zip(uniq.tolist(), wsum.tolist())})
    out["histograms"] = hists
    cw, cm = [], []
    for d, q in probes.congruences:
        cls = (counts @ np.asarray(d, dtype=np.int64)) % q
        wts = np.bincount(cls, weights=w, minlength=q)
        cw.append(wts.round().astype(np.int64) if density.integral else wts)
        if probes.mgf:
            W = np.array(probes.mgf, dtype=complex)
            e = np.exp(counts @ W.T) * w[:, None]
            cm.append(np.stack([e[cls == r].sum(axis=0) for r in range(q)]))
        else:
            cm.append(np.zeros((q, 0), dtype=complex))
    out["cong_weight"], out["cong_mgf"] = cw, cm
    return out


def ensemble_scan(
    table: CosetTable,
    M: int,
    density: Density | None = None,
    probes: Probes | None = None,
    threads: int = 1,
    chunk_target: int = 1 << 18,
) -> EnsembleStats:
    """One pass over Omega_M; per-chunk accumulators merged in fixed chunk order."""
    if M < 2:
        raise ValueError("M must be at least 2")
    density = density or uniform()
    probes = probes or Probes()
    for q in probes.moduli:
        if q < 2:
            raise ValueError("moduli must be >= 2")
    chunks = denominator_chunks(M, chunk_target)
    job = lambda lh: _chunk_stats(table, lh[0], lh[1], density, probes)  # noqa: E731
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(job, chunks))
    else:
        parts = [job(c) for c in chunks]
    st = EnsembleStats(table.level, M, table.k, density.describe(), probes)
    st.histograms = [dict() for _ in probes.directions]
    for i, part in enumerate(parts):
        if i == 0:
            st.sample_count = part["sample_count"]
            st.total_weight = part["total_weight"]
            st.first = part["first"].copy()
            st.second = part["second"].copy()
            st.mgf = part.get("mgf")
            st.residues = {q: {kk: v.copy() for kk, v in d.items()} for q, d in part["residues"].items()}
            st.cong_weight = [c.copy() for c in part["cong_weight"]]
            st.cong_mgf = [c.copy() for c in part["cong_mgf"]]
        else:
            st.sample_count += part["sample_count"]
            st.total_weight = st.total_weight + part["total_weight"]
            st.first = st.first + part["first"]
            st.second = st.second + part["second"]
            if st.mgf is not None:
                st.mgf = st.mgf + part["mgf"]
            for q, d in part["residues"].items():
                for kk, v in d.items():
                    st.residues[q][kk] = st.residues[q][kk] + v
            st.cong_weight = [x + y for x, y in zip(st.cong_weight, part["cong_weight"])]
            st.cong_mgf = [x + y for x, y in zip(st.cong_mgf, part["cong_mgf"])]
        for h, ph in zip(st.histograms, part["histograms"]):
            for v, x in ph.items():
                h[v] = h.get(v, 0) + x
    if isinstance(st.total_weight, np.generic):
        st.total_weight = st.total_weight.item()
    if not st.total_weight:
        raise EmptyEnsembleError("density vanishes on the whole ensemble")
    return st


# ---------------------------------------------------------------- reports


def _fd_edges(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Freedman-Diaconis bin edges for a weighted sample (integer data gets unit-aligned edges)."""
    cum = np.cumsum(weights) / weights.sum()
    q1 = values[np.searchsorted(cum, 0.25)]
    q3 = values[np.searchsorted(cum, 0.75)]
    n = max(float(weights.sum()), 1.0)
    width = 2.0 * (q3 - q1) / n ** (1 / 3)
    lo, hi = float(values[0]), float(values[-1])
    if np.all(values == np.round(values)):
        width = max(1.0, math.ceil(width)) if width > 0 else 1.0
        lo, hi = lo - 0.5, hi + 0.5
    elif width <= 0:
        width = max(hi - lo, 1.0)
    nb = max(1, int(math.ceil((hi - lo) / width)))
    return lo + width * np.arange(nb + 1)


def ks_distance(values: np.ndarray, weights: np.ndarray, mean: float, sd: float, lattice: bool) -> float:
    """Sup distance between the weighted CDF and the fitted normal.

    For lattice (integer) data the normal CDF is read at half-integers, the usual
    continuity correction; otherwise the two-sided sup over jump points is used.
    """
    cdf = np.cumsum(weights) / weights.sum()
    if lattice:
        return float(np.max(np.abs(cdf - sps.norm.cdf((values + 0.5 - mean) / sd))))
    z = sps.norm.cdf((values - mean) / sd)
    before = np.concatenate([[0.0], cdf[:-1]])
    return float(max(np.max(np.abs(cdf - z)), np.max(np.abs(before - z))))


def clt_report(stats: EnsembleStats, i: int = 0) -> dict:
    """Moments, KS distances and a Freedman-Diaconis histogram of the i-th linear statistic."""
    vals, wts = stats.distribution(i)
    wts = wts.astype(float)
    tot = wts.sum()
    mean = float((vals * wts).sum() / tot)
    var = float(((vals - mean) ** 2 * wts).sum() / tot)
    lattice = bool(np.all(vals == np.round(vals)))
    rep = {
        "M": stats.M,
        "level": stats.level,
        "direction": np.asarray(stats.probes.directions[i]).real.tolist(),
        "samples": stats.sample_count,
        "mean": mean,
        "variance": var,
        "lattice": lattice,
        "low_power": stats.sample_count < 1000,
        "zero_variance": var == 0.0,
    }
    if var == 0.0:
        rep.update(ks=None, ks_raw=None, histogram=[])
        return rep
    sd = math.sqrt(var)
    rep["ks"] = ks_distance(vals, wts, mean, sd, lattice)
    rep["ks_raw"] = ks_distance(vals, wts, mean, sd, False)
    edges = _fd_edges(vals, wts)
    counts, _ = np.histogram(vals, bins=edges, weights=wts)
    rep["histogram"] = [
        {"bin_left": float((edges[j] - mean) / sd), "bin_right": float((edges[j + 1] - mean) / sd),
         "count": float(counts[j])}
        for j in range(len(counts))
    ]
    return rep


def quasi_power_fit(stats_list: Sequence[EnsembleStats], j: int = 0) -> dict:
    """Regress log E[exp(w.c)] for the j-th MGF probe against log M: slope U(w), intercept log V(w)."""
    Ms = np.array([s.M for s in stats_list], dtype=float)
    y = np.array([np.log(s.mgf[j] / s.total_weight).real for s in stats_list])
    A = np.vstack([np.log(Ms), np.ones_like(Ms)]).T
    (slope, icpt), *_ = np.linalg.lstsq(A, y, rcond=None)
    return {"M": Ms.tolist(), "log_mgf": y.tolist(), "U": float(slope), "logV": float(icpt)}


def mean_fit(stats_list: Sequence[EnsembleStats], i: int = 0) -> dict:
    """Least-squares fit mean = a log M + b of the i-th linear statistic."""
    Ms = np.array([s.M for s in stats_list], dtype=float)
    means = np.array([clt_report(s, i)["mean"] for s in stats_list])
    A = np.vstack([np.log(Ms), np.ones_like(Ms)]).T
    (a, b), *_ = np.linalg.lstsq(A, means, rcond=None)
    return {"M": Ms.tolist(), "mean": means.tolist(), "slope": float(a), "intercept": float(b)}


def residual_report(stats: EnsembleStats, q: int, targets: Sequence[Sequence[int]] | None = None) -> dict:
    """Residue frequencies of c mod q against the uniform value q^{-k}, plus marginals."""
    if q < 2:
        raise ValueError("modulus must be >= 2")
    if q not in stats.residues:
        raise ValueError(f"modulus {q} was not probed in the scan")
    entry = stats.residues[q]
    tot = float(stats.total_weight)
    marg = np.asarray(entry["marginal"], dtype=float) / tot
    rep = {"q": q, "k": stats.k, "M": stats.M, "marginal_max_deviation": float(np.max(np.abs(marg - 1.0 / q))),
           "marginals": marg.tolist()}
    if "full" in entry:
        full = np.asarray(entry["full"], dtype=float) / tot
        rep["full_sum"] = float(full.sum())
        rep["full_max_deviation"] = float(np.max(np.abs(full - float(q) ** (-stats.k))))
        if targets:
            powers = q ** np.arange(stats.k)
            rep["targets"] = [
                {"residue": list(t), "probability": float(full[int(np.dot(np.mod(t, q), powers))]),
                 "deviation": float(full[int(np.dot(np.mod(t, q), powers))] - float(q) ** (-stats.k))}
                for t in targets
            ]
    return rep


def linear_residue_report(stats: EnsembleStats, i: int, modulus: int, shift: int = 0) -> dict:
    """Distribution of (shift + d.c) mod modulus for the i-th (integer) direction."""
    vals, wts = stats.distribution(i)
    cls = np.mod(vals.astype(np.int64) + shift, modulus)
    probs = np.bincount(cls, weights=wts.astype(float), minlength=modulus) / float(stats.total_weight)
    return {"modulus": modulus, "probabilities": probs.tolist(), "sum": float(probs.sum()),
            "max_deviation": float(np.max(np.abs(probs - 1.0 / modulus)))}


def variance_fit(stats_list: Sequence[EnsembleStats], i: int = 0) -> dict:
    """Least-squares Var = C log M + D over increasing cutoffs."""
    if len(stats_list) < 4:
        raise ValueError("need at least four cutoffs")
    Ms = [s.M for s in stats_list]
    counts = [s.sample_count for s in stats_list]
    if any(b <= a for a, b in zip(Ms, Ms[1:])) or any(b < a for a, b in zip(counts, counts[1:])):
        raise ValueError("cutoffs and sample counts must increase")
    if Ms[-1] < 8 * Ms[0]:
        raise ValueError("cutoffs must span a factor of at least 8")
    var = np.array([clt_report(s, i)["variance"] for s in stats_list])
    x = np.log(np.array(Ms, dtype=float))
    if np.all(var == 0):
        return {"M": Ms, "variance": var.tolist(), "C": 0.0, "D": 0.0, "R2": 1.0}
    A = np.vstack([x, np.ones_like(x)]).T
    (C, D), *_ = np.linalg.lstsq(A, var, rcond=None)
    resid = var - (C * x + D)
    ss = float(((var - var.mean()) ** 2).sum())
    r2 = 1.0 - float((resid ** 2).sum()) / ss if ss > 0 else 1.0
    return {"M": Ms, "variance": var.tolist(), "C": float(C), "D": float(D), "R2": r2}


def conditional_mgf(stats: EnsembleStats, c: int, a: int, j: int) -> complex:
    """E[exp(w.c) | d.c = a mod q] / E[exp(w.c)] for congruence probe c and MGF probe j."""
    wt = stats.cong_weight[c][a]
    if wt == 0:
        raise EmptyEnsembleError("conditioned ensemble is empty")
    # one division at the end keeps the w = 0 ratio exactly 1 (all factors are exact integers);
    # complex division by a real denominator is done componentwise to avoid rescaling roundoff
    num = complex(stats.cong_mgf[c][a, j] * stats.total_weight)
    den = complex(wt * stats.mgf[j])
    if den.imag == 0:
        return complex(num.real / den.real, num.imag / den.real)
    return num / den


# ---------------------------------------------------------------- joint equidistribution


def joint_frequencies(table: CosetTable, M: int, bins: int = 20) -> dict:
    """Frequencies of g(r*) over cosets and the CDF of r over Omega_M."""
    per_coset = np.zeros(table.k, dtype=np.int64)
    xhist = np.zeros(bins, dtype=np.int64)
    total = 0
    for lo, hi in denominator_chunks(M):
        a, n = sigma_arrays(lo, hi)
        ch = scan_arrays(table, a, n)
        dual_chunk = scan_arrays(table, ch.dual_num, n)
        per_coset += np.bincount(dual_chunk.final, minlength=table.k)
        xhist += np.bincount(np.minimum((a * bins) // n, bins - 1), minlength=bins)
        total += a.size
    cdf = np.cumsum(xhist) / total
    grid = np.arange(1, bins + 1) / bins
    return {"coset_freq": (per_coset / total).tolist(),
            "coset_max_dev": float(np.max(np.abs(per_coset / total - 1.0 / table.k))),
            "x_cdf_max_dev": float(np.max(np.abs(cdf - grid)))}


def ensemble_weight_sum(table: CosetTable, M: int, density: Density) -> float:
    """Total weight of a density on Omega_M (no statistics)."""
    total = 0
    for lo, hi in denominator_chunks(M):
        a, n = sigma_arrays(lo, hi)
        total += density.weights(table, scan_arrays(table, a, n)).sum()
    return total
