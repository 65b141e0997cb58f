"""Manin symbols for Gamma_0(N), Hecke eigensymbols of elliptic curves, and their evaluation.

A functional y on P^1(Z/N) that kills the relations x + xS and x + xT + xT^2 assigns a
value to every symbol {g 0, g oo}, g in SL_2(Z) with bottom row x.  For r = a/n,

    {r, oo} = {0, oo} + sum_i (eps_i Q_{i-1} : Q_i),   eps_i = det g_i(r),

so the value at r is y(0:1) + sum_u c_u(r) W(u), where W(u) = y(eps c : d) for the coset u
with bottom row (c, d) and det eps.  On a star eigenvector y(-c:d) = sign y(c:d).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

import numpy as np
from sympy import isprime, primerange

from .cosets import P1, CosetTable, build_coset_table, DEFAULT_LEVEL_BOUND, LevelBoundError
from .curves import BadPrimeError, Curve, curve_ap
from .exact import columns_to_matrix, kernel, matvec, rank
from .partition import partition_vector

S_MAT = ((0, -1), (1, 0))
T_MAT = ((0, -1), (1, -1))


class EigenspaceError(RuntimeError):
    """The Hecke eigenspace did not cut down to a line (wrong conductor or non-elliptic input)."""


def _act(x: tuple[int, int], g) -> tuple[int, int]:
    c, d = x
    return (c * g[0][0] + d * g[1][0], c * g[0][1] + d * g[1][1])


@dataclass
class ManinSpace:
    level: int
    p1: P1
    relations: list[list[int]]
    basis: list[list[int]]  # integer basis of functionals killing all relations
    star: list[int]  # index permutation x -> (-c : d)

    @property
    def symbols(self) -> list[tuple[int, int]]:
        return self.p1.elements

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def relation_rank(self) -> int:
        return rank(self.relations)

    def satisfies_relations(self, y) -> bool:
        return all(v == 0 for v in matvec(self.relations, y))

    def star_of(self, y) -> list[int]:
        return [y[self.star[i]] for i in range(len(y))]


def build_manin_space(N: int, bound: int = DEFAULT_LEVEL_BOUND) -> ManinSpace:
    if N < 1:
        raise ValueError("level must be positive")
    if N > bound:
        raise LevelBoundError(f"level {N} exceeds the configured bound {bound}")
    p1 = P1(N)
    size = len(p1)
    rows = set()
    T2 = ((T_MAT[0][0] * T_MAT[0][0] + T_MAT[0][1] * T_MAT[1][0], T_MAT[0][0] * T_MAT[0][1] + T_MAT[0][1] * T_MAT[1][1]),
          (T_MAT[1][0] * T_MAT[0][0] + T_MAT[1][1] * T_MAT[1][0], T_MAT[1][0] * T_MAT[0][1] + T_MAT[1][1] * T_MAT[1][1]))
    for x in p1.elements:
        i = p1.index(*x)
        row = [0] * size
        row[i] += 1
        row[p1.index(*_act(x, S_MAT))] += 1
        rows.add(tuple(row))
        row = [0] * size
        row[i] += 1
        row[p1.index(*_act(x, T_MAT))] += 1
        row[p1.index(*_act(x, T2))] += 1
        rows.add(tuple(row))
    relations = [list(r) for r in sorted(rows)]
    basis = kernel(relations)
    star = [p1.index(-c, d) for c, d in p1.elements]
    return ManinSpace(N, p1, relations, basis, star)


# ---------------------------------------------------------------- Hecke operators


def heilbronn_cremona(p: int) -> list[tuple[int, int, int, int]]:
    """Cremona's Heilbronn matrices (a, b, c, d) of determinant p."""
    if p == 2:
        return [(1, 0, 0, 2), (2, 0, 0, 1), (2, 1, 0, 1), (1, 0, 1, 2)]
    out = [(1, 0, 0, p)]
    for r in range(-(p // 2), p // 2 + 1):
        x1, x2, y1, y2, a, b = p, -r, 0, 1, -p, r
        out.append((x1, x2, y1, y2))
        while b != 0:
            q = _round_half_away(a, b)
            c = a - b * q
            a = -b
            b = c
            x3 = q * x2 - x1
            x1, x2 = x2, x3
            y3 = q * y2 - y1
            y1, y2 = y2, y3
            out.append((x1, x2, y1, y2))
    return out


def _round_half_away(a: int, b: int) -> int:
    q, r = divmod(abs(a), abs(b))
    if 2 * r >= abs(b):
        q += 1
    return q if (a >= 0) == (b >= 0) else -q


def heilbronn_merel(p: int) -> list[tuple[int, int, int, int]]:
    """Merel's set {ad - bc = p, a > b >= 0, d > c >= 0}."""
    out = []
    for a in range(1, p + 1):
        for d in range(1, p + 1):
            for b in range(a):
                for c in range(d):
                    if a * d - b * c == p:
                        out.append((a, b, c, d))
    return out


def hecke_matrix(space: ManinSpace, p: int, heilbronn: str = "cremona") -> list[list[int]]:
    """Integer matrix of T_p on functionals: (T_p y)(x) = sum_h y(x h)."""
    if space.level % p == 0:
        raise ValueError("T_p here requires p not dividing the level")
    mats = heilbronn_cremona(p) if heilbronn == "cremona" else heilbronn_merel(p)
    size = len(space.p1)
    T = [[0] * size for _ in range(size)]
    for i, (c, d) in enumerate(space.p1.elements):
        for a, b, cc, dd in mats:
            j = space.p1.index(c * a + d * cc, c * b + d * dd)
            T[i][j] += 1
    return T


# ---------------------------------------------------------------- eigensymbols


@dataclass
class EigenSymbol:
    curve: Curve
    level: int
    sign: int
    values: list[int]
    symbols: list[tuple[int, int]]
    imposed: list[tuple[int, int]] = field(default_factory=list)
    certified: list[tuple[int, int]] = field(default_factory=list)

    @property
    def content(self) -> int:
        g = 0
        for v in self.values:
            g = gcd(g, abs(v))
        return g

    def value(self, c: int, d: int, p1: P1) -> int:
        return self.values[p1.index(c, d)]

    def to_json(self) -> dict:
        return {"level": self.level, "sign": "+" if self.sign > 0 else "-", "curve": self.curve.ainvs,
                "symbols": [list(x) for x in self.symbols], "values": self.values,
                "imposed": [list(t) for t in self.imposed], "certified": [list(t) for t in self.certified]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _restrict(space_cols: list[list[int]], op: list[list[int]], eig: int) -> list[list[int]]:
    """Columns spanning {y in span(cols) : op y = eig y}."""
    if not space_cols:
        return []
    images = []
    for v in space_cols:
        ov = matvec(op, v)
        images.append([a - eig * b for a, b in zip(ov, v)])
    A = columns_to_matrix(images)  # rows = coordinates, columns = basis vectors
    coeffs = kernel(A)
    out = []
    for cvec in coeffs:
        y = [sum(ci * v[t] for ci, v in zip(cvec, space_cols)) for t in range(len(space_cols[0]))]
        out.append(y)
    return _saturate(out)


def _saturate(cols: list[list[int]]) -> list[list[int]]:
    from .exact import primitive

    return [primitive(c) for c in cols]


def extract_eigensymbol(space: ManinSpace, curve: Curve, sign: int, p_budget: int = 100,
                        certify_bound: int = 20) -> EigenSymbol:
    """Star eigenspace cut by ker(T_p - a_p) for good p until it is a line, then certified."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    size = len(space.p1)
    star_op = [[int(space.star[i] == j) for j in range(size)] for i in range(size)]
    cols = _restrict(space.basis, star_op, sign)
    bad = set(curve.bad_primes())
    imposed = []
    for p in primerange(2, p_budget + 1):
        if len(cols) <= 1:
            break
        if space.level % p == 0 or p in bad:
            continue
        ap = curve_ap(curve, p)
        cols = _restrict(cols, hecke_matrix(space, p), ap)
        imposed.append((p, ap))
    if len(cols) != 1:
        raise EigenspaceError(f"eigenspace has dimension {len(cols)} after p <= {p_budget}")
    y = cols[0]  # primitive: content 1, first nonzero entry positive
    es = EigenSymbol(curve, space.level, sign, y, list(space.p1.elements), imposed)
    es.certified = certify(space, es, certify_bound)
    return es


def certify(space: ManinSpace, es: EigenSymbol, bound: int = 20) -> list[tuple[int, int]]:
    """Check relations, star sign and T_p y = a_p y for all good p <= bound; return (p, a_p)."""
    if not space.satisfies_relations(es.values):
        raise ArithmeticError("eigensymbol violates a Manin relation")
    if space.star_of(es.values) != [es.sign * v for v in es.values]:
        raise ArithmeticError("eigensymbol is not a star eigenvector")
    out = []
    for p in primerange(2, bound + 1):
        if space.level % p == 0:
            continue
        try:
            ap = curve_ap(es.curve, p)
        except BadPrimeError:
            continue
        if matvec(hecke_matrix(space, p), es.values) != [ap * v for v in es.values]:
            raise ArithmeticError(f"T_{p} eigen-relation fails")
        out.append((p, ap))
    return out


# ---------------------------------------------------------------- evaluation


def coset_weights(es: EigenSymbol, table: CosetTable) -> np.ndarray:
    """W(u) = y(eps c : d) for the coset u with bottom row (c : d) and det eps."""
    if table.level != es.level:
        raise ValueError("coset table level differs from the eigensymbol level")
    W = np.zeros(table.k, dtype=np.int64)
    for u in range(table.k):
        c, d = table.bottom_class(u)
        W[u] = es.values[table.p1.index(table.det_sign(u) * c, d)]
    return W


def boundary_term(es: EigenSymbol, table: CosetTable) -> int:
    """Value on {0, oo}; zero for sign -1 because (0:1) is star-fixed."""
    return es.values[table.p1.index(0, 1)]


def eval_symbol(es: EigenSymbol, table: CosetTable, r) -> int:
    """Exact value at r in (0, 1): boundary + W . c(r)."""
    return int(boundary_term(es, table) + coset_weights(es, table) @ partition_vector(table, r))


def eval_by_path(es: EigenSymbol, table: CosetTable, matrices) -> int:
    """Value from an arbitrary unimodular path: y(0:1) + sum over matrices g of y(det(g) c : d).

    ``matrices`` are the successive products along a continued-fraction-like path whose
    last column runs through the convergents; any Gamma_0(N)-equivalent replacement of a
    matrix leaves the result unchanged.
    """
    total = boundary_term(es, table)
    for g in matrices:
        det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
        total += es.values[table.p1.index(det * g[1][0], g[1][1])]
    return total


def atkin_lehner_failures(es: EigenSymbol, table: CosetTable, n: int) -> list[int]:
    """Units a mod n (N | n) with m(a/n) != -m(a*/n), a* the inverse of a mod n."""
    from fractions import Fraction

    if n % es.level:
        raise ValueError("n must be a multiple of the level")
    bad = []
    for a in range(1, n):
        if gcd(a, n) == 1:
            if eval_symbol(es, table, Fraction(a, n)) != -eval_symbol(es, table, Fraction(pow(a, -1, n), n)):
                bad.append(a)
    return bad


# ---------------------------------------------------------------- convenience


@dataclass
class CurveSymbols:
    curve: Curve
    space: ManinSpace
    table: CosetTable
    plus: EigenSymbol
    minus: EigenSymbol

    def by_sign(self, sign: int) -> EigenSymbol:
        return self.plus if sign > 0 else self.minus


def curve_symbols(curve: Curve, level: int) -> CurveSymbols:
    space = build_manin_space(level)
    table = build_coset_table(level)
    return CurveSymbols(curve, space, table, extract_eigensymbol(space, curve, 1),
                        extract_eigensymbol(space, curve, -1))


def is_prime(p: int) -> bool:
    return bool(isprime(p))


# ---------------------------------------------------------------- residual statistics


def residual_symbol_report(es: EigenSymbol, table: CosetTable, M: int, p: int, e: int = 1,
                           densities=None, reducible: dict | None = None, threads: int = 1) -> dict:
    """Pr[m(r) = a mod p^e] over Omega_M for each density, against p^{-e}.

    ``densities`` maps a label to a partition.Density (default: uniform).  ``reducible`` is a
    user-supplied {ainvs tuple: [primes]} exclusion list; a hit sets a flag.
    """
    return residual_symbol_reports([es], table, M, p, e, densities, reducible, threads)[0]


def residual_symbol_reports(symbols, table: CosetTable, M: int, p: int, e: int = 1,
                            densities=None, reducible: dict | None = None, threads: int = 1) -> list[dict]:
    """``residual_symbol_report`` for several eigensymbols sharing one scan per density."""
    from .partition import Probes, ensemble_scan, linear_residue_report, uniform

    if e < 1:
        raise ValueError("e must be >= 1")
    densities = densities or {"uniform": uniform()}
    outs = []
    for es in symbols:
        if not isprime(p) or (2 * es.level) % p == 0:
            raise ValueError("p must be a prime not dividing 2N")
        flags = [f"mod-{p} representation listed as reducible; no equidistribution claim"
                 for key, primes in (reducible or {}).items()
                 if tuple(key) == tuple(es.curve.ainvs) and p in primes]
        outs.append({"level": es.level, "sign": es.sign, "p": p, "e": e, "M": M, "flags": flags,
                     "ensembles": {}})
    q = p ** e
    dirs = [coset_weights(es, table) for es in symbols]
    for label, dens in densities.items():
        st = ensemble_scan(table, M, dens, Probes(directions=dirs), threads=threads)
        for i, es in enumerate(symbols):
            rep = linear_residue_report(st, i, q, shift=boundary_term(es, table))
            rep.update(samples=st.sample_count, density=dens.describe())
            outs[i]["ensembles"][label] = rep
    return outs


def candidate_levels(curve: Curve, bound: int = DEFAULT_LEVEL_BOUND) -> list[int]:
    """Products of bad primes with exponents inside the conductor limits, ascending."""
    exps = {2: 8, 3: 5}
    choices = []
    for p in curve.bad_primes():
        choices.append([p ** e for e in range(1, exps.get(p, 2) + 1)])
    out = []

    def rec(i, acc):
        if acc > bound:
            return
        if i == len(choices):
            out.append(acc)
            return
        for q in choices[i]:
            rec(i + 1, acc * q)

    rec(0, 1)
    return sorted(out)


def infer_level(curve: Curve, bound: int = 2000) -> int:
    """Smallest candidate level carrying a one-dimensional sign-(-1) eigensymbol for the curve."""
    for N in candidate_levels(curve, bound):
        if N == 1:
            continue
        try:
            extract_eigensymbol(build_manin_space(N), curve, -1)
        except (EigenspaceError, ArithmeticError):
            continue
        return N
    raise EigenspaceError("no level up to the bound carries the curve's eigensymbol")
