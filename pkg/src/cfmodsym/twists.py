"""Twisted sums sum_a conj(chi)(a) m(a/n) reduced modulo a prime above p, and surveys over n."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy import totient

from .characters import Character, characters, residue_field, split_order, unit_group
from .symbols import CurveSymbols, EigenSymbol, coset_weights, boundary_term
from .cosets import CosetTable
from .partition import partition_vector


class ParityMismatch(ValueError):
    pass


def symbol_values(es: EigenSymbol, table: CosetTable, n: int) -> np.ndarray:
    """Exact values m(a/n) for the units a mod n (ascending)."""
    W = coset_weights(es, table)
    b = boundary_term(es, table)
    units = unit_group(n).units
    return np.array([b + int(W @ partition_vector(table, Fraction(int(a), n))) for a in units], dtype=np.int64)


def twisted_lvalue_modp(es: EigenSymbol, table: CosetTable, chi: Character, p: int,
                        values: np.ndarray | None = None) -> np.ndarray:
    """sum_a conj(chi)(a) m(a/n) in F_p[x]/(g), as a coefficient vector mod p."""
    if es.sign != chi.parity:
        raise ParityMismatch(f"sign {es.sign:+d} does not match chi(-1) = {chi.parity:+d}")
    n = chi.n
    if values is None:
        values = symbol_values(es, table, n)
    G = unit_group(n)
    Ep, v = split_order(G.exponent, p)
    F = residue_field(p, Ep)
    # conj(chi)(a) = zeta_E^{-e(a)}, reduced to zeta_{E'}^{-v e(a)}
    j = (-v * chi.exponent_map()) % Ep if Ep > 1 else np.zeros(G.order, dtype=np.int64)
    coeffs = np.bincount(j, weights=values % p, minlength=Ep).astype(np.int64)
    return F.reduce(coeffs)


def nonvanishing_constant(p: int) -> float:
    """c = 1 - sqrt(1 - (6/pi^2)(1 - 1/p))."""
    return 1.0 - math.sqrt(1.0 - (6.0 / math.pi ** 2) * (1.0 - 1.0 / p))


def v_p(m: int, p: int) -> int:
    k = 0
    while m and m % p == 0:
        m //= p
        k += 1
    return k


@dataclass
class SurveyResult:
    p: int
    max_n: int
    rows: list[tuple] = field(default_factory=list)  # (n, chi_index, order, parity, nonzero, v_p(phi(n)))
    skipped: list[tuple[int, int, str]] = field(default_factory=list)

    def nonvanishing_count(self, upto: int | None = None, parity: int | None = None) -> int:
        return sum(1 for r in self.rows if r[4] and (upto is None or r[0] <= upto)
                   and (parity is None or r[3] == parity))

    def conductors_with_nonvanishing(self, upto: int | None = None, parity: int | None = None) -> set[int]:
        return {r[0] for r in self.rows if r[4] and (upto is None or r[0] <= upto)
                and (parity is None or r[3] == parity)}

    def fraction(self, upto: int | None = None, parity: int | None = None) -> float:
        M = self.max_n if upto is None else upto
        return len(self.conductors_with_nonvanishing(M, parity)) / M

    def growth(self, grid) -> dict:
        base = grid[0]
        c0 = self.nonvanishing_count(base)
        counts = {M: self.nonvanishing_count(M) for M in grid}
        ratios = {M: counts[M] / (c0 * M / base) if c0 else 0.0 for M in grid}
        return {"counts": counts, "ratio_to_linear": ratios}

    def summary(self) -> dict:
        c = nonvanishing_constant(self.p)
        return {"p": self.p, "max_n": self.max_n, "characters": len(self.rows),
                "nonvanishing": self.nonvanishing_count(),
                "fraction": self.fraction(),
                "fraction_even": self.fraction(parity=1), "fraction_odd": self.fraction(parity=-1),
                "constant_c": c, "skipped": len(self.skipped)}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "chi_index", "order", "parity", "value_nonzero", "valuation_class"])
        for r in self.rows:
            w.writerow([r[0], r[1], r[2], r[3], int(r[4]), r[5]])
        return buf.getvalue()


def nonvanishing_survey(cs: CurveSymbols, max_n: int, p: int, min_n: int = 2) -> SurveyResult:
    """For every n in [min_n, max_n] and every character mod n, test L(chi) != 0 mod the prime above p.

    The valuation class column records v_p(phi(n)); the test itself is the non-vanishing of the
    sum in the residue field, which implies the stronger congruence for every valuation class.
    """
    out = SurveyResult(p, max_n)
    for n in range(min_n, max_n + 1):
        vals = {s: symbol_values(cs.by_sign(s), cs.table, n) for s in (1, -1)}
        vclass = v_p(int(totient(n)), p)
        for idx, chi in enumerate(characters(n)):
            sgn = chi.parity
            try:
                val = twisted_lvalue_modp(cs.by_sign(sgn), cs.table, chi, p, vals[sgn])
            except (ArithmeticError, ValueError) as exc:
                out.skipped.append((n, idx, str(exc)))
                continue
            out.rows.append((n, idx, chi.order, sgn, bool(np.any(val)), vclass))
    return out
