"""Dirichlet characters mod n with values reduced into a finite field F_{p^k}.

A character is stored by its exponent map e: (Z/n)^x -> Z/E with chi(a) = zeta_E^{e(a)},
E the exponent of the unit group.  Modulo a prime above p the p-power part of zeta_E
collapses to 1, so chi(a) reduces to x^{v e(a) mod E'} in F_p[x]/(g), where E = p^j E',
v = p^{-j} mod E' and g is an irreducible factor of the E'-th cyclotomic polynomial mod p.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

import numpy as np
import sympy
from sympy import factorint, primitive_root


@dataclass(frozen=True)
class UnitGroup:
    n: int
    orders: tuple[int, ...]  # cyclic factor orders
    units: np.ndarray  # residues a in [1, n) with gcd(a, n) = 1, increasing
    logs: np.ndarray  # shape (len(units), len(orders)): discrete logs

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    @property
    def order(self) -> int:
        return len(self.units)


def _cyclic_factors(n: int) -> list[tuple[int, int, int]]:
    """(modulus q, generator, order) for the cyclic factors of (Z/q)^x over prime powers q | n.

    Generators are lifted to residues mod n by CRT in ``unit_group``.  For 2^e with e >= 3
    the factors are <-1> and <5>.
    """
    out = []
    for p, e in sorted(factorint(n).items()):
        q = p ** e
        if p == 2:
            if e == 1:
                continue
            out.append((q, q - 1, 2))
            if e >= 3:
                out.append((q, 5, q // 4))
        else:
            out.append((q, int(primitive_root(q)), q // p * (p - 1)))
    return out


@lru_cache(maxsize=512)
def unit_group(n: int) -> UnitGroup:
    if n < 2:
        raise ValueError("modulus must be at least 2")
    units = np.array([a for a in range(1, n) if gcd(a, n) == 1], dtype=np.int64)
    factors = _cyclic_factors(n)
    logs = np.zeros((len(units), len(factors)), dtype=np.int64)
    index = {int(a): i for i, a in enumerate(units)}
    by_modulus: dict[int, list[int]] = {}
    for f, (q, _, _) in enumerate(factors):
        by_modulus.setdefault(q, []).append(f)
    for q, fs in by_modulus.items():
        # table of residue mod q -> tuple of logs over the factors living at q
        table: dict[int, tuple[int, ...]] = {}
        gens = [(factors[f][1], factors[f][2]) for f in fs]
        for ks in itertools.product(*(range(o) for _, o in gens)):
            val = 1
            for (g, _), k in zip(gens, ks):
                val = val * pow(g, k, q) % q
            table[val] = ks
        for a, i in index.items():
            logs[i, fs] = table[a % q]
    return UnitGroup(n, tuple(o for _, _, o in factors), units, logs)


@dataclass(frozen=True)
class Character:
    n: int
    exps: tuple[int, ...]  # k_i: chi(g_i) = zeta_{o_i}^{k_i}

    def exponent_map(self) -> np.ndarray:
        """e(a) in Z/E for every unit a (same order as UnitGroup.units)."""
        G = unit_group(self.n)
        E = G.exponent
        scale = np.array([k * (E // o) for k, o in zip(self.exps, G.orders)], dtype=np.int64)
        if len(scale) == 0:
            return np.zeros(G.order, dtype=np.int64)
        return (G.logs @ scale) % E

    @property
    def order(self) -> int:
        G = unit_group(self.n)
        return lcm(*(o // gcd(o, k) for k, o in zip(self.exps, G.orders))) if G.orders else 1

    @property
    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        if self.n <= 2:
            return 1
        G = unit_group(self.n)
        i = int(np.searchsorted(G.units, self.n - 1))
        return 1 if self.exponent_map()[i] == 0 else -1

    def conjugate(self) -> "Character":
        G = unit_group(self.n)
        return Character(self.n, tuple((-k) % o for k, o in zip(self.exps, G.orders)))

    def power(self, m: int) -> "Character":
        G = unit_group(self.n)
        return Character(self.n, tuple((k * m) % o for k, o in zip(self.exps, G.orders)))

    def is_trivial(self) -> bool:
        return all(k == 0 for k in self.exps)


def characters(n: int):
    """All characters mod n in lexicographic exponent order; index 0 is trivial."""
    G = unit_group(n)
    for ks in itertools.product(*(range(o) for o in G.orders)):
        yield Character(n, tuple(ks))


# ---------------------------------------------------------------- finite fields


@dataclass(frozen=True)
class ResidueField:
    """F_p[x]/(g) receiving the prime-to-p roots of unity of order E'."""

    p: int
    root_order: int  # E'
    modulus: tuple[int, ...]  # g, monic, coefficients low degree first
    powers: np.ndarray  # x^i mod g for i < E', shape (E', deg g)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def reduce(self, coeffs: np.ndarray) -> np.ndarray:
        """Image of sum_i coeffs[i] x^i (i < E') in the field, as a coefficient vector mod p."""
        return (np.asarray(coeffs, dtype=np.int64) % self.p) @ self.powers % self.p

    def frobenius(self, elem: np.ndarray) -> np.ndarray:
        """elem^p, computed on the polynomial representative."""
        out = np.zeros(self.degree, dtype=np.int64)
        out[0] = 1
        base, k = np.asarray(elem, dtype=np.int64) % self.p, self.p
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        prod = np.convolve(np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)) % self.p
        return _polymod(prod, self.modulus, self.p)


def _polymod(a: np.ndarray, g: tuple[int, ...], p: int) -> np.ndarray:
    a = [int(x) % p for x in a]
    d = len(g) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * g[j]) % p
    out = np.zeros(d, dtype=np.int64)
    out[: min(d, len(a))] = a[:d]
    return out


@lru_cache(maxsize=1024)
def residue_field(p: int, root_order: int) -> ResidueField:
    """Field of degree ord_{E'}(p) over F_p, generated by a primitive E'-th root of unity."""
    if root_order % p == 0:
        raise ValueError("root order must be prime to p")
    x = sympy.Symbol("x")
    if root_order == 1:
        return ResidueField(p, 1, (p - 1, 1), np.ones((1, 1), dtype=np.int64))
    cyc = sympy.Poly(sympy.cyclotomic_poly(root_order, x), x, modulus=p)
    factors = sorted((f.all_coeffs() for f, _ in cyc.factor_list()[1]), key=lambda c: [int(t) % p for t in c])
    g = tuple(int(c) % p for c in reversed(factors[0]))
    d = len(g) - 1
    powers = np.zeros((root_order, d), dtype=np.int64)
    cur = np.zeros(d, dtype=np.int64)
    cur[0] = 1
    for i in range(root_order):
        powers[i] = cur
        shifted = np.concatenate([[0], cur])
        cur = _polymod(shifted, g, p)
    return ResidueField(p, root_order, g, powers)


def split_order(E: int, p: int) -> tuple[int, int]:
    """E = p^j E' with p not dividing E'; returns (E', p^{-j} mod E')."""
    j = 0
    while E % p == 0:
        E //= p
        j += 1
    return E, pow(p, -j, E) if E > 1 else 0
