"""Exact continued fractions, convergent matrices, duals and Farey-type enumeration."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

import numpy as np

Matrix2 = tuple[tuple[int, int], tuple[int, int]]


class IntegerWidthError(OverflowError):
    """A convergent entry exceeded the configured integer width."""


def as_rational(r, *, allow_one: bool = True) -> Fraction:
    """Coerce to a reduced Fraction in (0, 1] (or (0, 1) when ``allow_one`` is False)."""
    r = Fraction(r)
    hi_ok = r <= 1 if allow_one else r < 1
    if not (r > 0 and hi_ok):
        raise ValueError(f"rational {r} outside the sample domain")
    return r


def cf_expand(r) -> tuple[int, ...]:
    """Digits (m_1, ..., m_l) of r = [0; m_1, ..., m_l] with m_l >= 2.

    The point 1/1 has the empty expansion by convention.
    """
    r = as_rational(r)
    num, den = r.numerator, r.denominator
    if num == den:
        return ()
    digits = []
    while num:
        m, rem = divmod(den, num)
        digits.append(m)
        num, den = rem, num
    return tuple(digits)


def from_digits(digits: Sequence[int]) -> Fraction:
    """Evaluate [0; m_1, ..., m_l]; the empty expansion gives 1."""
    if not digits:
        return Fraction(1)
    x = Fraction(0)
    for m in reversed(digits):
        x = 1 / (m + x)
    return x


def convergent_matrices(digits: Sequence[int], max_bits: int | None = None) -> list[Matrix2]:
    """Partial products g_i = [[0,1],[1,m_1]] ... [[0,1],[1,m_i]].

    g_i = ((P_{i-1}, P_i), (Q_{i-1}, Q_i)).  Python integers never wrap; ``max_bits``
    turns on an explicit width check for callers that need a fixed-width contract.
    """
    if not digits:
        raise ValueError("convergent_matrices needs a nonempty expansion")
    p0, p1, q0, q1 = 1, 0, 0, 1  # g_0 = identity
    out = []
    for m in digits:
        if m < 1:
            raise ValueError("digits must be positive")
        p0, p1 = p1, p0 + m * p1
        q0, q1 = q1, q0 + m * q1
        if max_bits is not None and max(p1, q1).bit_length() > max_bits:
            raise IntegerWidthError(f"convergent entry exceeds {max_bits} bits")
        out.append(((p0, p1), (q0, q1)))
    return out


def det2(g: Matrix2) -> int:
    return g[0][0] * g[1][1] - g[0][1] * g[1][0]


def matmul2(g: Matrix2, h: Matrix2) -> Matrix2:
    (a, b), (c, d) = g
    (e, f), (u, v) = h
    return ((a * e + b * u, a * f + b * v), (c * e + d * u, c * f + d * v))


def dual(r) -> Fraction:
    """r* = a^{-1} mod n over n, for r = a/n in (0, 1)."""
    r = as_rational(r, allow_one=False)
    n = r.denominator
    return Fraction(pow(r.numerator, -1, n), n)


def dual_from_digits(digits: Sequence[int]) -> Fraction:
    """Dual computed through the parity law Q_{l-1}/Q_l (l odd) or 1 - Q_{l-1}/Q_l (l even)."""
    (_, _), (q_prev, q_last) = convergent_matrices(digits)[-1]
    x = Fraction(q_prev, q_last)
    return x if len(digits) % 2 else 1 - x


def totients(M: int) -> np.ndarray:
    """phi(0..M) by a linear-time-ish sieve (phi[0] = 0)."""
    phi = np.arange(M + 1, dtype=np.int64)
    for p in range(2, M + 1):
        if phi[p] == p:  # p is prime
            phi[p::p] -= phi[p::p] // p
    return phi


def omega_size(M: int) -> int:
    """|Omega_M| = sum_{2 <= n <= M} phi(n)."""
    if M < 2:
        return 0
    return int(totients(M)[2:].sum())


def enumerate_sigma(n: int) -> Iterator[Fraction]:
    """Sigma_n = {a/n : 1 <= a < n, gcd(a, n) = 1} in increasing order."""
    if n < 2:
        raise ValueError("Sigma_n needs n >= 2")
    for a in range(1, n):
        if gcd(a, n) == 1:
            yield Fraction(a, n)


def enumerate_omega(M: int) -> Iterator[Fraction]:
    """Omega_M: denominator-major, numerator-minor."""
    if M < 2:
        raise ValueError("Omega_M needs M >= 2")
    for n in range(2, M + 1):
        yield from enumerate_sigma(n)


def sigma_arrays(lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    """Numerators and denominators of Sigma_n for lo <= n < hi, in enumeration order."""
    nums, dens = [], []
    for n in range(max(lo, 2), hi):
        a = np.arange(1, n, dtype=np.int64)
        a = a[np.gcd(a, n) == 1]
        nums.append(a)
        dens.append(np.full(a.size, n, dtype=np.int64))
    if not nums:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty.copy()
    return np.concatenate(nums), np.concatenate(dens)


def denominator_chunks(M: int, target: int = 1 << 18) -> list[tuple[int, int]]:
    """Split 2..M into half-open denominator ranges holding about ``target`` samples each.

    Boundaries depend only on M and ``target``, never on the worker count, which is
    what makes chunked reductions reproducible.
    """
    if M < 2:
        return []
    phi = totients(M)
    chunks = []
    lo, acc = 2, 0
    for n in range(2, M + 1):
        acc += int(phi[n])
        if acc >= target:
            chunks.append((lo, n + 1))
            lo, acc = n + 1, 0
    if lo <= M:
        chunks.append((lo, M + 1))
    return chunks
