"""Elliptic curves over Q in Weierstrass form: discriminant and traces of Frobenius."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np
from sympy import factorint, isprime


@dataclass(frozen=True)
class Curve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    @classmethod
    def parse(cls, text: str) -> "Curve":
        parts = [int(t) for t in text.replace("[", "").replace("]", "").split(",")]
        if len(parts) != 5:
            raise ValueError("expected five a-invariants a1,a2,a3,a4,a6")
        return cls(*parts)

    @property
    def ainvs(self) -> list[int]:
        return [self.a1, self.a2, self.a3, self.a4, self.a6]

    @property
    def discriminant(self) -> int:
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = a1 * a3 + 2 * a4
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def bad_primes(self) -> list[int]:
        return sorted(factorint(abs(self.discriminant)))

    def count_points(self, p: int) -> int:
        """#E(F_p) including the point at infinity, by direct counting."""
        a1, a2, a3, a4, a6 = (a % p for a in self.ainvs)
        x = np.arange(p, dtype=np.int64)
        if p == 2:
            total = 1
            for xv in range(2):
                for yv in range(2):
                    if (yv * yv + a1 * xv * yv + a3 * yv - (xv ** 3 + a2 * xv * xv + a4 * xv + a6)) % 2 == 0:
                        total += 1
            return total
        # y^2 + b y - f = 0 has 1 + legendre(b^2 + 4 f) solutions
        f = (((x * x) % p * x) % p + a2 * (x * x % p) + a4 * x + a6) % p
        b = (a1 * x + a3) % p
        disc = (b * b + 4 * f) % p
        leg = np.array([pow(int(d), (p - 1) // 2, p) for d in disc], dtype=np.int64)
        leg = np.where(leg == p - 1, -1, leg)
        return int(1 + p + leg.sum())


class BadPrimeError(ValueError):
    pass


def curve_ap(curve: Curve, p: int) -> int:
    """a_p = p + 1 - #E(F_p) for a prime of good reduction, checked against the Hasse bound."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if p > 10 ** 6:
        raise ValueError("point counting is limited to p <= 10^6")
    if curve.discriminant % p == 0:
        raise BadPrimeError(f"{p} divides the discriminant")
    ap = p + 1 - curve.count_points(p)
    if ap * ap > 4 * p:
        raise ArithmeticError(f"Hasse bound violated at p={p}: a_p={ap}")
    return ap


def hasse_ok(ap: int, p: int) -> bool:
    return abs(ap) <= 2 * isqrt(p) + 2 and ap * ap <= 4 * p
