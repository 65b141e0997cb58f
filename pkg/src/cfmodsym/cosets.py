"""Right cosets of Gamma_0(N) in GL_2(Z) keyed by (P^1(Z/N) class of the bottom row, det)."""
from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .cf import Matrix2, det2, matmul2

DEFAULT_LEVEL_BOUND = 10_000
DENSE_P1_BOUND = 2048  # above this P^1 lookups fall back to orbit normalization


class LevelBoundError(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    """Raised when a connecting-word search runs out of budget (not a logic failure)."""


def _units(N: int) -> list[int]:
    return [u for u in range(1, N + 1) if gcd(u, N) == 1] if N > 1 else [1]


def index_sl2(N: int) -> int:
    """[SL_2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p)."""
    out, n, p = N, N, 2
    while p * p <= n:
        if n % p == 0:
            out = out // p * (p + 1)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out = out // n * (n + 1)
    return out


class P1:
    """P^1(Z/N): pairs (c, d) with gcd(c, d, N) = 1 modulo scaling by units."""

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("level must be positive")
        self.N = N
        self.units = _units(N)
        self.elements: list[tuple[int, int]] = []
        self._dense = N <= DENSE_P1_BOUND
        if self._dense:
            table = np.full((N, N), -1, dtype=np.int32)
            for c in range(N):
                for d in range(N):
                    if table[c, d] >= 0 or gcd(gcd(c, d), N) != 1:
                        continue
                    idx = len(self.elements)
                    orbit = {((u * c) % N, (u * d) % N) for u in self.units}
                    for cc, dd in orbit:
                        table[cc, dd] = idx
                    self.elements.append(min(orbit))
            self._table = table
        else:
            self._index = {}
            for c in range(N):
                for d in range(N):
                    if gcd(gcd(c, d), N) == 1:
                        key = self.normalize(c, d)
                        if key not in self._index:
                            self._index[key] = len(self.elements)
                            self.elements.append(key)
        if N == 1:
            self.elements = [(0, 1)]  # the single class, written as the identity's bottom row

    def normalize(self, c: int, d: int) -> tuple[int, int]:
        N = self.N
        return min(((u * c) % N, (u * d) % N) for u in self.units)

    def index(self, c: int, d: int) -> int:
        N = self.N
        c, d = c % N, d % N
        if self._dense:
            i = int(self._table[c, d])
            if i < 0:
                raise ValueError(f"({c}:{d}) is not in P^1(Z/{N})")
            return i
        if gcd(gcd(c, d), N) != 1:
            raise ValueError(f"({c}:{d}) is not in P^1(Z/{N})")
        return self._index[self.normalize(c, d)]

    def index_array(self, c: np.ndarray, d: np.ndarray) -> np.ndarray:
        if not self._dense:
            return np.array([self.index(int(x), int(y)) for x, y in zip(c, d)], dtype=np.int64)
        return self._table[np.mod(c, self.N), np.mod(d, self.N)].astype(np.int64)

    def __len__(self) -> int:
        return len(self.elements)


def lift_to_sl2(c: int, d: int, N: int) -> Matrix2:
    """An SL_2(Z) matrix whose bottom row is congruent to (c, d) mod N."""
    c, d = c % N, d % N
    if N == 1:
        return ((1, 0), (0, 1))
    if c == 0:
        if d == 1:
            return ((1, 0), (0, 1))
        c = N  # gcd(N, d) = 1 already
    t = 0
    while gcd(c, d + t * N) != 1:
        t += 1
    d += t * N
    # x c + y d = 1  ->  [[y, -x], [c, d]] has determinant 1
    g, x, y = _egcd(c, d)
    assert g == 1
    return ((y, -x), (c, d))


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass
class CosetTable:
    """Coset ids: P^1 index j for det +1 cosets, j + |P^1| for det -1 cosets.

    Gamma_0(N) here is the determinant-one congruence subgroup, so there are
    k = 2 [SL_2(Z) : Gamma_0(N)] cosets and the det +1 block precedes the det -1 block.
    """

    level: int
    p1: P1
    reps: list[Matrix2]
    digit_action: np.ndarray  # (k, N) -> coset of rep(u) [[0,1],[1,m]] with m = t mod N
    inverse_digit_action: np.ndarray  # (k, N) -> coset of rep(u) [[-m,1],[1,0]]
    fingerprint: str = field(default="")

    @property
    def k(self) -> int:
        return 2 * len(self.p1)

    @property
    def index_count(self) -> int:
        return self.k

    @property
    def half(self) -> int:
        return len(self.p1)

    @property
    def identity(self) -> int:
        return self.p1.index(0, 1)

    def det_sign(self, u: int) -> int:
        return 1 if u < self.half else -1

    def bottom_class(self, u: int) -> tuple[int, int]:
        return self.p1.elements[u % self.half]

    def coset_of(self, g: Matrix2) -> int:
        det = det2(g)
        if abs(det) != 1:
            raise ValueError(f"matrix {g} is not unimodular")
        j = self.p1.index(g[1][0], g[1][1])
        return j if det == 1 else j + self.half

    def act_digit(self, u: int, m: int) -> int:
        if m < 1:
            raise ValueError("digits are positive")
        return int(self.digit_action[u, m % self.level])

    def rep(self, u: int) -> Matrix2:
        return self.reps[u]

    def describe(self) -> dict:
        return {"level": self.level, "k": self.k, "fingerprint": self.fingerprint}


def build_coset_table(N: int, bound: int = DEFAULT_LEVEL_BOUND) -> CosetTable:
    if N < 1:
        raise ValueError("level must be positive")
    if N > bound:
        raise LevelBoundError(f"level {N} exceeds the configured bound {bound}")
    p1 = P1(N)
    h = len(p1)
    reps: list[Matrix2] = [lift_to_sl2(c, d, N) for c, d in p1.elements]
    flip = ((1, 0), (0, -1))
    for c, d in p1.elements:
        # rep for ((c:d), det -1): lift (c:-d) then flip the second column
        reps.append(matmul2(lift_to_sl2(c, -d, N), flip))
    k = 2 * h
    act = np.empty((k, N), dtype=np.int32)
    inv = np.empty((k, N), dtype=np.int32)
    for u in range(k):
        c, d = p1.elements[u % h]
        other = h if u < h else 0  # every digit matrix has det -1
        for t in range(N):
            act[u, t] = p1.index(d, c + t * d) + other
            inv[u, t] = p1.index(d - t * c, c) + other
    payload = json.dumps({"level": N, "reps": reps}, separators=(",", ":"))
    fp = hashlib.sha256(payload.encode()).hexdigest()[:16]
    table = CosetTable(N, p1, reps, act, inv, fp)
    for u, g in enumerate(reps):  # self-check of the representative list
        assert table.coset_of(g) == u
    return table


def digit_matrix(m: int) -> Matrix2:
    return ((0, 1), (1, m))


def inverse_digit_matrix(m: int) -> Matrix2:
    return ((-m, 1), (1, 0))


def _certify(table: CosetTable, u: int, v: int, word: list[int]) -> bool:
    g = table.rep(u)
    for m in word:
        g = matmul2(g, inverse_digit_matrix(m))
    return table.coset_of(g) == v


def connecting_word(
    table: CosetTable, u: int, v: int, *, allow_empty: bool = True, budget: int = 10**6
) -> list[int]:
    """Shortest digits m_1..m_l with rep(u) prod [[-m_j,1],[1,0]] in Gamma_0(N) rep(v).

    Breadth-first search over the coset graph with digits 1..N (the action only sees
    m mod N); the result is certified by exact matrix multiplication.
    """
    N = table.level
    if u == v and allow_empty:
        return []
    parent: dict[int, tuple[int, int]] = {}
    queue = deque([u])
    seen = {u} if allow_empty else set()
    expanded = 0
    found = None
    while queue:
        x = queue.popleft()
        expanded += 1
        if expanded > budget:
            raise SearchBudgetExceeded(f"no word from {u} to {v} within {budget} expansions")
        for m in range(1, N + 1):
            y = int(table.inverse_digit_action[x, m % N])
            if y in seen:
                continue
            seen.add(y)
            parent[y] = (x, m)
            if y == v:
                found = y
                break
            queue.append(y)
        if found is not None:
            break
    if found is None:
        raise RuntimeError(f"coset {v} unreachable from {u}: digit graph not connected")
    word = []
    y = v
    while True:
        x, m = parent[y]
        word.append(m)
        if x == u and (len(word) > 0):
            break
        y = x
    word.reverse()
    if not _certify(table, u, v, word):
        raise RuntimeError("connecting word failed its certificate")
    return word


def strongly_connected(table: CosetTable) -> bool:
    """True when every coset reaches every other under the digits 1..N."""
    k, N = table.k, table.level
    for start in range(k):
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for t in range(N):
                y = int(table.digit_action[x, t])
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != k:
            return False
    return True
