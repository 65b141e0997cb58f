import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from cfmodsym.characters import characters, residue_field, split_order, unit_group
from cfmodsym.symbols import eval_symbol
from cfmodsym.twists import (ParityMismatch, nonvanishing_constant, nonvanishing_survey, symbol_values,
                             twisted_lvalue_modp)


@pytest.mark.parametrize("n", [2, 3, 8, 12, 16, 45, 63, 100])
def test_unit_group(n):
    G = unit_group(n)
    assert G.order == sympy.totient(n) == math.prod(G.orders)
    chars = list(characters(n))
    assert len(chars) == G.order
    assert len({tuple(c.exponent_map()) for c in chars}) == G.order
    E = G.exponent
    idx = {int(a): i for i, a in enumerate(G.units)}
    for c in chars[:6]:
        e = c.exponent_map()
        for a in G.units[:8]:
            for b in G.units[:8]:
                assert (e[idx[int(a)]] + e[idx[int(b)]] - e[idx[int(a * b % n)]]) % E == 0


def test_parity_counts():
    for n in (5, 7, 15, 16):
        chars = list(characters(n))
        assert sum(c.parity == 1 for c in chars) == len(chars) // 2


def test_residue_field():
    F = residue_field(3, 4)
    assert F.degree == 2  # ord_4(3) = 2
    x = np.zeros(2, dtype=np.int64)
    x[1] = 1
    y = np.array([1, 0])
    for _ in range(4):
        y = F.mul(y, x)
    assert y.tolist() == [1, 0]
    assert split_order(12, 3) == (4, pow(3, -1, 4))


def test_quadratic_mod3_exact(e11):
    chi = next(c for c in characters(3) if not c.is_trivial())
    assert chi.parity == -1
    es = e11.minus
    m1 = eval_symbol(es, e11.table, Fraction(1, 3))
    m2 = eval_symbol(es, e11.table, Fraction(2, 3))
    val = twisted_lvalue_modp(es, e11.table, chi, 3)
    # chi = (./3) is real, so the twisted sum is m(1/3) - m(2/3) in F_p
    assert val.tolist() == [(m1 - m2) % 3]
    val5 = twisted_lvalue_modp(es, e11.table, chi, 5)
    assert val5.tolist() == [(m1 - m2) % 5]


def test_trivial_character_sum(e11):
    for n in (7, 20, 33):
        chi = next(characters(n))
        vals = symbol_values(e11.plus, e11.table, n)
        got = twisted_lvalue_modp(e11.plus, e11.table, chi, 3)
        assert got[0] == int(vals.sum()) % 3 and not got[1:].any()


def test_frobenius_conjugation(e11):
    for n in (7, 13, 35, 41):
        E = unit_group(n).exponent
        F = residue_field(3, split_order(E, 3)[0])
        for chi in list(characters(n))[1:6]:
            es = e11.by_sign(chi.parity)
            a = twisted_lvalue_modp(es, e11.table, chi, 3)
            b = twisted_lvalue_modp(es, e11.table, chi.power(3), 3)
            assert np.array_equal(F.frobenius(a), b)


def test_parity_mismatch(e11):
    chi = next(c for c in characters(5) if c.parity == -1)
    with pytest.raises(ParityMismatch):
        twisted_lvalue_modp(e11.plus, e11.table, chi, 3)


def test_constant_and_small_survey(e11):
    assert nonvanishing_constant(3) == pytest.approx(0.2288, abs=5e-4)
    res = nonvanishing_survey(e11, 30, 3)
    assert len(res.rows) == sum(sympy.totient(n) for n in range(2, 31))
    assert not res.skipped
    assert res.to_csv().startswith("n,chi_index,order,parity,value_nonzero,valuation_class")
