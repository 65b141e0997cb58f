import sympy
from hypothesis import given, strategies as st

from cfmodsym.exact import bareiss_echelon, kernel, matvec, primitive, rank

matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 7).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_rank_matches_sympy(A):
    assert rank(A) == sympy.Matrix(A).rank()


@given(matrices)
def test_kernel_is_exact_basis(A):
    K = kernel(A)
    assert len(K) == len(A[0]) - sympy.Matrix(A).rank()
    for v in K:
        assert matvec(A, v) == [0] * len(A)
        assert v == primitive(v)
    if K:
        assert sympy.Matrix(K).rank() == len(K)


def test_bareiss_entries_are_minors():
    A = [[2, 3, 1], [4, 1, 5], [6, 7, 8]]
    E, piv = bareiss_echelon(A)
    assert piv == [0, 1, 2]
    assert E[2][2] == sympy.Matrix(A).det()


def test_primitive():
    assert primitive([0, -4, 6]) == [0, 2, -3]
    assert primitive([0, 0]) == [0, 0]
