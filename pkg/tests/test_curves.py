import pytest

from cfmodsym.curves import BadPrimeError, Curve, curve_ap, hasse_ok

from conftest import CURVE_11A1


def brute_count(curve, p):
    a1, a2, a3, a4, a6 = curve.ainvs
    pts = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % p == 0:
                pts += 1
    return pts


def test_11a1_invariants():
    assert CURVE_11A1.discriminant == -161051 == -(11 ** 5)
    assert CURVE_11A1.bad_primes() == [11]
    assert [curve_ap(CURVE_11A1, p) for p in (2, 3, 5, 7, 13, 17, 19)] == [-2, -1, 1, -2, 4, -2, 0]


@pytest.mark.parametrize("ainvs", ["0,-1,1,-10,-20", "0,0,1,-1,0", "1,0,1,4,-6"])
def test_point_count_oracle(ainvs):
    E = Curve.parse(ainvs)
    for p in (3, 5, 7, 11, 13, 23, 29, 31):
        if E.discriminant % p:
            assert E.count_points(p) == brute_count(E, p)
            assert hasse_ok(curve_ap(E, p), p)


def test_rejections():
    with pytest.raises(BadPrimeError):
        curve_ap(CURVE_11A1, 11)
    with pytest.raises(ValueError):
        curve_ap(CURVE_11A1, 9)
    with pytest.raises(ValueError):
        Curve.parse("1,2,3")
