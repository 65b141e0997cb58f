import pytest
from hypothesis import settings

from cfmodsym.cosets import build_coset_table
from cfmodsym.curves import Curve
from cfmodsym.symbols import curve_symbols

settings.register_profile("repo", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("repo")

CURVE_11A1 = Curve(0, -1, 1, -10, -20)


@pytest.fixture(scope="session")
def table2():
    return build_coset_table(2)


@pytest.fixture(scope="session")
def tables():
    return {N: build_coset_table(N) for N in (1, 2, 3, 5, 11)}


@pytest.fixture(scope="session")
def e11():
    return curve_symbols(CURVE_11A1, 11)
