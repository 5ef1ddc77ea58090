import sys
import random

import pytest
from hypothesis import strategies as st

from eaqcc.checkmatrix import CheckMatrix
from eaqcc.gf4 import import_gf4, parse_gf4
from eaqcc.laurent import LaurentPoly, parse_poly
from eaqcc.polymatrix import PolyMatrix
from eaqcc.sampling import random_full_rank, random_poly  # noqa: F401

EXAMPLE_GF4 = "1W10|1101"
# unit-ebit block of E1' in the reference frame, read off the row operations
# D, g = 1+D^-1+D^2, f = 1+D^-2 applied to the unencoded ebit stabilizer
REFERENCE_E1 = [["D", "0"], ["1+D^-1+D^2", "1+D^-2"]]
REFERENCE_BOB_ORDER = [1, 0]


def mat(rows):
    return PolyMatrix([[parse_poly(e) for e in r] for r in rows])


def cm(zrows, xrows):
    return CheckMatrix(mat(zrows), mat(xrows))


@pytest.fixture
def example_S():
    return import_gf4(parse_gf4(EXAMPLE_GF4))


def polys(max_deg=3, min_exp=0):
    return st.integers(0, (1 << (max_deg - min_exp + 1)) - 1).map(
        lambda b: LaurentPoly.from_support(min_exp + i for i in range(max_deg - min_exp + 1) if b >> i & 1)
    )


def nonzero_polys(max_deg=3, min_exp=0):
    return polys(max_deg, min_exp).filter(bool)


@st.composite
def full_rank_checkmatrices(draw, max_n=6, max_r=4, max_deg=2):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_full_rank(random.Random(seed), max_n, max_r, max_deg)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[k])
