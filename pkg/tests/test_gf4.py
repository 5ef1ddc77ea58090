import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cm
from eaqcc.gf4 import (
    GF4ParseError,
    format_gf4_file,
    gf4_mul,
    import_gf4,
    parse_gf4,
    parse_gf4_file,
)


def test_example_import_matches_reference(example_S):
    want = cm([["1+D", "D", "1", "D"], ["0", "1", "0", "0"]], [["0", "1", "0", "0"], ["1+D", "1+D", "1", "D"]])
    assert example_S == want


def test_pauli_rendering():
    g = parse_gf4("1W10|1101")
    assert g.scaled(3).pauli_string() == "ZXZI|ZZIZ"
    assert g.scaled(2).pauli_string() == "XYXI|XXIX"


def test_single_symbol():
    S = import_gf4(parse_gf4("w"))
    assert S.rows == 2 and S.n == 1
    # W*w = 1 -> Y, w*w = W -> Z
    assert S.to_text() == "checkmatrix n=1 rows=2\nZ: 1 ; X: 1\nZ: 1 ; X: 0\n"


def test_zero_frames_trimmed():
    assert str(parse_gf4("00|1W|00")) == "1W"


@pytest.mark.parametrize("bad", ["1x", "1W|1", "", "00|00", "1||1"])
def test_bad_input(bad):
    with pytest.raises(GF4ParseError):
        parse_gf4(bad)


def test_file_roundtrip():
    g = parse_gf4("1W10|1101")
    assert parse_gf4_file(format_gf4_file(g)) == g
    with pytest.raises(GF4ParseError):
        parse_gf4_file("gf4 n=3: 1W10")


elements = st.sampled_from([0, 1, 2, 3])


@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    assert gf4_mul(a, b) == gf4_mul(b, a)
    assert gf4_mul(a, b ^ c) == gf4_mul(a, b) ^ gf4_mul(a, c)
    assert gf4_mul(gf4_mul(a, b), c) == gf4_mul(a, gf4_mul(b, c))
