import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cm, random_full_rank, random_poly
from eaqcc.checkmatrix import (
    CNOT,
    FormatError,
    GateError,
    Hadamard,
    InfiniteDepth,
    Swap,
    format_gates,
    is_commuting,
    parse_checkmatrix,
    parse_gate,
    parse_gates,
    shifted_symplectic,
    symplectic_products,
)
from eaqcc.construction import build_unencoded_stabilizer
from eaqcc.laurent import D, ONE, RationalFunc, parse_poly

P = parse_poly


def test_example_rows_anticommute_at_shift_minus_one(example_S):
    assert shifted_symplectic(example_S.row(0), example_S.row(1)) == P("D^-1")
    ok, bad = is_commuting(example_S)
    assert not ok
    assert (0, 1, P("D^-1")) in bad


def test_self_product_has_no_constant_term(example_S):
    for i in range(2):
        v = shifted_symplectic(example_S.row(i), example_S.row(i))
        assert v.coeff(0) == 0
        assert v == v.conj()


def test_zero_row_and_z_only():
    S = cm([["1+D", "D"]], [["0", "0"]])
    assert shifted_symplectic(S.row(0), ([P("0")] * 2, [P("0")] * 2)) == P("0")
    assert is_commuting(S)[0]
    with pytest.raises(ValueError):
        shifted_symplectic(S.row(0), ([P("1")], [P("0")]))


def test_unencoded_example_commutes():
    tp = build_unencoded_stabilizer(4, 2, 2, 2)
    assert is_commuting(tp.stabilizer)[0]
    assert tp.orthogonal()


def test_gate_rules():
    S = cm([["1", "D"]], [["1+D", "D^2"]])
    assert Hadamard(1).apply(S) == cm([["1", "D^2"]], [["1+D", "D"]])
    T = cm([["1", "1", "0"], ["0", "0", "0"]], [["0", "0", "0"], ["1", "1", "0"]])
    L = P("1+D")
    got = T.apply(CNOT(1, 2, L))
    assert got == cm([["1", "1", "0"], ["0", "0", "0"]], [["0", "0", "0"], ["1", "1", "1+D"]])
    g2 = P("1+D")
    got = got.apply(InfiniteDepth(1, g2))
    assert got.z[0, 1] == RationalFunc(ONE, P("1+D^-1"))
    assert got.x[1, 1] == P("1+D")
    assert Swap(0, 1).apply(S) == cm([["D", "1"]], [["D^2", "1+D"]])


def test_gate_validation():
    with pytest.raises(GateError):
        CNOT(1, 1)
    with pytest.raises(GateError):
        CNOT(0, 1, P("0"))
    with pytest.raises(GateError):
        InfiniteDepth(0, D)
    tp = build_unencoded_stabilizer(4, 2, 2, 2)
    with pytest.raises(GateError):
        tp.apply(Hadamard(0))
    assert tp.apply(Hadamard(0), allow_bob=True) is not tp


def test_gate_grammar_roundtrip():
    gates = [Hadamard(3), CNOT(0, 2, P("D^-1+D^2")), Swap(1, 4), InfiniteDepth(5, P("1+D+D^3"))]
    text = format_gates(gates)
    assert text.splitlines()[1] == "CNOT q0 -> q2 tap D^-1+D^2"
    assert parse_gates(text) == gates
    with pytest.raises(FormatError):
        parse_gate("TOFFOLI q0 q1 q2")


def test_checkmatrix_roundtrip(example_S):
    assert parse_checkmatrix(example_S.to_text()) == example_S
    with pytest.raises(FormatError):
        parse_checkmatrix("checkmatrix n=2 rows=1\nZ: 1 ; X: 0,0\n")
    with pytest.raises(FormatError):
        parse_checkmatrix("nonsense\n")


def _rand_gate(rnd, n):
    kind = rnd.choice("HCSI")
    a, b = rnd.sample(range(n), 2)
    if kind == "H":
        return Hadamard(a)
    if kind == "C":
        return CNOT(a, b, random_poly(rnd, 2, 1.0) or ONE)
    if kind == "S":
        return Swap(a, b)
    g = random_poly(rnd, 2, 1.0)
    return InfiniteDepth(a, g if g and not g.is_monomial() else P("1+D"))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_gates_preserve_symplectic_products(seed):
    rnd = random.Random(seed)
    S = random_full_rank(rnd, max_n=5, max_r=3)
    if S.n < 2:
        return
    before = symplectic_products(S, S)
    T = S
    for _ in range(4):
        T = T.apply(_rand_gate(rnd, S.n))
    assert symplectic_products(T, T) == before


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_finite_gates_are_involutions(seed):
    rnd = random.Random(seed)
    S = random_full_rank(rnd, max_n=5, max_r=3)
    if S.n < 2:
        return
    g = _rand_gate(rnd, S.n)
    if g.finite:
        assert S.apply(g).apply(g) == S
