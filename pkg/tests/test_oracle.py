import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cm, random_full_rank
from eaqcc.checkmatrix import shifted_symplectic
from eaqcc.construction import assemble_encoder, build_unencoded_stabilizer
from eaqcc.laurent import LaurentPoly
from eaqcc.oracle import (
    WindowTooSmall,
    commutation_oracle,
    compare_syndromes,
    min_syndrome_window,
    min_window,
    pair_parity,
    syndrome_table,
    unroll,
)


def test_unroll_examples(example_S):
    u = unroll(cm([["1+D"]], [["0"]]), 3)
    assert u.zbits[0] == 0b011 and u.xbits[0] == 0
    u = unroll(example_S, 3)
    assert u.pauli_string(0) == "ZXZI ZZIZ IIII"
    assert u.pauli_string(1) == "XYXI XXIX IIII"
    u = unroll(cm([["0"]], [["0"]]), 3)
    assert u.zbits == [0] and u.xbits == [0]


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        unroll(cm([["1+D^9"]], [["0"]]), 4)


def test_example_parity_only_at_minus_one(example_S):
    u, v = example_S.row(0), example_S.row(1)
    assert [pair_parity(u, v, j, 8, 4) for j in range(-2, 3)] == [0, 1, 0, 0, 0]
    rep = commutation_oracle(example_S, 12, 5)
    assert rep.ok
    assert (0, 1, -1) in rep.anticommuting


def test_unencoded_all_zero():
    rep = commutation_oracle(build_unencoded_stabilizer(4, 2, 2, 2).stabilizer, 6, 2)
    assert rep.ok and not rep.anticommuting


def _rand_row(rnd, n):
    return (
        [LaurentPoly.from_support(e for e in range(-1, 3) if rnd.random() < 0.3) for _ in range(n)],
        [LaurentPoly.from_support(e for e in range(-1, 3) if rnd.random() < 0.3) for _ in range(n)],
    )


def test_oracle_agrees_on_500_random_pairs():
    rnd = random.Random(2024)
    mismatches = 0
    for _ in range(500):
        n = rnd.randint(1, 4)
        u, v = _rand_row(rnd, n), _rand_row(rnd, n)
        sym = shifted_symplectic(u, v)
        for j in range(-6, 7):
            if pair_parity(u, v, j, 10, n) != sym.coeff(j):
                mismatches += 1
    assert mismatches == 0


def test_rational_rows_stable_under_doubling():
    S = cm([["0", "1"]], [["1+D", "0"]])
    art = assemble_encoder(S)
    F = art.full_stabilizer
    assert not F.is_polynomial()
    W = max(10, min_window(F, 3))
    a = commutation_oracle(F, W, 3)
    b = commutation_oracle(F, 2 * W, 3)
    assert a.ok and b.ok
    assert a.anticommuting == b.anticommuting == []


def test_syndrome_table_basics(example_S):
    W = 12
    t = syndrome_table(example_S, W)
    assert all(len(v) == 2 * (W + 2 * (W // 4)) for v in t.entries.values())
    # the identity error never appears; every single error has some syndrome here
    assert "0" * 2 * (W + 6) not in t.entries.values()
    line = t.lines()[0]
    assert line.startswith("err q0 f3 X -> ")


def test_stabilizer_row_has_zero_syndrome():
    art = assemble_encoder(cm([["1", "0"]], [["0", "1"]]))
    F = art.full_stabilizer
    # a stabilizer row, viewed as an error, commutes with every translate
    rep = commutation_oracle(F, max(8, min_window(F, 2)), 2, others=F)
    assert rep.ok and not rep.anticommuting


def test_syndrome_equivalence_example(example_S):
    art = assemble_encoder(example_S)
    cmp = compare_syndromes(example_S, art.alice_generators, art.alice_transform, 12)
    assert cmp.ok


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9), st.booleans())
def test_oracle_matches_symbolic_on_pipeline(seed, subcode):
    art = assemble_encoder(random_full_rank(random.Random(seed)), subcode_rowops=subcode)
    F = art.full_stabilizer
    rep = commutation_oracle(F, max(10, min_window(F, 2)), 2)
    assert rep.ok and not rep.anticommuting
    S = art.record.source
    W = max(12, min_syndrome_window(S), min_syndrome_window(art.alice_generators))
    assert compare_syndromes(S, art.alice_generators, art.alice_transform, W).ok


def test_min_window_is_tight():
    rnd = random.Random(3)
    for _ in range(60):
        F = assemble_encoder(random_full_rank(rnd)).full_stabilizer
        for sh in (0, 3):
            w = min_window(F, sh)
            commutation_oracle(F, w, sh)
            if w > 1:
                with pytest.raises(WindowTooSmall):
                    commutation_oracle(F, w - 1, sh)


def test_reference_frame_fits_default_window(example_S):
    from conftest import REFERENCE_BOB_ORDER, REFERENCE_E1, mat

    art = assemble_encoder(example_S, bob_order=REFERENCE_BOB_ORDER, e1_target=mat(REFERENCE_E1))
    assert min_window(art.full_stabilizer, 5) <= 12
