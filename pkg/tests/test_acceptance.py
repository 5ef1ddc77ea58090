"""Acceptance criteria 1-8.  Each test records one pass/fail line with its timing.

Run ``pytest tests/test_acceptance.py`` (lines appear in the terminal summary)
or ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from contextlib import contextmanager
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import EXAMPLE_GF4, REFERENCE_BOB_ORDER, REFERENCE_E1, cm, mat, random_full_rank  # noqa: E402
from eaqcc.checkmatrix import is_commuting, shifted_symplectic  # noqa: E402
from eaqcc.construction import assemble_encoder, check_artifact  # noqa: E402
from eaqcc.enhancement import build_piggyback, expected_pattern, format_enhanced, product_pattern  # noqa: E402
from eaqcc.gf4 import import_gf4, parse_gf4  # noqa: E402
from eaqcc.laurent import parse_poly  # noqa: E402
from eaqcc.oracle import commutation_oracle, compare_syndromes, min_syndrome_window, min_window, pair_parity  # noqa: E402
from eaqcc.polymatrix import Equivalence, row_equivalent  # noqa: E402

RESULTS: dict[int, str] = {}
SHIFTS_7 = 3  # relative frame shifts checked by the oracle in the property suite


@contextmanager
def criterion(num: int, title: str, limit: float, detail=lambda: ""):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        within = dt < limit
        verdict = "PASS" if ok and within else "FAIL"
        extra = detail() if ok else ""
        RESULTS[num] = (f"criterion {num}: {verdict}  {title}  [{dt:.2f}s, limit {limit:g}s]"
                        + (f"  {extra}" if extra else ""))
        print(RESULTS[num])
    assert within, f"criterion {num} took {dt:.2f}s, limit {limit}s"


def _example():
    return import_gf4(parse_gf4(EXAMPLE_GF4))


def _reference_artifact(S):
    return assemble_encoder(S, bob_order=REFERENCE_BOB_ORDER, e1_target=mat(REFERENCE_E1))


def test_criterion_1_import_golden():
    with criterion(1, "GF(4) import golden", 1.0):
        S = _example()
        got = [[str(a) for a in r] for r in S.z], [[str(a) for a in r] for r in S.x]
        want = ([["1+D", "D", "1", "D"], ["0", "1", "0", "0"]], [["0", "1", "0", "0"], ["1+D", "1+D", "1", "D"]])
        assert got == want


def test_criterion_2_parameters():
    with criterion(2, "parameters [[4,2;2]], s=2, finite depth only", 1.0):
        art = assemble_encoder(_example())
        d = art.params
        assert (d.n, d.k, d.c, d.s) == (4, 2, 2, 2)
        assert art.record.blocks.gamma2 == []
        assert art.gates_infinite == []


def test_criterion_3_equivalence():
    f, h, l = "1+D^-2", "D^-1+1+D", "1+D"
    printed = cm(
        [["0", "1", "0", "1", "0", "0"], ["1", "0", "0", "0", "1", "0"], ["0", "D", l, "D", "1", "D"], [f, h, "0", "1", "0", "0"]],
        [["0"] * 6, ["0"] * 6, ["0", "1", "0", "1", "0", "0"], ["1", l, l, l, "1", "D"]],
    )
    tiers = {}
    with criterion(3, "alice UNIMODULAR to input; full stabilizer row-equivalent to printed", 1.0,
                   lambda: f"(default frame vs printed: {tiers['default']})"):
        S = _example()
        art = _reference_artifact(S)
        assert row_equivalent(art.alice_generators.as_matrix(), S.as_matrix()) is Equivalence.UNIMODULAR
        assert row_equivalent(art.full_stabilizer.as_matrix(), printed.as_matrix()) is Equivalence.UNIMODULAR
        tiers["default"] = row_equivalent(assemble_encoder(S).full_stabilizer.as_matrix(), printed.as_matrix()).name


def test_criterion_4_commutation():
    rep = {}
    with criterion(4, "symbolic commutation and W=12 |j|<=5 oracle", 5.0,
                   lambda: f"(checked={rep['r'].checked} mismatches=0)"):
        for art in (assemble_encoder(_example()), _reference_artifact(_example())):
            assert is_commuting(art.full_stabilizer)[0]
            r = commutation_oracle(art.full_stabilizer, 12, 5)
            assert r.ok and not r.anticommuting
            rep["r"] = r


def test_criterion_5_piggyback():
    with criterion(5, "piggyback operators, [I2|0], [[4,2:2;2]] / [[4,3;3]]", 1.0):
        art = _reference_artifact(_example())
        pb = build_piggyback(art)
        want = cm(
            [["0", "0", "D^-1", "1+D+D^-2", "0", "0"], ["0", "0", "0", "1+D^2", "0", "0"]],
            [["0", "0", "1", "0", "0", "0"], ["0", "0", "0", "1", "0", "0"]],
        )
        assert pb.operators == want
        assert product_pattern(pb.operators, art.frame.stabilizer) == expected_pattern(2, 4)
        assert product_pattern(pb.encoded, art.full_stabilizer) == expected_pattern(2, 4)
        assert format_enhanced(art) == ["enhanced [[4,2:2;2]]", "teleport [[4,3;3]]"]


def test_criterion_6_anticommutation_witness():
    with criterion(6, "<r1,r2> = D^-1, oracle-confirmed", 1.0):
        S = _example()
        u, v = S.row(0), S.row(1)
        assert shifted_symplectic(u, v) == parse_poly("D^-1")
        assert [j for j in range(-5, 6) if pair_parity(u, v, j, 12, S.n)] == [-1]
        rep = commutation_oracle(S, 12, 5)
        assert rep.ok and (0, 1, -1) in rep.anticommuting


def test_criterion_7_property_suite():
    stats = {"w10": 0, "wider": 0, "tiers": {}}

    def detail():
        return (f"(200 matrices, shifts |j|<={SHIFTS_7}; oracle at W=10: {stats['w10']}, at minimal admissible window: {stats['wider']}; "
                f"tiers {stats['tiers']})")

    with criterion(7, "200 random full-rank matrices satisfy (a)-(f)", 120.0, detail):
        rnd = random.Random(20240607)
        for i in range(200):
            S = random_full_rank(rnd, max_n=6, max_r=4, max_deg=2)
            art = assemble_encoder(S, subcode_rowops=i % 2 == 0)
            res = check_artifact(art)
            assert all(res.values()), (i, res)
            F = art.full_stabilizer
            need = min_window(F, SHIFTS_7)
            W = 10 if need <= 10 else need
            stats["w10" if W == 10 else "wider"] += 1
            rep = commutation_oracle(F, W, SHIFTS_7)
            assert rep.ok and not rep.anticommuting, i
            stats["tiers"][art.tier.name] = stats["tiers"].get(art.tier.name, 0) + 1


def test_criterion_8_syndromes():
    with criterion(8, "syndrome partitions preserved (example + 20 random)", 30.0):
        S = _example()
        art = assemble_encoder(S)
        assert compare_syndromes(S, art.alice_generators, art.alice_transform, 12).ok
        rnd = random.Random(8)
        for i in range(20):
            S = random_full_rank(rnd, max_n=6, max_r=4, max_deg=2)
            art = assemble_encoder(S, subcode_rowops=i % 2 == 0)
            W = max(12, min_syndrome_window(S), min_syndrome_window(art.alice_generators))
            assert compare_syndromes(S, art.alice_generators, art.alice_transform, W).ok, i


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in dict(globals()).items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
