"""Classical bits carried on the unit-ebit generators (superdense-coding style)."""

from __future__ import annotations

from dataclasses import dataclass

from eaqcc.checkmatrix import CheckMatrix, symplectic_products
from eaqcc.construction import EncoderArtifact
from eaqcc.laurent import ONE, ZERO
from eaqcc.polymatrix import PolyMatrix, frac_inverse

TRADEOFF_NOTE = "piggybacked bits use syndrome capacity: the code then corrects fewer errors"


class EnhancementError(ValueError):
    pass


@dataclass
class PiggybackSet:
    operators: CheckMatrix  # unencoded frame, s rows over n+c qubits
    encoded: CheckMatrix
    bit_count: int
    enhanced_params: tuple[int, int, int, int]
    teleport_params: tuple[int, int, int] | None


def product_pattern(ops: CheckMatrix, stab: CheckMatrix) -> PolyMatrix:
    """Shifted symplectic products of each operator against each stabilizer row."""
    return symplectic_products(ops, stab)


def expected_pattern(s: int, rows: int) -> PolyMatrix:
    return PolyMatrix([[ONE if i == j else ZERO for j in range(rows)] for i in range(s)], s, rows)


def build_piggyback(art: EncoderArtifact) -> PiggybackSet:
    d = art.params
    n, c, s, r, m = d.n, d.c, d.s, d.r, d.m
    if s == 0:
        raise EnhancementError("no extra-entanglement rows to piggyback on (s = 0)")
    frame = art.frame.stabilizer
    N = n + c
    rows = range(c, c + r)
    cols = range(c, c + c + m)  # Alice unit, mid and ancilla columns
    # products against the generator rows only see Alice's X on these columns
    B = PolyMatrix([[frame.x[i, q] for q in cols] for i in rows], r, c + m)
    Binv = frac_inverse(B.H())
    zrows, xrows = [], []
    for i in range(s):
        a = c + i
        rhs = PolyMatrix([[frame.z[row, a].conj() for row in rows]], 1, r)
        sol = (rhs @ Binv).row(0)
        z = [ZERO] * N
        for q, v in zip(cols, sol):
            z[q] = v.simplify() if hasattr(v, "simplify") else v
        x = [ZERO] * N
        x[a] = ONE
        zrows.append(z)
        xrows.append(x)
    ops = CheckMatrix(PolyMatrix(zrows, s, N), PolyMatrix(xrows, s, N))
    want = expected_pattern(s, frame.rows)
    if product_pattern(ops, frame) != want:
        raise AssertionError("piggyback operators fail the [I|0] pattern in the unencoded frame")
    tail = [g.shifted(c) for g in reversed(art.record.gates_stage1)]
    enc = ops.apply_all(tail)
    if product_pattern(enc, art.full_stabilizer) != want:
        raise AssertionError("encoded piggyback operators fail the [I|0] pattern")
    return PiggybackSet(ops, enc, s, enhanced_params(art)[0], enhanced_params(art)[1])


def enhanced_params(art: EncoderArtifact) -> tuple[tuple[int, int, int, int], tuple[int, int, int] | None]:
    d = art.params
    tele = (d.n, d.k + d.s // 2, d.c + d.s // 2) if d.s % 2 == 0 and d.s > 0 else None
    return (d.n, d.k, d.s, d.c), tele


def format_enhanced(art: EncoderArtifact) -> list[str]:
    (n, k, s, c), tele = enhanced_params(art)
    lines = [f"enhanced [[{n},{k}:{s};{c}]]"]
    if tele:
        lines.append(f"teleport [[{tele[0]},{tele[1]};{tele[2]}]]")
    elif s:
        lines.append(f"note: s={s} is odd, so no teleportation reading")
    return lines
