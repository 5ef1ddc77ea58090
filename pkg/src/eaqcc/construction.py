"""Entanglement-assisted encoder synthesis for an arbitrary full-rank check matrix.

Qubit layout of the (n+c)-qubit frame: Bob's c ebit halves come first
(s halves paired with unit invariant factors, then c-s), followed by Alice's n
qubits.  Alice's qubits in the unencoded frame are, in order, s ebit halves,
c-s ebit halves, n-k-c ancillas and k information qubits.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from eaqcc.checkmatrix import (
    CNOT,
    CheckMatrix,
    Gate,
    Hadamard,
    InfiniteDepth,
    Swap,
    TrackedPair,
    is_commuting,
)
from eaqcc.laurent import ONE, ZERO, LaurentPoly, RationalFunc
from eaqcc.polymatrix import (
    ElemOp,
    Equivalence,
    PolyMatrix,
    RankDeficientError,
    rank,
    replay,
    row_equivalent,
    smith_decompose,
    smith_lower_triangular_colonly,
)


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class Dims:
    n: int
    k: int
    c: int
    s: int

    @property
    def r(self) -> int:
        return self.n - self.k

    @property
    def m(self) -> int:
        """Ancillas per frame."""
        return self.n - self.k - self.c

    def check(self) -> None:
        if not (0 <= self.s <= self.c <= self.r <= self.n) or self.k < 0:
            raise ConstructionError(f"inconsistent dimensions {self}")


@dataclass
class Blocks:
    E1prime: PolyMatrix  # r x c
    gamma1: list[LaurentPoly]
    gamma2: list[LaurentPoly]
    E22a: PolyMatrix  # (c-s) x m
    L: PolyMatrix  # (c-s) x k, lower triangular in its leading square when reduced
    gamma: list[LaurentPoly]
    L_reduced: bool = True


@dataclass
class DecompositionRecord:
    source: CheckMatrix
    dims: Dims
    gates_stage1: list[Gate]
    row_transform: PolyMatrix  # big = (row_transform @ source) under gates_stage1
    big: CheckMatrix
    blocks: Blocks

    def replay(self) -> CheckMatrix:
        return self.source.left_multiply(self.row_transform).apply_all(self.gates_stage1)


def _col_op_gate(op: ElemOp, off: int) -> Gate:
    if op.kind == "swap":
        return Swap(op.i + off, op.j + off)
    if op.kind == "add":
        return CNOT(op.i + off, op.j + off, op.factor)
    raise ConstructionError(f"column scaling cannot be realized as a gate: {op}")


def _big_form(d: Dims, b: Blocks) -> PolyMatrix:
    """Expected X half of the big check matrix."""
    n, c, s, r = d.n, d.c, d.s, d.r
    rows = []
    for i in range(r):
        row = [ZERO] * n
        if i < s:
            row[i] = b.gamma1[i]
        elif i < c:
            row[i] = b.gamma2[i - s]
            for j in range(d.m):
                row[c + j] = b.E22a[i - s, j]
            for j in range(d.k):
                row[r + j] = b.L[i - s, j]
        else:
            row[i] = b.gamma[i - c]
        rows.append(row)
    return PolyMatrix(rows, r, n)


def _drop_col(M: PolyMatrix, j: int) -> PolyMatrix:
    return PolyMatrix([row[:j] + row[j + 1:] for row in M], M.rows, M.cols - 1)


def decompose(S: CheckMatrix, ebit_phase: PolyMatrix | None = None) -> DecompositionRecord:
    """Bring ``S`` to the big check-matrix form by row operations and gates.

    ``ebit_phase`` optionally adds a Hermitian matrix to the unit-ebit block of
    E1' using controlled-phase gadgets; this changes Bob's frame only.

    Raises ConstructionError for non-polynomial or rank-deficient input.
    """
    if not S.is_polynomial():
        raise ConstructionError("check matrix entries must be polynomial")
    r, n = S.rows, S.n
    if r == 0:
        raise ConstructionError("check matrix has no rows")
    if r > n:
        raise ConstructionError(f"{r} rows exceed {n} qubits")
    if rank(S.as_matrix()) < r:
        raise ConstructionError("S(D) is not of full rank")

    work = S
    R = PolyMatrix.identity(r)
    gates: list[Gate] = []

    def rowops(ops):
        nonlocal work, R
        ops = list(ops)
        if ops:
            work = CheckMatrix(replay(work.z, ops), replay(work.x, ops))
            R = replay(R, ops)

    def gate(g):
        nonlocal work
        work = g.apply(work)
        gates.append(g)

    # Smith form of X
    sd = smith_decompose(work.x)
    rowops(sd.row_ops)
    for op in sd.col_ops:
        gate(_col_op_gate(op, 0))
    c, s = sd.rank, sd.s
    gamma1, gamma2 = sd.gamma1, sd.gamma2
    k = n - r

    # The lower rows have X = 0 but their Z weight may sit partly in the first
    # c columns, leaving the block that becomes E23 rank deficient.  A CNOT
    # from a column b >= c (X still zero there) onto a < c folds Z column a
    # into b without touching X.
    while r > c and rank(work.z[c:r, c:n]) < r - c:
        low = work.z[c:r, c:n]
        rk = rank(low)
        a = next(a for a in range(c) if rank(low.hstack(work.z[c:r, a:a + 1])) > rk)
        b = next(b for b in range(n - c) if rank(_drop_col(low, b)) == rk)
        gate(CNOT(c + b, a, ONE))

    for q in range(c, n):
        gate(Hadamard(q))

    # clear the Z-side coupling between the unit rows and the Hadamard'd block
    for i in range(s):
        for j in range(c, n):
            t = work.x[i, j]
            if t:
                gate(CNOT(i, j, t))

    # Smith form of the lower-right block
    gamma: list[LaurentPoly] = []
    if r > c:
        sd2 = smith_decompose(work.x[c:r, c:n])
        if sd2.rank < r - c:
            raise ConstructionError("S(D) is not of full rank")
        rowops(op.offset(c) for op in sd2.row_ops)
        for op in sd2.col_ops:
            gate(_col_op_gate(op, c))
        gamma = list(sd2.diag)

    # column-only reduction on the information block of the middle rows
    reduced = True
    if c > s and k > 0:
        try:
            _, ops = smith_lower_triangular_colonly(work.x[s:c, r:n])
        except RankDeficientError:
            reduced = False
        else:
            for op in ops:
                gate(_col_op_gate(op, r))
    elif c > s:
        reduced = False

    d = Dims(n, k, c, s)
    if ebit_phase is not None:
        for g in _phase_gates(work, d, ebit_phase):
            gate(g)
    blocks = Blocks(
        E1prime=work.z[0:r, 0:c],
        gamma1=gamma1,
        gamma2=gamma2,
        E22a=work.x[s:c, c:r],
        L=work.x[s:c, r:n],
        gamma=gamma,
        L_reduced=reduced,
    )
    if work.x != _big_form(d, blocks) or not work.z[0:r, c:n].is_zero():
        raise AssertionError("decomposition did not reach the expected block form")
    return DecompositionRecord(S, d, gates, R, work, blocks)


def _free_qubit(cm: CheckMatrix, d: Dims) -> int | None:
    for q in range(d.r, d.n):
        if not any(cm.z.col(q)) and not any(cm.x.col(q)):
            return q
    return None


def _phase_gates(cm: CheckMatrix, d: Dims, delta: PolyMatrix) -> list[Gate]:
    """Gates adding ``delta`` to E1'[:s, :s] in the big form.

    Off-diagonal entries use a delayed controlled-phase (H, CNOT, H).  A
    diagonal entry must be w + w(D^-1) with w having positive exponents only;
    it is applied through a qubit whose columns are all zero.
    """
    s = d.s
    if delta.shape != (s, s):
        raise ConstructionError(f"ebit phase must be {s}x{s}")
    gates: list[Gate] = []
    for a in range(s):
        for b in range(a + 1, s):
            t = delta[a, b]
            if t != delta[b, a].conj():
                raise ConstructionError(f"ebit phase is not Hermitian at ({a},{b})")
            if t:
                gates += [Hadamard(b), CNOT(a, b, t), Hadamard(b)]
    free = None
    for a in range(s):
        e = delta[a, a]
        if not e:
            continue
        w = LaurentPoly.from_support(x for x in e.support if x > 0)
        if w + w.conj() != e:
            raise ConstructionError(f"diagonal ebit phase {e} is not of the form w + w(D^-1)")
        if free is None:
            free = _free_qubit(cm, d)
            if free is None:
                raise ConstructionError("diagonal ebit phase needs an idle information qubit")
        q = free
        gates += [
            CNOT(a, q, w), Hadamard(q), CNOT(a, q, ONE), Hadamard(q),
            CNOT(a, q, w), Hadamard(q), CNOT(a, q, ONE), Hadamard(q),
        ]
    return gates


# unencoded stream ---------------------------------------------------------


def build_unencoded_stabilizer(
    n: int, k: int, c: int, s: int, bob_order: list[int] | None = None
) -> TrackedPair:
    """Stabilizer and logical operators of the unencoded stream.

    Rows: s + (c-s) Z-type ebit rows, s + (c-s) X-type ebit rows, then n-k-c
    ancilla rows.  The information matrix holds k Z-logicals followed by k
    X-logicals.  Alice's i-th ebit half pairs with Bob qubit ``bob_order[i]``
    (identity by default).
    """
    d = Dims(n, k, c, s)
    d.check()
    bob = _bob_order(bob_order, c)
    N = n + c
    zrows, xrows = [], []

    def unit(*qs):
        row = [ZERO] * N
        for q in qs:
            row[q] = ONE
        return row

    blank = [ZERO] * N
    for i in range(c):
        zrows.append(unit(bob[i], c + i))
        xrows.append(list(blank))
    for i in range(c):
        zrows.append(list(blank))
        xrows.append(unit(bob[i], c + i))
    for i in range(d.m):
        zrows.append(list(blank))
        xrows.append(unit(2 * c + i))
    stab = CheckMatrix(PolyMatrix(zrows, len(zrows), N), PolyMatrix(xrows, len(xrows), N))
    info_z = [unit(c + d.r + j) for j in range(k)] + [list(blank) for _ in range(k)]
    info_x = [list(blank) for _ in range(k)] + [unit(c + d.r + j) for j in range(k)]
    info = CheckMatrix(PolyMatrix(info_z, 2 * k, N), PolyMatrix(info_x, 2 * k, N))
    return TrackedPair(stab, info, c)


def _bob_order(order, c: int) -> list[int]:
    if order is None:
        return list(range(c))
    order = list(order)
    if sorted(order) != list(range(c)):
        raise ConstructionError(f"bob_order must be a permutation of 0..{c - 1}")
    return order


def _subencoder_gates(mid: list[int], info: list[int], gamma2, L: PolyMatrix) -> list[Gate]:
    gates: list[Gate] = []
    for i, q in enumerate(mid):
        for j, t in enumerate(info):
            if L[i, j]:
                gates.append(CNOT(q, t, L[i, j]))
    for i, q in enumerate(mid):
        gates.append(InfiniteDepth(q, gamma2[i]))
    return gates


def ebit_subencode(Gamma2: PolyMatrix, L: PolyMatrix) -> tuple[list[Gate], TrackedPair]:
    """Encode c-s information qubits into c-s ebits with infinite-depth gates.

    Qubits: c-s Bob halves, c-s Alice halves, c-s information qubits.
    """
    t = Gamma2.rows
    if Gamma2.shape != (t, t) or L.shape != (t, t):
        raise ConstructionError("Gamma2 and L must be square of equal size")
    gamma2 = [Gamma2[i, i] for i in range(t)]
    for i, g in enumerate(gamma2):
        if not g or g.is_monomial():
            raise ConstructionError(f"Gamma2 entry {i} is a unit ({g}); it belongs in Gamma1")
        for j in range(t):
            if i != j and Gamma2[i, j]:
                raise ConstructionError("Gamma2 must be diagonal")
    tp = build_unencoded_stabilizer(2 * t, t, t, 0)
    gates = _subencoder_gates(list(range(t, 2 * t)), list(range(2 * t, 3 * t)), gamma2, L)
    return gates, tp.apply_all(gates)


# full pipeline ------------------------------------------------------------


@dataclass
class EncoderArtifact:
    params: Dims
    record: DecompositionRecord
    encoder_gates: list[Gate]
    full_stabilizer: CheckMatrix
    info_matrix: CheckMatrix
    alice_generators: CheckMatrix
    decode_gates: list[Gate]
    unencoded: TrackedPair
    frame: TrackedPair  # after the sub-encoder and the row operations, before stage-1 gates
    row_ops: PolyMatrix
    subcode_rowops: bool
    tier: Equivalence
    bob_order: list[int]
    alice_transform: PolyMatrix  # alice_generators = alice_transform @ source
    notes: list[str] = field(default_factory=list)

    @property
    def gates_finite(self) -> list[Gate]:
        return [g for g in self.encoder_gates if g.finite]

    @property
    def gates_infinite(self) -> list[Gate]:
        return [g for g in self.encoder_gates if not g.finite]

    @property
    def bob_qubits(self) -> int:
        return self.params.c

    def encoded(self) -> TrackedPair:
        return TrackedPair(self.full_stabilizer, self.info_matrix, self.params.c)


def _frame_row_ops(d: Dims, b: Blocks, subcode: bool) -> PolyMatrix:
    """Row-operation matrix taking the sub-encoded stream to the big form."""
    c, s, m = d.c, d.s, d.m
    N = d.r + c
    R3, R4, R5 = c, c + s, 2 * c
    Q = [[ONE if i == j else ZERO for j in range(N)] for i in range(N)]
    # E1'' = E1' [I + Gamma2(D^-1)], applied to the Z-type ebit rows
    e1pp = [
        [b.E1prime[i, j] if j < s else b.E1prime[i, j] * b.gamma2[j - s].conj() for j in range(c)]
        for i in range(d.r)
    ]
    for i in range(s):
        if subcode:
            Q[R3 + i][R3 + i] = b.gamma1[i]
        for j in range(c):
            Q[R3 + i][j] = e1pp[i][j]
    for i in range(c - s):
        for j in range(m):
            Q[R4 + i][R5 + j] = b.E22a[i, j]
        for j in range(c):
            Q[R4 + i][j] = e1pp[s + i][j]
    for i in range(m):
        g = b.gamma[i]
        if subcode:
            Q[R5 + i][R5 + i] = g
            for j in range(c):
                Q[R5 + i][j] = e1pp[c + i][j]
        else:
            for j in range(c):
                Q[R5 + i][j] = e1pp[c + i][j] / g if e1pp[c + i][j] else ZERO
    return PolyMatrix(Q, N, N)


def assemble_encoder(
    S: CheckMatrix,
    subcode_rowops: bool = True,
    bob_order: list[int] | None = None,
    ebit_phase: PolyMatrix | None = None,
    e1_target: PolyMatrix | None = None,
) -> EncoderArtifact:
    """Full encoder for ``S``.

    ``bob_order`` and ``ebit_phase`` select among equivalent choices of Bob's
    frame; they never change Alice's generators.  ``e1_target`` is a shortcut
    that picks the phase making the unit-ebit block of E1' equal the target.
    """
    if e1_target is not None:
        if ebit_phase is not None:
            raise ConstructionError("give either ebit_phase or e1_target, not both")
        base = decompose(S).blocks
        s0 = len(base.gamma1)
        ebit_phase = base.E1prime[0:s0, 0:s0] + e1_target
    rec = decompose(S, ebit_phase)
    d, b = rec.dims, rec.blocks
    c, s, r = d.c, d.s, d.r
    bob_order = _bob_order(bob_order, c)
    unenc = build_unencoded_stabilizer(d.n, d.k, c, s, bob_order)
    mid = [c + s + i for i in range(c - s)]
    infoq = [c + r + j for j in range(d.k)]
    sub = _subencoder_gates(mid, infoq, b.gamma2, b.L)
    stage = unenc.apply_all(sub)
    Q = _frame_row_ops(d, b, subcode_rowops)
    frame = TrackedPair(stage.stabilizer.left_multiply(Q), stage.info, c)
    tail = [g.shifted(c) for g in reversed(rec.gates_stage1)]
    encoded = frame.apply_all(tail)
    alice = encoded.stabilizer.select(range(c, c + r)).columns(range(c, c + d.n))

    scale = [ONE] * c + [ONE if subcode_rowops else RationalFunc(ONE, g) for g in b.gamma]
    T = PolyMatrix.diag(scale, r, r) @ rec.row_transform
    if alice != S.left_multiply(T):
        raise AssertionError("Alice's generators are not the recorded transform of the input")
    tier = row_equivalent(alice.as_matrix(), S.as_matrix())
    notes = []
    if not rec.blocks.L_reduced and c > s:
        notes.append("information block left unreduced (rank deficient)")
    art = EncoderArtifact(
        params=d,
        record=rec,
        encoder_gates=sub + tail,
        full_stabilizer=encoded.stabilizer,
        info_matrix=encoded.info,
        alice_generators=alice,
        decode_gates=[],
        unencoded=unenc,
        frame=frame,
        row_ops=Q,
        subcode_rowops=subcode_rowops,
        tier=tier,
        bob_order=bob_order,
        alice_transform=T,
        notes=notes,
    )
    art.decode_gates = synthesize_decoder(art)
    return art


def synthesize_decoder(art: EncoderArtifact) -> list[Gate]:
    """Stage-1 gates forward, then Bob's CNOTs undoing the L couplings."""
    d, b = art.params, art.record.blocks
    gates = [g.shifted(d.c) for g in art.record.gates_stage1]
    for i in range(d.c - d.s):
        for j in range(d.k):
            if b.L[i, j]:
                gates.append(CNOT(art.bob_order[d.s + i], d.c + d.r + j, b.L[i, j]))
    return gates


def decode_replay(art: EncoderArtifact) -> TrackedPair:
    """Run the decoder on the encoded pair and apply the closing row additions.

    The returned info matrix should equal the unencoded one.
    """
    d, b = art.params, art.record.blocks
    tp = art.encoded().apply_all(art.decode_gates, allow_bob=True)
    stab = tp.stabilizer
    info_z = [list(r) for r in tp.info.z]
    info_x = [list(r) for r in tp.info.x]
    for j in range(d.k):
        for i in range(d.c - d.s):
            t = b.L[i, j]
            if not t:
                continue
            f = t.conj()
            row = d.s + i
            info_z[j] = [a + f * e if e else a for a, e in zip(info_z[j], stab.z.row(row))]
            info_x[j] = [a + f * e if e else a for a, e in zip(info_x[j], stab.x.row(row))]
    N = stab.n
    info = CheckMatrix(PolyMatrix(info_z, 2 * d.k, N), PolyMatrix(info_x, 2 * d.k, N))
    return TrackedPair(stab, info, d.c)


def expected_tier(art: EncoderArtifact) -> Equivalence:
    b = art.record.blocks
    # without the Gamma premultiplications the ancilla rows carry 1/Gamma,
    # so the original rows only span a finite-index sub-lattice
    unscaled = not art.subcode_rowops and any(not g.is_monomial() for g in b.gamma)
    return Equivalence.SUBCODE if unscaled else Equivalence.UNIMODULAR


def check_artifact(art: EncoderArtifact) -> dict[str, bool]:
    """Structural invariants of an artifact, keyed by name."""
    d = art.params
    ok_comm, _ = is_commuting(art.full_stabilizer)
    dec = decode_replay(art)
    bob = [g for g in art.encoder_gates if min(g.qubits) < d.c]
    return {
        "c_equals_rank_x": d.c == rank(art.record.source.x) if art.record.source.x.rows else d.c == 0,
        "rows": art.full_stabilizer.rows == d.r + d.c,
        "commuting": ok_comm,
        "equivalent": art.tier == expected_tier(art),
        "decoder_restores_info": dec.info == art.unencoded.info,
        "bob_untouched": not bob,
        "replay_big": art.record.replay() == art.record.big,
        "decoder_finite": all(g.finite for g in art.decode_gates),
    }
