"""Quantum check matrices (Z | X), gates as column operations, and the
shifted symplectic product.

The product convention is

    <u, v> = z_u(D) x_v(D^-1)^T + x_u(D) z_v(D^-1)^T,

so the coefficient of D^j is the commutation parity of u against v delayed
by j frames.  It is additive in both slots, ``<a u, v> = a <u, v>`` and
``<u, b v> = b(D^-1) <u, v>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from eaqcc.laurent import ONE, ZERO, LaurentPoly, RationalFunc, format_poly, parse_poly, parse_scalar
from eaqcc.polymatrix import PolyMatrix


class GateError(ValueError):
    pass


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class CheckMatrix:
    z: PolyMatrix
    x: PolyMatrix

    def __post_init__(self):
        if self.z.shape != self.x.shape:
            raise ValueError(f"Z block {self.z.shape} and X block {self.x.shape} differ in shape")

    @classmethod
    def from_rows(cls, zrows, xrows, n: int | None = None) -> CheckMatrix:
        zrows, xrows = list(zrows), list(xrows)
        if n is None:
            n = len(zrows[0]) if zrows else 0
        return cls(PolyMatrix(zrows, len(zrows), n), PolyMatrix(xrows, len(xrows), n))

    @classmethod
    def empty(cls, n: int) -> CheckMatrix:
        return cls(PolyMatrix.zeros(0, n), PolyMatrix.zeros(0, n))

    @property
    def rows(self) -> int:
        return self.z.rows

    @property
    def n(self) -> int:
        return self.z.cols

    def row(self, i: int) -> tuple[tuple, tuple]:
        return self.z.row(i), self.x.row(i)

    def as_matrix(self) -> PolyMatrix:
        """The rows x 2n matrix [Z | X]."""
        return self.z.hstack(self.x)

    def select(self, rows: Sequence[int]) -> CheckMatrix:
        return CheckMatrix(
            PolyMatrix([self.z.row(i) for i in rows], len(rows), self.n),
            PolyMatrix([self.x.row(i) for i in rows], len(rows), self.n),
        )

    def columns(self, cols: Sequence[int]) -> CheckMatrix:
        cols = list(cols)
        return CheckMatrix(
            PolyMatrix([[r[j] for j in cols] for r in self.z], self.rows, len(cols)),
            PolyMatrix([[r[j] for j in cols] for r in self.x], self.rows, len(cols)),
        )

    def vstack(self, other: CheckMatrix) -> CheckMatrix:
        return CheckMatrix(self.z.vstack(other.z), self.x.vstack(other.x))

    def hstack(self, other: CheckMatrix) -> CheckMatrix:
        return CheckMatrix(self.z.hstack(other.z), self.x.hstack(other.x))

    def left_multiply(self, P: PolyMatrix) -> CheckMatrix:
        """Row operations: every new row is a combination of old rows."""
        return CheckMatrix(P @ self.z, P @ self.x)

    def apply(self, gate: Gate) -> CheckMatrix:
        return gate.apply(self)

    def apply_all(self, gates: Iterable[Gate]) -> CheckMatrix:
        cm = self
        for g in gates:
            cm = g.apply(cm)
        return cm

    def is_polynomial(self) -> bool:
        return self.z.is_polynomial() and self.x.is_polynomial()

    def to_text(self) -> str:
        lines = [f"checkmatrix n={self.n} rows={self.rows}"]
        for zr, xr in zip(self.z, self.x):
            lines.append("Z: " + ",".join(map(str, zr)) + " ; X: " + ",".join(map(str, xr)))
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.to_text()


def symplectic_products(A: CheckMatrix, B: CheckMatrix) -> PolyMatrix:
    """Matrix of shifted symplectic products <A_i, B_j>."""
    if A.n != B.n:
        raise ValueError(f"row length mismatch {A.n} vs {B.n}")
    return A.z @ B.x.H() + A.x @ B.z.H()


def shifted_symplectic(u: tuple[Sequence, Sequence], v: tuple[Sequence, Sequence]):
    zu, xu = u
    zv, xv = v
    if not (len(zu) == len(xu) == len(zv) == len(xv)):
        raise ValueError("row length mismatch")
    acc = ZERO
    for a, b in zip(zu, xv):
        if a and b:
            acc = acc + a * b.conj()
    for a, b in zip(xu, zv):
        if a and b:
            acc = acc + a * b.conj()
    return acc


def is_commuting(S: CheckMatrix) -> tuple[bool, list[tuple[int, int, object]]]:
    """True iff every ordered row pair (self-pairs included) has product 0."""
    P = symplectic_products(S, S)
    bad = [(i, j, P[i, j]) for i in range(S.rows) for j in range(S.rows) if P[i, j]]
    return not bad, bad


# gates ---------------------------------------------------------------------------


def _col_update(M: PolyMatrix, updates: dict[int, list]) -> PolyMatrix:
    grid = M.tolist()
    for j, colvals in updates.items():
        for r, v in zip(grid, colvals):
            r[j] = v
    return PolyMatrix(grid, M.rows, M.cols)


class Gate:
    finite = True

    @property
    def qubits(self) -> tuple[int, ...]:
        raise NotImplementedError

    def apply(self, cm: CheckMatrix) -> CheckMatrix:
        raise NotImplementedError

    def _check_range(self, cm: CheckMatrix):
        for q in self.qubits:
            if not 0 <= q < cm.n:
                raise GateError(f"{self} addresses qubit {q} outside 0..{cm.n - 1}")

    def shifted(self, k: int) -> Gate:
        raise NotImplementedError


@dataclass(frozen=True)
class Hadamard(Gate):
    q: int

    @property
    def qubits(self):
        return (self.q,)

    def apply(self, cm):
        self._check_range(cm)
        return CheckMatrix(_col_update(cm.z, {self.q: cm.x.col(self.q)}), _col_update(cm.x, {self.q: cm.z.col(self.q)}))

    def shifted(self, k):
        return Hadamard(self.q + k)

    def __str__(self):
        return f"H q{self.q}"


@dataclass(frozen=True)
class CNOT(Gate):
    """X_target += tap(D) X_control, Z_control += tap(D^-1) Z_target."""

    control: int
    target: int
    tap: LaurentPoly = ONE

    def __post_init__(self):
        if self.control == self.target:
            raise GateError("CNOT control and target must differ")
        if not self.tap:
            raise GateError("CNOT tap must be nonzero")

    @property
    def qubits(self):
        return (self.control, self.target)

    def apply(self, cm):
        self._check_range(cm)
        a, b, t = self.control, self.target, self.tap
        tc = t.conj()
        xb = [xb + t * xa if xa else xb for xa, xb in zip(cm.x.col(a), cm.x.col(b))]
        za = [za + tc * zb if zb else za for za, zb in zip(cm.z.col(a), cm.z.col(b))]
        return CheckMatrix(_col_update(cm.z, {a: za}), _col_update(cm.x, {b: xb}))

    def shifted(self, k):
        return CNOT(self.control + k, self.target + k, self.tap)

    def __str__(self):
        return f"CNOT q{self.control} -> q{self.target} tap {format_poly(self.tap)}"


@dataclass(frozen=True)
class Swap(Gate):
    a: int
    b: int

    @property
    def qubits(self):
        return (self.a, self.b)

    def apply(self, cm):
        self._check_range(cm)
        a, b = self.a, self.b
        return CheckMatrix(
            _col_update(cm.z, {a: cm.z.col(b), b: cm.z.col(a)}),
            _col_update(cm.x, {a: cm.x.col(b), b: cm.x.col(a)}),
        )

    def shifted(self, k):
        return Swap(self.a + k, self.b + k)

    def __str__(self):
        return f"SWAP q{self.a} q{self.b}"


@dataclass(frozen=True)
class InfiniteDepth(Gate):
    """Z_q *= 1/gamma(D^-1), X_q *= gamma(D); gamma must not be a unit."""

    q: int
    gamma: LaurentPoly
    finite = False

    def __post_init__(self):
        if not self.gamma or self.gamma.is_monomial():
            raise GateError(f"infinite-depth gamma must be a non-unit polynomial, got {self.gamma}")

    @property
    def qubits(self):
        return (self.q,)

    def apply(self, cm):
        self._check_range(cm)
        inv = RationalFunc(ONE, self.gamma.conj())
        z = [(inv * a) if a else a for a in cm.z.col(self.q)]
        x = [(self.gamma * a) if a else a for a in cm.x.col(self.q)]
        return CheckMatrix(_col_update(cm.z, {self.q: z}), _col_update(cm.x, {self.q: x}))

    def shifted(self, k):
        return InfiniteDepth(self.q + k, self.gamma)

    def __str__(self):
        return f"INFD q{self.q} gamma {format_poly(self.gamma)}"


_GATE_RES = [
    (re.compile(r"^H q(\d+)$"), lambda m: Hadamard(int(m[1]))),
    (re.compile(r"^CNOT q(\d+) -> q(\d+) tap (.+)$"), lambda m: CNOT(int(m[1]), int(m[2]), parse_poly(m[3]))),
    (re.compile(r"^SWAP q(\d+) q(\d+)$"), lambda m: Swap(int(m[1]), int(m[2]))),
    (re.compile(r"^INFD q(\d+) gamma (.+)$"), lambda m: InfiniteDepth(int(m[1]), parse_poly(m[2]))),
]


def parse_gate(line: str) -> Gate:
    s = line.strip()
    for rx, build in _GATE_RES:
        m = rx.match(s)
        if m:
            return build(m)
    raise FormatError(f"unrecognized gate line {line!r}")


def format_gates(gates: Iterable[Gate]) -> str:
    return "".join(f"{g}\n" for g in gates)


def parse_gates(text: str) -> list[Gate]:
    return [parse_gate(ln) for ln in text.splitlines() if ln.strip()]


# tracked stabilizer + information-qubit matrices --------------------------------------


@dataclass
class TrackedPair:
    """Stabilizer and logical-operator rows followed through a circuit.

    The first ``bob_qubits`` qubits belong to the receiver and may not be
    touched by encoding gates.
    """

    stabilizer: CheckMatrix
    info: CheckMatrix
    bob_qubits: int = 0

    def apply(self, gate: Gate, allow_bob: bool = False) -> TrackedPair:
        if not allow_bob and any(q < self.bob_qubits for q in gate.qubits):
            raise GateError(f"{gate} touches the receiver's qubits 0..{self.bob_qubits - 1}")
        return replace(self, stabilizer=gate.apply(self.stabilizer), info=gate.apply(self.info))

    def apply_all(self, gates: Iterable[Gate], allow_bob: bool = False) -> TrackedPair:
        tp = self
        for g in gates:
            tp = tp.apply(g, allow_bob)
        return tp

    def copy(self) -> TrackedPair:
        return replace(self)

    def orthogonal(self) -> bool:
        return symplectic_products(self.stabilizer, self.info).is_zero()


# file format ---------------------------------------------------------------------

_HEADER = re.compile(r"^checkmatrix\s+n=(\d+)\s+rows=(\d+)\s*$")
_ROW = re.compile(r"^Z:\s*(.*?)\s*;\s*X:\s*(.*?)\s*$")


def _entries(text: str, n: int, lineno: int) -> list:
    toks = [t for t in text.split(",")]
    if len(toks) != n:
        raise FormatError(f"line {lineno}: expected {n} entries, got {len(toks)}")
    return [parse_scalar(t) for t in toks]


def parse_checkmatrix(text: str) -> CheckMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise FormatError("empty check-matrix file")
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise FormatError(f"bad header {lines[0]!r}")
    n, r = int(m[1]), int(m[2])
    body = lines[1:]
    if len(body) != r:
        raise FormatError(f"header says {r} rows, found {len(body)}")
    zs, xs = [], []
    for k, ln in enumerate(body, start=2):
        rm = _ROW.match(ln.strip())
        if not rm:
            raise FormatError(f"line {k}: expected 'Z: ... ; X: ...'")
        zs.append(_entries(rm[1], n, k))
        xs.append(_entries(rm[2], n, k))
    return CheckMatrix(PolyMatrix(zs, r, n), PolyMatrix(xs, r, n))
