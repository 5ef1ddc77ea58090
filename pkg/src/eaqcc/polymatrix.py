"""Matrices over F2[D, D^-1] and its fraction field.

Elimination routines record every elementary step as an :class:`ElemOp` so
that column steps can be replayed later as circuit elements.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from eaqcc.laurent import ONE, ZERO, LaurentPoly, RationalFunc, gcd


class RankDeficientError(ValueError):
    pass


class NotUnimodularError(ValueError):
    def __init__(self, det):
        super().__init__(f"matrix is not unimodular: determinant {det}")
        self.det = det


def _coerce(x):
    if isinstance(x, (LaurentPoly, RationalFunc)):
        return x.simplify() if isinstance(x, RationalFunc) else x
    return LaurentPoly.coerce(x)


class PolyMatrix:
    """Dense, immutable matrix of LaurentPoly (or RationalFunc) entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable] = (), rows: int | None = None, cols: int | None = None):
        grid = tuple(tuple(_coerce(x) for x in row) for row in data)
        r = len(grid) if rows is None else rows
        if grid:
            c = len(grid[0]) if cols is None else cols
        else:
            c = 0 if cols is None else cols
        if len(grid) != r or any(len(row) != c for row in grid):
            raise ValueError("matrix is not rectangular or does not match the given shape")
        object.__setattr__(self, "rows", r)
        object.__setattr__(self, "cols", c)
        object.__setattr__(self, "_data", grid)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> PolyMatrix:
        return cls([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> PolyMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, entries: Sequence, rows: int | None = None, cols: int | None = None) -> PolyMatrix:
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        grid = [[ZERO] * cols for _ in range(rows)]
        for i, e in enumerate(entries):
            grid[i][i] = e
        return cls(grid, rows, cols)

    @classmethod
    def parse(cls, text: str) -> PolyMatrix:
        from eaqcc.laurent import parse_scalar

        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        return cls([[parse_scalar(tok) for tok in ln.split(",")] for ln in lines])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def __getitem__(self, idx):
        i, j = idx
        if isinstance(i, slice) or isinstance(j, slice):
            ri = range(self.rows)[i] if isinstance(i, slice) else [i]
            cj = range(self.cols)[j] if isinstance(j, slice) else [j]
            return PolyMatrix([[self._data[a][b] for b in cj] for a in ri], len(ri), len(cj))
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self._data, other._data) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return PolyMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)],
            self.rows,
            self.cols,
        )

    __sub__ = __add__

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        ocols = [other.col(j) for j in range(other.cols)]
        for r in self._data:
            row = []
            for c in ocols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.rows, other.cols)

    def scale(self, s) -> PolyMatrix:
        return PolyMatrix([[s * a for a in r] for r in self._data], self.rows, self.cols)

    @property
    def T(self) -> PolyMatrix:
        return PolyMatrix([self.col(j) for j in range(self.cols)], self.cols, self.rows)

    def conj(self) -> PolyMatrix:
        """Entrywise D -> D^-1."""
        return PolyMatrix([[a.conj() for a in r] for r in self._data], self.rows, self.cols)

    def H(self) -> PolyMatrix:
        """Conjugate transpose, M^T(D^-1)."""
        return self.T.conj()

    def hstack(self, other: PolyMatrix) -> PolyMatrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return PolyMatrix([a + b for a, b in zip(self._data, other._data)], self.rows, self.cols + other.cols)

    def vstack(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return PolyMatrix(self._data + other._data, self.rows + other.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(a for r in self._data for a in r)

    def is_polynomial(self) -> bool:
        return all(isinstance(a, LaurentPoly) for r in self._data for a in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def with_entries(self, updates: dict[tuple[int, int], object]) -> PolyMatrix:
        grid = self.tolist()
        for (i, j), v in updates.items():
            grid[i][j] = v
        return PolyMatrix(grid, self.rows, self.cols)

    def to_text(self) -> str:
        return "\n".join(",".join(str(a) for a in r) for r in self._data)

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self._data)
        return f"PolyMatrix[{self.rows}x{self.cols}]({body})"

    def apply(self, op: ElemOp) -> PolyMatrix:
        grid = self.tolist()
        op.apply_to(grid)
        return PolyMatrix(grid, self.rows, self.cols)


def block(rows: Sequence[Sequence[PolyMatrix]]) -> PolyMatrix:
    """Assemble a block matrix; empty blocks are fine."""
    out: PolyMatrix | None = None
    for brow in rows:
        acc = brow[0]
        for b in brow[1:]:
            acc = acc.hstack(b)
        out = acc if out is None else out.vstack(acc)
    return out if out is not None else PolyMatrix()


# elementary operations ---------------------------------------------------------


class Axis(enum.Enum):
    ROW = "row"
    COL = "col"


@dataclass(frozen=True)
class ElemOp:
    """One elementary step.

    kind ``swap``: exchange lines i and j.
    kind ``add``:  line j += factor * line i  (i is the source).
    kind ``scale``: line i *= factor (factor must be a unit D^k).
    """

    axis: Axis
    kind: str
    i: int
    j: int = -1
    factor: LaurentPoly = ONE

    def apply_to(self, grid: list[list]) -> None:
        if self.axis is Axis.ROW:
            if self.kind == "swap":
                grid[self.i], grid[self.j] = grid[self.j], grid[self.i]
            elif self.kind == "add":
                src, dst = grid[self.i], grid[self.j]
                f = self.factor
                grid[self.j] = [d + f * s if s else d for s, d in zip(src, dst)]
            else:
                grid[self.i] = [self.factor * a for a in grid[self.i]]
        else:
            for r in grid:
                if self.kind == "swap":
                    r[self.i], r[self.j] = r[self.j], r[self.i]
                elif self.kind == "add":
                    if r[self.i]:
                        r[self.j] = r[self.j] + self.factor * r[self.i]
                else:
                    r[self.i] = self.factor * r[self.i]

    def inverse(self) -> ElemOp:
        if self.kind == "scale":
            return ElemOp(self.axis, "scale", self.i, self.j, LaurentPoly(1, -self.factor.low))
        return self

    def offset(self, k: int) -> ElemOp:
        return ElemOp(self.axis, self.kind, self.i + k, self.j + k if self.j >= 0 else -1, self.factor)


def replay(M: PolyMatrix, ops: Iterable[ElemOp]) -> PolyMatrix:
    grid = M.tolist()
    for op in ops:
        op.apply_to(grid)
    return PolyMatrix(grid, M.rows, M.cols)


def _row_op_matrix(n: int, ops: Iterable[ElemOp]) -> PolyMatrix:
    """Product P of the row operations, so that replaying ops on M gives P @ M."""
    return replay(PolyMatrix.identity(n), ops)


# Smith normal form --------------------------------------------------------------


@dataclass
class SmithDecomposition:
    """left @ diag_matrix @ right == input, with left/right unimodular."""

    left: PolyMatrix
    diag: list[LaurentPoly]
    right: PolyMatrix
    shape: tuple[int, int]
    ops: list[ElemOp] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.diag)

    @property
    def s(self) -> int:
        return sum(1 for d in self.diag if d.is_monomial())

    @property
    def gamma1(self) -> list[LaurentPoly]:
        return [d for d in self.diag if d.is_monomial()]

    @property
    def gamma2(self) -> list[LaurentPoly]:
        return [d for d in self.diag if not d.is_monomial()]

    def diag_matrix(self) -> PolyMatrix:
        return PolyMatrix.diag(self.diag, *self.shape)

    @property
    def row_ops(self) -> list[ElemOp]:
        return [op for op in self.ops if op.axis is Axis.ROW]

    @property
    def col_ops(self) -> list[ElemOp]:
        return [op for op in self.ops if op.axis is Axis.COL]


def _pivot_key(p: LaurentPoly, i: int, j: int):
    # minimal span; among equal spans prefer the lower raw degree, then (row, col)
    return (p.span, p.degree, i, j)


class _Elim:
    """Working grid with op recording."""

    def __init__(self, M: PolyMatrix):
        if not M.is_polynomial():
            raise ValueError("elimination requires Laurent polynomial entries")
        self.g = M.tolist()
        self.ops: list[ElemOp] = []

    def do(self, op: ElemOp) -> None:
        op.apply_to(self.g)
        self.ops.append(op)

    def rswap(self, a, b):
        if a != b:
            self.do(ElemOp(Axis.ROW, "swap", a, b))

    def cswap(self, a, b):
        if a != b:
            self.do(ElemOp(Axis.COL, "swap", a, b))

    def radd(self, src, dst, f):
        if f:
            self.do(ElemOp(Axis.ROW, "add", src, dst, f))

    def cadd(self, src, dst, f):
        if f:
            self.do(ElemOp(Axis.COL, "add", src, dst, f))

    def rscale(self, i, unit):
        if not unit.is_one():
            self.do(ElemOp(Axis.ROW, "scale", i, -1, unit))


def smith_decompose(M: PolyMatrix) -> SmithDecomposition:
    """Smith normal form over F2[D, D^-1].

    Invariant factors satisfy d1 | d2 | ... and are normalized to valuation 0
    (unit powers of D are pushed into the left factor).  Monomial factors
    therefore all become 1 and sort first.  Column steps use only swaps and
    additions, so they map one-to-one onto SWAP/CNOT gates.
    """
    m, n = M.shape
    e = _Elim(M)
    g = e.g
    diag: list[LaurentPoly] = []
    for t in range(min(m, n)):
        cands = [(_pivot_key(g[i][j], i, j), i, j) for i in range(t, m) for j in range(t, n) if g[i][j]]
        if not cands:
            break
        _, pi, pj = min(cands)
        e.rswap(t, pi)
        e.cswap(t, pj)
        while True:
            # clear column t and row t by Euclidean steps
            changed = False
            for i in range(t + 1, m):
                if g[i][t]:
                    q, r = g[i][t].divmod(g[t][t])
                    e.radd(t, i, q)
                    if r:
                        e.rswap(t, i)
                        changed = True
            for j in range(t + 1, n):
                if g[t][j]:
                    q, r = g[t][j].divmod(g[t][t])
                    e.cadd(t, j, q)
                    if r:
                        e.cswap(t, j)
                        changed = True
            if changed:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if g[i][j] and not g[t][t].divides(g[i][j])),
                None,
            )
            if bad is None:
                break
            e.radd(bad[0], t, ONE)
        e.rscale(t, LaurentPoly(1, -g[t][t].low))
        diag.append(g[t][t])
    left = inverse_of_ops(m, [op for op in e.ops if op.axis is Axis.ROW])
    right = inverse_of_ops(n, [op for op in e.ops if op.axis is Axis.COL])
    return SmithDecomposition(left, diag, right, (m, n), e.ops)


def inverse_of_ops(size: int, ops: list[ElemOp]) -> PolyMatrix:
    """Inverse of the accumulated transform of same-axis ops.

    For row ops (M -> P M) this is P^-1; for column ops (M -> M Q) it is Q^-1.
    Either way it is the inverses replayed in reverse order on the identity.
    """
    return replay(PolyMatrix.identity(size), [op.inverse() for op in reversed(ops)])


def smith_lower_triangular_colonly(M: PolyMatrix) -> tuple[PolyMatrix, list[ElemOp]]:
    """Column-only reduction ``M @ U = [L 0]`` with L square lower triangular.

    Only column swaps and column additions are recorded; rows are never
    touched, so the recorded list maps directly onto gates.
    """
    r, n = M.shape
    if r > n:
        raise RankDeficientError(f"{r} rows cannot have full row rank with {n} columns")
    e = _Elim(M)
    g = e.g
    for i in range(r):
        while True:
            live = [j for j in range(i, n) if g[i][j]]
            if not live:
                raise RankDeficientError(f"row {i} is dependent on rows 0..{i - 1}")
            pj = min(live, key=lambda j: _pivot_key(g[i][j], i, j))
            e.cswap(i, pj)
            dirty = False
            for j in range(i + 1, n):
                if g[i][j]:
                    q, rem = g[i][j].divmod(g[i][i])
                    e.cadd(i, j, q)
                    dirty = dirty or bool(rem)
            if not dirty:
                break
    L = PolyMatrix([row[:r] for row in g], r, r)
    return L, e.ops


# fraction-field linear algebra ---------------------------------------------------


def _frac_eliminate(M: PolyMatrix, reduced: bool = True):
    """Gauss(-Jordan) elimination over F2(D).

    Returns (grid, pivot columns, determinant-if-square).
    """
    g = [[RationalFunc.coerce(a) for a in row] for row in M]
    m, n = M.shape
    pivots = []
    det = RationalFunc.coerce(ONE)
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if g[i][c]), None)
        if p is None:
            continue
        if p != r:
            g[r], g[p] = g[p], g[r]
        piv = g[r][c]
        det = det * piv
        inv = piv.inverse()
        g[r] = [inv * a for a in g[r]]
        rng = range(m) if reduced else range(r + 1, m)
        for i in rng:
            if i != r and g[i][c]:
                f = g[i][c]
                g[i] = [a + f * b for a, b in zip(g[i], g[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if M.is_square() and len(pivots) < m:
        det = RationalFunc.coerce(ZERO)
    return g, pivots, det.simplify()


def rank(M: PolyMatrix) -> int:
    """Rank over the fraction field F2(D)."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(_frac_eliminate(M, reduced=False)[1])


def det(M: PolyMatrix):
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    if M.rows == 0:
        return ONE
    return _frac_eliminate(M, reduced=False)[2]


def rref(M: PolyMatrix) -> PolyMatrix:
    """Reduced row echelon form over F2(D), zero rows dropped."""
    g, pivots, _ = _frac_eliminate(M)
    return PolyMatrix([[a.simplify() for a in row] for row in g[: len(pivots)]], len(pivots), M.cols)


def frac_inverse(M: PolyMatrix) -> PolyMatrix:
    n = M.rows
    aug = M.hstack(PolyMatrix.identity(n))
    g, pivots, _ = _frac_eliminate(aug)
    if pivots[:n] != list(range(n)) if n else False:
        raise ZeroDivisionError("singular matrix")
    return PolyMatrix([[a.simplify() for a in row[n:]] for row in g[:n]], n, n)


def unimodular_inverse(M: PolyMatrix) -> PolyMatrix:
    """Polynomial inverse of a square matrix whose determinant is a unit D^k."""
    if not M.is_square():
        raise ValueError("unimodular_inverse needs a square matrix")
    d = det(M)
    if not (isinstance(d, LaurentPoly) and d.is_monomial()):
        raise NotUnimodularError(d)
    inv = frac_inverse(M)
    assert inv.is_polynomial()
    return inv


# Hermite normal form and equivalence -------------------------------------------


def hnf(M: PolyMatrix) -> PolyMatrix:
    """Row-style Hermite normal form over F2[D, D^-1].

    Pivots are normalized to valuation 0 and every entry above a pivot is
    reduced to its canonical residue modulo the pivot.  Zero rows sink to the
    bottom.  Two matrices have the same HNF iff they are related by a
    unimodular left factor.
    """
    e = _Elim(M)
    g = e.g
    m, n = M.shape
    pr = 0
    for c in range(n):
        if pr == m:
            break
        while True:
            live = [i for i in range(pr, m) if g[i][c]]
            if not live:
                break
            pi = min(live, key=lambda i: _pivot_key(g[i][c], i, c))
            e.rswap(pr, pi)
            for i in range(pr + 1, m):
                if g[i][c]:
                    e.radd(pr, i, g[i][c].divmod(g[pr][c])[0])
            if not any(g[i][c] for i in range(pr + 1, m)):
                break
        if not g[pr][c]:
            continue
        e.rscale(pr, LaurentPoly(1, -g[pr][c].low))
        p = g[pr][c]
        for i in range(pr):
            a = g[i][c]
            if a:
                res = a.residue(p)
                e.radd(pr, i, (a + res).exact_div(p))
        pr += 1
    return PolyMatrix(g, m, n)


class Equivalence(enum.Enum):
    UNIMODULAR = "UNIMODULAR-EQUIVALENT"
    SUBCODE = "SUBCODE-EQUIVALENT"
    NONE = "NOT-EQUIVALENT"

    def __bool__(self):
        return self is not Equivalence.NONE


def clear_denominators(M: PolyMatrix) -> tuple[PolyMatrix, bool]:
    """Scale each row by the lcm of its denominators.

    Returns the polynomial matrix and whether any scaling was by a non-unit.
    """
    out = []
    nonunit = False
    for row in M:
        lcm = ONE
        for a in row:
            if isinstance(a, RationalFunc):
                lcm = (lcm * a.den).exact_div(gcd(lcm, a.den))
        if not lcm.is_monomial():
            nonunit = True
        out.append([(lcm * a) for a in row])
    res = PolyMatrix(out, M.rows, M.cols)
    assert res.is_polynomial()
    return res, nonunit


def row_equivalent(M1: PolyMatrix, M2: PolyMatrix) -> Equivalence:
    """Compare row spaces.

    UNIMODULAR: identical Hermite forms over the Laurent ring (no non-unit
    denominators had to be cleared).  SUBCODE: identical row spaces over the
    fraction field with both matrices of full row rank.
    """
    if M1.shape != M2.shape:
        raise ValueError(f"shape mismatch {M1.shape} vs {M2.shape}")
    A, fa = clear_denominators(M1)
    B, fb = clear_denominators(M2)
    if not (fa or fb) and hnf(A) == hnf(B):
        return Equivalence.UNIMODULAR
    ra, rb = rref(A), rref(B)
    if ra.rows == rb.rows == M1.rows and ra == rb:
        return Equivalence.SUBCODE
    return Equivalence.NONE
