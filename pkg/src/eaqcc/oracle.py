"""Brute-force checks on finite windows of frames.

Every symbolic claim about shifted symplectic products and syndromes is
re-derived here by laying rows out as concrete binary strings and counting
anticommuting positions.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from eaqcc.checkmatrix import CheckMatrix, shifted_symplectic
from eaqcc.laurent import LaurentPoly, RationalFunc
from eaqcc.polymatrix import PolyMatrix


class WindowTooSmall(ValueError):
    pass


def guard(W: int) -> int:
    return max(1, W // 4)


def _coeff(f, e: int) -> int:
    """Coefficient of D^e; rational entries expand in D^-1."""
    if not f:
        return 0
    if isinstance(f, RationalFunc):
        return f.series(e, e + 1).coeff(e)
    return f.coeff(e)


def _top(f) -> int:
    if isinstance(f, RationalFunc):
        return f.num.degree - f.den.degree
    return f.degree


def _extent(row) -> tuple[int, int]:
    """Exponent range that must sit inside a window for exact parities.

    X entries are polynomial; for rational Z entries only the upper end is
    finite, the tail toward D^-infinity is allowed to be truncated.
    """
    z, x = row
    lo, hi = None, None
    for f in list(z) + list(x):
        if not f:
            continue
        if isinstance(f, RationalFunc):
            t = _top(f)
            hi = t if hi is None else max(hi, t)
            continue
        lo = f.valuation if lo is None else min(lo, f.valuation)
        hi = f.degree if hi is None else max(hi, f.degree)
    if lo is None and hi is None:
        return 0, 0
    if lo is None:
        lo = hi
    if hi is None:
        hi = lo
    return lo, hi


@dataclass
class UnrolledWindow:
    window: int
    guard: int
    n: int
    labels: list[tuple[int, int]]  # (row, shift)
    zbits: list[int]  # bit t*n + q
    xbits: list[int]

    def pauli_string(self, idx: int) -> str:
        out = []
        for t in range(self.window):
            frame = ""
            for q in range(self.n):
                b = t * self.n + q
                zb, xb = (self.zbits[idx] >> b) & 1, (self.xbits[idx] >> b) & 1
                frame += "IXZY"[xb | (zb << 1)]
            out.append(frame)
        return " ".join(out)


def _place(f, a: int, W: int, g: int, strict: bool) -> list[int]:
    """Frames in [0, W) where D^a f has coefficient 1."""
    if not f:
        return []
    if isinstance(f, RationalFunc):
        if strict and _top(f) + a >= W + g:
            raise WindowTooSmall(f"entry {f} shifted by {a} leaves the window")
        p = f.series(-g - a, W + g - a)
    else:
        p = f
        if strict and (p.valuation + a < -g or p.degree + a >= W + g):
            raise WindowTooSmall(f"entry {f} shifted by {a} exceeds the guard band")
    return [e + a for e in p.support if 0 <= e + a < W]


def _row_bits(row, a: int, W: int, g: int, n: int, strict: bool = True) -> tuple[int, int]:
    z, x = row
    zb = xb = 0
    for q in range(n):
        for t in _place(z[q], a, W, g, strict):
            zb |= 1 << (t * n + q)
        for t in _place(x[q], a, W, g, strict):
            xb |= 1 << (t * n + q)
    return zb, xb


def unroll(M: CheckMatrix, W: int, shifts=range(1)) -> UnrolledWindow:
    """One binary row per (row, shift) pair over frames 0..W-1."""
    if W < 1:
        raise WindowTooSmall("window must hold at least one frame")
    g = guard(W)
    labels, zs, xs = [], [], []
    for i in range(M.rows):
        row = M.row(i)
        for a in shifts:
            zb, xb = _row_bits(row, a, W, g, M.n)
            labels.append((i, a))
            zs.append(zb)
            xs.append(xb)
    return UnrolledWindow(W, g, M.n, labels, zs, xs)


def parity(zu: int, xu: int, zv: int, xv: int) -> int:
    return (bin(zu & xv).count("1") + bin(xu & zv).count("1")) & 1


def expected_coeff(u, v, j: int) -> int:
    """Coefficient of D^j in <u, v>, expanding each term in its own field.

    The z_u x_v(D^-1) term lives in F2((D^-1)) while x_u z_v(D^-1) lives in
    F2((D)); summing the two expansions is what the physical strings see.
    """
    zu, xu = u
    zv, xv = v
    acc = 0
    for q in range(len(zu)):
        if xv[q]:
            for f in xv[q].support:
                acc ^= _coeff(zu[q], f + j)
        if xu[q]:
            for e in xu[q].support:
                acc ^= _coeff(zv[q], e - j)
    return acc


@dataclass
class OracleReport:
    window: int
    shifts: tuple[int, int]
    checked: int = 0
    mismatches: list[tuple[int, int, int, int, int]] = field(default_factory=list)  # i, j, shift, expected, observed
    anticommuting: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def lines(self) -> list[str]:
        out = [f"oracle window={self.window} shifts={self.shifts[0]}..{self.shifts[1]} checked={self.checked} "
               f"mismatches={len(self.mismatches)} anticommuting={len(self.anticommuting)}"]
        for i, j, s, e, o in self.mismatches:
            out.append(f"mismatch rows {i},{j} shift {s}: expected {e} observed {o}")
        for i, j, s in self.anticommuting:
            out.append(f"anticommute rows {i},{j} shift {s}")
        return out


def row_span(M: CheckMatrix) -> int:
    spans = [hi - lo for lo, hi in (_extent(M.row(i)) for i in range(M.rows))]
    return max(spans, default=0)


def min_window(M: CheckMatrix, max_shift: int = 0) -> int:
    """Smallest window in which every row pair fits at every shift up to ``max_shift``.

    Exact for the placement used by pair_parity; never more than 2*span + max_shift + 1.
    """
    ext = [_extent(M.row(i)) for i in range(M.rows)]
    need = 1
    for eu in ext:
        for ev in ext:
            for s in range(-max_shift, max_shift + 1):
                a = max(-eu[0], -s - ev[0])
                need = max(need, a + eu[1] + 1, a + s + ev[1] + 1)
    return need


def min_syndrome_window(M: CheckMatrix) -> int:
    """Smallest window whose guard band covers the widest row and leaves interior frames."""
    W = 4
    while guard(W) < row_span(M) or W - 2 * guard(W) < 1:
        W += 4
    return W


def _placement(eu, ev, shift: int, W: int) -> int:
    a = max(-eu[0], -shift - ev[0])
    if a + eu[1] >= W or a + shift + ev[1] >= W:
        raise WindowTooSmall(f"rows do not fit a window of {W} frames at shift {shift}")
    return a


def pair_parity(u, v, shift: int, W: int, n: int) -> int:
    """Parity of u against v delayed by ``shift`` frames, from unrolled bits."""
    g = guard(W)
    a = _placement(_extent(u), _extent(v), shift, W)
    zu, xu = _row_bits(u, a, W, g, n)
    zv, xv = _row_bits(v, a + shift, W, g, n)
    return parity(zu, xu, zv, xv)


def commutation_oracle(M: CheckMatrix, W: int = 12, max_shift: int = 5, others: CheckMatrix | None = None) -> OracleReport:
    """Compare unrolled parities with the symbolic product for all row pairs.

    With ``others`` the pairs are (row of M, row of others); otherwise all
    ordered pairs within M.
    """
    B = M if others is None else others
    rep = OracleReport(W, (-max_shift, max_shift))
    for i in range(M.rows):
        u = M.row(i)
        for j in range(B.rows):
            v = B.row(j)
            sym = shifted_symplectic(u, v)
            poly = sym if isinstance(sym, LaurentPoly) else None
            for s in range(-max_shift, max_shift + 1):
                obs = pair_parity(u, v, s, W, M.n)
                exp = poly.coeff(s) if poly is not None else expected_coeff(u, v, s)
                rep.checked += 1
                if obs != exp:
                    rep.mismatches.append((i, j, s, exp, obs))
                if obs:
                    rep.anticommuting.append((i, j, s))
    return rep


# syndromes -------------------------------------------------------------------

PAULIS = {"X": (0, 1), "Y": (1, 1), "Z": (1, 0)}


@dataclass
class SyndromeTable:
    window: int
    n: int
    entries: dict[tuple, str]  # (q, frame, P) or pairs thereof -> bitstring

    def lines(self) -> list[str]:
        out = []
        for key in sorted(self.entries):
            if isinstance(key[0], tuple):
                name = " + ".join(f"q{q} f{t} {p}" for q, t, p in key)
            else:
                q, t, p = key
                name = f"q{q} f{t} {p}"
            out.append(f"err {name} -> {self.entries[key]}")
        return out

    def partition(self) -> set[frozenset]:
        groups = defaultdict(set)
        for key, bits in self.entries.items():
            groups[bits].add(key)
        return {frozenset(v) for v in groups.values()}


def syndrome_table(M: CheckMatrix, W: int, weight: int = 1) -> SyndromeTable:
    """Syndromes of Pauli errors on interior frames against all row translates.

    Rows are laid out at every shift in [-g, W+g) and cut at the window edge;
    errors sit on frames g..W-g-1, which rows of span at most g reach only
    when fully inside the window.
    """
    g = guard(W)
    n = M.n
    for i in range(M.rows):
        lo, hi = _extent(M.row(i))
        if hi - lo > g:
            raise WindowTooSmall(f"row {i} spans {hi - lo} frames, guard is {g}")
    shifted = []
    for i in range(M.rows):
        for a in range(-g, W + g):
            shifted.append(_row_bits(M.row(i), a, W, g, n, strict=False))
    single = {}
    for t in range(g, W - g):
        for q in range(n):
            for p, (zb, xb) in PAULIS.items():
                b = t * n + q
                ez, ex = zb << b, xb << b
                single[(q, t, p)] = [parity(ez, ex, rz, rx) for rz, rx in shifted]
    entries = {k: "".join(map(str, v)) for k, v in single.items()}
    if weight >= 2:
        keys = sorted(single)
        for k1, k2 in combinations(keys, 2):
            if k1[0] == k2[0] and k1[1] == k2[1]:
                continue
            entries[(k1, k2)] = "".join(str(a ^ b) for a, b in zip(single[k1], single[k2]))
    return SyndromeTable(W, n, entries)


def symbolic_syndrome(M: CheckMatrix, q: int, p: str, t: int = 0) -> list:
    """Vector of products of the single-qubit error D^t P_q against each row."""
    zb, xb = PAULIS[p]
    mono = LaurentPoly.monomial(t)
    z = [mono if (k == q and zb) else LaurentPoly() for k in range(M.n)]
    x = [mono if (k == q and xb) else LaurentPoly() for k in range(M.n)]
    return [shifted_symplectic((z, x), M.row(i)) for i in range(M.rows)]


@dataclass
class SyndromeComparison:
    partitions_equal: bool
    transform_consistent: bool
    errors: int
    classes: int

    @property
    def ok(self) -> bool:
        return self.partitions_equal and self.transform_consistent


def compare_syndromes(S: CheckMatrix, A: CheckMatrix, T: PolyMatrix, W: int = 12) -> SyndromeComparison:
    """Check that A = T S distinguishes exactly the same single errors as S.

    Windowed: the partition of interior errors by syndrome bits must agree.
    Symbolic: sigma_A(e) = T(D^-1) sigma_S(e) for every single-qubit error.
    """
    consistent = True
    Tc = T.conj()
    for q in range(S.n):
        for p in PAULIS:
            sS = PolyMatrix([[x] for x in symbolic_syndrome(S, q, p)], S.rows, 1)
            sA = PolyMatrix([[x] for x in symbolic_syndrome(A, q, p)], A.rows, 1)
            if Tc @ sS != sA:
                consistent = False
    if A.is_polynomial():
        tS, tA = syndrome_table(S, W), syndrome_table(A, W)
        pS, pA = tS.partition(), tA.partition()
        equal = pS == pA
        n_err, n_cls = len(tS.entries), len(pS)
    else:
        # rational generators: the partition is taken from exact symbolic syndromes
        def key(M, q, t, p):
            return tuple(str(v) for v in symbolic_syndrome(M, q, p, t))

        errs = [(q, t, p) for q in range(S.n) for t in range(3) for p in PAULIS]
        part = []
        for M in (S, A):
            groups = defaultdict(set)
            for e in errs:
                groups[key(M, *e)].add(e)
            part.append({frozenset(v) for v in groups.values()})
        equal = part[0] == part[1]
        n_err, n_cls = len(errs), len(part[0])
    return SyndromeComparison(equal, consistent, n_err, n_cls)
