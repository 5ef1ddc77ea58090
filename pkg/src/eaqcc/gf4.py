"""Import a classical GF(4) convolutional generator as a quantum check matrix."""

from __future__ import annotations

import re
from dataclasses import dataclass

from eaqcc.checkmatrix import CheckMatrix
from eaqcc.laurent import LaurentPoly
from eaqcc.polymatrix import PolyMatrix

# GF(4) = {0, 1, w, W} with W = w^2 = w + 1, encoded as 2-bit ints so that
# addition is XOR: 0 -> 0, 1 -> 1, w -> 2, W -> 3.
SYMBOLS = {"0": 0, "1": 1, "w": 2, "W": 3}
NAMES = {v: k for k, v in SYMBOLS.items()}
OMEGA, OMEGA_BAR = 2, 3

# log table: 1 = w^0, w = w^1, W = w^2
_LOG = {1: 0, 2: 1, 3: 2}
_EXP = {0: 1, 1: 2, 2: 3}

# 0 -> I, w -> X, 1 -> Y, W -> Z as (z bit, x bit)
PAULI = {0: (0, 0), OMEGA: (0, 1), 1: (1, 1), OMEGA_BAR: (1, 0)}
PAULI_NAME = {0: "I", OMEGA: "X", 1: "Y", OMEGA_BAR: "Z"}


class GF4ParseError(ValueError):
    pass


def gf4_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return _EXP[(_LOG[a] + _LOG[b]) % 3]


def gf4_add(a: int, b: int) -> int:
    return a ^ b


@dataclass(frozen=True)
class GF4Generator:
    frames: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.frames:
            raise GF4ParseError("generator has no frames")
        n = len(self.frames[0])
        if any(len(f) != n for f in self.frames):
            raise GF4ParseError("frames have unequal length")
        if not any(any(f) for f in self.frames):
            raise GF4ParseError("generator is identically zero")

    @property
    def n(self) -> int:
        return len(self.frames[0])

    def scaled(self, a: int) -> GF4Generator:
        return GF4Generator(tuple(tuple(gf4_mul(a, x) for x in f) for f in self.frames))

    def pauli_string(self) -> str:
        """Frames rendered under 0->I, w->X, 1->Y, W->Z, joined by '|'."""
        return "|".join("".join(PAULI_NAME[x] for x in f) for f in self.frames)

    def __str__(self):
        return "|".join("".join(NAMES[x] for x in f) for f in self.frames)


def parse_gf4(text: str) -> GF4Generator:
    """Parse ``frame ('|' frame)*`` over the alphabet {0, 1, w, W}.

    Leading and trailing all-zero frames are dropped.
    """
    s = text.strip()
    if not s:
        raise GF4ParseError("empty generator")
    frames = []
    for k, chunk in enumerate(s.split("|")):
        chunk = chunk.strip()
        bad = [c for c in chunk if c not in SYMBOLS]
        if bad or not chunk:
            raise GF4ParseError(f"frame {k}: bad symbol {bad[0] if bad else '(empty frame)'!r} in {chunk!r}")
        frames.append(tuple(SYMBOLS[c] for c in chunk))
    if len({len(f) for f in frames}) != 1:
        raise GF4ParseError(f"ragged frames: lengths {[len(f) for f in frames]}")
    while frames and not any(frames[0]):
        frames.pop(0)
    while frames and not any(frames[-1]):
        frames.pop()
    return GF4Generator(tuple(frames))


_FILE = re.compile(r"^\s*gf4\s+n=(\d+)\s*:\s*(.+?)\s*$")


def parse_gf4_file(text: str) -> GF4Generator:
    """Parse the one-line ``gf4 n=<n>: <frames>`` file format."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 1:
        raise GF4ParseError("gf4 file must contain exactly one line")
    m = _FILE.match(lines[0])
    if not m:
        raise GF4ParseError(f"bad gf4 line {lines[0]!r}")
    g = parse_gf4(m[2])
    if g.n != int(m[1]):
        raise GF4ParseError(f"header says n={m[1]} but frames have length {g.n}")
    return g


def format_gf4_file(g: GF4Generator) -> str:
    return f"gf4 n={g.n}: {g}\n"


def _row(g: GF4Generator) -> tuple[list[LaurentPoly], list[LaurentPoly]]:
    zs = [[] for _ in range(g.n)]
    xs = [[] for _ in range(g.n)]
    for t, frame in enumerate(g.frames):
        for q, sym in enumerate(frame):
            zb, xb = PAULI[sym]
            if zb:
                zs[q].append(t)
            if xb:
                xs[q].append(t)
    return [LaurentPoly.from_support(e) for e in zs], [LaurentPoly.from_support(e) for e in xs]


def import_gf4(g: GF4Generator) -> CheckMatrix:
    """Two check-matrix rows: the W-multiple, then the w-multiple."""
    za, xa = _row(g.scaled(OMEGA_BAR))
    zb, xb = _row(g.scaled(OMEGA))
    return CheckMatrix(PolyMatrix([za, zb], 2, g.n), PolyMatrix([xa, xb], 2, g.n))
