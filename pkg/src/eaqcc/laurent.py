"""Binary Laurent polynomials and rational functions in the delay variable D.

A :class:`LaurentPoly` is stored as an integer bit mask plus the exponent of
bit 0, so ``D^-2 + 1`` is ``bits=0b101, low=-2``.  The mask is always odd
(lowest set bit at ``low``) except for the zero polynomial, which is
``bits=0, low=0``.  Arithmetic is carry-less (GF(2) coefficients).
"""

from __future__ import annotations

import re
from typing import Union

EXP_LIMIT = 1 << 16


class PolyParseError(ValueError):
    """Malformed polynomial text."""

    def __init__(self, text: str, pos: int, msg: str = "unexpected token"):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def _clmul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _pdivmod(a: int, b: int) -> tuple[int, int]:
    """Divide ordinary GF(2) polynomials given as bit masks."""
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = b.bit_length() - 1
    q = 0
    while a and a.bit_length() - 1 >= db:
        shift = a.bit_length() - 1 - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def _reverse(bits: int) -> int:
    return int(bin(bits)[:1:-1], 2) if bits else 0


class LaurentPoly:
    __slots__ = ("bits", "low")

    def __init__(self, bits: int = 0, low: int = 0):
        if bits < 0:
            raise ValueError("bit mask must be non-negative")
        if bits == 0:
            low = 0
        else:
            tz = (bits & -bits).bit_length() - 1
            bits >>= tz
            low += tz
            if low < -EXP_LIMIT or low + bits.bit_length() - 1 > EXP_LIMIT:
                raise OverflowError(f"exponent outside [-{EXP_LIMIT}, {EXP_LIMIT}]")
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "low", low)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # construction -----------------------------------------------------------
    @classmethod
    def from_support(cls, exps) -> LaurentPoly:
        exps = list(exps)
        if not exps:
            return ZERO
        lo = min(exps)
        bits = 0
        for e in exps:
            bits ^= 1 << (e - lo)
        return cls(bits, lo)

    @classmethod
    def monomial(cls, k: int) -> LaurentPoly:
        return cls(1, k)

    @classmethod
    def coerce(cls, value) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return ONE if value & 1 else ZERO
        if isinstance(value, str):
            return parse_poly(value)
        raise TypeError(f"cannot make a LaurentPoly from {value!r}")

    # queries ----------------------------------------------------------------
    @property
    def support(self) -> frozenset[int]:
        out = []
        b, e = self.bits, self.low
        while b:
            if b & 1:
                out.append(e)
            b >>= 1
            e += 1
        return frozenset(out)

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_monomial(self) -> bool:
        return self.bits == 1

    def is_one(self) -> bool:
        return self.bits == 1 and self.low == 0

    @property
    def valuation(self) -> int:
        if not self.bits:
            raise ValueError("zero polynomial has no valuation")
        return self.low

    @property
    def degree(self) -> int:
        if not self.bits:
            raise ValueError("zero polynomial has no degree")
        return self.low + self.bits.bit_length() - 1

    @property
    def span(self) -> int:
        """Degree after normalizing to valuation 0 (the Euclidean norm)."""
        return self.bits.bit_length() - 1 if self.bits else -1

    def coeff(self, k: int) -> int:
        i = k - self.low
        return (self.bits >> i) & 1 if i >= 0 else 0

    def normalized(self) -> LaurentPoly:
        """Associate with valuation 0 (strip the unit D^v)."""
        return LaurentPoly(self.bits, 0)

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly(self.bits, self.low + k) if self.bits else self

    def conj(self) -> LaurentPoly:
        """Substitute D -> D^-1."""
        if not self.bits:
            return self
        return LaurentPoly(_reverse(self.bits), -self.degree)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, int):
                other = LaurentPoly.coerce(other)
            else:
                return NotImplemented
        if not self.bits:
            return other
        if not other.bits:
            return self
        lo = min(self.low, other.low)
        return LaurentPoly((self.bits << (self.low - lo)) ^ (other.bits << (other.low - lo)), lo)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, int):
                other = LaurentPoly.coerce(other)
            else:
                return NotImplemented
        if not self.bits or not other.bits:
            return ZERO
        return LaurentPoly(_clmul(self.bits, other.bits), self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                return RationalFunc(ONE, self) ** (-k)
            return LaurentPoly(1, self.low * k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        if isinstance(other, LaurentPoly):
            return RationalFunc(self, other).simplify()
        if isinstance(other, RationalFunc):
            return (RationalFunc(self, ONE) / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return LaurentPoly.coerce(other) / self
        return NotImplemented

    def inverse(self):
        if not self.bits:
            raise ZeroDivisionError("inverse of zero")
        if self.bits == 1:
            return LaurentPoly(1, -self.low)
        return RationalFunc(ONE, self)

    def simplify(self) -> LaurentPoly:
        return self

    def divmod(self, q: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """Euclidean division in F2[D, D^-1] with span(remainder) < span(q).

        Both operands are normalized to ordinary polynomials first; the
        returned pair satisfies ``self == quotient * q + remainder`` exactly.
        """
        if not q.bits:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.bits:
            return ZERO, ZERO
        a, r = _pdivmod(self.bits, q.bits)
        return LaurentPoly(a, self.low - q.low), LaurentPoly(r, self.low)

    def __floordiv__(self, q):
        return self.divmod(q)[0]

    def __mod__(self, q):
        return self.divmod(q)[1]

    def divides(self, other: LaurentPoly) -> bool:
        return other.divmod(self)[1].is_zero()

    def exact_div(self, q: LaurentPoly) -> LaurentPoly:
        a, r = self.divmod(q)
        if r.bits:
            raise ArithmeticError(f"{q} does not divide {self}")
        return a

    def residue(self, modulus: LaurentPoly) -> LaurentPoly:
        """Canonical representative of self modulo a valuation-0 modulus.

        Result is an ordinary polynomial of degree < deg(modulus).  Negative
        powers of D are handled through D^-1 = (modulus - 1) / D mod modulus.
        """
        if not modulus.bits or modulus.low != 0 or not modulus.bits & 1:
            raise ValueError("modulus must be a nonzero polynomial with constant term 1")
        m = modulus.bits
        if m == 1 or not self.bits:
            return ZERO
        r = _pdivmod(self.bits, m)[1]
        v = self.low
        if v >= 0:
            r = _pdivmod(r << v, m)[1]
        else:
            inv_d = m >> 1
            step = inv_d
            k = -v
            while k:
                if k & 1:
                    r = _pdivmod(_clmul(r, step), m)[1]
                step = _pdivmod(_clmul(step, step), m)[1]
                k >>= 1
        return LaurentPoly(r, 0)

    # comparisons / display --------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.bits == other.bits and self.low == other.low
        if isinstance(other, int) and not isinstance(other, bool):
            return other in (0, 1) and self == LaurentPoly.coerce(other)
        if isinstance(other, RationalFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash((self.bits, self.low))

    def __bool__(self):
        return bool(self.bits)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"


ZERO = LaurentPoly(0, 0)
ONE = LaurentPoly(1, 0)
D = LaurentPoly(1, 1)


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor, normalized to valuation 0."""
    a, b = p.normalized(), q.normalized()
    while b.bits:
        a, b = b, a.divmod(b)[1].normalized()
    return a


def xgcd(p: LaurentPoly, q: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """Return (g, u, v) with u*p + v*q = g and g = gcd(p, q) (valuation 0)."""
    r0, r1 = p, q
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1.bits:
        a, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 + a * s1
        t0, t1 = t1, t0 + a * t1
    if not r0.bits:
        return ZERO, ZERO, ZERO
    unit = LaurentPoly(1, -r0.low)
    return r0 * unit, s0 * unit, t0 * unit


class RationalFunc:
    """Ratio of binary Laurent polynomials, kept in lowest terms.

    Canonical form: denominator has valuation 0 (constant term 1), and the
    numerator and denominator share no nonunit factor.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = ONE):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num = num.shift(-den.low)
        den = den.normalized()
        if num.bits:
            g = gcd(num, den)
            if not g.is_one():
                num = num.exact_div(g)
                den = den.exact_div(g)
        else:
            den = ONE
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunc is immutable")

    @classmethod
    def coerce(cls, value) -> RationalFunc:
        if isinstance(value, RationalFunc):
            return value
        return cls(LaurentPoly.coerce(value), ONE)

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def simplify(self):
        """Demote to LaurentPoly when the denominator is 1."""
        return self.num if self.den.is_one() else self

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def conj(self):
        return RationalFunc(self.num.conj(), self.den.conj()).simplify()

    def __add__(self, other):
        try:
            o = RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if o.den == self.den:
            return RationalFunc(self.num + o.num, self.den).simplify()
        return RationalFunc(self.num * o.den + o.num * self.den, self.den * o.den).simplify()

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        try:
            o = RationalFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return RationalFunc(self.num * o.num, self.den * o.den).simplify()

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunc(self.den, self.num).simplify()

    def __truediv__(self, other):
        o = RationalFunc.coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return RationalFunc.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunc(self.num ** k, self.den ** k).simplify()

    def __eq__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            other = RationalFunc.coerce(other)
        if isinstance(other, RationalFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self.den.is_one():
            return hash(self.num)
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num.bits)

    def series(self, lo: int, hi: int) -> LaurentPoly:
        """Truncated expansion as a Laurent series in D^-1.

        Returns the coefficients at exponents in [lo, hi).  The expansion is
        the one that is bounded above (finitely many positive exponents),
        which is the inverse of the denominator in F2((D^-1)).
        """
        num, den = self.num, self.den
        if den.is_one():
            return LaurentPoly.from_support(e for e in num.support if lo <= e < hi)
        # 1/den with den = D^d (1 + lower terms in D^-1): expand in D^-1.
        d = den.degree
        rev = den.conj().shift(d)  # polynomial in D with constant term 1, equal to den(D^-1) D^d
        # 1/den = D^-d * 1/rev(D^-1); compute c(y) = 1/rev(y) as power series in y = D^-1.
        top = num.degree - d
        need = top - lo + 1
        if need <= 0:
            return LaurentPoly()
        rbits = rev.bits
        inv = 0
        # power series inverse of rev(y) (constant term 1) to `need` terms
        rem = 1
        for i in range(need):
            if (rem >> i) & 1:
                inv |= 1 << i
                rem ^= rbits << i
        # multiply numerator (as series in y with num(D) = D^deg * numrev(y))
        nrev = num.conj().shift(num.degree).bits
        prod = _clmul(nrev, inv) & ((1 << need) - 1)
        exps = [top - i for i in range(need) if (prod >> i) & 1]
        return LaurentPoly.from_support(e for e in exps if lo <= e < hi)

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def __repr__(self):
        return f"RationalFunc({str(self)!r})"


Scalar = Union[LaurentPoly, RationalFunc]


def is_zero(x) -> bool:
    return not bool(x)


def conj(x):
    return x.conj()


_TERM = re.compile(r"\s*(?:(1)|D(?:\^(-?\d+))?)\s*")


def parse_poly(text: str) -> LaurentPoly:
    """Parse ``0 | term (+ term)*`` with term in {1, D, D^k}."""
    s = text.strip()
    if s == "0":
        return ZERO
    if not s:
        raise PolyParseError(text, 0, "empty polynomial")
    offset = len(text) - len(text.lstrip())
    exps = []
    pos = 0
    while True:
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise PolyParseError(text, offset + pos)
        if m.group(1):
            exps.append(0)
        else:
            exps.append(int(m.group(2)) if m.group(2) is not None else 1)
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] != "+":
            raise PolyParseError(text, offset + pos)
        pos += 1
    return LaurentPoly.from_support(exps)


def parse_scalar(text: str) -> Scalar:
    """Parse a polynomial, or ``(num)/(den)`` for a rational entry."""
    s = text.strip()
    if s.startswith("(") and ")/(" in s and s.endswith(")"):
        num, den = s[1:-1].split(")/(", 1)
        return RationalFunc(parse_poly(num), parse_poly(den)).simplify()
    return parse_poly(s)


def format_poly(p: LaurentPoly) -> str:
    if not p.bits:
        return "0"
    terms = []
    for e in sorted(p.support):
        terms.append("1" if e == 0 else "D" if e == 1 else f"D^{e}")
    return "+".join(terms)


def format_scalar(x) -> str:
    return str(x)
