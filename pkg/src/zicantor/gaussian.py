"""Exact arithmetic in Z[i] and Q(i).

All values are immutable and use Python's arbitrary-precision ``int``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _igcd
from typing import Union

from .errors import DomainError, ParseError

IntLike = Union[int, "GaussInt"]


class GaussInt:
    """A Gaussian integer ``re + im*i``."""

    __slots__ = ("re", "im")

    re: int
    im: int

    def __init__(self, re: int = 0, im: int = 0):
        object.__setattr__(self, "re", int(re))
        object.__setattr__(self, "im", int(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussInt is immutable")

    @classmethod
    def coerce(cls, value) -> GaussInt:
        if isinstance(value, GaussInt):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, tuple) and len(value) == 2:
            return cls(*value)
        if isinstance(value, str):
            return parse_gauss(value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian integer")

    # value semantics

    def __eq__(self, other):
        if isinstance(other, GaussInt):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def __repr__(self):
        return f"GaussInt({self.re}, {self.im})"

    def __str__(self):
        return format_gauss(self.re, self.im)

    def as_tuple(self) -> tuple[int, int]:
        return (self.re, self.im)

    # ring operations

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, int):
            return GaussInt(self.re + other, self.im)
        if isinstance(other, GaussInt):
            return GaussInt(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return GaussInt(self.re - other, self.im)
        if isinstance(other, GaussInt):
            return GaussInt(self.re - other.re, self.im - other.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return GaussInt(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return GaussInt(self.re * other, self.im * other)
        if isinstance(other, GaussInt):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussInt(a * c - b * d, a * d + b * c)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative exponent; use GaussRat for inverses")
        result = GaussInt(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        return euclid_divmod(self, other)

    def __floordiv__(self, other):
        return euclid_divmod(self, other)[0]

    def __mod__(self, other):
        return euclid_divmod(self, other)[1]

    def __truediv__(self, other):
        return GaussRat(self, other)

    def __rtruediv__(self, other):
        return GaussRat(other, self)

    def conjugate(self) -> GaussInt:
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1


I = GaussInt(0, 1)
ONE = GaussInt(1, 0)
ZERO = GaussInt(0, 0)
UNITS = (ONE, I, GaussInt(-1, 0), GaussInt(0, -1))


def norm(z: IntLike) -> int:
    z = GaussInt.coerce(z)
    return z.re * z.re + z.im * z.im


def _round_half_up(num: int, den: int) -> int:
    # den > 0; nearest integer to num/den, ties toward +inf
    return (2 * num + den) // (2 * den)


def euclid_divmod(a: IntLike, b: IntLike) -> tuple[GaussInt, GaussInt]:
    """Return ``(q, r)`` with ``a = q*b + r`` and ``norm(r) < norm(b)``.

    ``q`` rounds each component of ``a * conj(b) / norm(b)`` to the nearest
    integer, halves going toward +infinity.
    """
    a = GaussInt.coerce(a)
    b = GaussInt.coerce(b)
    n = b.re * b.re + b.im * b.im
    if n == 0:
        raise DomainError("division by zero Gaussian integer")
    # a * conj(b)
    x = a.re * b.re + a.im * b.im
    y = a.im * b.re - a.re * b.im
    q = GaussInt(_round_half_up(x, n), _round_half_up(y, n))
    return q, a - q * b


def divides(d: IntLike, z: IntLike) -> bool:
    """True iff ``d | z`` in Z[i] (``0 | 0`` only)."""
    d = GaussInt.coerce(d)
    z = GaussInt.coerce(z)
    n = d.norm()
    if n == 0:
        return not z
    return (z.re * d.re + z.im * d.im) % n == 0 and (z.im * d.re - z.re * d.im) % n == 0


def exact_div(z: IntLike, d: IntLike) -> GaussInt:
    """``z / d`` when the division is exact, otherwise :class:`DomainError`."""
    d = GaussInt.coerce(d)
    z = GaussInt.coerce(z)
    n = d.norm()
    if n == 0:
        raise DomainError("division by zero Gaussian integer")
    x, rx = divmod(z.re * d.re + z.im * d.im, n)
    y, ry = divmod(z.im * d.re - z.re * d.im, n)
    if rx or ry:
        raise DomainError(f"{d} does not divide {z}")
    return GaussInt(x, y)


def canonical_associate(z: IntLike) -> tuple[GaussInt, GaussInt]:
    """Return ``(u, u*z)`` where ``u*z`` has ``re > 0`` and ``im >= 0``.

    Zero maps to ``(1, 0)``.
    """
    z = GaussInt.coerce(z)
    a, b = z.re, z.im
    if a == 0 and b == 0:
        return ONE, ZERO
    if a > 0 and b >= 0:
        return ONE, z
    if a <= 0 and b > 0:
        # multiply by -i: (a+bi)(-i) = b - ai
        return UNITS[3], GaussInt(b, -a)
    if a < 0 and b <= 0:
        return UNITS[2], GaussInt(-a, -b)
    # a >= 0, b < 0: multiply by i
    return I, GaussInt(-b, a)


def canonical(z: IntLike) -> GaussInt:
    return canonical_associate(z)[1]


def are_associates(a: IntLike, b: IntLike) -> bool:
    return canonical(a) == canonical(b)


def gcd(a: IntLike, b: IntLike) -> GaussInt:
    """Canonical-associate greatest common divisor."""
    a = GaussInt.coerce(a)
    b = GaussInt.coerce(b)
    if not a and not b:
        raise DomainError("gcd(0, 0) is undefined")
    while b:
        a, b = b, euclid_divmod(a, b)[1]
    return canonical(a)


def lcm(a: IntLike, b: IntLike) -> GaussInt:
    a = GaussInt.coerce(a)
    b = GaussInt.coerce(b)
    if not a or not b:
        return ZERO
    return canonical(exact_div(a * b, gcd(a, b)))


def content(z: IntLike) -> int:
    """Largest positive rational integer dividing ``z`` (0 for ``z == 0``)."""
    z = GaussInt.coerce(z)
    return _igcd(z.re, z.im)


class GaussRat:
    """An element of Q(i) stored as ``num/den`` in lowest terms.

    ``den`` is the canonical associate (first quadrant), so equal values have
    identical fields and hash alike.
    """

    __slots__ = ("num", "den")

    num: GaussInt
    den: GaussInt

    def __init__(self, num: IntLike | GaussRat = 0, den: IntLike | GaussRat = 1):
        if isinstance(num, GaussRat) or isinstance(den, GaussRat):
            num = GaussRat.coerce(num)
            den = GaussRat.coerce(den)
            n, d = num.num * den.den, num.den * den.num
        else:
            n, d = GaussInt.coerce(num), GaussInt.coerce(den)
        if not d:
            raise DomainError("zero denominator")
        if not n:
            n, d = ZERO, ONE
        else:
            g = gcd(n, d)
            if g != ONE:
                n, d = exact_div(n, g), exact_div(d, g)
            u, d = canonical_associate(d)
            n = n * u
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def _raw(cls, num: GaussInt, den: GaussInt) -> GaussRat:
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def coerce(cls, value) -> GaussRat:
        if isinstance(value, GaussRat):
            return value
        if isinstance(value, (int, GaussInt)):
            return cls._raw(GaussInt.coerce(value), ONE)
        if isinstance(value, Fraction):
            return cls(value.numerator, value.denominator)
        if isinstance(value, str):
            return parse_gauss_rat(value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __eq__(self, other):
        if isinstance(other, (int, GaussInt, Fraction)):
            other = GaussRat.coerce(other)
        if isinstance(other, GaussRat):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num.re, self.num.im, self.den.re, self.den.im))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"GaussRat({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        num, den = str(self.num), str(self.den)
        if self.num.re and self.num.im:
            num = f"({num})"
        if self.den.re and self.den.im:
            den = f"({den})"
        return f"{num}/{den}"

    def is_integral(self) -> bool:
        return self.den == ONE

    @property
    def real(self) -> Fraction:
        n = self.den.norm()
        return Fraction(self.num.re * self.den.re + self.num.im * self.den.im, n)

    @property
    def imag(self) -> Fraction:
        n = self.den.norm()
        return Fraction(self.num.im * self.den.re - self.num.re * self.den.im, n)

    def abs2(self) -> Fraction:
        """Squared modulus as an exact fraction."""
        return Fraction(self.num.norm(), self.den.norm())

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.real, self.imag)

    def __neg__(self):
        return GaussRat._raw(-self.num, self.den)

    def __add__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        if not other:
            raise DomainError("division by zero")
        return GaussRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) / self

    def __pow__(self, n: int):
        if n >= 0:
            return GaussRat(self.num**n, self.den**n)
        if not self:
            raise DomainError("zero to a negative power")
        return GaussRat(self.den ** (-n), self.num ** (-n))

    def conjugate(self) -> GaussRat:
        return GaussRat(self.num.conjugate(), self.den.conjugate())


# literals

_GAUSS_RE = re.compile(
    r"(?P<pure>[+-]?\d*)i"
    r"|(?P<real>[+-]?\d+)(?:(?P<sign>[+-])(?P<imag>\d*)i)?"
)


def format_gauss(re_: int, im: int) -> str:
    if im == 0:
        return str(re_)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = f"{im}i"
    if re_ == 0:
        return imag
    if im > 0:
        return f"{re_}+{imag}"
    return f"{re_}{imag}"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise ParseError(message, self.text, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def gauss(self) -> GaussInt:
        self.skip_ws()
        m = _GAUSS_RE.match(self.text, self.pos)
        if m is None or m.end() == self.pos:
            self.error("expected a Gaussian integer literal")
        self.pos = m.end()
        if m.group("pure") is not None:
            digits = m.group("pure")
            sign = -1 if digits.startswith("-") else 1
            digits = digits.lstrip("+-")
            return GaussInt(0, sign * (int(digits) if digits else 1))
        real = int(m.group("real"))
        if m.group("sign") is None:
            return GaussInt(real, 0)
        imag = int(m.group("imag")) if m.group("imag") else 1
        return GaussInt(real, imag if m.group("sign") == "+" else -imag)

    def term(self) -> GaussInt:
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == "(":
            self.pos += 1
            value = self.gauss()
            self.skip_ws()
            if self.pos >= len(self.text) or self.text[self.pos] != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        return self.gauss()

    def finish(self):
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing text")


def parse_gauss(text: str) -> GaussInt:
    """Parse a literal such as ``"-2+i"``, ``"3"``, ``"-i"``, ``"4i"``."""
    p = _Parser(text)
    value = p.term()
    p.finish()
    return value


def parse_gauss_rat(text: str) -> GaussRat:
    """Parse ``"3/4"``, ``"(1+2i)/(1-i)"``, ``"-i/2"`` or a plain Gaussian integer."""
    p = _Parser(text)
    num = p.term()
    p.skip_ws()
    den = ONE
    if p.pos < len(text) and text[p.pos] == "/":
        p.pos += 1
        slash = p.pos
        den = p.term()
        if not den:
            p.error("zero denominator", slash)
    p.finish()
    return GaussRat(num, den)
