"""Gaussian primes: classification, two-squares, factorization, valuations."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt

from sympy import factorint, isprime
from sympy.ntheory import sqrt_mod

from .errors import DomainError, ResourceCapError
from .gaussian import GaussInt, IntLike, canonical, canonical_associate, divides, exact_div

#: rational integers above this are refused by :func:`factor_integer`
FACTOR_LIMIT = 1 << 128

_BRUTE_TWO_SQUARES = 10**6


class PrimeClass(enum.Enum):
    TYPE_I = "I"  # associate of a rational prime 3 mod 4
    TYPE_II = "II"  # associate of 1+i
    TYPE_III = "III"  # norm is a rational prime 1 mod 4

    def __str__(self):
        return f"Type{self.value}"


def factor_integer(n: int) -> dict[int, int]:
    """Factor a positive rational integer (trial division, then Pollard rho)."""
    if n <= 0:
        raise DomainError(f"cannot factor {n}")
    if n > FACTOR_LIMIT:
        raise ResourceCapError(f"integer {n} exceeds the factoring limit 2**128", FACTOR_LIMIT)
    return dict(sorted(factorint(n).items()))


def _rational_prime_3mod4(z: GaussInt) -> int | None:
    # |z| when z is an associate of a rational prime q = 3 mod 4
    if z.re and z.im:
        return None
    q = abs(z.re + z.im)
    if q % 4 == 3 and isprime(q):
        return q
    return None


def is_prime(z: IntLike) -> bool:
    z = GaussInt.coerce(z)
    n = z.norm()
    if n == 2:
        return True
    if n % 4 == 1 and isprime(n):
        return True
    return _rational_prime_3mod4(z) is not None


def classify(p: IntLike) -> PrimeClass:
    p = GaussInt.coerce(p)
    n = p.norm()
    if n == 2:
        return PrimeClass.TYPE_II
    if n % 4 == 1 and isprime(n):
        return PrimeClass.TYPE_III
    if _rational_prime_3mod4(p) is not None:
        return PrimeClass.TYPE_I
    raise DomainError(f"{p} is not a Gaussian prime")


def two_squares(p: int) -> tuple[int, int]:
    """The unique ``(s, t)`` with ``s*s + t*t == p`` and ``0 < s < t``, for prime ``p = 1 mod 4``."""
    if p % 4 != 1 or not isprime(p):
        raise DomainError(f"{p} is not a rational prime congruent to 1 mod 4")
    if p < _BRUTE_TWO_SQUARES:
        for s in range(1, isqrt(p // 2) + 1):
            t2 = p - s * s
            t = isqrt(t2)
            if t * t == t2:
                return (s, t)
        raise AssertionError("unreachable for p = 1 mod 4")
    # Euclid on (p, sqrt(-1) mod p) stops at the first remainder below sqrt(p)
    a, b = p, sqrt_mod(-1, p)
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    c = isqrt(p - b * b)
    assert b * b + c * c == p
    return (min(b, c), max(b, c))


@dataclass(frozen=True)
class Factorization:
    """``unit * prod(prime**exp)`` with canonical, pairwise non-associate primes."""

    unit: GaussInt
    factors: tuple[tuple[GaussInt, int], ...]

    def value(self) -> GaussInt:
        z = self.unit
        for p, e in self.factors:
            z = z * p**e
        return z

    def primes(self) -> tuple[GaussInt, ...]:
        return tuple(p for p, _ in self.factors)


def _strip(z: GaussInt, p: GaussInt) -> tuple[GaussInt, int]:
    e = 0
    while divides(p, z):
        z = exact_div(z, p)
        e += 1
    return z, e


def _prime_key(p: GaussInt):
    return (p.norm(), p.re, p.im)


def gaussian_primes_over(q: int) -> tuple[GaussInt, ...]:
    """Canonical Gaussian primes lying over the rational prime ``q``."""
    if q == 2:
        return (GaussInt(1, 1),)
    if q % 4 == 3:
        return (GaussInt(q, 0),)
    s, t = two_squares(q)
    return tuple(sorted((GaussInt(s, t), GaussInt(t, s)), key=_prime_key))


def factor(z: IntLike) -> Factorization:
    """Unique factorization of a nonzero Gaussian integer."""
    z = GaussInt.coerce(z)
    if not z:
        raise DomainError("cannot factor 0")
    found = []
    rest = z
    for q in factor_integer(z.norm()):
        for p in gaussian_primes_over(q):
            rest, e = _strip(rest, p)
            if e:
                found.append((p, e))
    if rest.norm() != 1:
        raise AssertionError(f"factorization of {z} left non-unit cofactor {rest}")
    found.sort(key=lambda pe: _prime_key(pe[0]))
    return Factorization(rest, tuple(found))


def valuation(gamma: IntLike, alpha: IntLike) -> int:
    """Largest ``m`` with ``gamma**m | alpha``."""
    gamma = GaussInt.coerce(gamma)
    alpha = GaussInt.coerce(alpha)
    if not alpha:
        raise DomainError("valuation of 0 is infinite")
    if not is_prime(gamma):
        raise DomainError(f"{gamma} is not a Gaussian prime")
    return _strip(alpha, gamma)[1]


def conjugate_associate(p: IntLike) -> GaussInt:
    """Canonical associate of ``conj(p)``."""
    return canonical(GaussInt.coerce(p).conjugate())


def canonical_primes_up_to(max_norm: int) -> list[GaussInt]:
    """All canonical Gaussian primes of norm at most ``max_norm``, sorted by (norm, re)."""
    out = []
    for a in range(1, isqrt(max_norm) + 1):
        for b in range(0, isqrt(max_norm - a * a) + 1):
            z = GaussInt(a, b)
            if is_prime(z):
                out.append(z)
    out.sort(key=_prime_key)
    return out


def unit_part(z: IntLike) -> GaussInt:
    """The unit ``u`` with ``z = u * canonical(z)``."""
    u, _ = canonical_associate(z)
    return u.conjugate()
