"""Denominator height ``H(a + bi) = (a*a + b*b) / gcd(a, b)``.

For ``alpha != 0`` every ``omega / alpha`` lies in ``(1/H(alpha)) Z[i]``, which
makes ``H`` the natural size measure for denominators in Q(i).
"""

from __future__ import annotations

from math import gcd

from .errors import DomainError
from .gaussian import GaussInt, IntLike
from .primes import PrimeClass, classify, conjugate_associate, is_prime


def height(alpha: IntLike) -> int:
    alpha = GaussInt.coerce(alpha)
    if not alpha:
        return 0
    return alpha.norm() // gcd(alpha.re, alpha.im)


def height_prime_power(gamma: IntLike, n: int) -> int:
    """``H(gamma**n)`` for a Gaussian prime, from the closed form."""
    gamma = GaussInt.coerce(gamma)
    if n < 0:
        raise DomainError("exponent must be non-negative")
    if not is_prime(gamma):
        raise DomainError(f"{gamma} is not a Gaussian prime")
    cls = classify(gamma)
    if cls is PrimeClass.TYPE_I:
        return abs(gamma.re + gamma.im) ** n
    if cls is PrimeClass.TYPE_II:
        return 2 ** (n - n // 2)
    return gamma.norm() ** n


def height_conjugate_pair(alpha: IntLike, n: int, m: int) -> int:
    """``H(alpha**n * conj(alpha)**m)`` for a Type III prime ``alpha``.

    The conjugate's canonical associate is taken internally.
    """
    alpha = GaussInt.coerce(alpha)
    if n < 0 or m < 0:
        raise DomainError("exponents must be non-negative")
    if not is_prime(alpha) or classify(alpha) is not PrimeClass.TYPE_III:
        raise DomainError(f"{alpha} is not a Type III prime")
    return alpha.norm() ** max(n, m)


def conjugate_pair_product(alpha: IntLike, n: int, m: int) -> GaussInt:
    """The Gaussian integer ``alpha**n * conj'(alpha)**m`` that the closed form describes."""
    alpha = GaussInt.coerce(alpha)
    return alpha**n * conjugate_associate(alpha) ** m
