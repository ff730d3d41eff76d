"""Residues modulo Gaussian integers, multiplicative orders and order lifting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

from .errors import DomainError
from .gaussian import ONE, GaussInt, IntLike, canonical, divides, euclid_divmod, gcd
from .height import height
from .primes import PrimeClass, classify, factor, factor_integer, is_prime


def reduce_mod(x: IntLike, modulus: IntLike) -> GaussInt:
    return euclid_divmod(x, modulus)[1]


def powmod(a: IntLike, e: int, modulus: IntLike) -> GaussInt:
    """``a**e`` reduced modulo ``modulus`` (Euclidean remainder)."""
    a = GaussInt.coerce(a)
    modulus = GaussInt.coerce(modulus)
    if e < 0:
        raise DomainError("negative exponent")
    result = reduce_mod(ONE, modulus)
    base = reduce_mod(a, modulus)
    while e:
        if e & 1:
            result = reduce_mod(result * base, modulus)
        e >>= 1
        if e:
            base = reduce_mod(base * base, modulus)
    return result


def congruent(x: IntLike, y: IntLike, modulus: IntLike) -> bool:
    return divides(modulus, GaussInt.coerce(x) - GaussInt.coerce(y))


@dataclass(frozen=True, eq=False)
class Residue:
    """Class of ``rep`` in Z[i]/(modulus)."""

    rep: GaussInt
    modulus: GaussInt

    @classmethod
    def of(cls, x: IntLike, modulus: IntLike) -> Residue:
        modulus = GaussInt.coerce(modulus)
        if not modulus:
            raise DomainError("modulus must be nonzero")
        return cls(reduce_mod(x, modulus), modulus)

    def __eq__(self, other):
        if isinstance(other, Residue):
            if not divides(self.modulus, other.modulus) or not divides(other.modulus, self.modulus):
                return False
            return congruent(self.rep, other.rep, self.modulus)
        if isinstance(other, (int, GaussInt)):
            return congruent(self.rep, other, self.modulus)
        return NotImplemented

    def __hash__(self):
        return hash(canonical(self.modulus))

    def __mul__(self, other):
        if isinstance(other, Residue):
            other = other.rep
        return Residue.of(self.rep * GaussInt.coerce(other), self.modulus)

    def __pow__(self, e: int):
        return Residue(powmod(self.rep, e, self.modulus), self.modulus)


def euler_phi_zi(gamma: IntLike) -> int:
    """Order of the unit group of Z[i]/(gamma)."""
    gamma = GaussInt.coerce(gamma)
    if not gamma:
        raise DomainError("phi(0) is undefined")
    phi = 1
    for p, k in factor(gamma).factors:
        n = p.norm()
        phi *= n ** (k - 1) * (n - 1)
    return phi


def _require_coprime(alpha: GaussInt, gamma: GaussInt):
    if not alpha and gamma.norm() == 1:
        return
    if gcd(alpha, gamma) != ONE:
        raise DomainError(f"{alpha} and {gamma} are not coprime")


def multiplicative_order(alpha: IntLike, gamma: IntLike) -> int:
    """Least ``k >= 1`` with ``alpha**k = 1 (mod gamma)``; 1 when ``gamma`` is a unit.

    Starts from the group order and strips prime factors while the power
    stays congruent to 1.
    """
    alpha = GaussInt.coerce(alpha)
    gamma = GaussInt.coerce(gamma)
    if not gamma:
        raise DomainError("modulus must be nonzero")
    if gamma.norm() == 1:
        return 1
    _require_coprime(alpha, gamma)
    k = euler_phi_zi(gamma)
    for q in factor_integer(k):
        while k % q == 0 and congruent(powmod(alpha, k // q, gamma), ONE, gamma):
            k //= q
    return k


def _capped_valuation(x: GaussInt, gamma: GaussInt, cap: int) -> int:
    v = 0
    while v < cap and divides(gamma, x):
        x = euclid_divmod(x, gamma)[0]
        v += 1
    return v


def valuation_of_power_minus_one(alpha: IntLike, e: int, gamma: IntLike) -> int | None:
    """``nu_gamma(alpha**e - 1)`` computed modulo growing powers of ``gamma``.

    Returns ``None`` when ``alpha**e == 1`` exactly (only possible for units).
    """
    alpha = GaussInt.coerce(alpha)
    gamma = GaussInt.coerce(gamma)
    if alpha.norm() == 1 and alpha ** (e % 4) == ONE:
        return None
    cap = 8
    while True:
        x = powmod(alpha, e, gamma**cap)
        v = _capped_valuation(x - 1, gamma, cap)
        if v < cap:
            return v
        cap *= 2


@dataclass(frozen=True)
class OrderLiftData:
    """Everything needed to read off ``ord(alpha; gamma**n)`` for every ``n``.

    ``d = ord(alpha; gamma)`` and ``m = nu_gamma(alpha**d - 1)`` (``None``
    when ``alpha**d == 1``).  For the prime above 2, ``chain[k]`` is
    ``nu_gamma(alpha**(2**k) - 1)``, recorded until it reaches 3; from
    there each squaring adds exactly 2.  For odd primes ``chain == (m,)``.
    """

    alpha: GaussInt
    gamma: GaussInt
    cls: PrimeClass
    d: int
    m: int | None
    chain: tuple[int | None, ...]

    @property
    def p(self) -> int:
        return height(self.gamma)


def lift_data(alpha: IntLike, gamma: IntLike) -> OrderLiftData:
    alpha = GaussInt.coerce(alpha)
    gamma = GaussInt.coerce(gamma)
    if not is_prime(gamma):
        raise DomainError(f"{gamma} is not a Gaussian prime")
    if divides(gamma, alpha):
        raise DomainError(f"{gamma} divides {alpha}")
    cls = classify(gamma)
    d = multiplicative_order(alpha, gamma)
    m = valuation_of_power_minus_one(alpha, d, gamma)
    chain: list[int | None] = [m]
    if cls is PrimeClass.TYPE_II:
        if d != 1:
            raise AssertionError("alpha is always 1 modulo 1+i when coprime")
        k = 0
        while chain[-1] is not None and chain[-1] < 3:
            k += 1
            chain.append(valuation_of_power_minus_one(alpha, 2**k, gamma))
    return OrderLiftData(alpha, gamma, cls, d, m, tuple(chain))


def _validate(data: OrderLiftData):
    if data.d < 1 or not data.chain or data.chain[0] != data.m:
        raise DomainError("inconsistent order-lift data")
    if data.m is not None and data.m < 1:
        raise DomainError("m must be at least 1")
    if data.cls is PrimeClass.TYPE_II:
        if data.d != 1:
            raise DomainError("order modulo 1+i must be 1")
        finite = [v for v in data.chain if v is not None]
        if finite != sorted(set(finite)) or (data.chain[-1] is not None and data.chain[-1] < 3):
            raise DomainError("malformed valuation chain")
    elif len(data.chain) != 1:
        raise DomainError("valuation chain only applies to 1+i")


def order_lift(data: OrderLiftData, n: int) -> int:
    """``ord(alpha; gamma**n)`` without arithmetic modulo ``gamma**n``."""
    if n < 1:
        raise DomainError("n must be positive")
    _validate(data)
    if data.cls is not PrimeClass.TYPE_II:
        if data.m is None or n <= data.m:
            return data.d
        return data.p ** (n - data.m) * data.d
    for k, mk in enumerate(data.chain):
        if mk is None or mk >= n:
            return 2**k
    k0 = len(data.chain) - 1
    last = data.chain[-1]
    return 2 ** (k0 + (n - last + 1) // 2)


def crt_order(alpha: IntLike, gamma: IntLike) -> int:
    """``ord(alpha; gamma)`` as the lcm of lifted orders over the prime-power factors."""
    alpha = GaussInt.coerce(alpha)
    gamma = GaussInt.coerce(gamma)
    if not gamma:
        raise DomainError("modulus must be nonzero")
    if gamma.norm() == 1:
        return 1
    _require_coprime(alpha, gamma)
    result = 1
    for p, k in factor(gamma).factors:
        result = lcm(result, order_lift(lift_data(alpha, p), k))
    return result


@dataclass(frozen=True)
class RootRational:
    """The non-negative real ``sqrt(square)``, compared exactly."""

    square: Fraction

    def exact(self) -> Fraction | None:
        n, d = self.square.numerator, self.square.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def __float__(self):
        return float(self.square) ** 0.5

    def __str__(self):
        q = self.exact()
        return str(q) if q is not None else f"sqrt({self.square})"

    def _cmp_square(self, other) -> Fraction:
        if isinstance(other, RootRational):
            return other.square
        other = Fraction(other)
        if other < 0:
            return Fraction(-1)
        return other * other

    def __le__(self, other):
        return self.square <= self._cmp_square(other)

    def __lt__(self, other):
        return self.square < self._cmp_square(other)

    def __ge__(self, other):
        return self.square >= self._cmp_square(other)

    def __gt__(self, other):
        return self.square > self._cmp_square(other)


@dataclass(frozen=True)
class LowerBoundCertificate:
    """Constants of the effective lower bound for ``ord(alpha; S-smooth modulus)``.

    ``c2`` and ``c3`` involve ``2**(1/2)`` so they are stored squared.
    """

    alpha: GaussInt
    gamma2: GaussInt | None
    pairs: tuple[tuple[GaussInt, GaussInt], ...]
    singles: tuple[GaussInt, ...]
    lifts: tuple[OrderLiftData, ...]  # pairs flattened, then singles
    gamma2_lift: OrderLiftData | None
    q: int
    c2_sq: Fraction
    c3_sq: Fraction

    @property
    def c2(self) -> RootRational:
        return RootRational(self.c2_sq)

    @property
    def c3(self) -> RootRational:
        return RootRational(self.c3_sq)

    @property
    def width(self) -> int:
        return 1 + 2 * len(self.pairs) + len(self.singles)


def build_lower_bound_certificate(
    alpha: IntLike,
    gamma2: IntLike | None = None,
    pairs=(),
    singles=(),
) -> LowerBoundCertificate:
    alpha = GaussInt.coerce(alpha)
    g2 = GaussInt.coerce(gamma2) if gamma2 is not None else None
    prs = tuple((GaussInt.coerce(a), GaussInt.coerce(b)) for a, b in pairs)
    sgl = tuple(GaussInt.coerce(b) for b in singles)
    family = ([g2] if g2 is not None else []) + [p for pr in prs for p in pr] + list(sgl)

    for p in family:
        if not is_prime(p):
            raise DomainError(f"{p} is not a Gaussian prime")
        if divides(p, alpha):
            raise DomainError(f"{p} divides {alpha}")
    canon = [canonical(p) for p in family]
    if len(set(canon)) != len(canon):
        raise DomainError("family contains associate primes")
    if g2 is not None and classify(g2) is not PrimeClass.TYPE_II:
        raise DomainError(f"{g2} is not the prime above 2")
    for a, b in prs:
        if classify(a) is not PrimeClass.TYPE_III or height(a) != height(b):
            raise DomainError(f"({a}, {b}) is not a conjugate Type III pair")
    single_heights = [height(b) for b in sgl]
    if any(classify(b) is PrimeClass.TYPE_II for b in sgl):
        raise DomainError("the prime above 2 must be passed as gamma2")
    if len(set(single_heights)) != len(single_heights):
        raise DomainError("single primes must have distinct heights")
    if alpha.norm() <= 1:
        raise DomainError("alpha must not be zero or a root of unity")

    lifts = tuple(lift_data(alpha, p) for pr in prs for p in pr) + tuple(lift_data(alpha, b) for b in sgl)
    q = 1
    for data in lifts:
        q *= data.p**data.m
    g2_lift = None
    c2_sq = Fraction(1)
    if g2 is not None:
        g2_lift = lift_data(alpha, g2)
        # valuation once squaring adds exactly 2 each time
        m_star = g2_lift.chain[-1]
        c2_sq = Fraction(1, 2 ** (m_star + 2))
    return LowerBoundCertificate(alpha, g2, prs, sgl, lifts, g2_lift, q, c2_sq, c2_sq / (q * q))


def order_lower_bound(cert: LowerBoundCertificate, exponents) -> RootRational:
    """Lower bound for ``ord(alpha; gamma2**h * prod pairs * prod singles)``.

    ``exponents`` is ``(h, r_1, s_1, ..., r_q, s_q, n_1, ..., n_k)``.
    """
    exps = tuple(int(e) for e in exponents)
    if len(exps) != cert.width:
        raise DomainError(f"expected {cert.width} exponents, got {len(exps)}")
    if any(e < 0 for e in exps):
        raise DomainError("exponents must be non-negative")
    h = exps[0]
    if cert.gamma2 is None and h:
        raise DomainError("no prime above 2 in this family")
    sq = cert.c3_sq * 2**h
    pos = 1
    for eta, _ in cert.pairs:
        e = max(exps[pos], exps[pos + 1])
        sq *= height(eta) ** (2 * e)
        pos += 2
    for b in cert.singles:
        sq *= height(b) ** (2 * exps[pos])
        pos += 1
    return RootRational(sq)


def certificate_modulus(cert: LowerBoundCertificate, exponents) -> GaussInt:
    """The modulus described by ``exponents`` in ``cert``'s layout."""
    exps = tuple(exponents)
    z = ONE
    if cert.gamma2 is not None:
        z = z * cert.gamma2 ** exps[0]
    pos = 1
    for a, b in cert.pairs:
        z = z * a ** exps[pos] * b ** exps[pos + 1]
        pos += 2
    for b in cert.singles:
        z = z * b ** exps[pos]
        pos += 1
    return z
