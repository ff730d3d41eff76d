"""Independent brute-force oracles on plain integer pairs.

Nothing here imports the library, so agreement with it is evidence.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def norm(a):
    return a[0] * a[0] + a[1] * a[1]


def divisible(a, m):
    # m | a  <=>  a * conj(m) has both parts divisible by N(m)
    n = norm(m)
    x = a[0] * m[0] + a[1] * m[1]
    y = a[1] * m[0] - a[0] * m[1]
    return x % n == 0 and y % n == 0


def reduce(a, m):
    # any representative works for the oracle; keep it small with floor division
    n = norm(m)
    x = a[0] * m[0] + a[1] * m[1]
    y = a[1] * m[0] - a[0] * m[1]
    q = (x // n, y // n)
    qm = mul(q, m)
    return (a[0] - qm[0], a[1] - qm[1])


def power(a, e):
    out = (1, 0)
    for _ in range(e):
        out = mul(out, a)
    return out


def is_one_mod(x, m):
    return divisible((x[0] - 1, x[1]), m)


def naive_order(alpha, m, budget=None):
    """Least k >= 1 with alpha**k = 1 (mod m) by repeated multiplication; None past the budget."""
    if norm(m) == 1:
        return 1
    x = reduce(alpha, m)
    k = 1
    while not is_one_mod(x, m):
        x = reduce(mul(x, alpha), m)
        k += 1
        if budget is not None and k > budget:
            return None
    return k


def powmod(a, e, m):
    out = (1, 0)
    base = reduce(a, m)
    while e:
        if e & 1:
            out = reduce(mul(out, base), m)
        base = reduce(mul(base, base), m)
        e >>= 1
    return out


def prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_exact_order(alpha, k, m):
    """alpha**k = 1 and alpha**(k/q) != 1 for every prime q | k."""
    if not is_one_mod(powmod(alpha, k, m), m):
        return False
    return all(not is_one_mod(powmod(alpha, k // q, m), m) for q in prime_factors(k))


def orders_along_powers(alpha, gamma, n_max):
    """ord(alpha; gamma**n) for n = 1..n_max, each found by stepping through powers of the previous order."""
    out = []
    k = 1
    mod = (1, 0)
    for _ in range(n_max):
        mod = mul(mod, gamma)
        step = powmod(alpha, k, mod)
        x = step
        j = 1
        while not is_one_mod(x, mod):
            x = reduce(mul(x, step), mod)
            j += 1
        k *= j
        out.append(k)
    return out


def naive_valuation(gamma, x):
    if x == (0, 0):
        return None
    v = 0
    mod = gamma
    while divisible(x, mod):
        v += 1
        mod = mul(mod, gamma)
    return v


def raw_height(a):
    if a == (0, 0):
        return 0
    return norm(a) // gcd(a[0], a[1])


def gaussian_integers(max_norm, include_zero=False):
    r = int(max_norm**0.5) + 1
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            n = a * a + b * b
            if n <= max_norm and (n or include_zero):
                yield (a, b)


def is_gaussian_prime(a):
    n = norm(a)
    if a[0] == 0 or a[1] == 0:
        q = abs(a[0] + a[1])
        return q % 4 == 3 and _is_rat_prime(q)
    return _is_rat_prime(n)


def _is_rat_prime(n):
    return n > 1 and all(n % p for p in range(2, int(n**0.5) + 1))


def canonical_primes(max_norm):
    return sorted(
        (z for z in gaussian_integers(max_norm) if z[0] > 0 and z[1] >= 0 and is_gaussian_prime(z)),
        key=lambda z: (norm(z), z[0]),
    )


def coprime(a, b):
    # a and b share no Gaussian prime factor; such a prime has norm dividing gcd(N(a), N(b))
    g = gcd(norm(a), norm(b))
    return not any(divisible(a, p) and divisible(b, p) for p in canonical_primes(g))


def in_middle_third(x: Fraction) -> bool:
    """Classical test: some ternary expansion of x avoids the digit 1."""
    if not 0 <= x <= 1:
        return False
    seen = set()
    while x not in seen:
        seen.add(x)
        y = 3 * x
        if y <= 1:
            x = y
        elif y >= 2:
            x = y - 2
        else:
            return False
    return True


def middle_third_numerators(q):
    """All p in 0..q with p/q in the middle-third set, by the ternary criterion in integers."""
    out = []
    for p in range(q + 1):
        x, seen = p, set()
        while x not in seen:
            seen.add(x)
            y = 3 * x
            if y <= q:
                x = y
            elif y >= 2 * q:
                x = y - 2 * q
            else:
                break
        else:
            out.append(p)
    return out
