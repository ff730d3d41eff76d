"""Exhaustive search for Gaussian rationals in K with S-smooth denominators.

For a denominator ``gamma`` the live state graph lists every point of K on
``(1/(gamma*Gamma)) Z[i]``.  These sets grow with ``gamma`` under
divisibility, so the union over all S-smooth ``gamma`` of height at most
``X`` is the union over the maximal exponent vectors only.  Each value
records the smallest height at which it appears, which gives the growth
curve for every smaller cap without rerunning anything.

Completeness beyond the cap is not certified: a stable growth curve is
evidence, not proof.
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .errors import DomainError, ResourceCapError
from .gaussian import GaussInt, GaussRat, canonical, divides, exact_div, gcd, parse_gauss
from .height import height
from .ifs import (
    Coding,
    IfsSpec,
    compose_depth,
    lattice_denominator,
    live_graph_at,
    node_cap,
    similarity_dimension,
    walk_coding,
)
from .order import (
    LowerBoundCertificate,
    RootRational,
    build_lower_bound_certificate,
    crt_order,
    order_lower_bound,
)
from .primes import PrimeClass, classify, conjugate_associate, is_prime

CAVEAT = (
    "exhaustive for every denominator up to the height cap; "
    "completeness over all heights is not certified"
)


@dataclass(frozen=True)
class SmoothFamily:
    """Canonical primes ``S`` laid out as ``(gamma2; (eta_i, xi_i)...; singles...)``.

    Exponent vectors follow the same layout: ``(h, r_1, s_1, ..., n_1, ...)``.
    """

    gamma2: GaussInt | None = None
    pairs: tuple[tuple[GaussInt, GaussInt], ...] = ()
    singles: tuple[GaussInt, ...] = ()

    def __post_init__(self):
        g2 = canonical(GaussInt.coerce(self.gamma2)) if self.gamma2 is not None else None
        pairs = tuple((canonical(GaussInt.coerce(a)), canonical(GaussInt.coerce(b))) for a, b in self.pairs)
        singles = tuple(canonical(GaussInt.coerce(b)) for b in self.singles)
        object.__setattr__(self, "gamma2", g2)
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "singles", singles)
        primes = self.primes()
        for p in primes:
            if not is_prime(p):
                raise DomainError(f"{p} is not a Gaussian prime")
        if len(set(primes)) != len(primes):
            raise DomainError("family primes must be pairwise non-associate")
        if g2 is not None and classify(g2) is not PrimeClass.TYPE_II:
            raise DomainError(f"{g2} is not the prime above 2")
        for a, b in pairs:
            if classify(a) is not PrimeClass.TYPE_III or conjugate_associate(a) != b:
                raise DomainError(f"({a}, {b}) is not a conjugate Type III pair")
        if any(classify(b) is PrimeClass.TYPE_II for b in singles):
            raise DomainError("the prime above 2 belongs in gamma2")
        hs = [height(b) for b in singles]
        if len(set(hs)) != len(hs):
            raise DomainError("single primes must have distinct heights")

    @classmethod
    def from_primes(cls, primes: Sequence) -> SmoothFamily:
        """Sort a flat prime list into the layout, pairing each Type III prime with its conjugate."""
        canon = []
        for p in primes:
            c = canonical(GaussInt.coerce(p))
            if c in canon:
                raise DomainError(f"prime {c} listed twice")
            canon.append(c)
        key = lambda p: (p.norm(), p.re, p.im)
        g2 = None
        pairs, singles, used = [], [], set()
        for p in sorted(canon, key=key):
            if not is_prime(p):
                raise DomainError(f"{p} is not a Gaussian prime")
            if p in used:
                continue
            cls_ = classify(p)
            if cls_ is PrimeClass.TYPE_II:
                g2 = p
            elif cls_ is PrimeClass.TYPE_III and conjugate_associate(p) in canon:
                q = conjugate_associate(p)
                pairs.append((p, q))
                used.add(q)
            else:
                singles.append(p)
            used.add(p)
        return cls(g2, tuple(pairs), tuple(singles))

    @classmethod
    def parse(cls, text: str) -> SmoothFamily:
        return cls.from_primes([parse_gauss(t) for t in text.split(",") if t.strip()])

    def primes(self) -> tuple[GaussInt, ...]:
        """Family primes in exponent-vector order."""
        head = (self.gamma2,) if self.gamma2 is not None else ()
        return head + tuple(p for pr in self.pairs for p in pr) + self.singles

    @property
    def width(self) -> int:
        return 1 + 2 * len(self.pairs) + len(self.singles)

    def check_against(self, spec: IfsSpec):
        for p in self.primes():
            if divides(p, spec.beta):
                raise DomainError(f"family prime {p} divides the base {spec.beta}")

    def height_of(self, exps: Sequence[int]) -> int:
        """Height of the product with exponent vector ``exps``, from the closed forms."""
        h = exps[0]
        if h and self.gamma2 is None:
            raise DomainError("no prime above 2 in this family")
        out = 2 ** (h - h // 2)
        pos = 1
        for a, _ in self.pairs:
            out *= height(a) ** max(exps[pos], exps[pos + 1])
            pos += 2
        for b in self.singles:
            out *= height(b) ** exps[pos]
            pos += 1
        return out

    def _layout(self, exps: Sequence[int]):
        # drop the gamma2 slot when the family has no prime above 2
        return exps if self.gamma2 is not None else exps[1:]

    def product(self, exps: Sequence[int]) -> GaussInt:
        z = GaussInt(1)
        for p, e in zip(self.primes(), self._layout(exps)):
            if e:
                z = z * p**e
        return z

    def exponents_of(self, z: GaussInt) -> tuple[int, ...] | None:
        """Exponent vector of ``z`` up to a unit, or None if ``z`` is not S-smooth."""
        z = GaussInt.coerce(z)
        vals = []
        for p in self.primes():
            e = 0
            while divides(p, z):
                z = exact_div(z, p)
                e += 1
            vals.append(e)
        if z.norm() != 1:
            return None
        return tuple(vals) if self.gamma2 is not None else (0, *vals)

    def __str__(self):
        return ",".join(str(p) for p in self.primes())


def _slot_options(family: SmoothFamily, cap: int):
    # per slot: list of (height factor, exponent tuple), heights non-decreasing
    slots = []
    g2 = []
    if family.gamma2 is not None:
        h = 0
        while 2 ** (h - h // 2) <= cap:
            g2.append((2 ** (h - h // 2), (h,)))
            h += 1
    else:
        g2.append((1, (0,)))
    slots.append(g2)
    for a, _ in family.pairs:
        H = height(a)
        opts = []
        e = 0
        while H**e <= cap:
            opts += [(H**e, rs) for rs in product(range(e + 1), repeat=2) if max(rs) == e]
            e += 1
        slots.append(opts)
    for b in family.singles:
        H = height(b)
        opts = []
        e = 0
        while H**e <= cap:
            opts.append((H**e, (e,)))
            e += 1
        slots.append(opts)
    return slots


def enumerate_denominators(family: SmoothFamily, cap: int) -> list[tuple[GaussInt, tuple[int, ...]]]:
    """All S-smooth products of height at most ``cap``, ordered by (height, exponent vector)."""
    if cap < 1:
        return []
    slots = _slot_options(family, cap)
    out = []

    def rec(k: int, hgt: int, exps: tuple[int, ...]):
        if k == len(slots):
            out.append((hgt, exps))
            return
        for f, e in slots[k]:
            if hgt * f > cap:
                continue
            rec(k + 1, hgt * f, exps + e)

    rec(0, 1, ())
    out.sort()
    return [(family.product(e), e) for _, e in out]


def maximal_exponents(family: SmoothFamily, cap: int) -> list[tuple[int, ...]]:
    """Exponent vectors of height at most ``cap`` that cannot be raised in any coordinate."""
    out = []
    active = [0] if family.gamma2 is not None else []
    active += list(range(1, family.width))
    for _, exps in enumerate_denominators(family, cap):
        grown = False
        for k in active:
            bumped = exps[:k] + (exps[k] + 1,) + exps[k + 1:]
            if family.height_of(bumped) <= cap:
                grown = True
                break
        if not grown:
            out.append(exps)
    return out


@dataclass(frozen=True)
class FoundRational:
    """A point of K with its coding.

    ``upsilon`` is the denominator left after cancelling the digit
    denominator; ``height`` is its height, the smallest cap at which a
    search reaches this value.
    """

    value: GaussRat
    upsilon: GaussInt
    height: int
    coding: Coding
    period_length: int
    exponents: tuple[int, ...] | None = None

    @property
    def integral(self) -> bool:
        return self.value.is_integral()


def reduced_denominator(spec: IfsSpec, z: GaussRat) -> GaussInt:
    d = z.den
    return canonical(exact_div(d, gcd(d, spec.common_denominator)))


@lru_cache(maxsize=256)
def _members_cached(spec: IfsSpec, delta: GaussInt, cap: int) -> tuple[FoundRational, ...]:
    graph = live_graph_at(spec, delta, cap)
    found = []
    for w in graph.nodes:
        z = graph.value(w)
        coding = walk_coding(graph, w).minimized()
        ups = reduced_denominator(spec, z)
        found.append(FoundRational(z, ups, height(ups), coding, len(coding.period)))
    found.sort(key=lambda f: (f.height, f.value.sort_key()))
    return tuple(found)


def members_with_denominator(spec: IfsSpec, gamma, cap: int | None = None) -> list[FoundRational]:
    """Every point of K on ``(1/(gamma*Gamma)) Z[i]``, with minimized codings."""
    delta = lattice_denominator(spec, gamma)
    try:
        return list(_members_cached(spec, delta, node_cap(cap)))
    except ResourceCapError as exc:
        raise ResourceCapError(f"denominator {gamma}: {exc}", exc.cap) from exc


def similarity_gate(spec: IfsSpec, max_depth: int = 6) -> bool:
    """True when ``s`` or some ``s_n`` is below 1."""
    if similarity_dimension(spec) < 1:
        return True
    for n in range(2, max_depth + 1):
        try:
            if compose_depth(spec, n, cap=200_000).s_n < 1:
                return True
        except ResourceCapError:
            break
    return False


@dataclass(frozen=True)
class SearchReport:
    spec: IfsSpec
    family: SmoothFamily
    cap: int
    found: tuple[FoundRational, ...]
    growth: tuple[tuple[int, int], ...]  # (cap, distinct values found), caps halving
    stabilized: bool
    gate_passed: bool
    caveat: str = field(default=CAVEAT)

    @property
    def non_integral(self) -> tuple[FoundRational, ...]:
        return tuple(f for f in self.found if not f.integral)

    def values(self, include_integral: bool = True) -> list[GaussRat]:
        return [f.value for f in self.found if include_integral or not f.integral]

    def to_json(self) -> dict:
        return {
            "beta": str(self.spec.beta),
            "digits": [str(t) for t in self.spec.digits],
            "family": [str(p) for p in self.family.primes()],
            "cap": self.cap,
            "count": len(self.found),
            "count_non_integral": len(self.non_integral),
            "stabilized": self.stabilized,
            "similarity_gate": self.gate_passed,
            "growth": [{"cap": c, "count": n} for c, n in self.growth],
            "found": [found_row(f) for f in self.found],
            "caveat": self.caveat,
        }


def found_row(f: FoundRational, lower_bound: RootRational | None = None) -> dict:
    row = {
        "value": str(f.value),
        "height": f.height,
        "exponents": list(f.exponents) if f.exponents is not None else None,
        "period": f.period_length,
        "preperiod_length": len(f.coding.preperiod),
        "coding": str(f.coding),
        "integral": f.integral,
    }
    if lower_bound is not None:
        row["lower_bound"] = str(lower_bound)
    return row


def _with_exponents(f: FoundRational, family: SmoothFamily) -> FoundRational:
    return FoundRational(f.value, f.upsilon, f.height, f.coding, f.period_length, family.exponents_of(f.upsilon))


def finiteness_search(spec: IfsSpec, family: SmoothFamily, cap: int, node_limit: int | None = None) -> SearchReport:
    """All points of K whose reduced denominator is an S-smooth product of height at most ``cap``."""
    family.check_against(spec)
    if cap < 1:
        raise DomainError("cap must be at least 1")
    gate = similarity_gate(spec)
    if not gate:
        warnings.warn(f"similarity dimension of {spec} is not below 1; finiteness is not expected", stacklevel=2)
    seen: dict[GaussRat, FoundRational] = {}
    for exps in maximal_exponents(family, cap):
        for f in members_with_denominator(spec, family.product(exps), node_limit):
            if f.value not in seen:
                seen[f.value] = _with_exponents(f, family)
    found = tuple(sorted(seen.values(), key=lambda f: (f.height, f.value.sort_key())))
    growth = []
    c = cap
    while True:
        growth.append((c, sum(1 for f in found if f.height <= c)))
        if c == 1:
            break
        c //= 2
    stabilized = len(growth) > 1 and growth[0][1] == growth[1][1]
    return SearchReport(spec, family, cap, found, tuple(growth), stabilized, gate)


def search_csv(rows: Sequence[dict]) -> str:
    cols = ["value", "height", "exponents", "period", "lower_bound", "integral"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        exps = r.get("exponents")
        w.writerow([
            r["value"],
            r["height"],
            " ".join(map(str, exps)) if exps is not None else "",
            r["period"],
            r.get("lower_bound", ""),
            "true" if r["integral"] else "false",
        ])
    return buf.getvalue()


# counting


@dataclass(frozen=True)
class LatticeCount:
    n: int
    q: int  # points of K on (1/N) Z[i]
    r: int  # points omega/gamma of K with H(gamma) = N; equals q
    q_star: int  # points of K on (1/q) Z[i] for some q <= N
    r_star: int


def lattice_points(spec: IfsSpec, n: int, cap: int | None = None) -> list[GaussRat]:
    """Points of K on ``(1/n) Z[i]``."""
    if n < 1:
        raise DomainError("N must be positive")
    return [f.value for f in members_with_denominator(spec, n, cap) if (f.value * n).is_integral()]


def count_lattice_range(spec: IfsSpec, n_max: int, cap: int | None = None) -> list[LatticeCount]:
    # every gamma with H(gamma) = N divides N, so the R_N lattice is exactly (1/N) Z[i]
    union: set[GaussRat] = set()
    out = []
    for n in range(1, n_max + 1):
        pts = lattice_points(spec, n, cap)
        union.update(pts)
        out.append(LatticeCount(n, len(pts), len(pts), len(union), len(union)))
    return out


def count_lattice(spec: IfsSpec, n: int, cap: int | None = None) -> LatticeCount:
    return count_lattice_range(spec, n, cap)[-1]


@dataclass(frozen=True)
class CountingFit:
    s: float
    rows: tuple[LatticeCount, ...]
    c_r: float  # max R_N / N**s
    c_r_star: float  # max R*_N / N**min(2s, s+1)

    def to_json(self) -> dict:
        return {
            "s": round_sig(self.s),
            "c_r": round_sig(self.c_r),
            "c_r_star": round_sig(self.c_r_star),
            "rows": [
                {"n": r.n, "q": r.q, "r": r.r, "q_star": r.q_star, "r_star": r.r_star}
                for r in self.rows
            ],
        }


def round_sig(x: float, digits: int = 6) -> float:
    return float(f"{x:.{digits}g}")


def counting_fit(spec: IfsSpec, ns: Sequence[int], cap: int | None = None) -> CountingFit:
    """Empirical constants for ``R_N <= C N**s`` and its cumulative variant; no asymptotic claim."""
    ns = sorted(set(int(n) for n in ns))
    if not ns:
        raise DomainError("N range is empty")
    if ns[0] < 1:
        raise DomainError("N must be positive")
    s = similarity_dimension(spec)
    table = count_lattice_range(spec, ns[-1], cap)
    rows = tuple(table[n - 1] for n in ns)
    e_star = min(2 * s, s + 1)
    c_r = max(r.r / r.n**s for r in rows)
    c_r_star = max(r.r_star / r.n**e_star for r in rows)
    return CountingFit(s, rows, c_r, c_r_star)


# period against height


@dataclass(frozen=True)
class PeriodHeightRow:
    found: FoundRational
    order: int | None  # ord(beta; upsilon) when upsilon is coprime to beta
    divides_period: bool | None
    lower_bound: RootRational | None

    def to_json(self) -> dict:
        row = found_row(self.found, self.lower_bound)
        row["order"] = self.order
        row["order_divides_period"] = self.divides_period
        if self.lower_bound is not None:
            row["lower_bound_float"] = round_sig(float(self.lower_bound))
        return row


def _certificate(spec: IfsSpec, family: SmoothFamily) -> LowerBoundCertificate | None:
    try:
        return build_lower_bound_certificate(spec.beta, family.gamma2, family.pairs, family.singles)
    except DomainError:
        return None


def period_height_report(spec: IfsSpec, family: SmoothFamily, cap: int) -> list[PeriodHeightRow]:
    """Height, minimized period, ``ord(beta; Upsilon)`` and its lower bound for every found value."""
    report = finiteness_search(spec, family, cap)
    cert = _certificate(spec, family)
    rows = []
    for f in report.found:
        ups = f.upsilon
        order = None
        ok = None
        if gcd(ups, spec.beta).norm() == 1:
            order = 1 if ups.norm() == 1 else crt_order(spec.beta, ups)
            ok = f.period_length % order == 0
        bound = None
        if cert is not None and f.exponents is not None:
            bound = order_lower_bound(cert, f.exponents)
        rows.append(PeriodHeightRow(f, order, ok, bound))
    return rows


def iter_rows(rows: Sequence[PeriodHeightRow]) -> Iterator[dict]:
    for r in rows:
        yield r.to_json()

