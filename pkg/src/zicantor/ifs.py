"""The self-similar set K generated by ``z -> (z + t_j) / beta``.

Membership of a Gaussian rational is decided exactly: with a fixed
denominator ``delta`` the points ``omega / delta`` inside a bounding disk
form a finite directed graph (``z -> beta*z - t_j``), and ``z`` lies in K
iff it starts an infinite path.  Every infinite path is eventually periodic,
which also yields the coding.

Graph nodes are stored by their integer numerators ``omega = (re, im)``.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import isqrt
from typing import Iterable, Mapping

from .errors import DomainError, ResourceCapError
from .gaussian import ONE, GaussInt, GaussRat, canonical, lcm, parse_gauss, parse_gauss_rat

DEFAULT_NODE_CAP = 5_000_000
NODE_CAP_ENV = "ZICANTOR_NODE_CAP"

# refine the cylinder cover until each disk has squared radius at most this
# many lattice spacings
_TARGET_RADIUS_SQ = 2

Omega = tuple[int, int]


def node_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(NODE_CAP_ENV)
    return int(env) if env else DEFAULT_NODE_CAP


@dataclass(frozen=True)
class IfsSpec:
    """Base ``beta`` and digit set ``D``; maps are ``phi_j(z) = (z + digits[j]) / beta``."""

    beta: GaussInt
    digits: tuple[GaussRat, ...]

    def __post_init__(self):
        object.__setattr__(self, "beta", GaussInt.coerce(self.beta))
        object.__setattr__(self, "digits", tuple(GaussRat.coerce(t) for t in self.digits))
        if self.beta.norm() < 2:
            raise DomainError(f"base {self.beta} must have norm at least 2")
        if not self.digits:
            raise DomainError("digit set is empty")
        if len(set(self.digits)) != len(self.digits):
            raise DomainError("digits must be distinct")

    @classmethod
    def from_literals(cls, beta: str, digits: str | Iterable[str]) -> IfsSpec:
        if isinstance(digits, str):
            digits = [d for d in digits.split(",") if d.strip()]
        return cls(parse_gauss(beta), tuple(parse_gauss_rat(d.strip()) for d in digits))

    @property
    def ell(self) -> int:
        return len(self.digits)

    @cached_property
    def common_denominator(self) -> GaussInt:
        """Canonical lcm of the digit denominators."""
        g = ONE
        for t in self.digits:
            g = lcm(g, t.den)
        return g

    def scaled_digits(self, delta: GaussInt) -> tuple[Omega, ...]:
        """``t_j * delta`` as integer pairs; ``delta`` must be a multiple of the common denominator."""
        out = []
        for t in self.digits:
            v = t * delta
            if not v.is_integral():
                raise DomainError(f"{delta} does not clear the denominator of digit {t}")
            out.append(v.num.as_tuple())
        return tuple(out)

    def __str__(self):
        return f"beta={self.beta}, digits={{{', '.join(map(str, self.digits))}}}"


def similarity_dimension(spec: IfsSpec) -> float:
    if spec.ell == 1:
        return 0.0
    return 2 * math.log(spec.ell) / math.log(spec.beta.norm())


def bounding_radius_sq(spec: IfsSpec) -> Fraction:
    """Rational ``R**2`` with K inside the closed disk of radius ``R`` about 0.

    ``R = T / r`` where ``T = max |t_j|`` and ``r`` is ``|beta| - 1`` with
    ``|beta|`` floored to 6 decimals, so ``r`` never exceeds the true value.
    """
    t2 = max(t.abs2() for t in spec.digits)
    r = Fraction(isqrt(spec.beta.norm() * 10**12), 10**6) - 1
    return t2 / (r * r)


def _level_up(spec: IfsSpec, level: set[Omega], scaled: tuple[Omega, ...]) -> set[Omega]:
    br, bi = spec.beta.re, spec.beta.im
    out = set()
    for x, y in level:
        px, py = br * x - bi * y, br * y + bi * x
        for cx, cy in scaled:
            out.add((px + cx, py + cy))
    return out


def composition_constants(spec: IfsSpec, n: int, cap: int | None = None) -> set[Omega]:
    """Distinct ``Gamma * sum_k t_{i_k} beta**(n-k)`` over all words of length ``n``.

    ``Gamma`` is the common digit denominator, which keeps everything integral.
    """
    if n < 0:
        raise DomainError("depth must be non-negative")
    cap = node_cap(cap)
    scaled = spec.scaled_digits(spec.common_denominator)
    level = {(0, 0)}
    for _ in range(n):
        if len(level) * spec.ell > cap and len(level) > 0:
            raise ResourceCapError(
                f"composition at depth {n} needs more than {cap} constants", cap
            )
        level = _level_up(spec, level, scaled)
    return level


@dataclass(frozen=True)
class DimensionReport:
    depth: int
    distinct_maps: int
    s_n: float
    s: float


def compose_depth(spec: IfsSpec, n: int, cap: int | None = None) -> DimensionReport:
    """Count the distinct maps of the ``n``-fold composition and its similarity dimension."""
    if n < 1:
        raise DomainError("depth must be at least 1")
    ell_n = len(composition_constants(spec, n, cap))
    s_n = 2 * math.log(ell_n) / (n * math.log(spec.beta.norm())) if ell_n > 1 else 0.0
    return DimensionReport(n, ell_n, s_n, similarity_dimension(spec))


@dataclass(frozen=True)
class BoxCover:
    depth: int
    count: int
    radius_sq: Fraction

    @property
    def radius(self) -> float:
        return math.sqrt(self.radius_sq)


def box_cover_count(spec: IfsSpec, n: int, cap: int | None = None) -> BoxCover:
    """Distinct depth-``n`` cylinder disks; K is covered by ``count`` disks of the given radius."""
    count = len(composition_constants(spec, n, cap))
    return BoxCover(n, count, bounding_radius_sq(spec) / spec.beta.norm() ** n)


def cylinder_centers(spec: IfsSpec, n: int, cap: int | None = None) -> set[GaussRat]:
    """``phi_I(0)`` for every word ``I`` of length ``n``."""
    scale = spec.common_denominator * spec.beta**n
    return {GaussRat(GaussInt(*a), scale) for a in composition_constants(spec, n, cap)}


# state graph


@dataclass(frozen=True, eq=False)
class StateGraph:
    """Points ``omega / denominator`` with edges ``z -> beta*z - t_j``.

    ``edges[omega]`` lists ``(j, successor)`` for successors that are nodes.
    """

    spec: IfsSpec
    denominator: GaussInt
    nodes: frozenset[Omega]
    edges: Mapping[Omega, tuple[tuple[int, Omega], ...]] = field(repr=False)

    def __len__(self):
        return len(self.nodes)

    def value(self, omega: Omega) -> GaussRat:
        return GaussRat(GaussInt(*omega), self.denominator)

    def numerator(self, z) -> Omega | None:
        """Numerator of ``z`` over this graph's denominator, or None if ``z`` is not on the lattice."""
        v = GaussRat.coerce(z) * self.denominator
        return v.num.as_tuple() if v.is_integral() else None

    def __contains__(self, z) -> bool:
        w = self.numerator(z)
        return w is not None and w in self.nodes

    def points(self) -> list[GaussRat]:
        return sorted((self.value(w) for w in self.nodes), key=GaussRat.sort_key)


def _disk_points(X: int, Y: int, M: int, T: int) -> Iterable[Omega]:
    # integer (x, y) with (x*M - X)**2 + (y*M - Y)**2 <= T
    s = isqrt(T)
    for x in range(-((s - X) // M), (X + s) // M + 1):
        dx = x * M - X
        rem = T - dx * dx
        if rem < 0:
            continue
        sy = isqrt(rem)
        for y in range(-((sy - Y) // M), (Y + sy) // M + 1):
            yield (x, y)


def _auto_depth(spec: IfsSpec, delta_norm: int, r2: Fraction, cap: int) -> int:
    n = 0
    nb = spec.beta.norm()
    width = 1
    while r2 * delta_norm > _TARGET_RADIUS_SQ * nb**n:
        if width * spec.ell > cap // 8:
            break
        width *= spec.ell
        n += 1
    return n


def candidate_numerators(
    spec: IfsSpec, delta: GaussInt, depth: int | None = None, cap: int | None = None
) -> set[Omega]:
    """Lattice numerators inside the union of depth-``depth`` cylinder disks.

    ``depth=0`` is the whole bounding disk.  The set always contains every
    point of K on the lattice ``(1/delta) Z[i]``.
    """
    cap = node_cap(cap)
    r2 = bounding_radius_sq(spec)
    dn = delta.norm()
    if depth is None:
        depth = _auto_depth(spec, dn, r2, cap)
    gamma_ = spec.common_denominator
    nb = spec.beta.norm()
    rho2 = r2 * dn / nb**depth
    # each disk holds about pi * rho2 points; refuse before allocating
    centers = composition_constants(spec, depth, cap)
    estimate = len(centers) * (math.pi * float(rho2) + 4 * math.sqrt(float(rho2)) + 1)
    if estimate > 2 * cap:
        raise ResourceCapError(
            f"state graph for denominator {delta} would exceed the node cap {cap}", cap
        )
    B = gamma_ * spec.beta**depth
    M = B.norm()
    W = delta * B.conjugate()
    T = (rho2.numerator * M * M) // rho2.denominator
    ball = r2 * dn
    bp, bq = ball.numerator, ball.denominator
    wr, wi = W.re, W.im
    out: set[Omega] = set()
    for ar, ai in centers:
        X, Y = ar * wr - ai * wi, ar * wi + ai * wr
        for x, y in _disk_points(X, Y, M, T):
            if (x * x + y * y) * bq <= bp:
                out.add((x, y))
        if len(out) > cap:
            raise ResourceCapError(
                f"state graph for denominator {delta} exceeds the node cap {cap}", cap
            )
    return out


def _edges(spec: IfsSpec, delta: GaussInt, nodes) -> dict[Omega, tuple[tuple[int, Omega], ...]]:
    scaled = spec.scaled_digits(delta)
    br, bi = spec.beta.re, spec.beta.im
    edges = {}
    for w in nodes:
        x, y = w
        px, py = br * x - bi * y, br * y + bi * x
        out = []
        for j, (cx, cy) in enumerate(scaled):
            s = (px - cx, py - cy)
            if s in nodes:
                out.append((j, s))
        edges[w] = tuple(out)
    return edges


def lattice_denominator(spec: IfsSpec, gamma) -> GaussInt:
    gamma = GaussInt.coerce(gamma)
    if not gamma:
        raise DomainError("denominator must be nonzero")
    return canonical(gamma * spec.common_denominator)


def build_state_graph(
    spec: IfsSpec, gamma, *, depth: int | None = None, cap: int | None = None
) -> StateGraph:
    """Graph on ``(1/(gamma*Gamma)) Z[i]`` restricted to a disk cover of K.

    ``depth=0`` uses the single bounding disk; the default refines the
    cover so each disk holds a handful of lattice points.  The live part does
    not depend on ``depth``.
    """
    delta = lattice_denominator(spec, gamma)
    nodes = frozenset(candidate_numerators(spec, delta, depth, cap))
    return StateGraph(spec, delta, nodes, _edges(spec, delta, nodes))


def prune_to_live(graph: StateGraph) -> StateGraph:
    """Repeatedly delete nodes without successors; survivors start infinite paths."""
    outdeg = {w: len(s) for w, s in graph.edges.items()}
    preds: dict[Omega, list[Omega]] = {w: [] for w in graph.nodes}
    for w, succ in graph.edges.items():
        for _, s in succ:
            preds[s].append(w)
    queue = deque(w for w, k in outdeg.items() if k == 0)
    dead = set(queue)
    while queue:
        w = queue.popleft()
        for p in preds[w]:
            outdeg[p] -= 1
            if outdeg[p] == 0 and p not in dead:
                dead.add(p)
                queue.append(p)
    live = frozenset(graph.nodes - dead)
    edges = {w: tuple((j, s) for j, s in graph.edges[w] if s in live) for w in live}
    return StateGraph(graph.spec, graph.denominator, live, edges)


@lru_cache(maxsize=128)
def live_graph_at(spec: IfsSpec, delta: GaussInt, cap: int) -> StateGraph:
    """Pruned graph on ``(1/delta) Z[i]``; ``delta`` is a canonical multiple of the digit denominator."""
    nodes = frozenset(candidate_numerators(spec, delta, None, cap))
    return prune_to_live(StateGraph(spec, delta, nodes, _edges(spec, delta, nodes)))


def live_graph(spec: IfsSpec, gamma, cap: int | None = None) -> StateGraph:
    """Pruned state graph, cached by the canonical associate of ``gamma * Gamma``."""
    return live_graph_at(spec, lattice_denominator(spec, gamma), node_cap(cap))


def _local_graph(spec: IfsSpec, z: GaussRat, cap: int) -> tuple[StateGraph, Omega]:
    # forward closure of z inside the bounding disk
    delta = lattice_denominator(spec, z.den)
    start = (z * delta).num.as_tuple()
    ball = bounding_radius_sq(spec) * delta.norm()
    bp, bq = ball.numerator, ball.denominator
    scaled = spec.scaled_digits(delta)
    br, bi = spec.beta.re, spec.beta.im
    edges: dict[Omega, tuple[tuple[int, Omega], ...]] = {}
    stack = [start]
    seen = {start}
    while stack:
        x, y = stack.pop()
        px, py = br * x - bi * y, br * y + bi * x
        out = []
        for j, (cx, cy) in enumerate(scaled):
            s = (px - cx, py - cy)
            if (s[0] * s[0] + s[1] * s[1]) * bq <= bp:
                out.append((j, s))
                if s not in seen:
                    seen.add(s)
                    stack.append(s)
                    if len(seen) > cap:
                        raise ResourceCapError(f"orbit of {z} exceeds the node cap {cap}", cap)
        edges[(x, y)] = tuple(out)
    return StateGraph(spec, delta, frozenset(seen), edges), start


def is_member(spec: IfsSpec, z, cap: int | None = None) -> bool:
    """Exact test of ``z in K``."""
    z = GaussRat.coerce(z)
    if z.abs2() > bounding_radius_sq(spec):
        return False
    graph, start = _local_graph(spec, z, node_cap(cap))
    return start in prune_to_live(graph).nodes


@dataclass(frozen=True)
class Coding:
    """Eventually periodic address ``preperiod (period)^infinity``; entries index ``spec.digits``."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise DomainError("period must be nonempty")

    def minimized(self) -> Coding:
        """Same point with a primitive period and the preperiod rolled back as far as possible."""
        w = self.period
        n = len(w)
        for k in range(1, n + 1):
            if n % k == 0 and w[:k] * (n // k) == w:
                w = w[:k]
                break
        pre = list(self.preperiod)
        while pre and pre[-1] == w[-1]:
            pre.pop()
            w = (w[-1],) + w[:-1]
        return Coding(tuple(pre), w)

    def __str__(self):
        pre = " ".join(map(str, self.preperiod))
        per = " ".join(map(str, self.period))
        return f"{pre} ({per})^inf".strip()


def walk_coding(graph: StateGraph, omega: Omega) -> Coding:
    """Follow the smallest digit with a live successor until a node repeats.

    ``graph`` must already be pruned.
    """
    if omega not in graph.nodes:
        raise DomainError(f"{graph.value(omega)} is not a live node")
    path: list[int] = []
    index = {omega: 0}
    w = omega
    while True:
        j, w = graph.edges[w][0]
        path.append(j)
        if w in index:
            k = index[w]
            return Coding(tuple(path[:k]), tuple(path[k:]))
        index[w] = len(path)


def coding_of(spec: IfsSpec, z, cap: int | None = None) -> Coding:
    z = GaussRat.coerce(z)
    if z.abs2() > bounding_radius_sq(spec):
        raise DomainError(f"{z} is not in K ({spec})")
    graph, start = _local_graph(spec, z, node_cap(cap))
    live = prune_to_live(graph)
    if start not in live.nodes:
        raise DomainError(f"{z} is not in K ({spec})")
    return walk_coding(live, start)


def eval_coding(spec: IfsSpec, coding: Coding) -> GaussRat:
    """Exact value ``sum t_{j_i} beta**-i`` of an eventually periodic coding."""
    beta = GaussRat.coerce(spec.beta)
    m, n = len(coding.preperiod), len(coding.period)
    head = GaussRat(0)
    scale = GaussRat(1)
    for j in coding.preperiod:
        scale = scale / beta
        head = head + spec.digits[j] * scale
    tail = GaussRat(0)
    for j in coding.period:
        scale = scale / beta
        tail = tail + spec.digits[j] * scale
    bn = beta**n
    return head + bn / (bn - 1) * tail


def to_dot(graph: StateGraph, name: str = "K") -> str:
    """Graphviz DOT text; node labels are canonical rational literals."""
    order = sorted(graph.nodes, key=lambda w: graph.value(w).sort_key())
    ids = {w: f"n{k}" for k, w in enumerate(order)}
    lines = [f'digraph "{name}" {{']
    for w in order:
        lines.append(f'  {ids[w]} [label="{graph.value(w)}"];')
    for w in order:
        for j, s in graph.edges[w]:
            lines.append(f'  {ids[w]} -> {ids[s]} [label="{j}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
