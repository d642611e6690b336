"""Reflection groups of the Farey tessellation acting on Q ∪ {∞}.

Γ_∞ is generated by the reflections x ↦ -x and x ↦ 2 - x in the edges <∞,0>
and <∞,1>.  Γ_r is generated by the reflections in the two edges <r,r1> and
<r,r2> that bound the fundamental domain R on the r side.  Γ̂_r is generated
by all four.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .slopes import INFINITY, Slope, SlopeLike, contains, intervals

__all__ = [
    "MobiusMap",
    "OrbitReduction",
    "IDENTITY",
    "reflection_in_edge",
    "gamma_inf_generators",
    "gamma_r_generators",
    "hat_gamma_generators",
    "reduce_to_fundamental_domain",
    "replay",
    "orbit_bfs",
    "is_null_homotopic",
    "tau_involution",
    "is_farey_edge",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MobiusMap:
    """Integer matrix [[a, b], [c, d]] of determinant ±1, up to sign."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if det not in (1, -1):
            raise ValueError(f"determinant must be ±1, got {det}")
        first = next(x for x in (self.a, self.b, self.c, self.d) if x)
        if first < 0:
            for name in "abcd":
                object.__setattr__(self, name, -getattr(self, name))

    @classmethod
    def from_rows(cls, rows) -> "MobiusMap":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def rows(self) -> tuple:
        return ((self.a, self.b), (self.c, self.d))

    def __call__(self, x: SlopeLike) -> Slope:
        x = Slope.of(x)
        if x.is_infinite:
            return Slope(self.a, self.c)
        return Slope(self.a * x.num + self.b * x.den, self.c * x.num + self.d * x.den)

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        """Composition: (self @ other)(x) = self(other(x))."""
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return MobiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "MobiusMap":
        s = self.det
        return MobiusMap(s * self.d, -s * self.b, -s * self.c, s * self.a)

    @property
    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = MobiusMap(1, 0, 0, 1)
_NEGATE = MobiusMap(-1, 0, 0, 1)


def is_farey_edge(u: SlopeLike, v: SlopeLike) -> bool:
    u, v = Slope.of(u), Slope.of(v)
    return abs(u.num * v.den - v.num * u.den) == 1


def reflection_in_edge(u: SlopeLike, v: SlopeLike) -> MobiusMap:
    """Reflection in the Farey edge <u, v>, conjugated from the one in <∞, 0>."""
    u, v = Slope.of(u), Slope.of(v)
    if not is_farey_edge(u, v):
        raise ValueError(f"<{u},{v}> is not a Farey edge")
    m = MobiusMap(u.num, v.num, u.den, v.den)  # ∞ ↦ u, 0 ↦ v
    return m @ _NEGATE @ m.inverse()


def gamma_inf_generators() -> list:
    return [MobiusMap(-1, 0, 0, 1), MobiusMap(-1, 2, 0, 1)]


@lru_cache(maxsize=None)
def _gamma_r(r: Slope) -> tuple:
    iv = intervals(r)
    return reflection_in_edge(r, iv.r1), reflection_in_edge(r, iv.r2)


def gamma_r_generators(r: SlopeLike) -> list:
    """The reflections in <r, r1> and <r, r2>; both fix r."""
    return list(_gamma_r(Slope.of(r)))


def hat_gamma_generators(r: SlopeLike) -> list:
    """Generators of Γ̂_r indexed 0..3: x ↦ -x, x ↦ 2-x, then the two Γ_r reflections."""
    return gamma_inf_generators() + gamma_r_generators(r)


def tau_involution() -> MobiusMap:
    """x ↦ (3x - 1)/(8x - 3): swaps ∞ and 3/8 and the exceptional pairs."""
    return MobiusMap(3, -1, 8, -3)


@dataclass(frozen=True)
class OrbitReduction:
    """``s0`` with a generator word whose replay on ``s0`` gives back the input."""

    r: Slope
    s: Slope
    s0: Slope
    word: tuple = field(default=())

    @property
    def steps(self) -> int:
        return len(self.word)

    @property
    def null_homotopic(self) -> bool:
        return self.s0 == INFINITY or self.s0 == self.r


def replay(r: SlopeLike, word: Iterable[int], s0: SlopeLike) -> Slope:
    """Undo a reduction: the generators are involutions, applied last-first."""
    gens = hat_gamma_generators(r)
    x = Slope.of(s0)
    for i in reversed(tuple(word)):
        x = gens[i](x)
    return x


def _fold(x: Slope, word: list) -> Slope:
    """Move x into [0, 1] with Γ_∞, recording generator indices."""
    if x.is_infinite:
        return x
    n = x.num // (2 * x.den)  # x - 2n in [0, 2)
    if n > 0:
        word.extend([1, 0] * n)
    elif n < 0:
        word.extend([0, 1] * (-n))
    x = Slope(x.num - 2 * n * x.den, x.den)
    if x > Slope(1, 1):
        word.append(1)
        x = Slope(2 * x.den - x.num, x.den)
    return x


def _in_target(x: Slope, r: Slope, iv) -> bool:
    return x.is_infinite or x == r or contains(iv, x)


def reduce_to_fundamental_domain(r: SlopeLike, s: SlopeLike) -> OrbitReduction:
    """Find the unique s0 ∈ I_1(r) ∪ I_2(r) ∪ {∞, r} in the Γ̂_r-orbit of s.

    Alternates folding into [0, 1] with the Γ_r reflection whose edge separates
    the point from the fundamental domain.  Every reflection strictly lowers the
    denominator; the loop is capped and falls back to a breadth-first search if
    that ever fails.
    """
    r, s = Slope.of(r), Slope.of(s)
    iv = intervals(r)
    rho1, rho2 = _gamma_r(r)
    word: list = []
    x = _fold(s, word)
    cap = 10 * (max(s.den, 1).bit_length() + 1) + 10
    for _ in range(cap):
        if _in_target(x, r, iv):
            return OrbitReduction(r, s, x, tuple(word))
        before = x.den
        if x < r:
            word.append(2)
            x = rho1(x)
        else:
            word.append(3)
            x = rho2(x)
        x = _fold(x, word)
        if not x.is_infinite and x.den >= before:
            raise AssertionError(f"denominator did not drop reducing {s} for r={r}")
    log.warning("reduction cap hit for r=%s s=%s; falling back to BFS", r, s)
    return _reduce_by_bfs(r, s)


def _reduce_by_bfs(r: Slope, s: Slope) -> OrbitReduction:
    iv = intervals(r)
    gens = hat_gamma_generators(r)
    bound = 4 * max(s.den, 1) + 4
    start_word: list = []
    x0 = _fold(s, start_word)
    parent = {x0: None}
    queue = deque([x0])
    while queue:
        x = queue.popleft()
        if _in_target(x, r, iv):
            tail = []
            y = x
            while parent[y] is not None:
                prev, moves = parent[y]
                tail[:0] = moves
                y = prev
            return OrbitReduction(r, s, x, tuple(start_word + tail))
        for i in (2, 3):
            moves = [i]
            y = _fold(gens[i](x), moves)
            if y not in parent and (y.is_infinite or y.den <= bound):
                parent[y] = (x, moves)
                queue.append(y)
    raise RuntimeError(f"no fundamental representative found for {s} (r={r})")


def is_null_homotopic(r: SlopeLike, s: SlopeLike) -> bool:
    return reduce_to_fundamental_domain(r, s).null_homotopic


def _class_neighbours(x: Slope, reflections, limit: int):
    """Γ_∞-classes reached from the class of x by one Γ_r reflection.

    The reflections are applied to every representative ±x + 2n whose image
    stays within the denominator limit, then folded back into [0, 1].
    """
    for rho in reflections:
        if x.is_infinite:
            yield _fold(rho(x), [])
            continue
        span = limit // max(abs(rho.c), 1) + 2
        for sign in (1, -1):
            for n in range(-span, span + 1):
                y = rho(Slope(sign * x.num + 2 * n * x.den, x.den))
                if y.is_infinite or y.den <= limit:
                    yield _fold(y, [])


@lru_cache(maxsize=64)
def _orbit_partition(r: Slope, den_bound: int) -> tuple:
    """Split the slopes of [0, 1] ∪ {∞} with denominator <= 4·den_bound into orbits."""
    from .slopes import farey_slopes

    limit = 4 * den_bound
    reflections = _gamma_r(r)
    label: dict = {}
    members: dict = {}
    for start in [INFINITY] + farey_slopes(limit):
        if start in label:
            continue
        label[start] = start
        members[start] = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in _class_neighbours(x, reflections, limit):
                if (y.is_infinite or y.den <= limit) and y not in label:
                    label[y] = start
                    members[start].add(y)
                    queue.append(y)
    return label, members


def orbit_bfs(r: SlopeLike, s: SlopeLike, den_bound: int) -> set:
    """Orbit of s restricted to [0, 1] ∪ {∞} and denominators <= den_bound.

    Γ_∞ folding is applied freely, so points are explored modulo Γ_∞; paths may
    pass through denominators up to ``4 * den_bound``.  Independent of
    :func:`reduce_to_fundamental_domain`; used as its test oracle.
    """
    r, s = Slope.of(r), Slope.of(s)
    if not s.is_infinite and s.den > den_bound:
        raise ValueError("den_bound must be at least the denominator of s")
    label, members = _orbit_partition(r, den_bound)
    return {x for x in members[label[_fold(s, [])]] if x.is_infinite or x.den <= den_bound}
