"""S- and T-sequences of a slope and the (S1, S2, S1, S2) decomposition.

Two independent routes produce S(r): reading sign runs off the word u_r
(:func:`s_sequence_of_slope`, the default) and the level-by-level recursion on
continued fractions (:func:`recursive_s_sequence`).  The recursion is also the
only route that yields the decomposition, so :func:`decompose` uses it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .slopes import ContinuedFraction, Slope, reduce_step, to_continued_fraction, to_fraction
from .words import runs, upper_word

__all__ = [
    "Seq",
    "CyclicSeq",
    "Decomposition",
    "s_sequence_of_slope",
    "recursive_s_sequence",
    "cyclic_s_sequence_of_slope",
    "t_sequence",
    "t_sequence_from_runs",
    "decompose",
    "recover_slope",
    "contains_subsequence",
    "occurrences",
    "connection_violation",
    "blocks",
]


class Seq(tuple):
    """A finite sequence of positive integers, printed as ``(4,3,4)``."""

    def __new__(cls, terms: Iterable[int] = ()):
        return super().__new__(cls, (int(t) for t in terms))

    def reversed(self) -> "Seq":
        return Seq(self[::-1])

    @property
    def is_symmetric(self) -> bool:
        return tuple(self) == tuple(self[::-1])

    def __add__(self, other) -> "Seq":
        return Seq(tuple(self) + tuple(other))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"

    def __repr__(self) -> str:
        return f"Seq{self}"

    @classmethod
    def parse(cls, text: str) -> "Seq":
        body = text.strip().strip("()")
        return cls(int(x) for x in body.split(",") if x.strip())


def _least_rotation(terms: tuple) -> tuple:
    n = len(terms)
    if n == 0:
        return terms
    best = min(range(n), key=lambda i: terms[i:] + terms[:i])
    return terms[best:] + terms[:best]


@dataclass(frozen=True)
class CyclicSeq:
    """A sequence up to rotation, stored as its lexicographically least rotation."""

    representative: Seq

    def __init__(self, terms: Iterable[int]):
        object.__setattr__(self, "representative", Seq(_least_rotation(tuple(int(t) for t in terms))))

    def __len__(self) -> int:
        return len(self.representative)

    def __iter__(self):
        return iter(self.representative)

    def rotations(self):
        t = tuple(self.representative)
        for i in range(len(t)):
            yield t[i:] + t[:i]

    def reversed(self) -> "CyclicSeq":
        return CyclicSeq(self.representative[::-1])

    @property
    def is_symmetric(self) -> bool:
        return self == self.reversed()

    def total(self) -> int:
        return sum(self.representative)

    def __str__(self) -> str:
        return "((" + ",".join(map(str, self.representative)) + "))"

    def __repr__(self) -> str:
        return f"CyclicSeq{self}"


@dataclass(frozen=True)
class Decomposition:
    """S(r) = (s1, s2, s1, s2); s1 is empty exactly when r = 1/m."""

    s1: Seq
    s2: Seq

    @property
    def sequence(self) -> Seq:
        return self.s1 + self.s2 + self.s1 + self.s2

    def __str__(self) -> str:
        return f"S1={self.s1} S2={self.s2}"


def _cf(r) -> ContinuedFraction:
    if isinstance(r, ContinuedFraction):
        return r
    if isinstance(r, list):
        return ContinuedFraction.normalized(r)
    return to_continued_fraction(r)


def s_sequence_of_slope(r) -> Seq:
    """S(r) read directly off u_r."""
    return Seq(runs(upper_word(to_fraction(_cf(r))).text))


def cyclic_s_sequence_of_slope(r) -> CyclicSeq:
    return CyclicSeq(s_sequence_of_slope(r))


@lru_cache(maxsize=None)
def _recursive_decomposition(terms: tuple) -> tuple:
    m = terms[0]
    k = len(terms)
    if k == 1:
        return (), (m,)
    m2 = terms[1]
    if k == 2:
        return (m + 1,), (m,) * (m2 - 1)
    if m2 == 1 and k == 3:
        return (m + 1,) * terms[2], (m,)
    t1, t2 = _recursive_decomposition(reduce_step(ContinuedFraction(terms)).terms)
    if m2 == 1:
        # S1 = (t1<m+1>, m, ..., m, t_s1<m+1>) ; S2 = (m, t<m+1>, m, ..., m)
        s1 = []
        for i, t in enumerate(t1):
            if i:
                s1.append(m)
            s1.extend([m + 1] * t)
        s2 = [m]
        for t in t2:
            s2.extend([m + 1] * t)
            s2.append(m)
        return tuple(s1), tuple(s2)
    # m2 >= 2, k >= 3: S1 built from T2, S2 from T1
    s1 = [m + 1]
    for t in t2:
        s1.extend([m] * t)
        s1.append(m + 1)
    s2 = []
    for i, t in enumerate(t1):
        if i:
            s2.append(m + 1)
        s2.extend([m] * t)
    return tuple(s1), tuple(s2)


def decompose(r) -> Decomposition:
    s1, s2 = _recursive_decomposition(_cf(r).terms)
    return Decomposition(Seq(s1), Seq(s2))


def recursive_s_sequence(r) -> Seq:
    """S(r) from the continued-fraction recursion alone (no words involved)."""
    return decompose(r).sequence


def t_sequence(r) -> Seq:
    """T(r) from S(r̃): equal when m_2 = 1, reversed when m_2 >= 2."""
    cf = _cf(r)
    if cf.k < 2:
        raise ValueError(f"T(r) needs k >= 2, got {cf}")
    s_tilde = s_sequence_of_slope(reduce_step(cf))
    return s_tilde if cf.terms[1] == 1 else s_tilde.reversed()


def t_sequence_from_runs(r) -> Seq:
    """T(r) counted directly from S(r): runs of the repeated term."""
    cf = _cf(r)
    if cf.k < 2:
        raise ValueError(f"T(r) needs k >= 2, got {cf}")
    m = cf.terms[0]
    seq = s_sequence_of_slope(cf)
    repeated = m + 1 if cf.terms[1] == 1 else m
    out = []
    prev = None
    for x in seq:
        if x == repeated:
            if prev == repeated:
                out[-1] += 1
            else:
                out.append(1)
        prev = x
    return Seq(out)


def _as_cyclic(cs) -> CyclicSeq:
    return cs if isinstance(cs, CyclicSeq) else CyclicSeq(cs)


def contains_subsequence(cs, pattern: Sequence[int]) -> bool:
    """Contiguous match of ``pattern`` at the start of some rotation of ``cs``."""
    pattern = tuple(pattern)
    if not pattern:
        raise ValueError("pattern must be nonempty")
    cs = _as_cyclic(cs)
    if len(pattern) > len(cs):
        return False
    return any(rot[: len(pattern)] == pattern for rot in cs.rotations())


def occurrences(cs, pattern: Sequence[int]) -> int:
    """Number of rotations of ``cs`` that start with ``pattern``."""
    pattern = tuple(pattern)
    cs = _as_cyclic(cs)
    if not pattern or len(pattern) > len(cs):
        return 0
    return sum(rot[: len(pattern)] == pattern for rot in cs.rotations())


def recover_slope(cs, d: Decomposition) -> Slope:
    """q/p from ((S1, S2, S1, S2)): p sums the terms of S1 and S2, q counts them."""
    cs = _as_cyclic(cs)
    if cs != CyclicSeq(d.sequence):
        raise ValueError(f"{cs} does not match the decomposition {d}")
    p = sum(d.s1) + sum(d.s2)
    q = len(d.s1) + len(d.s2)
    return Slope(q, p)


def connection_violation(r, s) -> bool:
    """True iff CS(s) contains both S1 and S2 of r without leap.

    Whenever this holds, s lies outside I_1(r) ∪ I_2(r); the converse is not
    asserted.
    """
    r = Slope.of(r) if not isinstance(r, ContinuedFraction) else to_fraction(r)
    cf = to_continued_fraction(r)
    if not (0 < r.num < r.den) or cf.k < 2:
        raise ValueError(f"connection test needs 0 < r < 1 with r != 1/p, got {r}")
    d = decompose(cf)
    cs = cyclic_s_sequence_of_slope(s)
    return contains_subsequence(cs, d.s1) and contains_subsequence(cs, d.s2)


def blocks(r) -> list:
    """Block boundaries of u_r = v1 v2 v3 v4 with S(v1)=S(v3)=S1, S(v2)=S(v4)=S2.

    Returns four ``(start, end)`` letter ranges.
    """
    d = decompose(r)
    lens = [sum(d.s1), sum(d.s2), sum(d.s1), sum(d.s2)]
    out = []
    pos = 0
    for n in lens:
        out.append((pos, pos + n))
        pos += n
    return out
