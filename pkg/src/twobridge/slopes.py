"""Exact slopes in Q ∪ {∞}, continued fractions and the fundamental intervals."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Union

__all__ = [
    "Slope",
    "INFINITY",
    "ContinuedFraction",
    "SlopeIntervals",
    "parse_slope",
    "to_continued_fraction",
    "to_fraction",
    "reduce_step",
    "intervals",
    "contains",
    "farey_slopes",
]


@dataclass(frozen=True, order=False)
class Slope:
    """A rational number ``num/den`` in lowest terms, or ``1/0`` for infinity."""

    num: int
    den: int

    def __post_init__(self):
        num, den = self.num, self.den
        if den < 0:
            num, den = -num, -den
        if den == 0:
            if num == 0:
                raise ValueError("0/0 is not a slope")
            num = 1
        else:
            g = gcd(num, den)
            num, den = num // g, den // g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def of(cls, value: "SlopeLike") -> "Slope":
        if isinstance(value, Slope):
            return value
        if isinstance(value, str):
            return parse_slope(value)
        if isinstance(value, int):
            return cls(value, 1)
        if isinstance(value, tuple):
            return cls(*value)
        # fractions.Fraction and friends
        try:
            return cls(value.numerator, value.denominator)
        except AttributeError:
            raise TypeError(f"cannot interpret {value!r} as a slope") from None

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def _key(self):
        if self.is_infinite:
            raise ValueError("infinity is not ordered")
        return self.num, self.den

    def __lt__(self, other: "Slope") -> bool:
        a, b = self._key()
        c, d = Slope.of(other)._key()
        return a * d < c * b

    def __le__(self, other: "Slope") -> bool:
        return self == Slope.of(other) or self < other

    def __gt__(self, other: "Slope") -> bool:
        return Slope.of(other) < self

    def __ge__(self, other: "Slope") -> bool:
        return Slope.of(other) <= self

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Slope({self})"


SlopeLike = Union[Slope, str, int, tuple]

INFINITY = Slope(1, 0)


def parse_slope(text: str) -> Slope:
    """Parse ``"q/p"``, an integer, or ``"inf"``."""
    t = text.strip().lower()
    if t in ("inf", "infinity", "oo", "∞", "1/0"):
        return INFINITY
    if "/" in t:
        q, p = t.split("/", 1)
        try:
            q_i, p_i = int(q), int(p)
        except ValueError:
            raise ValueError(f"malformed slope {text!r}") from None
        if p_i == 0:
            if q_i == 0:
                raise ValueError("0/0 is not a slope")
            return INFINITY
        return Slope(q_i, p_i)
    try:
        return Slope(int(t), 1)
    except ValueError:
        raise ValueError(f"malformed slope {text!r}") from None


@dataclass(frozen=True)
class ContinuedFraction:
    """The expansion ``[m_1, ..., m_k]`` of a slope in (0, 1]."""

    terms: tuple

    def __post_init__(self):
        terms = tuple(int(m) for m in self.terms)
        if not terms:
            raise ValueError("a continued fraction needs at least one term")
        if any(m <= 0 for m in terms):
            raise ValueError(f"terms must be positive: {terms}")
        if len(terms) > 1 and terms[-1] < 2:
            raise ValueError(f"last term must be >= 2 when k >= 2: {terms}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def normalized(cls, terms: Iterable[int]) -> "ContinuedFraction":
        """Build from any positive expansion, folding a trailing 1 into its neighbour."""
        terms = [int(m) for m in terms]
        if len(terms) > 1 and terms[-1] == 1:
            terms = terms[:-2] + [terms[-2] + 1]
        return cls(tuple(terms))

    @property
    def k(self) -> int:
        return len(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __str__(self) -> str:
        return "[" + ",".join(str(m) for m in self.terms) + "]"


def to_continued_fraction(r: SlopeLike) -> ContinuedFraction:
    r = Slope.of(r)
    if r.is_infinite or not (0 < r.num <= r.den):
        raise ValueError(f"continued fractions are defined on (0,1] only, got {r}")
    q, p = r.num, r.den
    terms = []
    # 1/(p/q): peel off integer parts of p/q
    while q:
        m, rem = divmod(p, q)
        terms.append(m)
        p, q = q, rem
    return ContinuedFraction.normalized(terms)


def _evaluate(terms) -> Slope:
    num, den = 0, 1  # value of the empty tail
    for m in reversed(terms):
        num, den = den, m * den + num
    return Slope(num, den)


def to_fraction(cf: ContinuedFraction) -> Slope:
    if not isinstance(cf, ContinuedFraction):
        cf = ContinuedFraction.normalized(cf)
    return _evaluate(cf.terms)


def reduce_step(cf) -> ContinuedFraction:
    """The slope r̃ one level down: drop m_1, and m_2 too when m_2 = 1."""
    if not isinstance(cf, ContinuedFraction):
        cf = to_continued_fraction(cf) if isinstance(cf, (Slope, str)) else ContinuedFraction.normalized(cf)
    m = cf.terms
    if len(m) < 2:
        raise ValueError(f"reduce_step needs k >= 2, got {cf}")
    if m[1] == 1:
        return ContinuedFraction.normalized(m[2:])
    return ContinuedFraction.normalized((m[1] - 1,) + m[2:])


@dataclass(frozen=True)
class SlopeIntervals:
    """``I_1 = [0, r1]`` and ``I_2 = [r2, 1]`` for a slope r in (0, 1)."""

    r: Slope
    r1: Slope
    r2: Slope

    def __contains__(self, s) -> bool:
        return contains(self, s)

    def __str__(self) -> str:
        return f"I1=[0,{self.r1}] I2=[{self.r2},1]"


def intervals(r: SlopeLike) -> SlopeIntervals:
    r = Slope.of(r)
    if r.is_infinite or not (0 < r.num < r.den):
        raise ValueError(f"intervals are defined for 0 < r < 1, got {r}")
    m = to_continued_fraction(r).terms
    k = len(m)
    head = m[:-1]
    shortened = head + (m[-1] - 1,)
    # head is empty for k = 1, giving r1 = 0
    short_val = _evaluate(shortened)
    head_val = _evaluate(head) if head else Slope(0, 1)
    if k % 2:
        r1, r2 = head_val, short_val
    else:
        r1, r2 = short_val, head_val
    return SlopeIntervals(r, r1, r2)


def contains(iv: SlopeIntervals, s: SlopeLike) -> bool:
    s = Slope.of(s)
    if s.is_infinite:
        return False
    zero, one = Slope(0, 1), Slope(1, 1)
    return (zero <= s <= iv.r1) or (iv.r2 <= s <= one)


def farey_slopes(max_den: int, *, lo: SlopeLike = (0, 1), hi: SlopeLike = (1, 1)) -> list:
    """All slopes in [lo, hi] with denominator at most ``max_den``, sorted."""
    lo, hi = Slope.of(lo), Slope.of(hi)
    out = set()
    for p in range(1, max_den + 1):
        q_lo = -((-lo.num * p) // lo.den)
        q_hi = (hi.num * p) // hi.den
        for q in range(q_lo, q_hi + 1):
            if gcd(q, p) == 1:
                out.add(Slope(q, p))
    return sorted(out)
