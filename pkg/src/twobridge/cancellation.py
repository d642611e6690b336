"""Pieces of the symmetrized relator set R and the C(4)/T(4) conditions.

R consists of every cyclic permutation of u_r and u_r^{-1}.  A nonempty word is a
piece when it is a common prefix of two different members of R.  Since members
have equal length, a word is a piece exactly when at least two members start
with it, which is what the prefix table below counts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from .sequences import blocks, decompose
from .slopes import Slope, SlopeLike, to_continued_fraction
from .words import Word, invert, runs, upper_word

__all__ = [
    "SymmetrizedSet",
    "PieceVerdict",
    "C4T4Report",
    "symmetrized_set",
    "is_piece_bruteforce",
    "is_piece_criterion",
    "min_piece_count",
    "maximal_pieces",
    "expected_maximal_piece_ends",
    "cyclic_subwords",
    "has_two_piece_obstruction",
    "verify_c4_t4",
]


@dataclass(frozen=True)
class SymmetrizedSet:
    r: Slope
    members: tuple  # of Word, sorted by text
    _prefixes: dict = field(repr=False, compare=False, hash=False, default=None)

    def __post_init__(self):
        table: Counter = Counter()
        for m in self.members:
            t = m.text
            for k in range(1, len(t) + 1):
                table[t[:k]] += 1
        object.__setattr__(self, "_prefixes", dict(table))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.members)

    def __contains__(self, w) -> bool:
        return self.index(w) is not None

    def __getitem__(self, i: int) -> Word:
        return self.members[i]

    def index(self, w) -> Optional[int]:
        t = Word.parse(w).text
        for i, m in enumerate(self.members):
            if m.text == t:
                return i
        return None

    @property
    def relator_length(self) -> int:
        return len(self.members[0])

    def prefix_count(self, w) -> int:
        """How many members start with ``w``."""
        t = w if isinstance(w, str) else Word.parse(w).text
        return self._prefixes.get(t, 0)


@lru_cache(maxsize=256)
def _symmetrized(r: Slope) -> SymmetrizedSet:
    u = upper_word(r).text
    found = set()
    for x in (u, invert(u)):
        for i in range(len(x)):
            found.add(x[i:] + x[:i])
    return SymmetrizedSet(r, tuple(Word(t) for t in sorted(found)))


def symmetrized_set(r: SlopeLike) -> SymmetrizedSet:
    r = Slope.of(r)
    if r.is_infinite or not (0 < r.num < r.den):
        raise ValueError(f"the relator set is built for 0 < r < 1, got {r}")
    return _symmetrized(r)


@dataclass(frozen=True)
class PieceVerdict:
    is_piece: bool
    witnesses: Optional[tuple] = None  # two member indices

    def __bool__(self) -> bool:
        return self.is_piece


def is_piece_bruteforce(R: SymmetrizedSet, w) -> PieceVerdict:
    t = Word.parse(w).text
    if not t:
        raise ValueError("pieces are nonempty")
    if R.prefix_count(t) < 2:
        return PieceVerdict(False)
    hits = [i for i, m in enumerate(R.members) if m.text.startswith(t)]
    return PieceVerdict(True, (hits[0], hits[1]))


def cyclic_subwords(text: str, max_len: Optional[int] = None) -> Iterator[tuple]:
    """``(start, length, subword)`` for every subword of the cyclic word ``text``."""
    n = len(text)
    top = n if max_len is None else min(max_len, n)
    doubled = text + text
    for i in range(n):
        for k in range(1, top + 1):
            yield i, k, doubled[i : i + k]


def _contains_block(seq: tuple, pattern: tuple) -> bool:
    k = len(pattern)
    return any(seq[i : i + k] == pattern for i in range(len(seq) - k + 1))


def _is_cyclic_subword(u: str, t: str) -> bool:
    return len(t) <= len(u) and t in u + u


def is_piece_criterion(r: SlopeLike, w) -> bool:
    """Decide pieceness of a subword of (u_r^{±1}) from its S-sequence alone."""
    r = Slope.of(r)
    if to_continued_fraction(r).k < 2:
        raise ValueError(f"the criterion needs r != 1/p, got {r}")
    t = Word.parse(w).text
    u = upper_word(r).text
    if not t or not (_is_cyclic_subword(u, t) or _is_cyclic_subword(invert(u), t)):
        raise ValueError(f"{t or '1'} is not a subword of (u_r^±1) for r={r}")
    d = decompose(r)
    seq = tuple(runs(t))
    if _contains_block(seq, tuple(d.s1)):
        return False
    # S2 strictly inside: one more term on each side
    inner = seq[1:-1]
    return not _contains_block(inner, tuple(d.s2))


def has_two_piece_obstruction(r: SlopeLike, w) -> bool:
    """True when S(w) has (S1, S2) as a proper initial or (S2, S1) as a proper terminal block.

    "Initial" allows one leading term before the block (the first run of w may
    be a fragment of a run of u_r), and symmetrically at the end.
    """
    d = decompose(r)
    seq = tuple(runs(Word.parse(w).text))
    head = tuple(d.s1) + tuple(d.s2)
    tail = tuple(d.s2) + tuple(d.s1)
    n, m = len(head), len(seq)
    for lead in (0, 1):
        if m > n + lead and seq[lead : lead + n] == head:
            return True
        if m > n + lead and seq[m - lead - n : m - lead] == tail:
            return True
    return False


def min_piece_count(r: SlopeLike, w) -> int:
    """Fewest pieces whose product is ``w`` (letter by letter, no cancellation)."""
    R = symmetrized_set(r)
    t = Word.parse(w).text
    if not t:
        return 0
    n = len(t)
    inf = n + 1
    best = [0] + [inf] * n
    for j in range(1, n + 1):
        for i in range(j):
            if best[i] + 1 < best[j] and R.prefix_count(t[i:j]) >= 2:
                best[j] = best[i] + 1
    if best[n] > n:
        raise ValueError(f"{t} is not a product of pieces (a single letter is not a piece?)")
    return best[n]


def maximal_pieces(r: SlopeLike, n: int) -> list:
    """For each start in (u_r), the longest subword there that is a product of n pieces.

    Returns ``(start, length, word)`` triples ordered by start.
    """
    if n < 1:
        raise ValueError("n must be positive")
    u = upper_word(r).text
    L = len(u)
    doubled = u + u
    out = []
    for i in range(L):
        k = 0
        while k < L - 1 and min_piece_count(r, doubled[i : i + k + 1]) <= n:
            k += 1
        out.append((i, k, doubled[i : i + k]))
    return out


def expected_maximal_piece_ends(r: SlopeLike, n: int) -> list:
    """End offsets (exclusive, unwrapped) predicted by the v1 v2 v3 v4 block pattern.

    Blocks v1, v3 carry S1 and v2, v4 carry S2.  For 1-pieces: from the start of
    an S1 block the piece stops one letter short of the block end; from inside
    it, it runs to the end of the next block; from anywhere in an S2 block it
    stops one letter short of the end of the next block.  2-pieces extend each
    rule by one more block.
    """
    if n not in (1, 2):
        raise ValueError("the block pattern covers n = 1 and n = 2")
    bl = blocks(r)
    L = bl[-1][1]
    ends = [e for _, e in bl]

    def end_of(j: int) -> int:
        return ends[j % 4] + L * (j // 4)

    out = []
    for i in range(L):
        j = next(idx for idx, (b, e) in enumerate(bl) if b <= i < e)
        at_start = i == bl[j][0]
        if j % 2 == 0:  # S1 block
            if n == 1:
                stop = end_of(j) - 1 if at_start else end_of(j + 1)
            else:
                stop = end_of(j + 1) if at_start else end_of(j + 2) - 1
        else:
            stop = end_of(j + 1) - 1 if n == 1 else end_of(j + 2)
        out.append(stop)
    return out


@dataclass
class C4T4Report:
    slope: Slope
    c4: bool
    t4: bool
    min_pieces: int
    triples_checked: int
    violations: list

    def to_json(self) -> dict:
        return {
            "slope": str(self.slope),
            "c4": self.c4,
            "t4": self.t4,
            "min_pieces": self.min_pieces,
            "triples_checked": self.triples_checked,
            "violations": self.violations,
        }


def _cancels(x: str, y: str) -> bool:
    return x[-1] == y[0].swapcase()


def verify_c4_t4(r: SlopeLike) -> C4T4Report:
    """Check C(4) on every member and T(4) on every triple of R.

    T(4) quantifies over cycles of length 3 only (the usual 3 <= h < q range).
    """
    r = Slope.of(r)
    R = symmetrized_set(r)
    texts = [m.text for m in R.members]
    violations = []
    least = min(min_piece_count(r, t) for t in texts)
    if least < 4:
        worst = next(t for t in texts if min_piece_count(r, t) == least)
        violations.append({"condition": "C4", "member": worst, "pieces": least})
    inverse_of = {t: invert(t) for t in texts}
    # successors of x that cancel against it and are not its inverse
    follow = {
        x: [y for y in texts if _cancels(x, y) and y != inverse_of[x]] for x in texts
    }
    checked = 0
    for x in texts:
        for y in follow[x]:
            for z in follow[y]:
                checked += 1
                if x in follow[z]:
                    violations.append({"condition": "T4", "cycle": [x, y, z]})
    t4 = not any(v["condition"] == "T4" for v in violations)
    return C4T4Report(r, least >= 4, t4, least, checked, violations)
