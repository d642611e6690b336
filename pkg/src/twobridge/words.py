"""Words over {a, b}, cyclic words, sign runs and the slope words u_{q/p}.

Words are written in the compact notation ``a, A, b, B`` with ``A = a^-1`` and
``B = b^-1``; internally a :class:`Word` is a thin wrapper around that string so
that prefix tests and slicing stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Union

from .slopes import Slope, SlopeLike

__all__ = [
    "Letter",
    "Word",
    "CyclicWord",
    "invert",
    "reduce_text",
    "free_reduce",
    "upper_word",
    "s_sequence",
    "cyclic_s_sequence",
    "is_cyclically_alternating",
    "runs",
]

_ALPHABET = "aAbB"
_ORDER = {c: i for i, c in enumerate(_ALPHABET)}  # a < A < b < B


class Letter(NamedTuple):
    generator: str
    sign: int

    @classmethod
    def from_char(cls, c: str) -> "Letter":
        return cls(c.lower(), 1 if c.islower() else -1)

    def to_char(self) -> str:
        return self.generator if self.sign > 0 else self.generator.upper()

    def __str__(self) -> str:
        return self.generator if self.sign > 0 else f"{self.generator}^-1"


def invert(text: str) -> str:
    return text[::-1].swapcase()


def reduce_text(text: str) -> str:
    stack = []
    for c in text:
        if stack and stack[-1] == c.swapcase():
            stack.pop()
        else:
            stack.append(c)
    return "".join(stack)


def _parse(text: str) -> str:
    """Accept ``abAB`` as well as ``a b^-1 a^-1`` and ``a^2`` style input."""
    s = text.replace(" ", "").replace("*", "").replace("⁻¹", "^-1")
    if s in ("", "1", "e"):
        return ""
    out = []
    i = 0
    while i < len(s):
        c = s[i]
        if c not in _ALPHABET:
            raise ValueError(f"bad letter {c!r} in word {text!r}")
        i += 1
        power = 1
        if i < len(s) and s[i] == "^":
            j = i + 1
            if j < len(s) and s[j] in "+-":
                j += 1
            k = j
            while k < len(s) and s[k].isdigit():
                k += 1
            if k == j:
                raise ValueError(f"bad exponent in word {text!r}")
            power = int(s[i + 1 : k])
            i = k
        if power < 0:
            c, power = c.swapcase(), -power
        out.append(c * power)
    return "".join(out)


@dataclass(frozen=True)
class Word:
    """A (not necessarily reduced) word in a, b and their inverses."""

    text: str = ""

    def __post_init__(self):
        if any(c not in _ALPHABET for c in self.text):
            raise ValueError(f"not a word over aAbB: {self.text!r}")

    @classmethod
    def parse(cls, text: Union[str, "Word"]) -> "Word":
        if isinstance(text, Word):
            return text
        return cls(_parse(text))

    @classmethod
    def from_letters(cls, letters) -> "Word":
        return cls("".join(Letter(*x).to_char() for x in letters))

    @property
    def letters(self) -> tuple:
        return tuple(Letter.from_char(c) for c in self.text)

    def __len__(self) -> int:
        return len(self.text)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, i) -> "Word":
        if isinstance(i, slice):
            return Word(self.text[i])
        return Word(self.text[i])

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.text + Word.parse(other).text)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.text * n)

    def inverse(self) -> "Word":
        return Word(invert(self.text))

    def reduced(self) -> "Word":
        return Word(reduce_text(self.text))

    @property
    def is_reduced(self) -> bool:
        return reduce_text(self.text) == self.text

    @property
    def is_cyclically_reduced(self) -> bool:
        t = self.text
        return self.is_reduced and (len(t) < 2 or t[0] != t[-1].swapcase())

    def __str__(self) -> str:
        return self.text or "1"

    def __repr__(self) -> str:
        return f"Word({self.text!r})"


WordLike = Union[Word, str]


def _text(w: WordLike) -> str:
    return w.text if isinstance(w, Word) else _parse(w)


def _least_rotation(t: str) -> str:
    if not t:
        return t
    key = [_ORDER[c] for c in t]
    n = len(t)
    best = min(range(n), key=lambda i: key[i:] + key[:i])
    return t[best:] + t[:best]


@dataclass(frozen=True)
class CyclicWord:
    """A cyclically reduced word up to rotation, stored in its least rotation."""

    representative: Word

    def __post_init__(self):
        rep = Word.parse(self.representative)
        if not rep.is_cyclically_reduced:
            raise ValueError(f"{rep} is not cyclically reduced")
        object.__setattr__(self, "representative", Word(_least_rotation(rep.text)))

    @classmethod
    def of(cls, w: WordLike) -> "CyclicWord":
        return cls(Word.parse(w))

    @property
    def text(self) -> str:
        return self.representative.text

    def __len__(self) -> int:
        return len(self.text)

    def inverse(self) -> "CyclicWord":
        return CyclicWord(self.representative.inverse())

    def rotations(self) -> Iterator[Word]:
        t = self.text
        for i in range(len(t)):
            yield Word(t[i:] + t[:i])

    def contains_subword(self, w: WordLike) -> bool:
        """True if ``w`` reads off the cycle (length at most one full turn)."""
        s = _text(w)
        t = self.text
        if len(s) > len(t):
            return False
        return s in t + t[: len(s)]

    def __str__(self) -> str:
        return f"({self.text})"


def free_reduce(w: WordLike) -> Word:
    return Word(reduce_text(_text(w)))


@lru_cache(maxsize=4096)
def _upper_text(q: int, p: int) -> str:
    out = []
    for i in range(1, 2 * p + 1):
        # ⌈t⌉* = floor(t) + 1 for t = (i-1) q / p, in integer arithmetic
        star = ((i - 1) * q) // p + 1
        positive = (star - 1) % 2 == 0
        gen = "a" if i % 2 else "b"
        out.append(gen if positive else gen.upper())
    return "".join(out)


def upper_word(s: SlopeLike) -> Word:
    """The alternating word u_{q/p} of length 2p read off the line of slope q/p.

    Slope 0 is accepted (the formula yields ``ab``); negative slopes and
    infinity are rejected.
    """
    s = Slope.of(s)
    if s.is_infinite or s.num < 0:
        raise ValueError(f"upper words are defined for slopes q/p >= 0, got {s}")
    return Word(_upper_text(s.num, s.den))


def runs(text: str) -> list:
    """Lengths of maximal constant-sign blocks of a word given as text."""
    out = []
    prev = None
    for c in text:
        sign = c.islower()
        if sign == prev:
            out[-1] += 1
        else:
            out.append(1)
            prev = sign
    return out


def s_sequence(v: WordLike):
    from .sequences import Seq

    t = _text(v)
    if not t:
        raise ValueError("the S-sequence of the empty word is undefined")
    if reduce_text(t) != t:
        raise ValueError(f"{t} is not reduced")
    return Seq(runs(t))


def cyclic_s_sequence(v: Union[CyclicWord, WordLike]):
    from .sequences import CyclicSeq

    t = v.text if isinstance(v, CyclicWord) else _text(v)
    if not t:
        raise ValueError("the cyclic S-sequence of the empty word is undefined")
    CyclicWord.of(t)  # raises unless cyclically reduced
    rs = runs(t)
    if len(rs) > 1 and t[0].islower() == t[-1].islower():
        rs[0] += rs.pop()
    return CyclicSeq(rs)


def is_cyclically_alternating(v: Union[CyclicWord, WordLike]) -> bool:
    t = v.text if isinstance(v, CyclicWord) else _text(v)
    if not t:
        return False
    n = len(t)
    if n == 1:
        return True
    return all(t[i].lower() != t[(i + 1) % n].lower() for i in range(n))
