"""Independent checks of equalities and non-conjugacy in G(K(r)) = <a, b | u_r>.

Equalities are certified by explicit relator insertions that a replay can check
without trusting the search that found them.  Non-conjugacy is shown by
finite-field parabolic representations: conjugate elements have equal traces,
so a trace mismatch in any representation is a proof.
"""

from __future__ import annotations

import heapq
import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

import sympy
from sympy.ntheory import primerange

from .cancellation import symmetrized_set
from .slopes import Slope, SlopeLike
from .words import Word, invert, reduce_text, upper_word

__all__ = [
    "RewriteStep",
    "RewriteCertificate",
    "CertificateError",
    "check_certificate",
    "check_trace_evidence",
    "replay_certificate",
    "word_problem_search",
    "certify_identity",
    "riley_polynomial",
    "FiniteFieldRep",
    "NoUsableRoot",
    "finite_rep",
    "finite_reps",
    "TraceEvidence",
    "nonconjugacy_evidence",
]

log = logging.getLogger(__name__)


# ---------------------------------------------------------------- certificates


class CertificateError(ValueError):
    """A certificate step that cannot be applied."""


@dataclass(frozen=True)
class RewriteStep:
    position: int
    conjugator: Word
    relator_member: int
    direction: str = "insert"

    def to_json(self) -> dict:
        return {
            "position": self.position,
            "conjugator": self.conjugator.text,
            "relator_member": self.relator_member,
            "direction": self.direction,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RewriteStep":
        return cls(
            int(data["position"]),
            Word.parse(data.get("conjugator", "")),
            int(data["relator_member"]),
            data.get("direction", "insert"),
        )


@dataclass(frozen=True)
class RewriteCertificate:
    """start is turned into end by inserting or deleting conjugates of relators."""

    r: Slope
    start: Word
    steps: tuple = ()
    end: Word = field(default_factory=Word)

    def to_json(self) -> dict:
        return {
            "slope": str(self.r),
            "start": self.start.text,
            "steps": [s.to_json() for s in self.steps],
            "end": self.end.text,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> "RewriteCertificate":
        return cls(
            Slope.of(data["slope"]),
            Word.parse(data["start"]),
            tuple(RewriteStep.from_json(s) for s in data.get("steps", [])),
            Word.parse(data.get("end", "")),
        )

    @classmethod
    def loads(cls, text: str) -> "RewriteCertificate":
        return cls.from_json(json.loads(text))


def _apply(text: str, step: RewriteStep, members: tuple, index: int) -> str:
    if not 0 <= step.relator_member < len(members):
        raise CertificateError(
            f"step {index}: relator_member {step.relator_member} outside 0..{len(members) - 1}"
        )
    if not 0 <= step.position <= len(text):
        raise CertificateError(
            f"step {index}: position {step.position} outside 0..{len(text)} (current word {text or '1'})"
        )
    c = step.conjugator.text
    block = c + members[step.relator_member].text + invert(c)
    if step.direction == "insert":
        return reduce_text(text[: step.position] + block + text[step.position :])
    if step.direction == "delete":
        if text[step.position : step.position + len(block)] != block:
            raise CertificateError(f"step {index}: {block} does not occur at position {step.position}")
        return reduce_text(text[: step.position] + text[step.position + len(block) :])
    raise CertificateError(f"step {index}: unknown direction {step.direction!r}")


def replay_certificate(c: RewriteCertificate) -> Word:
    """The word reached after all steps; raises :class:`CertificateError` on a bad step."""
    members = symmetrized_set(c.r).members
    text = reduce_text(c.start.text)
    for i, step in enumerate(c.steps):
        text = _apply(text, step, members, i)
    return Word(text)


def check_certificate(c: RewriteCertificate) -> bool:
    return replay_certificate(c).text == reduce_text(c.end.text)


def word_problem_search(
    r: SlopeLike,
    w,
    depth: int = 40,
    *,
    slack: int = 2,
    max_nodes: int = 5_000,
) -> Optional[RewriteCertificate]:
    """Look for a proof that ``w`` is trivial in G(K(r)).

    Best-first over freely reduced words, shortest first.  A move inserts a
    member of R anywhere and keeps the result if it grows by at most ``slack``
    letters; long overlaps with a relator therefore shrink the word.  Returns
    ``None`` when the budget runs out, which proves nothing.
    """
    r = Slope.of(r)
    members = symmetrized_set(r).members
    start = reduce_text(Word.parse(w).text)
    parent: dict = {start: None}
    heap = [(len(start), 0, start)]
    expanded = 0
    while heap:
        _, steps, x = heapq.heappop(heap)
        if not x:
            return _certificate_from(parent, r, start)
        if steps >= depth:
            continue
        expanded += 1
        if expanded > max_nodes:
            break
        for pos in range(len(x) + 1):
            for idx, m in enumerate(members):
                y = reduce_text(x[:pos] + m.text + x[pos:])
                if len(y) <= len(x) + slack and y not in parent:
                    parent[y] = (x, RewriteStep(pos, Word(), idx))
                    heapq.heappush(heap, (len(y), steps + 1, y))
    log.info("word problem search gave up on %s after %d nodes", start, expanded)
    return None


def _certificate_from(parent: dict, r: Slope, start: str) -> RewriteCertificate:
    steps = []
    x = ""
    while parent[x] is not None:
        x, step = parent[x]
        steps.append(step)
    return RewriteCertificate(r, Word(start), tuple(reversed(steps)), Word())


def certify_identity(r: SlopeLike, lhs, rhs, depth: int = 40, **kw) -> Optional[RewriteCertificate]:
    """Certificate that lhs = rhs in G(K(r)), i.e. that lhs·rhs^{-1} is trivial."""
    w = Word.parse(lhs) * Word.parse(rhs).inverse()
    return word_problem_search(r, w, depth, **kw)


# ---------------------------------------------------------------- Riley polynomial

_Y = sympy.Symbol("y")


def _poly_matrix(word: str) -> list:
    one = sympy.Poly(1, _Y, domain="ZZ")
    zero = sympy.Poly(0, _Y, domain="ZZ")
    y = sympy.Poly(_Y, _Y, domain="ZZ")
    gens = {
        "a": [[one, one], [zero, one]],
        "A": [[one, -one], [zero, one]],
        "b": [[one, zero], [y, one]],
        "B": [[one, zero], [-y, one]],
    }
    m = [[one, zero], [zero, one]]
    for ch in word:
        g = gens[ch]
        m = [
            [m[0][0] * g[0][0] + m[0][1] * g[1][0], m[0][0] * g[0][1] + m[0][1] * g[1][1]],
            [m[1][0] * g[0][0] + m[1][1] * g[1][0], m[1][0] * g[0][1] + m[1][1] * g[1][1]],
        ]
    return m


@lru_cache(maxsize=256)
def _riley(r: Slope) -> sympy.Poly:
    m = _poly_matrix(upper_word(r).text)
    entries = [m[0][0] - 1, m[0][1], m[1][0], m[1][1] - 1]
    g = sympy.Poly(0, _Y, domain="ZZ")
    for e in entries:
        g = g.gcd(e)
    if g.is_zero:
        raise AssertionError(f"rho(u_r) = I identically for r={r}")
    g = g.primitive()[1]
    if g.LC() < 0:
        g = -g
    return g


def riley_polynomial(r: SlopeLike) -> sympy.Poly:
    """Content-free gcd of the entries of rho(u_r) - I, for rho(a)=[[1,1],[0,1]], rho(b)=[[1,0],[y,1]]."""
    r = Slope.of(r)
    if r.is_infinite or not (0 < r.num < r.den):
        raise ValueError(f"expected 0 < r < 1, got {r}")
    return _riley(r)


# ---------------------------------------------------------------- finite fields


@dataclass(frozen=True)
class _Field:
    """F_p, or F_p[t]/(t^2 - d) with d a non-residue when ``d`` is set."""

    p: int
    d: Optional[int] = None

    @property
    def degree(self) -> int:
        return 1 if self.d is None else 2

    def elt(self, x0: int, x1: int = 0) -> tuple:
        return (x0 % self.p, x1 % self.p)

    def add(self, x, y):
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def mul(self, x, y):
        p, d = self.p, self.d or 0
        return ((x[0] * y[0] + d * x[1] * y[1]) % p, (x[0] * y[1] + x[1] * y[0]) % p)

    def fmt(self, x) -> str:
        if self.d is None:
            return str(x[0])
        return f"{x[0]}+{x[1]}*sqrt({self.d})"


def _mat_mul(F: _Field, m, n):
    return (
        (F.add(F.mul(m[0][0], n[0][0]), F.mul(m[0][1], n[1][0])), F.add(F.mul(m[0][0], n[0][1]), F.mul(m[0][1], n[1][1]))),
        (F.add(F.mul(m[1][0], n[0][0]), F.mul(m[1][1], n[1][0])), F.add(F.mul(m[1][0], n[0][1]), F.mul(m[1][1], n[1][1]))),
    )


@dataclass(frozen=True)
class FiniteFieldRep:
    """Parabolic representation of G(K(r)) into SL(2, F_p) or SL(2, F_{p^2})."""

    r: Slope
    prime: int
    field: _Field
    y: tuple
    images: dict = field(compare=False, hash=False, repr=False, default=None)

    def __post_init__(self):
        F = self.field
        one, zero = F.elt(1), F.elt(0)
        neg_y = F.elt(-self.y[0], -self.y[1])
        images = {
            "a": ((one, one), (zero, one)),
            "A": ((one, F.elt(-1)), (zero, one)),
            "b": ((one, zero), (self.y, one)),
            "B": ((one, zero), (neg_y, one)),
        }
        object.__setattr__(self, "images", images)

    def evaluate(self, w) -> tuple:
        F = self.field
        one, zero = F.elt(1), F.elt(0)
        m = ((one, zero), (zero, one))
        for ch in Word.parse(w).text:
            m = _mat_mul(F, m, self.images[ch])
        return m

    def trace(self, w) -> tuple:
        m = self.evaluate(w)
        return self.field.add(m[0][0], m[1][1])

    def determinant(self, w) -> tuple:
        F = self.field
        m = self.evaluate(w)
        ad = F.mul(m[0][0], m[1][1])
        bc = F.mul(m[0][1], m[1][0])
        return F.add(ad, F.elt(-bc[0], -bc[1]))

    def is_identity(self, w) -> bool:
        F = self.field
        m = self.evaluate(w)
        return m == ((F.elt(1), F.elt(0)), (F.elt(0), F.elt(1)))

    def describe(self) -> dict:
        return {
            "slope": str(self.r),
            "prime": self.prime,
            "field": f"F_{self.prime}" if self.field.degree == 1 else f"F_{self.prime}^2 (sqrt {self.field.d})",
            "y": self.field.fmt(self.y),
        }


class NoUsableRoot(ValueError):
    """The Riley polynomial has no root in F_p or F_{p^2}."""


def _roots_mod(poly: sympy.Poly, p: int) -> list:
    """Roots as (field, element) pairs from the linear and quadratic factors mod p."""
    f = sympy.Poly(poly.as_expr(), _Y, modulus=p)
    if f.degree() <= 0:
        return []
    out = []
    for factor, _ in f.factor_list()[1]:
        coeffs = [int(c) % p for c in factor.all_coeffs()]
        lead_inv = pow(coeffs[0], -1, p)
        coeffs = [c * lead_inv % p for c in coeffs]
        if len(coeffs) == 2:
            out.append((_Field(p), (-coeffs[1] % p, 0)))
        elif len(coeffs) == 3:
            _, b, c = coeffs
            disc = (b * b - 4 * c) % p
            F = _Field(p, disc)
            half = pow(2, -1, p)
            for sign in (1, -1):
                out.append((F, ((-b) * half % p, sign * half % p)))
    return out


def finite_reps(r: SlopeLike, prime: int) -> Iterator[FiniteFieldRep]:
    """Every representation at this prime coming from a root in F_p or F_{p^2}."""
    r = Slope.of(r)
    if prime < 5 or not sympy.isprime(prime):
        raise ValueError(f"need a prime >= 5, got {prime}")
    poly = riley_polynomial(r)
    u = upper_word(r).text
    for F, y in _roots_mod(poly, prime):
        rep = FiniteFieldRep(r, prime, F, y)
        if not rep.is_identity(u):
            raise AssertionError(f"rho(u_r) != I at p={prime}, y={F.fmt(y)}")
        yield rep


def finite_rep(r: SlopeLike, prime: int) -> FiniteFieldRep:
    for rep in finite_reps(r, prime):
        return rep
    raise NoUsableRoot(f"no root of the Riley polynomial of {r} in F_{prime} or F_{prime}^2")


@lru_cache(maxsize=4096)
def _reps_cached(r: Slope, prime: int) -> tuple:
    return tuple(finite_reps(r, prime))


@dataclass(frozen=True)
class TraceEvidence:
    rep: FiniteFieldRep
    trace_u: tuple
    trace_v: tuple
    u: str = ""
    v: str = ""

    def to_json(self) -> dict:
        F = self.rep.field
        out = self.rep.describe()
        out.update(u=self.u, v=self.v, trace_u=F.fmt(self.trace_u), trace_v=F.fmt(self.trace_v))
        return out


def check_trace_evidence(data: dict) -> bool:
    """Recompute a :meth:`TraceEvidence.to_json` record from scratch."""
    r, p = Slope.of(data["slope"]), int(data["prime"])
    u, v = Word.parse(data["u"]), Word.parse(data["v"])
    for rep in finite_reps(r, p):
        desc = rep.describe()
        if (desc["field"], desc["y"]) != (data["field"], data["y"]):
            continue
        F = rep.field
        tu, tv, tw = rep.trace(u), rep.trace(v), rep.trace(v.inverse())
        return F.fmt(tu) == data["trace_u"] and F.fmt(tv) == data["trace_v"] and tu != tv and tu != tw
    return False


def nonconjugacy_evidence(r: SlopeLike, u, v, prime_budget: int = 500) -> Optional[TraceEvidence]:
    """A representation in which u is conjugate to neither v nor v^{-1}, if one turns up.

    Primes from 5 up to ``prime_budget`` are tried in order.  ``None`` means
    inconclusive, never "conjugate".
    """
    r = Slope.of(r)
    u, v = Word.parse(u), Word.parse(v)
    for p in primerange(5, prime_budget + 1):
        for rep in _reps_cached(r, p):
            tu = rep.trace(u)
            tv, tv_inv = rep.trace(v), rep.trace(v.inverse())
            if tu != tv and tu != tv_inv:
                return TraceEvidence(rep, tu, tv, u.text, v.text)
    return None
