"""Closed-form answers for the link families [p], [2, n] and [2, 1, n].

Homotopy of the unoriented loops alpha_s and alpha_s' in the link exterior is
decided by Farey reduction followed by the family rule.  With ``certify=True``
positive answers are backed by checkable certificates (diagram witnesses or
rewriting certificates) and negative ones by finite-field trace evidence when
the prime budget finds it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .farey import reduce_to_fundamental_domain
from .slopes import Slope, SlopeLike, contains, intervals, to_continued_fraction
from .words import Word, upper_word

__all__ = [
    "Family",
    "Verdict",
    "Classification",
    "UnsupportedSlope",
    "classify_family",
    "decide_homotopic",
    "full_decision",
    "classify_loop",
    "peripheral_witness",
    "power_witness",
]

TORUS = "TorusOneOverP"
TWO_N = "TwoN1"
TWO_ONE_N = "TwoOneN"
UNSUPPORTED = "Unsupported"

_EXCEPTIONAL = (frozenset({Slope(1, 6), Slope(3, 10)}), frozenset({Slope(3, 4), Slope(5, 12)}))


class UnsupportedSlope(ValueError):
    """r lies outside the three families with a known answer."""


@dataclass(frozen=True)
class Family:
    tag: str
    parameter: Optional[int] = None

    def __str__(self) -> str:
        return self.tag if self.parameter is None else f"{self.tag}({self.parameter})"


@dataclass
class Verdict:
    r: Slope
    s: Slope
    s_prime: Slope
    homotopic: bool
    rule: str
    certificates: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "r": str(self.r),
            "s": str(self.s),
            "s_prime": str(self.s_prime),
            "homotopic": self.homotopic,
            "rule": self.rule,
            "certificates": self.certificates,
        }


@dataclass
class Classification:
    r: Slope
    s: Slope
    peripheral: bool
    primitive: bool
    power: Optional[tuple] = None  # (root word, exponent)
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "r": str(self.r),
            "s": str(self.s),
            "peripheral": self.peripheral,
            "primitive": self.primitive,
            "power": None if self.power is None else {"root": self.power[0], "exponent": self.power[1]},
            "witness": self.witness,
        }


def classify_family(r: SlopeLike) -> Family:
    r = Slope.of(r)
    if r.is_infinite or not (0 < r.num < r.den):
        raise ValueError(f"expected 0 < r < 1, got {r}")
    m = to_continued_fraction(r).terms
    if len(m) == 1:
        return Family(TORUS, m[0])
    if len(m) == 2 and m[0] == 2:
        return Family(TWO_N, m[1])
    if len(m) == 3 and m[:2] == (2, 1):
        return Family(TWO_ONE_N, m[2])
    return Family(UNSUPPORTED)


def _check_domain(r: Slope, *slopes: Slope) -> None:
    iv = intervals(r)
    for x in slopes:
        if x.is_infinite or not contains(iv, x):
            raise ValueError(f"{x} is not in I_1({r}) ∪ I_2({r}) = {iv}")


def decide_homotopic(r: SlopeLike, s: SlopeLike, s_prime: SlopeLike) -> Verdict:
    """Family rule for two distinct slopes of I_1(r) ∪ I_2(r)."""
    r, s, sp = Slope.of(r), Slope.of(s), Slope.of(s_prime)
    fam = classify_family(r)
    if fam.tag == UNSUPPORTED:
        raise UnsupportedSlope(f"no closed-form answer for r={r} = {to_continued_fraction(r)}")
    _check_domain(r, s, sp)
    if s == sp:
        return Verdict(r, s, sp, True, "identical slopes")
    if fam.tag == TORUS:
        if s.num == 0 or sp.num == 0:
            raise ValueError("the 1/p rule is stated for positive numerators; slope 0 is excluded")
        same = s.num == sp.num and Slope(s.num, s.den + sp.den) == r
        return Verdict(r, s, sp, same, "1/p rule: q1 = q2 and q1/(p1+p2) = 1/p")
    if fam.tag == TWO_N:
        return Verdict(r, s, sp, False, "[2,n] family: distinct slopes are never homotopic")
    exceptional = r == Slope(3, 8) and frozenset({s, sp}) in _EXCEPTIONAL
    rule = "[2,1,n] family: exceptional pair at r=3/8" if exceptional else "[2,1,n] family: not an exceptional pair"
    return Verdict(r, s, sp, exceptional, rule)


def full_decision(r: SlopeLike, s: SlopeLike, s_prime: SlopeLike, *, certify: bool = False,
                  prime_budget: int = 500, depth: int = 40) -> Verdict:
    """Reduce both slopes to the fundamental domain, then apply the family rule."""
    r, s, sp = Slope.of(r), Slope.of(s), Slope.of(s_prime)
    red, red_p = reduce_to_fundamental_domain(r, s), reduce_to_fundamental_domain(r, sp)
    s0, s0p = red.s0, red_p.s0
    steps = [{"kind": "farey", "s": str(s), "s0": str(s0), "word": list(red.word)},
             {"kind": "farey", "s": str(sp), "s0": str(s0p), "word": list(red_p.word)}]
    if red.null_homotopic and red_p.null_homotopic:
        v = Verdict(r, s, sp, True, "both loops are null-homotopic")
    elif red.null_homotopic or red_p.null_homotopic:
        v = Verdict(r, s, sp, False, "exactly one loop is null-homotopic")
    elif s0 == s0p:
        v = Verdict(r, s, sp, True, "same orbit representative")
    else:
        inner = decide_homotopic(r, s0, s0p)
        v = Verdict(r, s, sp, inner.homotopic, inner.rule)
    v.certificates = steps
    if certify and not red.null_homotopic and not red_p.null_homotopic and s0 != s0p:
        v.certificates.append(_certify(r, s0, s0p, v.homotopic, prime_budget, depth))
    return v


def _certify(r: Slope, s0: Slope, s0p: Slope, homotopic: bool, prime_budget: int, depth: int) -> dict:
    from .diagrams import conjugacy_witness, match_slope, inner_label, search_one_layer
    from .oracle import check_certificate, nonconjugacy_evidence

    if homotopic:
        fam = classify_family(r)
        if fam.tag == TWO_ONE_N:
            for d in search_one_layer(r, s0, 4):
                hit = match_slope(inner_label(d))
                if hit and hit[0] == s0p:
                    w = conjugacy_witness(d)
                    return {
                        "kind": "diagram",
                        "diagram": d.to_json(),
                        "witness": w.to_json(),
                        "checked": check_certificate(w.certificate),
                    }
        return _torus_certificate(r, s0, s0p, depth)
    ev = nonconjugacy_evidence(r, upper_word(s0), upper_word(s0p), prime_budget)
    if ev is None:
        return {"kind": "trace", "found": False, "prime_budget": prime_budget,
                "u": upper_word(s0).text, "v": upper_word(s0p).text}
    return dict(kind="trace", found=True, **ev.to_json())


def _torus_certificate(r: Slope, s0: Slope, s0p: Slope, depth: int) -> dict:
    from .oracle import word_problem_search, check_certificate

    for sign in (1, -1):
        v = upper_word(s0p) if sign > 0 else upper_word(s0p).inverse()
        for k in range(len(v)):
            rotated = Word(v.text[k:] + v.text[:k])
            cert = word_problem_search(r, upper_word(s0) * rotated.inverse(), depth, max_nodes=500)
            if cert is not None:
                return {
                    "kind": "rewrite",
                    "statement": f"u_s = rotation {k} of u_s'^{sign}",
                    "certificate": cert.to_json(),
                    "checked": check_certificate(cert),
                }
    return {"kind": "rewrite", "found": False}


# ---------------------------------------------------------------- classification

# (r, s) -> (root, exponent): u_s equals root**exponent in G(K(r))
_POWERS = {
    (Slope(2, 5), Slope(2, 7)): ("abbaBA", 3),
    (Slope(2, 5), Slope(3, 4)): ("abAABabaBA", 3),  # w (a^-1 b^-1 a b) w^-1, w = a b a^-1
    (Slope(3, 7), Slope(2, 7)): ("abbaBAB", 2),
}


def _is_peripheral(r: Slope, fam: Family, s: Slope) -> bool:
    if fam.tag != TWO_N:
        return False
    n = fam.parameter
    return (n == 2 and s in (Slope(1, 5), Slope(3, 5))) or s == Slope(n + 1, 2 * n + 1)


def peripheral_witness(r: SlopeLike, s: SlopeLike) -> Optional[tuple]:
    """(u_s, g) with g a conjugate of the meridian b commuting with u_s, for peripheral loops."""
    r, s = Slope.of(r), Slope.of(s)
    fam = classify_family(r)
    if not _is_peripheral(r, fam, s):
        return None
    u = upper_word(s)
    if s == Slope(1, 5):
        w = Word("BAB")
        return u, w.inverse() * Word("b") * w
    return u, Word("b")


def power_witness(r: SlopeLike, s: SlopeLike) -> Optional[tuple]:
    return _POWERS.get((Slope.of(r), Slope.of(s)))


def classify_loop(r: SlopeLike, s: SlopeLike, *, certify: bool = False, depth: int = 40) -> Classification:
    r, s = Slope.of(r), Slope.of(s)
    fam = classify_family(r)
    if fam.tag not in (TWO_N, TWO_ONE_N):
        raise UnsupportedSlope(f"peripherality and primitivity are known for [2,n] and [2,1,n], not r={r}")
    _check_domain(r, s)
    peripheral = _is_peripheral(r, fam, s)
    power = power_witness(r, s)
    c = Classification(r, s, peripheral, power is None, power)
    if certify:
        from .oracle import certify_identity, check_certificate

        if power is not None:
            root, k = power
            cert = certify_identity(r, upper_word(s), Word(root) ** k, depth)
            c.witness = {"kind": "power", "certificate": cert.to_json() if cert else None,
                         "checked": bool(cert and check_certificate(cert))}
        elif peripheral:
            u, g = peripheral_witness(r, s)
            cert = certify_identity(r, u * g, g * u, depth)
            c.witness = {"kind": "commutes-with-meridian-conjugate", "meridian_conjugate": g.text,
                         "certificate": cert.to_json() if cert else None,
                         "checked": bool(cert and check_certificate(cert))}
    return c
