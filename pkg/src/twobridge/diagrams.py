"""Annular R-diagrams stored combinatorially, with a one-layer search.

A layer is a ring of t faces of degree 4.  Consecutive faces meet in a single
vertex that lies on both boundaries; each face D_i contributes two edges to the
outer boundary and two to the inner one.  A face is recorded as a member of R
plus four cut positions in that member: the outer-left corner, the outer
midpoint, the outer-right corner and the inner midpoint, in clockwise order.
Reading the member from the outer-left corner gives

    (outer path) · (inner path)^{-1},

where both paths run in the clockwise direction of the outer boundary, so the
inner boundary label read that way is the inverse of the counterclockwise one.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Optional

from .cancellation import SymmetrizedSet, symmetrized_set
from .sequences import decompose
from .slopes import Slope, SlopeLike, contains, intervals
from .words import CyclicWord, Word, invert, is_cyclically_alternating, reduce_text, runs, upper_word

__all__ = [
    "FaceSplit",
    "AnnularDiagram",
    "ValidationReport",
    "validate",
    "outer_label",
    "inner_label",
    "search_one_layer",
    "match_slope",
    "reachable_inner_slopes",
    "conjugacy_witness",
    "ConjugacyWitness",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FaceSplit:
    member: int
    cuts: tuple  # four positions in the member, cyclically increasing

    def __post_init__(self):
        object.__setattr__(self, "cuts", tuple(int(c) for c in self.cuts))
        if len(self.cuts) != 4:
            raise ValueError("a face of degree 4 needs four cuts")

    def to_json(self) -> dict:
        return {"member": self.member, "cuts": list(self.cuts)}


@dataclass(frozen=True)
class _Face:
    """A face resolved against R: its four edge labels in clockwise order."""

    label: str  # member rotated to start at the outer-left corner
    edges: tuple  # E1, E2 on the outer path; E3, E4 on the inner path (face orientation)

    @property
    def outer(self) -> str:
        return self.edges[0] + self.edges[1]

    @property
    def inner(self) -> str:
        """Inner path in the boundary direction: (E3 E4)^{-1}."""
        return invert(self.edges[2] + self.edges[3])


def _resolve(R: SymmetrizedSet, f: FaceSplit) -> _Face:
    if not 0 <= f.member < len(R):
        raise ValueError(f"member index {f.member} outside 0..{len(R) - 1}")
    m = R[f.member].text
    L = len(m)
    k0 = f.cuts[0] % L
    rot = m[k0:] + m[:k0]
    rel = [(c - k0) % L for c in f.cuts]
    if not (0 == rel[0] < rel[1] < rel[2] < rel[3] < L):
        raise ValueError(f"cuts {f.cuts} are not cyclically increasing in a word of length {L}")
    edges = (rot[rel[0] : rel[1]], rot[rel[1] : rel[2]], rot[rel[2] : rel[3]], rot[rel[3] :])
    return _Face(rot, edges)


@dataclass(frozen=True)
class AnnularDiagram:
    """Rings of faces from the outside in; ``shifts[k]`` glues ring k to ring k+1.

    Outer edge j of ring k+1 is identified with inner edge j + shifts[k] of ring k.
    """

    slope: Slope
    layers: tuple
    shifts: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "slope", Slope.of(self.slope))
        object.__setattr__(self, "layers", tuple(tuple(layer) for layer in self.layers))
        object.__setattr__(self, "shifts", tuple(self.shifts))
        if not self.layers or any(not layer for layer in self.layers):
            raise ValueError("a diagram needs at least one nonempty ring")
        if len(self.shifts) != len(self.layers) - 1:
            raise ValueError("one shift per pair of adjacent rings")

    @property
    def faces(self) -> tuple:
        return self.layers[0]

    @property
    def mode(self) -> str:
        return _mode_of(self)

    def to_json(self) -> dict:
        faces = [dict(f.to_json(), layer=k) for k, layer in enumerate(self.layers) for f in layer]
        if len(self.layers) == 1:
            for f in faces:
                del f["layer"]
        out = {
            "slope": str(self.slope),
            "mode": self.mode,
            "faces": faces,
            "layers": len(self.layers),
        }
        if self.shifts:
            out["shifts"] = list(self.shifts)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "AnnularDiagram":
        n = int(data.get("layers", 1))
        rings: list = [[] for _ in range(n)]
        for f in data["faces"]:
            rings[int(f.get("layer", 0))].append(FaceSplit(int(f["member"]), tuple(f["cuts"])))
        return cls(Slope.of(data["slope"]), tuple(tuple(r) for r in rings), tuple(data.get("shifts", ())))


def _faces(d: AnnularDiagram, k: int) -> list:
    R = symmetrized_set(d.slope)
    return [_resolve(R, f) for f in d.layers[k]]


def outer_label(d: AnnularDiagram) -> CyclicWord:
    return CyclicWord.of("".join(f.outer for f in _faces(d, 0)) or "1")


def inner_label(d: AnnularDiagram) -> CyclicWord:
    """The inner boundary read in the outer boundary's direction, i.e. phi(delta^{-1})."""
    return CyclicWord.of("".join(f.inner for f in _faces(d, len(d.layers) - 1)) or "1")


def _outer_text(d: AnnularDiagram) -> str:
    return "".join(f.outer for f in _faces(d, 0))


def _inner_text(d: AnnularDiagram) -> str:
    return "".join(f.inner for f in _faces(d, len(d.layers) - 1))


# ------------------------------------------------------------------ modes


def _contains_block(seq: tuple, pattern: tuple) -> int:
    """Index of the first occurrence, or -1."""
    k = len(pattern)
    for i in range(len(seq) - k + 1):
        if seq[i : i + k] == pattern:
            return i
    return -1


def _path_mode(r: Slope, path: str) -> Optional[str]:
    d = decompose(r)
    seq = tuple(runs(path))
    if d.s1 and _contains_block(seq, tuple(d.s1)) >= 0:
        return "B"
    if _contains_block(seq[1:-1], tuple(d.s2)) >= 0:
        return "C"
    return None


def _face_mode(r: Slope, face: _Face) -> Optional[str]:
    up, down = _path_mode(r, face.outer), _path_mode(r, face.inner)
    return up if up == down else None


def _mode_of(d: AnnularDiagram) -> str:
    modes = {_face_mode(d.slope, f) for f in _faces(d, 0)}
    if len(modes) == 1 and None not in modes:
        return modes.pop()
    return "mixed"


def _split(r: Slope, path: str, mode: str) -> tuple:
    """(y, w, z) with S(w) = S1 (mode B) or S2 strictly inside (mode C)."""
    d = decompose(r)
    seq = tuple(runs(path))
    if mode == "B":
        i = _contains_block(seq, tuple(d.s1))
        n = len(d.s1)
    else:
        i = _contains_block(seq[1:-1], tuple(d.s2)) + 1
        n = len(d.s2)
    start = sum(seq[:i])
    end = start + sum(seq[i : i + n])
    return path[:start], path[start:end], path[end:]


# ------------------------------------------------------------------ validation


@dataclass
class ValidationReport:
    valid: bool
    mode: str
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        return {"valid": self.valid, "mode": self.mode, "failures": self.failures, "notes": self.notes}


def _mirror(x_cycle: str, x_start: int, y_cycle: str, y_start: int) -> bool:
    """Two faces read from a shared edge in the same direction give the same word."""
    return x_cycle[x_start:] + x_cycle[:x_start] == y_cycle[y_start:] + y_cycle[:y_start]


def validate(d: AnnularDiagram) -> ValidationReport:
    """Itemized check of the face, edge, boundary and gluing conditions."""
    r = d.slope
    R = symmetrized_set(r)
    failures: list = []
    notes: list = []
    rings = []
    for k, layer in enumerate(d.layers):
        try:
            rings.append([_resolve(R, f) for f in layer])
        except ValueError as exc:
            failures.append(f"ring {k}: {exc}")
            return ValidationReport(False, "mixed", failures)

    # faces carry members of R and every edge is a piece
    for k, ring in enumerate(rings):
        for i, face in enumerate(ring):
            if face.label not in R:
                failures.append(f"ring {k} face {i}: label {face.label} not in R")
            for j, e in enumerate(face.edges):
                if not e:
                    failures.append(f"ring {k} face {i}: edge {j + 1} is empty")
                elif R.prefix_count(e) < 2 and R.prefix_count(invert(e)) < 2:
                    failures.append(f"ring {k} face {i}: edge {j + 1} label {e} is not a piece")

    # boundary chains through degree-2 vertices must not shorten
    for i, face in enumerate(rings[0]):
        if R.prefix_count(face.outer) >= 2:
            failures.append(f"outer path of face {i} ({face.outer}) is a single piece")
    for i, face in enumerate(rings[-1]):
        if R.prefix_count(face.inner) >= 2:
            failures.append(f"inner path of face {i} ({face.inner}) is a single piece")

    outer, inner = _outer_text(d), _inner_text(d)
    for name, text in (("outer", outer), ("inner", inner)):
        if not Word(text).is_cyclically_reduced:
            failures.append(f"{name} boundary label {text} is not cyclically reduced")

    # gluing between rings: labels agree, odd shift (interior degree 4), reduced
    for k, shift in enumerate(d.shifts):
        upper, lower = rings[k], rings[k + 1]
        if len(upper) != len(lower):
            failures.append(f"rings {k} and {k + 1} have different face counts")
            continue
        if shift % 2 == 0:
            failures.append(f"shift {shift} between rings {k} and {k + 1} is even")
        n = 2 * len(upper)
        inner_edges = [e for f in upper for e in (invert(f.edges[3]), invert(f.edges[2]))]
        outer_edges = [e for f in lower for e in f.edges[:2]]
        for j in range(n):
            src = (j + shift) % n
            if outer_edges[j] != inner_edges[src]:
                failures.append(f"edge {j} of ring {k + 1} does not match edge {src} of ring {k}")
                continue
            a, b = upper[src // 2], lower[j // 2]
            # the upper face traverses this edge backwards; read it inverted
            a_cycle = invert(a.label)
            a_start = 0 if src % 2 else len(a.edges[3])
            b_start = 0 if j % 2 == 0 else len(b.edges[0])
            if _mirror(a_cycle, a_start, b.label, b_start):
                failures.append(f"faces across edge {j} of ring {k + 1} are mirror images (not reduced)")

    mode = _mode_of(d)
    if mode == "mixed":
        notes.append("faces do not share a single mode")
    elif mode == "C":
        for i, face in enumerate(rings[0]):
            y, _, z = _split(r, face.outer, mode)
            if not y or not z:
                failures.append(f"face {i}: mode C needs nonempty y and z")
    for name, text in (("outer", outer), ("inner", inner)):
        if Word(text).is_cyclically_reduced and text and not is_cyclically_alternating(text):
            notes.append(f"{name} label is not cyclically alternating")
    return ValidationReport(not failures, mode, failures, notes)


# ------------------------------------------------------------------ search


def match_slope(w) -> Optional[tuple]:
    """(s, sign) with (w) = (u_s^sign) as cyclic words, or None."""
    cw = w if isinstance(w, CyclicWord) else CyclicWord.of(w)
    n = len(cw)
    if n % 2:
        return None
    p = n // 2
    for q in range(0, p + 1):
        if gcd(q, p) != 1:
            continue
        u = CyclicWord.of(upper_word(Slope(q, p)))
        if u == cw:
            return Slope(q, p), 1
        if u.inverse() == cw:
            return Slope(q, p), -1
    return None


def _face_options(R: SymmetrizedSet, segment: str) -> Optional[tuple]:
    """(member index, outer cut choices, inner cut choices) for one outer segment."""
    if R.prefix_count(segment) != 1:
        return None
    L = R.relator_length
    ell = len(segment)
    if ell > L - 2:
        return None
    idx = next(i for i, m in enumerate(R.members) if m.text.startswith(segment))
    m = R[idx].text
    if R.prefix_count(invert(m[ell:])) >= 2:
        return None  # inner path would be a piece
    outer_cuts = [c for c in range(1, ell) if R.prefix_count(m[:c]) >= 2 and R.prefix_count(m[c:ell]) >= 2]
    inner_cuts = [c for c in range(ell + 1, L) if R.prefix_count(m[ell:c]) >= 2 and R.prefix_count(m[c:]) >= 2]
    if not outer_cuts or not inner_cuts:
        return None
    return idx, outer_cuts, inner_cuts


def search_one_layer(r: SlopeLike, s: SlopeLike, t_max: int = 4, *, all_cuts: bool = False) -> list:
    """Every one-ring diagram with at most t_max faces whose outer label is (u_s^{±1}).

    Junction vertices and face labels are enumerated exhaustively.  For each
    such choice the first admissible midpoint cuts are kept, unless
    ``all_cuts`` asks for every combination.  Diagrams come back in a
    canonical order; a layer whose faces mix the two modes raises.
    """
    r, s = Slope.of(r), Slope.of(s)
    R = symmetrized_set(r)
    in_domain = not s.is_infinite and contains(intervals(r), s)
    results: dict = {}
    for sign in (1, -1):
        U = upper_word(s).text if sign > 0 else invert(upper_word(s).text)
        n = len(U)
        doubled = U + U
        cache: dict = {}
        for v0 in range(n):
            stack = [(0, ())]
            while stack:
                pos, chosen = stack.pop()
                if pos == n:
                    key = (sign, tuple(sorted((v0 + p) % n for p, _, _ in chosen)))
                    if key not in results:
                        results[key] = _accept(r, chosen, all_cuts, in_domain, s)
                    continue
                if len(chosen) >= t_max:
                    continue
                for length in range(2, n - pos + 1):
                    ck = ((v0 + pos) % n, length)
                    if ck not in cache:
                        cache[ck] = _face_options(R, doubled[ck[0] : ck[0] + length])
                    if cache[ck] is not None:
                        stack.append((pos + length, chosen + ((pos, length, cache[ck]),)))
    ordered = []
    for key in sorted(results):
        ordered.extend(results[key])
    return ordered


def _accept(r: Slope, chosen: tuple, all_cuts: bool, in_domain: bool, s: Slope) -> list:
    choices = []
    for _, ell, (idx, outer_cuts, inner_cuts) in chosen:
        pairs = [(c1, c3) for c1 in outer_cuts for c3 in inner_cuts] if all_cuts else [(outer_cuts[0], inner_cuts[0])]
        choices.append([FaceSplit(idx, (0, c1, ell, c3)) for c1, c3 in pairs])
    out = []
    for combo in product(*choices):
        diagram = AnnularDiagram(r, (combo,))
        report = validate(diagram)
        if not report.valid:
            continue
        if in_domain and report.mode == "mixed":
            raise AssertionError(f"mixed-mode layer for r={r}, s={s}: {diagram.dumps()}")
        out.append(diagram)
    return out


def reachable_inner_slopes(r: SlopeLike, s: SlopeLike, t_max: int = 4, *, include_self: bool = True) -> set:
    """Slopes in I_1(r) ∪ I_2(r) read off inner labels of one-ring diagrams from s.

    ``include_self`` adds s itself, which the empty diagram realizes.
    """
    r, s = Slope.of(r), Slope.of(s)
    iv = intervals(r)
    found = {s} if include_self else set()
    for d in search_one_layer(r, s, t_max):
        hit = match_slope(inner_label(d))
        if hit and contains(iv, hit[0]):
            found.add(hit[0])
    return found


# ------------------------------------------------------------------ witnesses


@dataclass(frozen=True)
class ConjugacyWitness:
    """u_s^{outer_sign} = w · u_{s'}^{inner_sign} · w^{-1} in G(K(r)), with a certificate."""

    r: Slope
    s: Slope
    outer_sign: int
    s_prime: Slope
    inner_sign: int
    w: Word
    certificate: object  # oracle.RewriteCertificate

    def to_json(self) -> dict:
        return {
            "r": str(self.r),
            "s": str(self.s),
            "outer_sign": self.outer_sign,
            "s_prime": str(self.s_prime),
            "inner_sign": self.inner_sign,
            "w": self.w.text,
            "certificate": self.certificate.to_json(),
        }


def _rotation_offset(word: str, rotated: str) -> int:
    """k with rotated == word[k:] + word[:k]."""
    doubled = word + word
    k = doubled.find(rotated)
    if len(word) != len(rotated) or k < 0:
        raise ValueError(f"{rotated} is not a rotation of {word}")
    return k


def conjugacy_witness(d: AnnularDiagram) -> ConjugacyWitness:
    """The conjugator for a one-ring diagram, with a relator-insertion certificate.

    Base points O+ and O- are both the junction vertex before the first face,
    so the connecting path is empty and the outer word read from there equals
    the inner word read from there.  Writing U and V for the slope words on the
    two sides, U = g V g^{-1} with g = U[:k] V[:j]^{-1} for the rotation
    offsets k and j of those base points.
    """
    from .oracle import RewriteCertificate, RewriteStep

    if len(d.layers) != 1:
        raise ValueError("witness extraction is implemented for one-ring diagrams")
    r = d.slope
    R = symmetrized_set(r)
    faces = _faces(d, 0)
    outer, inner = _outer_text(d), _inner_text(d)
    hit_o, hit_i = match_slope(outer), match_slope(inner)
    if hit_o is None or hit_i is None:
        raise ValueError("boundary labels are not slope words")
    (s, so), (sp, si) = hit_o, hit_i
    U = upper_word(s).text if so > 0 else invert(upper_word(s).text)
    V = upper_word(sp).text if si > 0 else invert(upper_word(sp).text)
    k, j = _rotation_offset(U, outer), _rotation_offset(V, inner)
    g = reduce_text(U[:k] + invert(V[:j]))
    # U g V^{-1} g^{-1} = U[:k] (outer · inner^{-1}) U[:k]^{-1}
    #                   = prod_{i=t..1} U[:k] C_i m_i C_i^{-1} U[:k]^{-1}, C_i = outer paths before face i
    start = reduce_text(U + g + invert(V) + invert(g))
    steps = []
    prefix = ""
    for face in faces:
        conj = reduce_text(U[:k] + prefix)
        inverse_member = R.index(invert(face.label))
        steps.append((conj, inverse_member))
        prefix += face.outer
    text = start
    built = []
    for conj, idx in steps:
        built.append(RewriteStep(len(text), Word(conj), idx))
        text = reduce_text(text + conj + R[idx].text + invert(conj))
    cert = RewriteCertificate(r, Word(start), tuple(built), Word())
    return ConjugacyWitness(r, s, so, sp, si, Word(g), cert)
