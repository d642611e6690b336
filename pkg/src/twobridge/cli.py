"""Command-line front end.

Exit codes: 0 for success or a positive answer, 1 for a negative answer or a
failed check, 2 for bad input or an unsupported question.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .slopes import Slope, parse_slope

OK, NO, ERR = 0, 1, 2


class _Out:
    """Collects one command's text lines or JSON payload."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.data: dict = {}

    def line(self, text: str = "") -> None:
        if not self.as_json:
            print(text)

    def emit(self) -> None:
        if self.as_json:
            print(json.dumps(self.data, indent=2, default=str))


def _slope(text: str) -> Slope:
    try:
        return parse_slope(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _write(out_dir: Optional[str], name: str, payload) -> Optional[Path]:
    if not out_dir:
        return None
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    path = d / name
    path.write_text(json.dumps(payload, indent=2, default=str) + "\n")
    return path


def _tag(x: Slope) -> str:
    return str(x).replace("/", "_")


# ---------------------------------------------------------------- commands


def cmd_word(a, out: _Out) -> int:
    from .words import upper_word

    w = upper_word(a.r)
    out.data = {"slope": str(a.r), "word": w.text}
    out.line(w.text)
    return OK


def cmd_sseq(a, out: _Out) -> int:
    from .sequences import cyclic_s_sequence_of_slope, s_sequence_of_slope

    seq = s_sequence_of_slope(a.r)
    out.data = {"slope": str(a.r), "S": list(seq), "CS": list(cyclic_s_sequence_of_slope(a.r))}
    out.line(str(seq))
    return OK


def cmd_tseq(a, out: _Out) -> int:
    from .sequences import t_sequence

    seq = t_sequence(a.r)
    out.data = {"slope": str(a.r), "T": list(seq)}
    out.line(str(seq))
    return OK


def cmd_decompose(a, out: _Out) -> int:
    from .sequences import decompose

    d = decompose(a.r)
    out.data = {"slope": str(a.r), "S1": list(d.s1), "S2": list(d.s2)}
    out.line(str(d))
    return OK


def cmd_intervals(a, out: _Out) -> int:
    from .slopes import contains, farey_slopes, intervals

    iv = intervals(a.r)
    out.data = {"slope": str(a.r), "I1": ["0", str(iv.r1)], "I2": [str(iv.r2), "1"]}
    out.line(str(iv))
    if a.max_den:
        members = [s for s in farey_slopes(a.max_den) if contains(iv, s)]
        out.data["members"] = [str(s) for s in members]
        out.line(" ".join(map(str, members)))
    return OK


def cmd_reduce(a, out: _Out) -> int:
    from .farey import reduce_to_fundamental_domain

    red = reduce_to_fundamental_domain(a.r, a.s)
    out.data = {"r": str(a.r), "s": str(a.s), "s0": str(red.s0), "word": list(red.word),
                "null_homotopic": red.null_homotopic}
    tail = " (null-homotopic)" if red.null_homotopic else ""
    out.line(f"s0={red.s0} steps={red.steps} word={list(red.word)}{tail}")
    return OK


def cmd_null(a, out: _Out) -> int:
    from .farey import reduce_to_fundamental_domain

    red = reduce_to_fundamental_domain(a.r, a.s)
    out.data = {"r": str(a.r), "s": str(a.s), "s0": str(red.s0), "null_homotopic": red.null_homotopic}
    out.line("null-homotopic" if red.null_homotopic else f"not null-homotopic (s0={red.s0})")
    return OK if red.null_homotopic else NO


def cmd_pieces(a, out: _Out) -> int:
    from .cancellation import is_piece_bruteforce, maximal_pieces, min_piece_count, symmetrized_set

    if a.word:
        v = is_piece_bruteforce(symmetrized_set(a.r), a.word)
        k = min_piece_count(a.r, a.word)
        out.data = {"slope": str(a.r), "word": a.word, "is_piece": v.is_piece, "min_pieces": k}
        out.line(f"{'piece' if v else 'not a piece'} (fewest pieces: {k})")
        return OK if v else NO
    rows = maximal_pieces(a.r, a.max)
    out.data = {"slope": str(a.r), "n": a.max,
                "maximal": [{"start": i, "length": k, "word": w} for i, k, w in rows]}
    for i, k, w in rows:
        out.line(f"{i:3d} {k:3d} {w}")
    return OK


def cmd_sc_verify(a, out: _Out) -> int:
    from .cancellation import verify_c4_t4

    rep = verify_c4_t4(a.r)
    out.data = rep.to_json()
    out.line(f"C(4): {'pass' if rep.c4 else 'FAIL'} (fewest pieces in a relator: {rep.min_pieces})")
    out.line(f"T(4): {'pass' if rep.t4 else 'FAIL'} ({rep.triples_checked} triples)")
    return OK if rep.c4 and rep.t4 else NO


def cmd_decide(a, out: _Out) -> int:
    from .decide import full_decision

    v = full_decision(a.r, a.s, a.s_prime, certify=a.certify, prime_budget=a.prime_budget, depth=a.depth)
    out.data = v.to_json()
    path = _write(a.out, f"decide_{_tag(a.r)}_{_tag(a.s)}_{_tag(a.s_prime)}.json", out.data)
    out.line(f"{'homotopic' if v.homotopic else 'not homotopic'} ({v.rule})")
    if a.certify:
        for c in v.certificates:
            if c.get("kind") != "farey":
                out.line(f"certificate: {c['kind']} checked={c.get('checked', c.get('found'))}")
    if path:
        out.line(f"wrote {path}")
    return OK if v.homotopic else NO


def cmd_classify(a, out: _Out) -> int:
    from .decide import classify_loop

    c = classify_loop(a.r, a.s, certify=a.certify, depth=a.depth)
    out.data = c.to_json()
    path = _write(a.out, f"classify_{_tag(a.r)}_{_tag(a.s)}.json", out.data)
    yes = {True: "yes", False: "no"}
    power = f" power=({c.power[0]})^{c.power[1]}" if c.power else ""
    out.line(f"peripheral={yes[c.peripheral]} primitive={yes[c.primitive]}{power}")
    if c.witness:
        out.line(f"witness: {c.witness['kind']} checked={c.witness['checked']}")
    if path:
        out.line(f"wrote {path}")
    return OK


def cmd_search_diagram(a, out: _Out) -> int:
    from .diagrams import conjugacy_witness, inner_label, match_slope, search_one_layer, validate

    found = search_one_layer(a.r, a.s, a.faces)
    rows = []
    for n, d in enumerate(found):
        hit = match_slope(inner_label(d))
        row = {"diagram": d.to_json(), "inner_label": inner_label(d).text,
               "inner_slope": str(hit[0]) if hit else None, "inner_sign": hit[1] if hit else None,
               "valid": validate(d).valid}
        if a.certify and hit:
            row["witness"] = conjugacy_witness(d).to_json()
        rows.append(row)
        _write(a.out, f"diagram_{_tag(a.r)}_{_tag(a.s)}_{n}.json", row["diagram"])
        if a.certify and hit:
            _write(a.out, f"witness_{_tag(a.r)}_{_tag(a.s)}_{n}.json", row["witness"])
        slope = f"{row['inner_slope']} ({'+' if row['inner_sign'] > 0 else '-'})" if hit else "none"
        out.line(f"#{n} mode={d.mode} faces={len(d.faces)} inner={row['inner_label']} slope={slope}")
    out.data = {"r": str(a.r), "s": str(a.s), "t_max": a.faces, "count": len(found), "diagrams": rows}
    out.line(f"{len(found)} diagram(s)")
    return OK if found else NO


def _check_payload(data: dict, r: Optional[Slope] = None) -> tuple:
    """(ok, kind) for any certificate shape this tool emits."""
    from .diagrams import AnnularDiagram, validate
    from .farey import replay
    from .oracle import RewriteCertificate, check_certificate, check_trace_evidence

    if "certificates" in data and "homotopic" in data:
        r = Slope.of(data["r"])
        results = [_check_payload(c, r) for c in data["certificates"]]
        return all(ok for ok, _ in results), "verdict[" + ",".join(k for _, k in results) + "]"
    kind = data.get("kind")
    if kind == "farey":
        return replay(r, data["word"], Slope.of(data["s0"])) == Slope.of(data["s"]), "farey"
    if kind == "trace":
        if not data.get("found", True):
            return True, "trace(none)"
        return check_trace_evidence(data), "trace"
    if kind == "diagram":
        ok_d, _ = _check_payload(data["diagram"])
        ok_w, _ = _check_payload(data["witness"])
        return ok_d and ok_w, "diagram"
    if kind == "rewrite" and "certificate" not in data:
        return False, "rewrite(not found)"
    if "certificate" in data:
        if data["certificate"] is None:
            return False, kind or "witness"
        return check_certificate(RewriteCertificate.from_json(data["certificate"])), kind or "witness"
    if "faces" in data:
        return validate(AnnularDiagram.from_json(data)).valid, "diagram"
    if "steps" in data and "start" in data:
        return check_certificate(RewriteCertificate.from_json(data)), "rewrite"
    if "trace_u" in data:
        return check_trace_evidence(data), "trace"
    if "witness" in data and isinstance(data["witness"], dict):  # classification
        return _check_payload(data["witness"])
    raise ValueError("unrecognised certificate format")


def cmd_check_cert(a, out: _Out) -> int:
    text = sys.stdin.read() if a.file == "-" else Path(a.file).read_text()
    ok, kind = _check_payload(json.loads(text))
    out.data = {"file": a.file, "kind": kind, "valid": ok}
    out.line(f"{kind}: {'valid' if ok else 'INVALID'}")
    return OK if ok else NO


def _junit(results) -> str:
    from xml.etree import ElementTree as ET

    failures = sum(not r.passed or not r.within_time for r in results)
    suite = ET.Element("testsuite", name="twobridge-acceptance", tests=str(len(results)),
                       failures=str(failures), time=f"{sum(r.seconds for r in results):.3f}")
    for r in results:
        case = ET.SubElement(suite, "testcase", classname="acceptance", name=f"{r.criterion}-{r.name}",
                             time=f"{r.seconds:.3f}")
        if not r.passed:
            ET.SubElement(case, "failure", message=f"{len(r.failures)} failure(s)").text = json.dumps(r.failures)
        elif not r.within_time:
            ET.SubElement(case, "failure", message=f"over time limit {r.limit_seconds}s")
    return ET.tostring(suite, encoding="unicode")


def cmd_verify(a, out: _Out) -> int:
    from .suites import SUITES, run_all

    names = a.suite or list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; choose from {', '.join(SUITES)}")

    def progress(r):
        status = "PASS" if r.passed and r.within_time else "FAIL"
        out.line(f"[{status}] criterion {r.criterion} {r.name}: {r.seconds:.2f}s (limit {r.limit_seconds:.0f}s)")

    results = run_all(names, progress)
    out.data = {"suites": [r.to_json() for r in results]}
    d = Path(a.out or "verify-report")
    d.mkdir(parents=True, exist_ok=True)
    (d / "results.json").write_text(json.dumps(out.data, indent=2) + "\n")
    (d / "junit.xml").write_text(_junit(results) + "\n")
    out.line(f"reports in {d}")
    return OK if all(r.passed and r.within_time for r in results) else NO


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--certify", action="store_true", help="attach checkable certificates")
    common.add_argument("--depth", type=int, default=40, help="rewrite search depth (default 40)")
    common.add_argument("--prime-budget", type=int, default=500, help="largest prime tried for trace evidence")
    common.add_argument("--max-den", type=int, default=0, help="denominator bound for listings")
    common.add_argument("--out", help="directory for certificates, diagrams and reports")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="twobridge", description="Simple loops on 2-bridge spheres.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_, *slopes):
        sp = sub.add_parser(name, help=help_, parents=[common])
        for s in slopes:
            sp.add_argument(s, type=_slope)
        sp.set_defaults(func=fn)
        return sp

    add("word", cmd_word, "upper word u_R", "r")
    add("sseq", cmd_sseq, "S-sequence of R", "r")
    add("tseq", cmd_tseq, "T-sequence of R", "r")
    add("decompose", cmd_decompose, "S1, S2 with S(R) = (S1,S2,S1,S2)", "r")
    add("intervals", cmd_intervals, "I1(R) and I2(R)", "r")
    add("reduce", cmd_reduce, "Farey reduction of S for R", "r", "s")
    add("null", cmd_null, "is alpha_S null-homotopic in the exterior of K(R)", "r", "s")
    sp = add("pieces", cmd_pieces, "maximal n-pieces of u_R, or test one word", "r")
    sp.add_argument("--max", type=int, default=1, choices=(1, 2), help="n for maximal n-pieces")
    sp.add_argument("--word", help="report whether this word is a piece")
    add("sc-verify", cmd_sc_verify, "check C(4) and T(4)", "r")
    sp = add("decide", cmd_decide, "are alpha_S and alpha_S' homotopic", "r", "s", "s_prime")
    add("classify", cmd_classify, "peripherality and primitivity of alpha_S", "r", "s")
    sp = add("search-diagram", cmd_search_diagram, "one-ring annular diagrams with outer label u_S", "r", "s")
    sp.add_argument("--faces", type=int, default=4, help="most faces in the ring (default 4)")
    sp = sub.add_parser("check-cert", help="verify a certificate, diagram or verdict JSON file", parents=[common])
    sp.add_argument("file", help="path, or - for stdin")
    sp.set_defaults(func=cmd_check_cert)
    sp = sub.add_parser("verify", help="run the acceptance suites", parents=[common])
    sp.add_argument("--suite", action="append", help="suite name (repeatable); default all")
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on errors, 0 on --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    out = _Out(a.json)
    try:
        code = a.func(a, out)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERR
    out.emit()
    return code


def main() -> None:
    sys.exit(run())
