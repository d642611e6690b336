import random

import pytest
import sympy

from twobridge.oracle import (CertificateError, RewriteCertificate, RewriteStep, certify_identity,
                              check_certificate, check_trace_evidence, finite_reps,
                              nonconjugacy_evidence, replay_certificate, riley_polynomial, word_problem_search)
from twobridge.slopes import Slope
from twobridge.words import Word, upper_word as U


def test_riley_polynomials():
    y = sympy.Symbol("y")
    assert riley_polynomial("2/5").as_expr() == y**2 + y + 1
    p = riley_polynomial("1/2")
    assert any(p.eval(k) == 0 for k in range(-5, 6))
    for r in ("3/7", "5/17", "4/9"):  # knots: degree (p - 1) / 2
        assert riley_polynomial(r).degree() == (Slope.of(r).den - 1) // 2
    assert riley_polynomial("3/8").as_expr() == sympy.expand(y**2 * (y**2 + 2 * y + 2))


@pytest.mark.parametrize("r,p", [("2/5", 7), ("3/7", 7), ("3/8", 11), ("5/17", 13)])
def test_finite_reps(r, p):
    rng = random.Random(p)
    for rep in finite_reps(r, p):
        assert rep.is_identity(U(r))
        assert rep.trace("a") == rep.field.elt(2)
        w, v = "".join(rng.choice("aAbB") for _ in range(9)), "".join(rng.choice("aAbB") for _ in range(7))
        from twobridge.oracle import _mat_mul
        assert rep.evaluate(w + v) == _mat_mul(rep.field, rep.evaluate(w), rep.evaluate(v))
        assert rep.determinant(w) == rep.field.elt(1)


def test_evidence():
    ev = nonconjugacy_evidence("2/5", U("1/5"), U("2/7"), 200)
    assert ev is not None and check_trace_evidence(ev.to_json())
    assert nonconjugacy_evidence("2/5", U("2/7"), U("2/7")) is None
    assert nonconjugacy_evidence("3/8", U("1/6"), U("3/10")) is None


def test_identities():
    cases = [
        ("2/5", Word("BA") * U("2/7") * Word("ab"), Word("ba") ** 3),
        ("3/7", Word("abbaBAB") ** 2, U("2/7")),
    ]
    for r, lhs, rhs in cases:
        cert = certify_identity(r, lhs, rhs)
        assert cert is not None and check_certificate(cert)
        again = RewriteCertificate.loads(cert.dumps())
        assert again == cert and check_certificate(again)


def test_search_examples():
    c = word_problem_search("2/5", U("2/5"))
    assert c is not None and len(c.steps) == 1
    for r, w in (("2/5", Word("b") * U("3/5") * Word("B") * U("3/5").inverse()),
                 ("3/7", U("4/7").inverse() * Word("B") * U("4/7") * Word("b"))):
        c = word_problem_search(r, w)
        assert c is not None and check_certificate(c)
    assert word_problem_search("2/5", "ab", max_nodes=200) is None


def test_empty_certificate():
    c = RewriteCertificate(Slope(2, 5), Word("abAB"), (), Word("abAB"))
    assert check_certificate(c)


def test_bad_certificates():
    c = RewriteCertificate(Slope(2, 5), Word("ab"), (RewriteStep(9, Word(), 0),), Word())
    with pytest.raises(CertificateError):
        replay_certificate(c)
    c = RewriteCertificate(Slope(2, 5), Word("ab"), (RewriteStep(0, Word(), 999),), Word())
    with pytest.raises(CertificateError):
        replay_certificate(c)
    c = RewriteCertificate(Slope(2, 5), Word("ab"), (RewriteStep(0, Word(), 0, "delete"),), Word())
    with pytest.raises(CertificateError):
        replay_certificate(c)
    good = certify_identity("3/7", Word("abbaBAB") ** 2, U("2/7"))
    forged = RewriteCertificate(good.r, good.start, good.steps, Word("a"))
    assert not check_certificate(forged)


def test_tampered_evidence():
    ev = nonconjugacy_evidence("2/5", U("1/5"), U("2/7"), 200).to_json()
    ev["v"] = ev["u"]
    assert not check_trace_evidence(ev)
