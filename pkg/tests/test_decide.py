import pytest

from twobridge.decide import (TORUS, TWO_N, TWO_ONE_N, UNSUPPORTED, UnsupportedSlope, classify_family, classify_loop,
                              decide_homotopic, full_decision, peripheral_witness)
from twobridge.farey import tau_involution
from twobridge.slopes import INFINITY, Slope, contains, farey_slopes, intervals


def test_families():
    assert (classify_family("4/9").tag, classify_family("4/9").parameter) == (TWO_N, 4)
    assert (classify_family("3/8").tag, classify_family("3/8").parameter) == (TWO_ONE_N, 2)
    assert classify_family("5/17").tag == UNSUPPORTED
    assert classify_family("1/5").tag == TORUS
    with pytest.raises(ValueError):
        classify_family("3/2")


def test_decide_examples():
    assert decide_homotopic("1/3", "1/2", "1/1").homotopic
    assert not decide_homotopic("1/3", "1/2", "2/3").homotopic
    assert decide_homotopic("3/8", "1/6", "3/10").homotopic
    assert decide_homotopic("3/8", "5/12", "3/4").homotopic
    assert not decide_homotopic("3/8", "1/6", "5/12").homotopic
    assert not decide_homotopic("4/11", "1/6", "3/10").homotopic
    pool = [s for s in farey_slopes(12) if contains(intervals("4/9"), s)]
    assert not any(decide_homotopic("4/9", s, t).homotopic for s in pool for t in pool if s != t)


def test_decide_errors():
    with pytest.raises(UnsupportedSlope):
        decide_homotopic("5/17", "1/5", "1/7")
    with pytest.raises(ValueError):
        decide_homotopic("3/8", "3/8", "1/6")


def test_full_decision():
    for r in ("2/5", "3/8", "5/17"):
        assert full_decision(r, "1/7", "15/7").homotopic
    v = full_decision("3/8", "1/6", tau_involution()(Slope(1, 6)))
    assert v.homotopic and "exceptional" in v.rule
    v = full_decision("4/9", INFINITY, "1/5")
    assert not v.homotopic and "null" in v.rule
    assert full_decision("2/5", INFINITY, "2/5").homotopic


def test_full_decision_certificates():
    v = full_decision("3/8", "1/6", "3/10", certify=True)
    assert v.certificates[-1]["kind"] == "diagram" and v.certificates[-1]["checked"]
    v = full_decision("1/3", "1/2", "1/1", certify=True)
    assert v.certificates[-1]["checked"]
    v = full_decision("2/5", "1/5", "2/7", certify=True)
    assert v.certificates[-1]["kind"] == "trace" and v.certificates[-1]["found"]


@pytest.mark.parametrize("r,s,periph,prim,exp", [
    ("2/5", "2/7", False, False, 3),
    ("2/5", "3/4", False, False, 3),
    ("3/7", "2/7", False, False, 2),
    ("3/8", "5/12", False, True, None),
    ("2/5", "1/5", True, True, None),
    ("2/5", "3/5", True, True, None),
    ("4/9", "5/9", True, True, None),
    ("4/9", "1/5", False, True, None),
])
def test_classify(r, s, periph, prim, exp):
    c = classify_loop(r, s)
    assert (c.peripheral, c.primitive) == (periph, prim)
    assert (c.power[1] if c.power else None) == exp


@pytest.mark.parametrize("r,s", [("2/5", "2/7"), ("2/5", "3/4"), ("3/7", "2/7"), ("2/5", "1/5"), ("4/9", "5/9")])
def test_classify_certified(r, s):
    c = classify_loop(r, s, certify=True)
    assert c.witness["checked"]


def test_classify_rejects():
    with pytest.raises(UnsupportedSlope):
        classify_loop("1/3", "1/2")
    assert peripheral_witness("3/8", "1/6") is None
