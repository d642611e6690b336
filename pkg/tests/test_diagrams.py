import json

import pytest

from twobridge.cancellation import symmetrized_set
from twobridge.diagrams import (AnnularDiagram, FaceSplit, conjugacy_witness, inner_label, match_slope,
                                outer_label, reachable_inner_slopes, search_one_layer, validate)
from twobridge.oracle import check_certificate
from twobridge.sequences import cyclic_s_sequence_of_slope
from twobridge.slopes import Slope
from twobridge.words import CyclicWord, cyclic_s_sequence, upper_word


@pytest.fixture(scope="module")
def case_1b():
    found = search_one_layer("3/8", "1/6", 4)
    return [d for d in found if match_slope(inner_label(d))[0] == Slope(3, 10)]


def test_exceptional_diagram(case_1b):
    assert case_1b
    d = case_1b[0]
    assert validate(d).valid and d.mode == "B" and len(d.faces) == 2
    assert tuple(cyclic_s_sequence(outer_label(d))) == (6, 6)
    assert outer_label(d) in (CyclicWord.of(upper_word("1/6")), CyclicWord.of(upper_word("1/6").inverse()))
    assert tuple(cyclic_s_sequence(inner_label(d))) == tuple(cyclic_s_sequence_of_slope("3/10"))
    assert any(match_slope(inner_label(x))[1] == -1 for x in case_1b)


def test_inverse_face_is_rejected(case_1b):
    d = case_1b[0]
    R = symmetrized_set("3/8")
    f = d.faces[0]
    j = R.index(R[f.member].inverse())
    bad = AnnularDiagram(d.slope, ((FaceSplit(j, f.cuts),) + d.faces[1:],))
    assert not validate(bad).valid


def test_json_round_trip(case_1b):
    d = case_1b[0]
    again = AnnularDiagram.from_json(json.loads(d.dumps()))
    assert again.to_json() == d.to_json()
    assert validate(again).valid


def test_witness(case_1b):
    for d in case_1b:
        w = conjugacy_witness(d)
        assert w.s == Slope(1, 6) and w.s_prime == Slope(3, 10)
        assert check_certificate(w.certificate)


def test_case_2b():
    found = search_one_layer("3/8", "3/4", 4)
    hits = [d for d in found if match_slope(inner_label(d))[0] == Slope(5, 12)]
    assert hits and all(d.mode == "C" for d in hits)
    assert tuple(cyclic_s_sequence(inner_label(hits[0]))) == tuple(cyclic_s_sequence_of_slope("5/12"))


def test_single_face_case_1a():
    found = search_one_layer("3/8", "1/3", 4)
    assert found
    for d in found:
        assert validate(d).valid
        assert sorted(cyclic_s_sequence(inner_label(d))) == [2, 2, 3, 3]


def test_reachable_sets():
    assert reachable_inner_slopes("3/8", "1/6", 4) == {Slope(1, 6), Slope(3, 10)}
    assert reachable_inner_slopes("3/8", "3/4", 4) == {Slope(3, 4), Slope(5, 12)}
    assert reachable_inner_slopes("2/5", "2/7", 4) == {Slope(2, 7)}


@pytest.mark.parametrize("r,s", [("3/8", "1/6"), ("3/8", "3/4"), ("2/5", "2/7"), ("3/8", "3/10")])
def test_every_result_validates(r, s):
    for d in search_one_layer(r, s, 4):
        assert validate(d).valid
        assert len(outer_label(d).text) % 2 == len(inner_label(d).text) % 2 == 0
