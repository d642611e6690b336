import pytest
from hypothesis import given, settings

from conftest import unit_slopes
from twobridge.cancellation import (cyclic_subwords, expected_maximal_piece_ends, has_two_piece_obstruction,
                                    is_piece_bruteforce, is_piece_criterion, maximal_pieces, min_piece_count,
                                    symmetrized_set, verify_c4_t4)
from twobridge.sequences import cyclic_s_sequence_of_slope
from twobridge.slopes import to_continued_fraction
from twobridge.words import cyclic_s_sequence, invert, upper_word


def test_symmetrized_set():
    R = symmetrized_set("2/5")
    assert len(R) == 20
    u = upper_word("2/5")
    assert u in R and u.inverse() in R
    cs = cyclic_s_sequence_of_slope("2/5")
    for m in R:
        assert tuple(cyclic_s_sequence(m)) in (tuple(cs), tuple(cs.reversed()))


def test_piece_examples():
    R = symmetrized_set("2/5")
    assert is_piece_bruteforce(R, "a")
    assert not is_piece_bruteforce(R, upper_word("2/5"))
    assert not is_piece_bruteforce(R, "bABa")
    assert is_piece_criterion("3/8", "aba")
    assert not is_piece_criterion("2/5", "aba")
    assert is_piece_criterion("2/5", "b")
    with pytest.raises(ValueError):
        is_piece_criterion("1/3", "a")
    with pytest.raises(ValueError):
        is_piece_criterion("2/5", "aaa")


def test_min_piece_count_examples():
    assert min_piece_count("2/5", upper_word("2/5")) >= 4
    assert min_piece_count("2/5", "ab") == 1
    assert min_piece_count("2/5", "AbabABab") >= 3
    assert has_two_piece_obstruction("2/5", "AbabABab")


def test_maximal_pieces_examples():
    first = maximal_pieces("2/5", 1)[0]
    assert first[1] == 3 - 1  # |v1| - 1
    ones, twos = maximal_pieces("3/7", 1), maximal_pieces("3/7", 2)
    for (i, k1, w1), (_, k2, w2) in zip(ones, twos):
        assert k2 > k1 and w2.startswith(w1)
    # the 2-piece from the start of v2 runs through v4
    from twobridge.sequences import blocks
    b = blocks("3/7")
    start = b[1][0]
    assert twos[start][1] == b[3][1] - start


@pytest.mark.parametrize("r", ["2/5", "3/7", "3/8", "5/17", "7/19", "4/11"])
@pytest.mark.parametrize("n", [1, 2])
def test_maximal_pieces_follow_block_pattern(r, n):
    got = [i + k for i, k, _ in maximal_pieces(r, n)]
    assert got == expected_maximal_piece_ends(r, n)


@pytest.mark.parametrize("r", ["2/5", "5/17", "1/2", "1/3"])
def test_c4_t4(r):
    rep = verify_c4_t4(r)
    assert rep.c4 and rep.t4, rep.violations
    assert rep.to_json()["slope"] == r


@settings(max_examples=40, deadline=None)
@given(unit_slopes(13, min_den=3))
def test_criterion_matches_bruteforce(r):
    if to_continued_fraction(r).k < 2:
        return
    R = symmetrized_set(r)
    u = upper_word(r).text
    for text in (u, invert(u)):
        for _, _, w in cyclic_subwords(text):
            assert is_piece_criterion(r, w) == bool(is_piece_bruteforce(R, w)), w
