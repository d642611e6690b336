import pytest
from hypothesis import given, strategies as st

from conftest import unit_slopes
from twobridge.words import (CyclicWord, Word, cyclic_s_sequence, free_reduce, invert, is_cyclically_alternating,
                             s_sequence, upper_word)

letters = st.text(alphabet="aAbB", max_size=30)


@pytest.mark.parametrize("raw,reduced", [("abBa", "aa"), ("", ""), ("abAaBA", "")])
def test_free_reduce(raw, reduced):
    assert free_reduce(raw).text == reduced


@pytest.mark.parametrize("s,word", [
    ("2/5", "abaBAbabAB"),
    ("1/5", "ababaBABAB"),
    ("2/7", "ababABAbabaBAB"),
])
def test_upper_word(s, word):
    assert upper_word(s).text == word


def test_s_sequences():
    assert tuple(s_sequence(upper_word("2/5"))) == (3, 2, 3, 2)
    assert tuple(s_sequence("aba")) == (3,)
    assert tuple(s_sequence(upper_word("5/17"))) == (4, 3, 4, 3, 3, 4, 3, 4, 3, 3)
    assert str(cyclic_s_sequence(upper_word("3/8"))) == "((2,3,3,2,3,3))"
    assert tuple(cyclic_s_sequence("abab")) == (4,)
    assert tuple(cyclic_s_sequence(upper_word("3/10"))) == (3, 3, 4, 3, 3, 4)


def test_alternation():
    assert is_cyclically_alternating(upper_word("2/5").text)
    assert not is_cyclically_alternating("aab")
    assert is_cyclically_alternating("aB")


def test_parse_errors():
    with pytest.raises(ValueError):
        Word.parse("abc")


@given(letters)
def test_reduction_idempotent_and_inverse(t):
    w = free_reduce(t)
    assert free_reduce(w).text == w.text
    assert (Word(t) * Word(t).inverse()).reduced().text == ""
    assert invert(invert(t)) == t


@given(letters, st.integers(0, 40))
def test_cyclic_word_rotation_invariant(t, k):
    w = free_reduce(t).text
    if not w or not Word(w).is_cyclically_reduced:
        return
    k %= len(w)
    assert CyclicWord.of(w) == CyclicWord.of(w[k:] + w[:k])


@given(unit_slopes(40))
def test_upper_word_shape(r):
    u = upper_word(r).text
    assert len(u) == 2 * r.den
    assert is_cyclically_alternating(u)
    assert Word(u).is_cyclically_reduced
