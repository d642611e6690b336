import pytest
from hypothesis import given

from conftest import unit_slopes
from twobridge.sequences import (CyclicSeq, Decomposition, Seq, connection_violation, contains_subsequence,
                                 cyclic_s_sequence_of_slope, decompose, recover_slope, recursive_s_sequence,
                                 s_sequence_of_slope, t_sequence, t_sequence_from_runs)
from twobridge.slopes import Slope, contains, intervals, reduce_step, to_continued_fraction


def test_examples():
    assert s_sequence_of_slope("1/4") == Seq((4, 4))
    for n in (2, 3, 5):
        r = Slope(n, 2 * n + 1)
        assert s_sequence_of_slope(r) == Seq((3,) + (2,) * (n - 1) + (3,) + (2,) * (n - 1))
        assert t_sequence(r) == Seq((n - 1, n - 1))
        d = decompose(Slope(n + 1, 3 * n + 2))
        assert d.s1 == Seq((3,) * n) and d.s2 == Seq((2,))
        assert t_sequence(Slope(n + 1, 3 * n + 2)) == Seq((n, n))
    assert s_sequence_of_slope("5/17") == Seq((4, 3, 4, 3, 3, 4, 3, 4, 3, 3))
    d = decompose("1/2")
    assert d.s1 == Seq() and d.s2 == Seq((2,))
    d = decompose("5/17")
    assert (d.s1, d.s2) == (Seq((4, 3, 4)), Seq((3, 3)))


def test_t_needs_k2():
    with pytest.raises(ValueError):
        t_sequence("1/3")


def test_recover_slope():
    assert recover_slope(CyclicSeq((4, 3, 3, 4, 3, 3)), Decomposition(Seq((3, 3)), Seq((4,)))) == Slope(3, 10)
    assert recover_slope(CyclicSeq((5, 5)), Decomposition(Seq(), Seq((5,)))) == Slope(1, 5)
    cs = CyclicSeq((3, 2, 3, 2, 2, 3, 2, 3, 2, 2))
    assert recover_slope(cs, decompose("5/12")) == Slope(5, 12)


def test_contains_subsequence():
    assert contains_subsequence(CyclicSeq((3, 2, 3, 2)), (2, 3))
    assert not contains_subsequence(CyclicSeq((3, 2, 3, 2)), (2, 2))
    assert contains_subsequence(CyclicSeq((4, 3, 3, 4, 3, 3)), (3, 3, 4))


def test_connection_examples():
    assert connection_violation("2/5", "2/5")
    assert not connection_violation("3/8", "1/6")
    assert connection_violation("2/5", "3/7") and not contains(intervals("2/5"), "3/7")
    # 3/11 lies in I_1(2/5); CS(3/11) = ((3,4,4,3,4,4)) has no 2
    assert not connection_violation("2/5", "3/11") and contains(intervals("2/5"), "3/11")


@given(unit_slopes(50))
def test_two_routes_agree(r):
    assert s_sequence_of_slope(r) == recursive_s_sequence(r)
    assert cyclic_s_sequence_of_slope(r).is_symmetric


@given(unit_slopes(50))
def test_t_routes_agree(r):
    cf = to_continued_fraction(r)
    if cf.k < 2:
        return
    assert t_sequence(r) == t_sequence_from_runs(r)
    assert CyclicSeq(t_sequence(r)) == cyclic_s_sequence_of_slope(reduce_step(cf))


@given(unit_slopes(50))
def test_decomposition_shape(r):
    d = decompose(r)
    assert d.sequence == s_sequence_of_slope(r)
    assert sum(d.s1) + sum(d.s2) == r.den
    assert len(d.s1) + len(d.s2) == r.num
