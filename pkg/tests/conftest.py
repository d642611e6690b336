from math import gcd

from hypothesis import strategies as st

from twobridge import Slope


@st.composite
def unit_slopes(draw, max_den=40, min_den=2):
    """q/p with 0 < q < p and gcd(q, p) = 1."""
    p = draw(st.integers(min_den, max_den))
    q = draw(st.integers(1, p - 1).filter(lambda q: gcd(q, p) == 1))
    return Slope(q, p)


@st.composite
def any_slopes(draw, max_den=40, span=6):
    p = draw(st.integers(1, max_den))
    q = draw(st.integers(-span * p, span * p).filter(lambda q: gcd(q, p) == 1))
    return Slope(q, p)
