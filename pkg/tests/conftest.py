from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qptori.laurent import LaurentPoly
from qptori.lattice import Bicharacter

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def fractions(max_num=5, max_den=4):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


@st.composite
def skew_matrices(draw, m=None, lo=-3, hi=3, rational=False):
    m = draw(st.integers(1, 5)) if m is None else m
    L = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            x = Fraction(draw(st.integers(lo, hi)))
            if rational:
                x /= draw(st.integers(1, 3))
            L[i][j], L[j][i] = x, -x
    return L


@st.composite
def forms(draw, m=None, rational=True):
    return Bicharacter(draw(skew_matrices(m=m, rational=rational)))


def exponents(m, box=3):
    return st.tuples(*[st.integers(-box, box)] * m)


@st.composite
def polys(draw, m, max_terms=5, box=3):
    terms = draw(st.dictionaries(exponents(m, box), fractions(), max_size=max_terms))
    return LaurentPoly(m, terms)


def gradings(m):
    return st.tuples(*[st.integers(1, 3)] * m)
