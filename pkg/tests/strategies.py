"""Hypothesis strategies for small polynomials and ideals."""

from hypothesis import strategies as st

from gradecheck.fields import GF, QQ
from gradecheck.polys import PolyRing

SMALL = GF(101)
RINGS = {
    "gf2vars": PolyRing("x,y", SMALL),
    "gf3vars": PolyRing("x,y,z", SMALL),
    "qq3vars": PolyRing("x,y,z", QQ),
}


def exponents(n, max_deg):
    return st.lists(st.integers(0, max_deg), min_size=n, max_size=n).filter(lambda e: sum(e) <= max_deg)


@st.composite
def polynomials(draw, ring, max_deg=3, max_terms=4):
    terms = draw(
        st.dictionaries(exponents(ring.ngens, max_deg).map(tuple), st.integers(-5, 5), max_size=max_terms)
    )
    return ring.from_dict(terms)


@st.composite
def forms(draw, ring, degree, max_terms=4):
    mons = ring.monomials_of_degree(degree)
    picked = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(1, 50), min_size=len(picked), max_size=len(picked)))
    return ring.from_dict(dict(zip(picked, coeffs)))


@st.composite
def homogeneous_ideal_gens(draw, ring, max_gens=3, max_deg=3):
    k = draw(st.integers(1, max_gens))
    return [draw(forms(ring, draw(st.integers(1, max_deg)))) for _ in range(k)]
