"""Hypothesis strategies shared by the property suites."""

from __future__ import annotations

from hypothesis import strategies as st

from sbbcodes.laurent import LaurentPoly
from sbbcodes.pauli import PauliVec

exponents = st.integers(min_value=-3, max_value=3)
terms = st.tuples(exponents, exponents)


def laurent(max_terms: int = 5, min_terms: int = 0):
    return st.lists(terms, min_size=min_terms, max_size=max_terms).map(LaurentPoly)


def nonzero_laurent(max_terms: int = 5):
    return laurent(max_terms, 1).filter(bool)


monomials = terms.map(lambda t: LaurentPoly([t]))


def pauli_vecs(nsub: int = 3, max_terms: int = 3):
    comp = laurent(max_terms)
    return st.tuples(st.tuples(*[comp] * nsub), st.tuples(*[comp] * nsub)).map(lambda p: PauliVec(*p))


def triples(max_terms: int = 3):
    return st.tuples(laurent(max_terms), laurent(max_terms), laurent(max_terms))
