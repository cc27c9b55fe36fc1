from __future__ import annotations

import pytest
from hypothesis import given

from sbbcodes.laurent import ONE, ZERO, P
from sbbcodes.pauli import (
    GaugeSpec,
    PauliVec,
    gauge_x,
    gauge_z_reflected,
    pauli_weight,
    reflected_pairing,
    symplectic_product,
    translate,
)
from refdata import GUIDING, polys
from strategies import monomials, pauli_vecs, triples


def test_guiding_generators():
    gens = GUIDING.spec.generators()
    assert gens.gz1 == PauliVec((ZERO,) * 3, polys(("y^2", "y + x*y^2", "x^2")))
    assert gens.gz2 == PauliVec((ZERO,) * 3, polys(("1 + x^2", "0", "x + y")))
    assert [pauli_weight(g) for g in (gens.gx1, gens.gx2, gens.gz1, gens.gz2)] == [4, 4, 4, 4]


def test_single_qubit_products():
    x0 = PauliVec((ONE, ZERO, ZERO), (ZERO,) * 3)
    z0 = PauliVec((ZERO,) * 3, (P("x"), ZERO, ZERO))
    assert symplectic_product(x0, z0) == P("x")
    assert symplectic_product(z0, x0) == P("x^-1")


@given(pauli_vecs(), pauli_vecs())
def test_conjugate_symmetry(v1, v2):
    assert symplectic_product(v1, v2) == symplectic_product(v2, v1).bar()


@given(pauli_vecs(), pauli_vecs(), monomials)
def test_translation_covariance(v1, v2, t):
    assert symplectic_product(translate(v1, t), v2) == t.bar() * symplectic_product(v1, v2)
    assert symplectic_product(translate(v1, t), translate(v2, t)) == symplectic_product(v1, v2)


@given(pauli_vecs())
def test_self_product_of_css_vector_vanishes(v):
    xpart = PauliVec(v.xblock, (ZERO,) * 3)
    assert not symplectic_product(xpart, xpart)


@given(triples(), triples())
def test_reflected_pairing_matches_product(w1, w2):
    assert reflected_pairing(w1, w2) == symplectic_product(gauge_x(*w1), gauge_z_reflected(*w2))


def test_translate_requires_monomial():
    with pytest.raises(ValueError):
        translate(gauge_x(ONE, ZERO, ZERO), P("1 + x"))


def test_spec_strings_round_trip():
    spec = GUIDING.spec
    assert GaugeSpec.from_strings(*spec.as_strings().values()) == spec
    assert spec.is_weight4()


def test_swapped_relabels_sublattices():
    s = GUIDING.spec.swapped()
    assert s.w1 == (P("x^2"), P("x + x^2*y"), P("y^2"))
    assert s.swapped() == GUIDING.spec
