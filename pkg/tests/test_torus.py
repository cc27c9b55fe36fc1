from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st
from refdata import GUIDING, REF_CODES, SURFACE_GX, SURFACE_GZ, polys
from strategies import laurent

from sbbcodes.commute import commutation_matrix, plane_kernel_generator
from sbbcodes.laurent import ZERO, P
from sbbcodes.pauli import GaugeGenerators, PauliVec, gauge_x, gauge_z_reflected
from sbbcodes.torus import (
    TorusCode,
    TwistedTorus,
    cell_index,
    monomial_reduce,
    polyvec_rows,
    torus_kernel_excess,
)

ids = [c.name for c in REF_CODES]

tori = st.builds(
    lambda m, ell, q: TwistedTorus(m, ell, q % m),
    st.integers(1, 6),
    st.integers(1, 6),
    st.integers(0, 5),
)


def test_parse_and_format():
    t = TwistedTorus.parse("5, 4, 4")
    assert t == TwistedTorus(5, 4, 4)
    assert str(t) == "5,4,4"
    assert TwistedTorus.parse("3,3") == TwistedTorus(3, 3, 0)
    assert t.n == 60
    with pytest.raises(ValueError):
        TwistedTorus(3, 3, 3)


@given(tori, st.integers(-20, 20), st.integers(-20, 20))
def test_reduction_respects_lattice(t, a, b):
    i, j = monomial_reduce(a, b, t)
    assert 0 <= i < t.ell and 0 <= j < t.m
    assert monomial_reduce(a, b + t.m, t) == (i, j)
    assert monomial_reduce(a + t.ell, b + t.q, t) == (i, j)


@given(tori)
def test_cell_index_is_bijection(t):
    seen = {cell_index(i, j, t) for i in range(t.ell) for j in range(t.m)}
    assert seen == set(range(t.cells))


def test_twisted_identification():
    t = TwistedTorus(5, 4, 4)
    # x^4 y^4 = 1 on this torus, so x^4 is identified with y^-4 = y.
    assert monomial_reduce(4, 0, t) == monomial_reduce(0, 1, t)
    assert cell_index(0, 1, t) == 1


@given(laurent(4), laurent(4), tori)
def test_translates_are_permutations(p, q, t):
    rows = polyvec_rows((p, q), t).to_dense()
    assert rows.shape == (t.cells, 2 * t.cells)
    # Every row is a cyclic relabelling of the first one, so all weights agree.
    w = rows.sum(axis=1)
    assert (w == w[0]).all()


@pytest.mark.parametrize("ref", REF_CODES, ids=ids)
def test_reference_counts(ref):
    code = TorusCode(ref.spec, ref.torus)
    c = code.counts
    n, k, _ = ref.nkd
    assert c.n == n
    assert c.k == k
    assert c.consistent()
    assert c.s + c.r + c.k == n
    assert c.g == c.a + c.b
    assert code.stabilizers_central()
    assert code.bare_logical_dims() == (k, k)


@pytest.mark.parametrize("ref", REF_CODES, ids=ids)
def test_reference_kernel_excess(ref):
    M = commutation_matrix(ref.spec)
    assert torus_kernel_excess(M, plane_kernel_generator(M), ref.torus) == 0


def test_guiding_check_shapes():
    code = TorusCode(GUIDING.spec, GUIDING.torus)
    assert code.h_gx.shape == (50, 75)
    assert code.h_sx.shape == (25, 75)
    assert set(code.h_gx.row_weights()) == {4}
    assert set(code.h_sx.row_weights()) == {12}
    assert code.omega.shape == (50, 50)


@pytest.mark.parametrize("L", [3, 4, 5])
def test_surface_family(L):
    (gx1, gx2), (gz1, gz2) = SURFACE_GX, SURFACE_GZ
    gens = GaugeGenerators(
        gauge_x(*polys(gx1)),
        gauge_x(*polys(gx2)),
        _z(polys(gz1)),
        _z(polys(gz2)),
    )
    code = TorusCode(gens, TwistedTorus(L, L, 0))
    assert code.counts.n == 3 * L * L
    assert code.counts.k == 2
    assert code.stabilizers_central()


def _z(comps):
    return PauliVec((ZERO, ZERO, ZERO), comps)


def test_gauge_z_reflection_layout():
    f, g, h = P("1"), P("x"), P("y")
    z = gauge_z_reflected(f, g, h)
    assert z.zblock == (P("1"), P("x"), P("y"))
    assert not any(z.xblock)


@given(tori)
def test_reflected_lattice(t):
    r = t.reflected()
    assert r.cells == t.cells
    for a, b in t.lattice_vectors:
        assert monomial_reduce(b, a, r) == (0, 0)
    for a, b in r.lattice_vectors:
        assert monomial_reduce(b, a, t) == (0, 0)
    assert r.reflected() == t
