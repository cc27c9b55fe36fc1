from __future__ import annotations

import pytest
from hypothesis import assume, given
from refdata import GUIDING, GUIDING_P, GUIDING_PMQ_PIVOT, GUIDING_Q, REF_CODES, polys
from strategies import nonzero_laurent, triples

from sbbcodes.commute import (
    CommMatrix,
    NoLocalStabilizersError,
    canonicalize_monomial_pivot,
    commutation_matrix,
    det2,
    entry_ideal_is_unit,
    kernel_stabilizers,
    left_kernel_generator,
    mat_det,
    mat_mul,
    plane_kernel_generator,
)
from sbbcodes.laurent import ONE, ZERO, P, divide_exact
from sbbcodes.pauli import GaugeSpec, pauli_weight, symplectic_product

ids = [c.name for c in REF_CODES]


def monomial_multiple(p, q) -> bool:
    """``p = m q`` for some monomial ``m``."""
    if not p or not q:
        return not p and not q
    try:
        return divide_exact(p, q).is_monomial()
    except ArithmeticError:
        return False
    except ValueError:
        return False


@pytest.mark.parametrize("ref", REF_CODES, ids=ids)
def test_reference_matrix(ref):
    M = commutation_matrix(ref.spec)
    assert M.entries == polys(ref.matrix)
    assert not det2(M)
    assert any(p.is_monomial() for p in M.entries)
    assert M.is_reflection_symmetric()


@pytest.mark.parametrize("ref", REF_CODES, ids=ids)
def test_reference_stabilizer_coefficients(ref):
    M = commutation_matrix(ref.spec)
    ks = kernel_stabilizers(M, ref.spec)
    assert ks.sx_coeffs == polys(ref.sx)
    assert ks.sz_coeffs == polys(ref.sz)
    assert not ks.is_degenerate()
    assert ks.sx.is_pure_x() and ks.sz.is_pure_z()


@pytest.mark.parametrize("ref", REF_CODES, ids=ids)
def test_stabilizers_commute_with_all_gauge_generators(ref):
    gens = ref.spec.generators()
    ks = kernel_stabilizers(commutation_matrix(ref.spec), ref.spec)
    for g in (*gens.x_gens, *gens.z_gens):
        assert not symplectic_product(ks.sx, g)
        assert not symplectic_product(ks.sz, g)


def test_guiding_stabilizer_weight():
    ks = kernel_stabilizers(commutation_matrix(GUIDING.spec), GUIDING.spec)
    assert pauli_weight(ks.sx) == 12
    assert pauli_weight(ks.sz) == 12


@pytest.mark.parametrize("ref", REF_CODES, ids=ids)
def test_stabilizer_weight_is_even(ref):
    ks = kernel_stabilizers(commutation_matrix(ref.spec), ref.spec)
    assert pauli_weight(ks.sx) % 2 == 0
    assert pauli_weight(ks.sz) % 2 == 0


def test_guiding_canonical_form():
    M = commutation_matrix(GUIDING.spec)
    Pm, Q = canonicalize_monomial_pivot(M)
    pivot = P(GUIDING_PMQ_PIVOT)
    assert mat_mul(mat_mul(Pm, M.rows), Q) == ((pivot, ZERO), (ZERO, ZERO))
    assert mat_det(Pm).is_monomial() and mat_det(Q).is_monomial()
    ref_p, ref_q = (polys(r) for r in GUIDING_P), (polys(r) for r in GUIDING_Q)
    ref_p, ref_q = tuple(ref_p), tuple(ref_q)
    assert Pm[0] == ref_p[0]
    assert all(monomial_multiple(x, y) for x, y in zip(Pm[1], ref_p[1]))
    assert Pm[1][0] * ref_p[1][1] == Pm[1][1] * ref_p[1][0]
    assert Q[0][0] == ref_q[0][0] and Q[1][0] == ref_q[1][0]
    assert Q[0][1] * ref_q[1][1] == Q[1][1] * ref_q[0][1]
    assert monomial_multiple(Q[1][1], ref_q[1][1])


def test_canonical_form_needs_monomial_entry():
    M = CommMatrix(P("1 + x"), P("1 + x"), P("1 + y"), P("1 + y"))
    assert not det2(M)
    with pytest.raises(ValueError):
        canonicalize_monomial_pivot(M)


def test_nonzero_determinant_rejected():
    with pytest.raises(NoLocalStabilizersError):
        plane_kernel_generator(CommMatrix(ONE, ZERO, ZERO, ONE))


def test_zero_matrix_rejected():
    with pytest.raises(ValueError):
        plane_kernel_generator(CommMatrix(ZERO, ZERO, ZERO, ZERO))


def rank_one(u1, u2, v1, v2) -> CommMatrix:
    """Outer product ``(u1, u2)^T (v1, v2)``: always singular."""
    return CommMatrix(u1 * v1, u1 * v2, u2 * v1, u2 * v2)


@given(nonzero_laurent(3), nonzero_laurent(3), nonzero_laurent(3), nonzero_laurent(3))
def test_kernel_identities(u1, u2, v1, v2):
    M = rank_one(u1, u2, v1, v2)
    assert not det2(M)
    v = plane_kernel_generator(M)
    u = left_kernel_generator(M)
    assert M.apply(v) == (ZERO, ZERO)
    assert M.apply_left(u) == (ZERO, ZERO)
    assert any(v) and any(u)


@given(triples(2), triples(2))
def test_matrix_is_reflection_symmetric(w1, w2):
    assume(any(w1) and any(w2))
    spec = GaugeSpec(w1, w2)
    assert commutation_matrix(spec).is_reflection_symmetric()


@given(triples(2), triples(2))
def test_kernel_stabilizers_are_central(w1, w2):
    assume(any(w1) and any(w2))
    spec = GaugeSpec(w1, w2)
    M = commutation_matrix(spec)
    assume(not M.is_zero() and not det2(M))
    ks = kernel_stabilizers(M, spec)
    gens = spec.generators()
    for g in (*gens.x_gens, *gens.z_gens):
        assert not symplectic_product(ks.sx, g)
        assert not symplectic_product(ks.sz, g)


def test_entry_ideal_unit_by_monomial():
    assert entry_ideal_is_unit(CommMatrix(P("x*y"), ZERO, ZERO, ZERO)).unit


def test_entry_ideal_unit_by_coprime_entries():
    test = entry_ideal_is_unit(CommMatrix(P("1 + x"), P("1 + x + x^2"), ZERO, ZERO))
    assert test.unit


def test_entry_ideal_proper_common_factor():
    test = entry_ideal_is_unit(CommMatrix(P("1 + x"), P("y + x*y"), ZERO, ZERO))
    assert not test.unit
    assert test.witness is not None


def test_entry_ideal_proper_without_common_factor():
    test = entry_ideal_is_unit(CommMatrix(P("1 + x"), P("1 + y"), ZERO, ZERO))
    assert not test.unit
    e, alpha, beta = test.witness
    assert (e, alpha, beta) == (1, 1, 1)


def test_entry_ideal_resultant_path_unit():
    test = entry_ideal_is_unit(CommMatrix(P("1 + x + y"), P("1 + x*y"), ZERO, ZERO))
    from sbbcodes.gf2e import eval_at, field_ctx

    if not test.unit:
        e, a, b = test.witness
        ctx = field_ctx(e)
        assert eval_at(P("1 + x + y"), a, b, ctx) == 0
        assert eval_at(P("1 + x*y"), a, b, ctx) == 0
