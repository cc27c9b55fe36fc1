from __future__ import annotations

import pytest
from hypothesis import given
from refdata import (
    GUIDING,
    GUIDING_BB,
    GUIDING_BB_SX,
    GUIDING_BB_SZ,
    GUIDING_BB_SZ_FACTOR,
    GUIDING_U1,
    GUIDING_U2,
    REF_CODES,
    polys,
)
from strategies import laurent, monomials

from sbbcodes.clifford import (
    BBCode,
    DirectSectorError,
    SymplecticMap,
    apply_symplectic,
    check_symplectic,
    cnot_layers,
    direct_sector_unitary,
    induced_bb_code,
    induced_stabilizer_formulas,
)
from sbbcodes.commute import commutation_matrix, det2, kernel_stabilizers
from sbbcodes.laurent import ONE, ZERO, P, divide_exact
from sbbcodes.pauli import GaugeSpec, symplectic_product


def common_monomial(got, want):
    """Monomial ``m`` with ``got[i] = m want[i]`` for every i, or ``None``."""
    ratios = set()
    for g, w in zip(got, want):
        if not g or not w:
            if g or w:
                return None
            continue
        r = divide_exact(g, w)
        if not r.is_monomial():
            return None
        ratios.add(r)
    return ratios.pop() if len(ratios) == 1 else None


def test_guiding_layers():
    u1, u2 = cnot_layers(GUIDING.spec)
    for (i, j), text in GUIDING_U1.items():
        assert u1[i, j] == P(text)
    for (i, j), text in GUIDING_U2.items():
        assert u2[i, j] == P(text)
    off1 = {(i, j) for i in range(6) for j in range(6) if i != j and u1[i, j]}
    off2 = {(i, j) for i in range(6) for j in range(6) if i != j and u2[i, j]}
    assert off1 == set(GUIDING_U1)
    assert off2 == set(GUIDING_U2)


def test_guiding_unitary_is_symplectic():
    u1, u2 = cnot_layers(GUIDING.spec)
    assert check_symplectic(u1)
    assert check_symplectic(u2)
    assert check_symplectic(direct_sector_unitary(GUIDING.spec))


def test_guiding_disentangles_first_generators():
    U = direct_sector_unitary(GUIDING.spec)
    gens = GUIDING.spec.generators()
    x1 = apply_symplectic(U, gens.gx1)
    z1 = apply_symplectic(U, gens.gz1)
    assert x1.xblock == (P("x^2"), ZERO, ZERO) and not any(x1.zblock)
    assert z1.zblock == (P("y^2"), ZERO, ZERO) and not any(z1.xblock)


def test_zero_row_map_is_not_symplectic():
    U = direct_sector_unitary(GUIDING.spec)
    assert not check_symplectic(U.with_zero_row(0))
    assert not check_symplectic(SymplecticMap.identity().with_zero_row(3))


def test_guiding_induced_bb_code():
    code, params = induced_bb_code(GUIDING.spec, t=GUIDING.torus)
    assert code.weights == (8, 8)
    assert code.commutes()
    assert common_monomial((code.p1, code.p2), polys(GUIDING_BB_SX)) is not None
    expected_z = tuple(P(GUIDING_BB_SZ_FACTOR) * p for p in polys(GUIDING_BB_SZ))
    assert common_monomial((code.q1, code.q2), expected_z) is not None
    assert (params.n, params.k, params.d) == GUIDING_BB


@pytest.mark.parametrize("ref", REF_CODES, ids=[c.name for c in REF_CODES])
def test_reference_codes_reduce(ref):
    if not ref.spec.w1[0].is_monomial():
        pytest.skip("first generator is not in monomial normal form")
    code, params = induced_bb_code(ref.spec, t=ref.torus, distance=False)
    assert code.commutes()
    assert params.n == 2 * ref.torus.cells
    assert params.k == ref.nkd[1]


def test_closed_form_matches_circuit():
    spec = GUIDING.spec
    code, _ = induced_bb_code(spec)
    formula = induced_stabilizer_formulas(spec)
    assert common_monomial((code.p1, code.p2), (formula.p1, formula.p2)) is not None
    assert common_monomial((code.q1, code.q2), (formula.q1, formula.q2)) is not None


def test_rejects_non_monomial_first_entry():
    spec = GaugeSpec.from_strings("1 + x", "y", "x*y", "1", "x", "0")
    with pytest.raises(DirectSectorError):
        cnot_layers(spec)


def test_rejects_nonzero_mixed_term():
    spec = GaugeSpec.from_strings("1", "x", "x^2", "1", "y", "0")
    with pytest.raises(DirectSectorError):
        cnot_layers(spec)


@given(monomials, laurent(3), monomials)
def test_symplectic_for_direct_sector_specs(f, u, t):
    # Equal second and third components make the mixed term cancel in pairs.
    g = f * u
    h = f * u
    spec = GaugeSpec((f, g, h), (ONE, t, ZERO))
    U = direct_sector_unitary(spec)
    assert check_symplectic(U)
    x1 = apply_symplectic(U, spec.generators().gx1)
    assert x1.xblock[1:] == (ZERO, ZERO)


@given(laurent(3), laurent(3), laurent(3), laurent(3))
def test_bb_code_symplectic_product(p1, p2, q1, q2):
    code = BBCode(p1, p2, q1, q2)
    prod = symplectic_product(code.sx, code.sz)
    assert code.commutes() == (not prod)


def test_reduced_stabilizers_preserve_commutation():
    spec = GUIDING.spec
    M = commutation_matrix(spec)
    assert not det2(M)
    ks = kernel_stabilizers(M, spec)
    U = direct_sector_unitary(spec)
    sx, sz = apply_symplectic(U, ks.sx), apply_symplectic(U, ks.sz)
    assert symplectic_product(sx, sz) == symplectic_product(ks.sx, ks.sz)
