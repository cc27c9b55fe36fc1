"""Commutation-matrix analysis for two X-type and two Z-type gauge families."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import gf2poly
from .gf2e import MAX_TABLE_DEGREE, ResourceBoundError, find_common_root
from .laurent import (
    ONE,
    ZERO,
    LaurentPoly,
    divide_exact,
    from_ypoly,
    gcd_bivariate,
    gcd_many,
    normalize_translation,
    to_ypoly,
)
from .pauli import GaugeGenerators, GaugeSpec, PauliVec, as_generators, symplectic_product

Matrix2 = tuple[tuple[LaurentPoly, LaurentPoly], tuple[LaurentPoly, LaurentPoly]]


class NoLocalStabilizersError(ValueError):
    """The commutation matrix has nonzero determinant."""


@dataclass(frozen=True)
class CommMatrix:
    """``M[i][j] = G_{X,i} . G_{Z,j}``, laid out as ((a, b), (c, d))."""

    a: LaurentPoly
    b: LaurentPoly
    c: LaurentPoly
    d: LaurentPoly

    @classmethod
    def from_rows(cls, rows: Matrix2) -> CommMatrix:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def rows(self) -> Matrix2:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def entries(self) -> tuple[LaurentPoly, ...]:
        return (self.a, self.b, self.c, self.d)

    def transpose(self) -> CommMatrix:
        return CommMatrix(self.a, self.c, self.b, self.d)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_reflection_symmetric(self) -> bool:
        return self.c == self.b.rho() and self.a.rho() == self.a and self.d.rho() == self.d

    def apply(self, v: tuple[LaurentPoly, LaurentPoly]) -> tuple[LaurentPoly, LaurentPoly]:
        """``M @ v`` for a column vector."""
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def apply_left(self, u: tuple[LaurentPoly, LaurentPoly]) -> tuple[LaurentPoly, LaurentPoly]:
        """``u @ M`` for a row vector."""
        return (u[0] * self.a + u[1] * self.c, u[0] * self.b + u[1] * self.d)

    def __str__(self) -> str:
        return f"(({self.a}, {self.b}), ({self.c}, {self.d}))"


def commutation_matrix(spec: GaugeSpec | GaugeGenerators) -> CommMatrix:
    gens = as_generators(spec)
    return CommMatrix(
        symplectic_product(gens.gx1, gens.gz1),
        symplectic_product(gens.gx1, gens.gz2),
        symplectic_product(gens.gx2, gens.gz1),
        symplectic_product(gens.gx2, gens.gz2),
    )


def det2(M: CommMatrix) -> LaurentPoly:
    return M.a * M.d + M.b * M.c


def mat_mul(A: Matrix2, B: Matrix2) -> Matrix2:
    return tuple(
        tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)) for i in range(2)
    )  # type: ignore[return-value]


def mat_det(A: Matrix2) -> LaurentPoly:
    return A[0][0] * A[1][1] + A[0][1] * A[1][0]


# ---------------------------------------------------------------------------
# Kernels and stabilizers


def _primitive_pair(p: LaurentPoly, q: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """``(p, q) / gcd(p, q)`` with the gcd taken as a normalized core."""
    g = gcd_bivariate(p, q)
    if g.is_one():
        return p, q
    return divide_exact(p, g), divide_exact(q, g)


def _require_singular(M: CommMatrix) -> None:
    if M.is_zero():
        raise ValueError("commutation matrix is zero: the gauge group is abelian")
    if det2(M):
        raise NoLocalStabilizersError(f"no local stabilizers: det M = {det2(M)} is nonzero")


def plane_kernel_generator(M: CommMatrix) -> tuple[LaurentPoly, LaurentPoly]:
    """Generator ``v`` of the right kernel ``{v : M v = 0}`` over the Laurent ring."""
    _require_singular(M)
    if M.a or M.b:
        return _primitive_pair(M.b, M.a)
    return _primitive_pair(M.d, M.c)


def left_kernel_generator(M: CommMatrix) -> tuple[LaurentPoly, LaurentPoly]:
    """Generator ``u`` of the left kernel ``{u : u M = 0}``."""
    _require_singular(M)
    if M.a or M.c:
        return _primitive_pair(M.c, M.a)
    return _primitive_pair(M.d, M.b)


@dataclass(frozen=True)
class KernelStabilizers:
    sx: PauliVec
    sz: PauliVec
    left_kernel: tuple[LaurentPoly, LaurentPoly]
    right_kernel: tuple[LaurentPoly, LaurentPoly]

    @property
    def sx_coeffs(self) -> tuple[LaurentPoly, LaurentPoly]:
        """Multipliers of G_{X,1} and G_{X,2} in S_X."""
        return (self.left_kernel[0].bar(), self.left_kernel[1].bar())

    @property
    def sz_coeffs(self) -> tuple[LaurentPoly, LaurentPoly]:
        """Multipliers of G_{Z,1} and G_{Z,2} in S_Z."""
        return self.right_kernel

    def is_degenerate(self) -> bool:
        return self.sx.is_zero() or self.sz.is_zero()


def kernel_stabilizers(M: CommMatrix, spec: GaugeSpec | GaugeGenerators) -> KernelStabilizers:
    """Stabilizers generated by the kernels of ``M``.

    ``S_X = bar(u1) G_{X,1} + bar(u2) G_{X,2}`` for ``u M = 0`` and
    ``S_Z = v1 G_{Z,1} + v2 G_{Z,2}`` for ``M v = 0``.
    """
    gens = as_generators(spec)
    u = left_kernel_generator(M)
    v = plane_kernel_generator(M)
    sx = gens.gx1.scale(u[0].bar()) + gens.gx2.scale(u[1].bar())
    sz = gens.gz1.scale(v[0]) + gens.gz2.scale(v[1])
    return KernelStabilizers(sx, sz, u, v)


# ---------------------------------------------------------------------------
# Entry-ideal unit test


@dataclass(frozen=True)
class IdealTest:
    """Outcome of the unit test for the ideal generated by the entries.

    ``witness`` is ``(e, alpha, beta)``: a common zero of all entries in
    GF(2^e) when the ideal is proper.
    """

    unit: bool
    reason: str
    witness: tuple[int, int, int] | None = None


def _sylvester_resultant(p: list[int], q: list[int]) -> int:
    """Res_y(p, q) over GF(2)[x] by fraction-free (Bareiss) elimination."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    if size == 0:
        return 1
    rows = []
    for i in range(n):
        row = [0] * size
        for k, coeff in enumerate(reversed(p)):
            row[i + k] = coeff
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for k, coeff in enumerate(reversed(q)):
            row[i + k] = coeff
        rows.append(row)
    prev = 1
    for k in range(size - 1):
        piv = next((r for r in range(k, size) if rows[r][k]), None)
        if piv is None:
            return 0
        rows[k], rows[piv] = rows[piv], rows[k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = gf2poly.mul(rows[i][j], rows[k][k]) ^ gf2poly.mul(rows[i][k], rows[k][j])
                quo, rem = gf2poly.divmod_(num, prev)
                if rem:
                    raise ArithmeticError("Bareiss step was not exact")
                rows[i][j] = quo
            rows[i][k] = 0
        prev = rows[k][k]
    return rows[size - 1][size - 1]


def resultant_y(p: LaurentPoly, q: LaurentPoly) -> int:
    """Res_y of the normalized cores of ``p`` and ``q`` as a GF(2)[x] integer."""
    cp = normalize_translation(p)[1]
    cq = normalize_translation(q)[1]
    return _sylvester_resultant(to_ypoly(cp), to_ypoly(cq))


def _ext_polys_at(polys: list[list[int]], phi: int) -> list[list[int]]:
    """Reduce GF(2)[x][y] coefficients modulo ``phi`` (x becomes a root of phi)."""
    out = []
    for c in polys:
        red = [gf2poly.mod(v, phi) for v in c]
        while red and red[-1] == 0:
            red.pop()
        out.append(red)
    return out


def _kpoly_gcd(a: list[int], b: list[int], phi: int) -> list[int]:
    """Monic gcd in K[y] with K = GF(2)[x]/phi."""
    d = gf2poly.deg(phi)
    inv_exp = (1 << d) - 2

    def inv(z: int) -> int:
        return gf2poly.powmod(z, inv_exp, phi)

    def rem(u: list[int], w: list[int]) -> list[int]:
        u = list(u)
        lead_inv = inv(w[-1])
        while len(u) >= len(w) and u:
            coef = gf2poly.mulmod(u[-1], lead_inv, phi)
            shift = len(u) - len(w)
            for i, wv in enumerate(w):
                u[shift + i] ^= gf2poly.mulmod(coef, wv, phi)
            while u and u[-1] == 0:
                u.pop()
        return u

    while b:
        a, b = b, rem(a, b)
    if a:
        li = inv(a[-1])
        a = [gf2poly.mulmod(v, li, phi) for v in a]
    return a


def _has_torus_zero_over(polys: list[list[int]], phi: int) -> bool:
    """Do the polynomials share a root ``beta != 0`` over an extension of GF(2)[x]/phi?"""
    # A polynomial vanishing identically at this alpha imposes no condition.
    red = [c for c in _ext_polys_at(polys, phi) if c]
    if not red:
        return True
    g = red[0]
    for c in red[1:]:
        g = _kpoly_gcd(g, c, phi)
        if len(g) <= 1:
            return False
    while len(g) > 1 and g[0] == 0:
        g = g[1:]
    return len(g) > 1


def entry_ideal_is_unit(M: CommMatrix, max_degree: int = MAX_TABLE_DEGREE) -> IdealTest:
    """Decide whether the entries of ``M`` generate the unit ideal.

    The ideal is proper exactly when the entries share a zero with nonzero
    coordinates over some finite extension of GF(2).  A monomial entry
    settles the question at once; otherwise a nontrivial common factor
    proves properness, and failing that the x-coordinates of common zeros
    are confined to roots of a resultant, each of which is checked by a gcd
    over the residue field.
    """
    entries = [p for p in M.entries if p.terms]
    if not entries:
        raise ValueError("all entries are zero")
    if any(p.is_monomial() for p in entries):
        return IdealTest(True, "monomial entry")
    cores = sorted({normalize_translation(p)[1] for p in entries}, key=lambda p: (len(p), p.sorted_terms()))
    g = gcd_many(cores)
    if not g.is_one():
        return _proper(cores, f"common factor {g}", max_degree)
    pair = _coprime_pair(cores)
    ypolys = [to_ypoly(c) for c in cores]
    res = _sylvester_resultant(to_ypoly(pair[0]), to_ypoly(pair[1]))
    if res == 0:
        raise ArithmeticError("resultant of a coprime pair vanished")
    for phi in gf2poly.irreducible_factors(res):
        if phi == 2:  # x = 0 is not on the torus
            continue
        if _has_torus_zero_over(ypolys, phi):
            return _proper(cores, f"common zero over GF(2)[x]/({gf2poly.to_str(phi)})", max_degree, res)
    return IdealTest(True, "no common zero on the algebraic torus")


def _proper(cores: list[LaurentPoly], reason: str, max_degree: int, res: int | None = None) -> IdealTest:
    alpha_poly = None
    if res is not None:
        alpha_poly = from_ypoly([res])
    root = find_common_root(cores, max_degree=max_degree, alpha_poly=alpha_poly)
    if root is None:
        raise ResourceBoundError(f"ideal is proper ({reason}) but no root found in GF(2^e), e <= {max_degree}")
    return IdealTest(False, reason, root)


def _coprime_pair(cores: list[LaurentPoly]) -> tuple[LaurentPoly, LaurentPoly]:
    p = cores[0]
    for q in cores[1:]:
        if gcd_bivariate(p, q).is_one():
            return p, q
    # Pairwise factors cancel but the whole set is coprime: mix the others.
    rest = cores[1:]
    for shifts in product(range(4), repeat=len(rest)):
        q = ZERO
        for s, r in zip(shifts, rest):
            q = q + r.shift(s, 0)
        if q.terms and gcd_bivariate(p, q).is_one():
            return p, q
    raise ResourceBoundError("could not find a coprime combination of the entries")


# ---------------------------------------------------------------------------
# Monomial-pivot canonical form


def canonicalize_monomial_pivot(M: CommMatrix) -> tuple[Matrix2, Matrix2]:
    """Unimodular ``P, Q`` with ``P M Q = diag(pivot, 0)`` for a monomial pivot.

    With the pivot at the top-left, ``P = ((1, 0), (c, a))`` clears the
    second row via ``det M = 0`` and ``Q = ((1, b), (0, a))`` clears the
    first row; both determinants equal the monomial ``a``.
    """
    if det2(M):
        raise NoLocalStabilizersError("canonical form requires det M = 0")
    pos = next(((i, j) for i in range(2) for j in range(2) if M.rows[i][j].is_monomial()), None)
    if pos is None:
        raise ValueError(
            "no monomial entry: use entry_ideal_is_unit; general reduction is not supported"
        )
    swap: Matrix2 = ((ZERO, ONE), (ONE, ZERO))
    ident: Matrix2 = ((ONE, ZERO), (ZERO, ONE))
    P0 = swap if pos[0] else ident
    Q0 = swap if pos[1] else ident
    (a, b), (c, d) = mat_mul(mat_mul(P0, M.rows), Q0)
    if not b and not c:
        return P0, Q0
    P1: Matrix2 = ((ONE, ZERO), (c, a))
    Q1: Matrix2 = ((ONE, b), (ZERO, a))
    return mat_mul(P1, P0), mat_mul(Q0, Q1)
