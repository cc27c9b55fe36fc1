"""Two-layer CNOT reduction of the direct sector and the induced BB code.

When ``f1`` is a monomial and the mixed term of the first generator
vanishes, the symplectic map ``U = U2 U1`` sends ``G_{X,1}`` and
``G_{Z,1}`` to single-qubit X and Z on the first sublattice (up to a
translation).  The stabilizers then live on the remaining two sublattices
and define a bivariate bicycle code.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .bitmatrix import BitMatrix
from .commute import KernelStabilizers, commutation_matrix, kernel_stabilizers
from .distance import DistanceResult, min_weight_excluding
from .laurent import ONE, ZERO, LaurentPoly, parse, poly_sum
from .pauli import GaugeSpec, PauliVec, symplectic_product
from .torus import TwistedTorus, polyvec_rows

Matrix = tuple[tuple[LaurentPoly, ...], ...]


class DirectSectorError(ValueError):
    """The first generator is not in the normal form the explicit circuit needs."""


@dataclass(frozen=True)
class SymplecticMap:
    """Square matrix over the Laurent ring acting on Pauli vectors from the left."""

    rows: Matrix

    @classmethod
    def identity(cls, size: int = 6) -> SymplecticMap:
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(size)) for i in range(size)))

    @classmethod
    def from_updates(cls, updates: dict[tuple[int, int], LaurentPoly], size: int = 6) -> SymplecticMap:
        rows = [[ONE if i == j else ZERO for j in range(size)] for i in range(size)]
        for (i, j), p in updates.items():
            rows[i][j] = p
        return cls(tuple(tuple(r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        return self.rows[ij[0]][ij[1]]

    def __matmul__(self, other: SymplecticMap) -> SymplecticMap:
        n = self.size
        return SymplecticMap(
            tuple(
                tuple(poly_sum(self.rows[i][k] * other.rows[k][j] for k in range(n)) for j in range(n))
                for i in range(n)
            )
        )

    def dagger(self) -> SymplecticMap:
        """Antipode of the transpose."""
        n = self.size
        return SymplecticMap(tuple(tuple(self.rows[j][i].bar() for j in range(n)) for i in range(n)))

    def with_zero_row(self, i: int) -> SymplecticMap:
        rows = list(self.rows)
        rows[i] = tuple(ZERO for _ in range(self.size))
        return SymplecticMap(tuple(rows))

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(p) for p in row) + "]" for row in self.rows)


def lambda_form(size: int = 6) -> SymplecticMap:
    h = size // 2
    return SymplecticMap(
        tuple(tuple(ONE if (j == i + h or i == j + h) else ZERO for j in range(size)) for i in range(size))
    )


def check_symplectic(U: SymplecticMap) -> bool:
    lam = lambda_form(U.size)
    return U.dagger() @ lam @ U == lam


def apply_symplectic(U: SymplecticMap, v: PauliVec) -> PauliVec:
    comps = v.components
    if len(comps) != U.size:
        raise ValueError("dimension mismatch between map and Pauli vector")
    out = [poly_sum(U.rows[i][j] * comps[j] for j in range(U.size)) for i in range(U.size)]
    return PauliVec.from_components(out)


def mixed_term(w1: Sequence[LaurentPoly]) -> LaurentPoly:
    _, g, h = w1
    return g.bar() * h.sigma() + h.bar() * g.sigma()


def direct_sector_parameters(spec: GaugeSpec) -> tuple[LaurentPoly, LaurentPoly]:
    """``u = g1 / f1`` and ``v = h1 / f1`` after checking the normal-form conditions."""
    f1, g1, h1 = spec.w1
    if not f1.is_monomial():
        raise DirectSectorError(f"normal form needs f1 to be a monomial, got f1 = {f1}")
    if mixed_term(spec.w1):
        raise DirectSectorError(
            "normal form needs bar(g1) sigma(h1) + bar(h1) sigma(g1) = 0, "
            f"got {mixed_term(spec.w1)}"
        )
    inv = f1.inverse_monomial()
    return g1 * inv, h1 * inv


def cnot_layers(spec: GaugeSpec) -> tuple[SymplecticMap, SymplecticMap]:
    """The two CNOT layers ``(U1, U2)``; components are ordered (X1, X2, X3, Z1, Z2, Z3)."""
    u, v = direct_sector_parameters(spec)
    u1 = SymplecticMap.from_updates({(1, 0): u, (2, 0): v, (3, 4): u.bar(), (3, 5): v.bar()})
    u2 = SymplecticMap.from_updates({(0, 1): v.rho(), (0, 2): u.rho(), (4, 3): v.sigma(), (5, 3): u.sigma()})
    return u1, u2


def direct_sector_unitary(spec: GaugeSpec) -> SymplecticMap:
    u1, u2 = cnot_layers(spec)
    return u2 @ u1


@dataclass(frozen=True)
class BBCode:
    """CSS code on two sublattices with ``s_x = (p1, p2 | 0, 0)`` and ``s_z = (0, 0 | q1, q2)``."""

    p1: LaurentPoly
    p2: LaurentPoly
    q1: LaurentPoly
    q2: LaurentPoly

    @classmethod
    def from_strings(cls, p1: str, p2: str, q1: str, q2: str) -> BBCode:
        return cls(parse(p1), parse(p2), parse(q1), parse(q2))

    @property
    def sx(self) -> PauliVec:
        return PauliVec((self.p1, self.p2), (ZERO, ZERO))

    @property
    def sz(self) -> PauliVec:
        return PauliVec((ZERO, ZERO), (self.q1, self.q2))

    @property
    def weights(self) -> tuple[int, int]:
        return (self.p1.weight + self.p2.weight, self.q1.weight + self.q2.weight)

    def commutes(self) -> bool:
        return not symplectic_product(self.sx, self.sz)

    def check_matrices(self, t: TwistedTorus) -> tuple[BitMatrix, BitMatrix]:
        return polyvec_rows((self.p1, self.p2), t), polyvec_rows((self.q1, self.q2), t)

    def as_strings(self) -> dict[str, str]:
        return {"p1": str(self.p1), "p2": str(self.p2), "q1": str(self.q1), "q2": str(self.q2)}


@dataclass(frozen=True)
class BBParameters:
    n: int
    k: int
    rank_x: int
    rank_z: int
    d: int | None
    x: DistanceResult | None
    z: DistanceResult | None


def bb_parameters(code: BBCode, t: TwistedTorus, distance: bool = True, **kw) -> BBParameters:
    hx, hz = code.check_matrices(t)
    n = 2 * t.cells
    rx, rz = hx.rank(), hz.rank()
    k = n - rx - rz
    if not distance or k == 0:
        return BBParameters(n, k, rx, rz, None, None, None)
    anchors = [0, t.cells]
    dx = min_weight_excluding(hz, hx, anchors, **kw)
    dz = min_weight_excluding(hx, hz, anchors, **kw)
    d = min(dx.d, dz.d) if dx.d is not None and dz.d is not None else None
    return BBParameters(n, k, rx, rz, d, dx, dz)


def induced_stabilizer_formulas(spec: GaugeSpec, M=None) -> BBCode:
    """Closed-form BB generators from ``u``, ``v`` and the matrix entries ``a``, ``b``."""
    u, v = direct_sector_parameters(spec)
    M = M if M is not None else commutation_matrix(spec)
    a, b = M.a, M.b
    (_, g1, h1), (f2, g2, h2) = spec.w1, spec.w2
    abar = a.bar()
    return BBCode(
        abar * (g2 + u * f2),
        abar * (h2 + v * f2),
        b * h1.sigma() + a * h2.sigma(),
        b * g1.sigma() + a * g2.sigma(),
    )


def reduced_stabilizers(spec: GaugeSpec, stabs: KernelStabilizers | None = None) -> tuple[PauliVec, PauliVec]:
    """``U S_X`` and ``U S_Z`` for the kernel stabilizers."""
    stabs = stabs if stabs is not None else kernel_stabilizers(commutation_matrix(spec), spec)
    U = direct_sector_unitary(spec)
    return apply_symplectic(U, stabs.sx), apply_symplectic(U, stabs.sz)


def induced_bb_code(
    spec: GaugeSpec,
    stabs: KernelStabilizers | None = None,
    t: TwistedTorus | None = None,
    distance: bool = True,
    **kw,
) -> tuple[BBCode, BBParameters | None]:
    """BB code carried by the stabilizers once the first sublattice is disentangled.

    The generators are read off ``U S_X`` and ``U S_Z``; their support on the
    first sublattice must vanish.
    """
    sx, sz = reduced_stabilizers(spec, stabs)
    if sx.xblock[0] or sz.zblock[0] or not sx.is_pure_x() or not sz.is_pure_z():
        raise DirectSectorError("reduced stabilizers still touch the disentangled sublattice")
    code = BBCode(sx.xblock[1], sx.xblock[2], sz.zblock[1], sz.zblock[2])
    params = bb_parameters(code, t, distance, **kw) if t is not None else None
    return code, params
