"""Twisted-torus quotients, check matrices and the code-counting formulas.

A twisted torus ``(m, ell, q)`` imposes ``y^m = 1`` and ``x^ell y^q = 1``.
Its ``m * ell`` unit cells are indexed ``i * m + j`` for the reduced
monomial ``x^i y^j``; qubit ``sub * (m * ell) + cell`` sits on sublattice
``sub`` of that cell.
"""

from __future__ import annotations

import math
import warnings
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Literal

import numpy as np

from .bitmatrix import BitMatrix, gf2_rank
from .commute import CommMatrix, KernelStabilizers, commutation_matrix, kernel_stabilizers
from .laurent import LaurentPoly
from .pauli import GaugeGenerators, GaugeSpec, PauliVec, as_generators, pauli_weight

__all__ = [
    "BitMatrix",
    "CodeCounts",
    "InconsistentStabilizersError",
    "TorusCode",
    "TwistedTorus",
    "bare_logical_dims",
    "build_check_matrix",
    "code_counts",
    "gf2_rank",
    "monomial_reduce",
    "polyvec_rows",
    "torus_kernel_excess",
]


class InconsistentStabilizersError(ArithmeticError):
    """The local stabilizers do not account for the center of the gauge group."""


class SelfOverlapWarning(UserWarning):
    """A generator wraps onto itself on a small torus and loses weight."""


@dataclass(frozen=True, order=True)
class TwistedTorus:
    m: int
    ell: int
    q: int = 0

    def __post_init__(self):
        if self.m < 1 or self.ell < 1:
            raise ValueError("torus periods must be positive")
        if not 0 <= self.q < self.m:
            raise ValueError(f"twist q={self.q} must satisfy 0 <= q < m={self.m}")

    @classmethod
    def parse(cls, text: str) -> TwistedTorus:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) not in (2, 3):
            raise ValueError(f"torus must be 'm,l' or 'm,l,q', got {text!r}")
        m, ell = int(parts[0]), int(parts[1])
        q = int(parts[2]) if len(parts) == 3 else 0
        return cls(m, ell, q % m)

    @property
    def cells(self) -> int:
        return self.m * self.ell

    @property
    def n(self) -> int:
        return 3 * self.cells

    @property
    def lattice_vectors(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((0, self.m), (self.ell, self.q))

    def __str__(self) -> str:
        return f"{self.m},{self.ell},{self.q}"

    def reflected(self) -> TwistedTorus:
        """Torus whose lattice is the image of this one under ``x <-> y``.

        The swapped lattice is spanned by ``(m, 0)`` and ``(q, ell)``; its
        Hermite normal form is again of the shape ``(0, m'), (ell', q')``.
        """
        g = math.gcd(self.m, self.q)
        m2 = self.ell * self.m // g
        ell2 = g
        # c * q = g (mod m) picks the combination with first coordinate g.
        c = pow(self.q // g, -1, self.m // g) if self.m // g > 1 else 0
        return TwistedTorus(m2, ell2, (c * self.ell) % m2)

    def cell_exponents(self) -> tuple[np.ndarray, np.ndarray]:
        """Reduced exponents ``(i, j)`` of every cell in index order."""
        idx = np.arange(self.cells)
        return idx // self.m, idx % self.m


def _reduce_arrays(a: np.ndarray, b: np.ndarray, t: TwistedTorus) -> tuple[np.ndarray, np.ndarray]:
    k = np.floor_divide(a, t.ell)
    i = a - k * t.ell
    j = np.mod(b - t.q * k, t.m)
    return i, j


def monomial_reduce(a: int, b: int, t: TwistedTorus) -> tuple[int, int]:
    """Canonical ``(i, j)`` with ``x^a y^b = x^i y^j`` on the torus."""
    k = a // t.ell
    return a - k * t.ell, (b - t.q * k) % t.m


def cell_index(a: int, b: int, t: TwistedTorus) -> int:
    i, j = monomial_reduce(a, b, t)
    return i * t.m + j


def polyvec_rows(vec: Sequence[LaurentPoly], t: TwistedTorus) -> BitMatrix:
    """All unit-cell translates of a polynomial vector as a 0/1 matrix."""
    N = t.cells
    ci, cj = t.cell_exponents()
    dense = np.zeros((N, len(vec) * N), dtype=np.uint8)
    rows = np.arange(N)
    for s, p in enumerate(vec):
        for a, b in p.terms:
            i, j = _reduce_arrays(ci + a, cj + b, t)
            np.bitwise_xor.at(dense, (rows, s * N + i * t.m + j), 1)
    return BitMatrix.from_dense(dense)


def polyvec_to_bits(vec: Sequence[LaurentPoly], t: TwistedTorus) -> np.ndarray:
    """Single 0/1 vector for a polynomial vector placed at the origin cell."""
    N = t.cells
    out = np.zeros(len(vec) * N, dtype=np.uint8)
    for s, p in enumerate(vec):
        for a, b in p.terms:
            out[s * N + cell_index(a, b, t)] ^= 1
    return out


def build_check_matrix(gens: Sequence[PauliVec], block: Literal["x", "z"], t: TwistedTorus) -> BitMatrix:
    """Stack the unit-cell translates of each generator, one row per translate."""
    if block not in ("x", "z"):
        raise ValueError("block must be 'x' or 'z'")
    mats = []
    for g in gens:
        other = g.zblock if block == "x" else g.xblock
        if any(other):
            raise ValueError(f"generator {g} has support outside the {block.upper()} block")
        comps = g.xblock if block == "x" else g.zblock
        mtx = polyvec_rows(comps, t)
        weight = pauli_weight(g)
        if weight and any(w != weight for w in mtx.row_weights()):
            warnings.warn(
                f"generator of weight {weight} overlaps itself on torus {t}",
                SelfOverlapWarning,
                stacklevel=2,
            )
        mats.append(mtx)
    return BitMatrix.vstack(mats)


@dataclass(frozen=True)
class CodeCounts:
    n: int
    k: int
    s: int
    r: int
    rho: int
    a: int
    b: int
    rank_sx: int
    rank_sz: int
    k_from_x_gauge: int
    k_from_z_gauge: int

    @property
    def g(self) -> int:
        return self.s + 2 * self.r

    def consistent(self) -> bool:
        return self.k == self.k_from_x_gauge == self.k_from_z_gauge

    def as_dict(self) -> dict[str, int]:
        return {
            "n": self.n,
            "k": self.k,
            "s": self.s,
            "r": self.r,
            "g": self.g,
            "rho": self.rho,
            "a": self.a,
            "b": self.b,
            "rank_sx": self.rank_sx,
            "rank_sz": self.rank_sz,
            "k_from_x_gauge": self.k_from_x_gauge,
            "k_from_z_gauge": self.k_from_z_gauge,
        }


class TorusCode:
    """Check matrices of a gauge family and its local stabilizers on one torus."""

    def __init__(
        self,
        spec: GaugeSpec | GaugeGenerators,
        t: TwistedTorus,
        stabs: KernelStabilizers | None = None,
    ):
        self.spec = spec
        self.gens = as_generators(spec)
        self.torus = t
        self.stabs = stabs if stabs is not None else kernel_stabilizers(commutation_matrix(spec), spec)

    @property
    def n(self) -> int:
        return self.torus.n

    @cached_property
    def h_gx(self) -> BitMatrix:
        return build_check_matrix(self.gens.x_gens, "x", self.torus)

    @cached_property
    def h_gz(self) -> BitMatrix:
        return build_check_matrix(self.gens.z_gens, "z", self.torus)

    @cached_property
    def h_sx(self) -> BitMatrix:
        return build_check_matrix([self.stabs.sx], "x", self.torus)

    @cached_property
    def h_sz(self) -> BitMatrix:
        return build_check_matrix([self.stabs.sz], "z", self.torus)

    @cached_property
    def omega(self) -> BitMatrix:
        return self.h_gx.mul_transpose(self.h_gz)

    @cached_property
    def counts(self) -> CodeCounts:
        n = self.n
        a, b = self.h_gx.rank(), self.h_gz.rank()
        rho = self.omega.rank()
        rsx, rsz = self.h_sx.rank(), self.h_sz.rank()
        k = n - a - b + rho
        return CodeCounts(
            n=n,
            k=k,
            s=a + b - 2 * rho,
            r=rho,
            rho=rho,
            a=a,
            b=b,
            rank_sx=rsx,
            rank_sz=rsz,
            k_from_x_gauge=n - a - rsz,
            k_from_z_gauge=n - rsx - b,
        )

    def bare_logical_dims(self) -> tuple[int, int]:
        c = self.counts
        # X operators commuting with every Z gauge check, modulo X stabilizers.
        dims = (self.n - c.b - c.rank_sx, self.n - c.a - c.rank_sz)
        if min(dims) < 0:
            raise InconsistentStabilizersError(f"negative bare logical dimension {dims}")
        return dims

    def stabilizers_central(self) -> bool:
        return self.h_sx.mul_transpose(self.h_gz).is_zero() and self.h_gx.mul_transpose(self.h_sz).is_zero()


def code_counts(
    spec: GaugeSpec | GaugeGenerators,
    stabs: KernelStabilizers | None,
    t: TwistedTorus,
    strict: bool = True,
) -> CodeCounts:
    """Ranks and derived counts; ``strict`` raises when the k formulas disagree."""
    counts = TorusCode(spec, t, stabs).counts
    if strict and not counts.consistent():
        raise InconsistentStabilizersError(
            "stabilizers inconsistent with gauge group: "
            f"k = {counts.k}, {counts.k_from_x_gauge}, {counts.k_from_z_gauge}"
        )
    return counts


def bare_logical_dims(
    spec: GaugeSpec | GaugeGenerators, stabs: KernelStabilizers | None, t: TwistedTorus
) -> tuple[int, int]:
    return TorusCode(spec, t, stabs).bare_logical_dims()


def torus_kernel_excess(M: CommMatrix, gen: tuple[LaurentPoly, LaurentPoly], t: TwistedTorus) -> int:
    """``dim ker(M on the torus) - dim span(translates of gen)``.

    Zero means every torus solution of ``M v = 0`` descends from the plane
    kernel; a positive value counts stabilizers with no local origin.
    """
    columns = BitMatrix.vstack([polyvec_rows((M.a, M.c), t), polyvec_rows((M.b, M.d), t)])
    kernel_dim = 2 * t.cells - columns.rank()
    image_dim = polyvec_rows(gen, t).rank()
    return kernel_dim - image_dim


def torus_apply(M: CommMatrix, v: tuple[LaurentPoly, LaurentPoly], t: TwistedTorus) -> np.ndarray:
    """Bits of ``M v`` reduced on the torus (two blocks of ``m * ell`` cells)."""
    return polyvec_to_bits(M.apply(v), t)
