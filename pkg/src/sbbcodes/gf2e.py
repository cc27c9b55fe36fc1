"""Finite fields GF(2^e), multiplicative orders and nonlocal-stabilizer witnesses.

Elements are integers in the polynomial basis of the context's modulus, so
integer order is the lexicographic order used for witness search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from . import gf2poly
from .laurent import LaurentPoly

if TYPE_CHECKING:
    from .commute import CommMatrix

MAX_TABLE_DEGREE = 16


class ResourceBoundError(RuntimeError):
    """A search exceeded its declared bound."""


@dataclass(frozen=True)
class FieldCtx:
    e: int
    modulus: int
    exp: np.ndarray = field(repr=False, compare=False)
    log: np.ndarray = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return 1 << self.e

    @property
    def order(self) -> int:
        """Order of the multiplicative group."""
        return (1 << self.e) - 1

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.order])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(self.exp[(-int(self.log[a])) % self.order])

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k <= 0:
                raise ZeroDivisionError("zero has no inverse")
            return 0
        return int(self.exp[(int(self.log[a]) * k) % self.order])

    def elements(self) -> range:
        """Nonzero elements in increasing integer order."""
        return range(1, self.size)


def _build_tables(e: int, modulus: int) -> tuple[np.ndarray, np.ndarray]:
    order = (1 << e) - 1
    primes = gf2poly.prime_factors(order) if order > 1 else []
    for g in range(2 if e > 1 else 1, 1 << e):
        if all(gf2poly.powmod(g, order // p, modulus) != 1 for p in primes):
            break
    else:
        raise ValueError("no primitive element found")
    exp = np.zeros(order, dtype=np.int64)
    log = np.full(1 << e, -1, dtype=np.int64)
    v = 1
    for i in range(order):
        exp[i] = v
        log[v] = i
        v = gf2poly.mulmod(v, g, modulus)
    return exp, log


@lru_cache(maxsize=None)
def field_ctx(e: int, modulus: int | None = None) -> FieldCtx:
    """Context for GF(2^e); the default modulus is the first irreducible of degree e."""
    if e < 1 or e > MAX_TABLE_DEGREE:
        raise ValueError(f"extension degree must be in [1, {MAX_TABLE_DEGREE}]")
    if modulus is None:
        modulus = gf2poly.first_irreducible(e)
    if gf2poly.deg(modulus) != e or not gf2poly.is_irreducible(modulus):
        raise ValueError(f"{gf2poly.to_str(modulus)} is not an irreducible polynomial of degree {e}")
    exp, log = _build_tables(e, modulus)
    return FieldCtx(e, modulus, exp, log)


def eval_at(p: LaurentPoly, alpha: int, beta: int, ctx: FieldCtx) -> int:
    if alpha == 0 or beta == 0:
        raise ValueError("Laurent polynomials are evaluated at nonzero points only")
    la, lb = int(ctx.log[alpha]), int(ctx.log[beta])
    acc = 0
    for a, b in p.terms:
        acc ^= int(ctx.exp[(la * a + lb * b) % ctx.order])
    return acc


def eval_grid(p: LaurentPoly, log_alpha: np.ndarray, log_beta: np.ndarray, ctx: FieldCtx) -> np.ndarray:
    """Vectorized evaluation at the points ``(exp[la], exp[lb])`` (broadcasting)."""
    out = np.zeros(np.broadcast(log_alpha, log_beta).shape, dtype=np.int64)
    for a, b in p.terms:
        out ^= ctx.exp[(log_alpha * a + log_beta * b) % ctx.order]
    return out


def mult_order(alpha: int, ctx: FieldCtx) -> int:
    if alpha == 0:
        raise ValueError("zero has no multiplicative order")
    order = ctx.order
    for p in gf2poly.prime_factors(order) if order > 1 else []:
        while order % p == 0 and ctx.pow(alpha, order // p) == 1:
            order //= p
    return order


def find_common_root(
    polys: list[LaurentPoly],
    max_degree: int = MAX_TABLE_DEGREE,
    alpha_poly: LaurentPoly | None = None,
) -> tuple[int, int, int] | None:
    """First common zero ``(e, alpha, beta)`` with nonzero coordinates.

    Fields are scanned by increasing degree; within a field, points are
    scanned in lexicographic integer order.  ``alpha_poly`` is an optional
    polynomial in x alone that vanishes at every admissible first
    coordinate (an eliminant), used to prune the scan.  Returns ``None`` if
    no zero is found up to ``max_degree``.
    """
    polys = [p for p in polys if p.terms]
    if not polys:
        raise ValueError("no nonzero polynomials given")
    if any(p.is_monomial() for p in polys):
        return None
    for e in range(1, max_degree + 1):
        ctx = field_ctx(e)
        logs = ctx.log[1:]
        alphas = np.arange(1, ctx.size)
        if alpha_poly is not None:
            keep = eval_grid(alpha_poly, logs, np.zeros_like(logs), ctx) == 0
            alphas, logs = alphas[keep], logs[keep]
            if not len(alphas):
                continue
        # Chunk over alpha so the grid stays small.
        chunk = max(1, (1 << 20) // ctx.order)
        lb = ctx.log[None, 1:]
        for start in range(0, len(alphas), chunk):
            la = logs[start : start + chunk, None]
            alive = np.ones((la.shape[0], lb.shape[1]), dtype=bool)
            for p in polys:
                alive &= eval_grid(p, la, lb, ctx) == 0
                if not alive.any():
                    break
            hits = np.argwhere(alive)
            if len(hits):
                i, j = hits[0]
                return e, int(alphas[start + int(i)]), int(j) + 1
    return None


@dataclass(frozen=True)
class NonlocalWitness:
    root: tuple[int, int]
    e: int
    torus: tuple[int, int]
    excess_dim: int

    @property
    def n(self) -> int:
        return self.torus[0]

    @property
    def m(self) -> int:
        return self.torus[1]


def nonlocal_witness(M: CommMatrix, max_degree: int = MAX_TABLE_DEGREE) -> NonlocalWitness | None:
    """Torus on which the local kernel misses a stabilizer, or ``None`` if none exists.

    A common zero ``(alpha, beta)`` of the entries has odd multiplicative
    orders ``(n, m)``; on the ``n x m`` torus the kernel of ``M`` is larger
    than the span of translates of the plane kernel generator.
    """
    from .commute import det2, entry_ideal_is_unit, plane_kernel_generator
    from .torus import TwistedTorus, torus_kernel_excess

    if det2(M):
        raise ValueError("determinant is nonzero: there are no local stabilizers")
    test = entry_ideal_is_unit(M, max_degree=max_degree)
    if test.unit:
        return None
    e, alpha, beta = test.witness
    ctx = field_ctx(e)
    n, m = mult_order(alpha, ctx), mult_order(beta, ctx)
    t = TwistedTorus(m=m, ell=n, q=0)
    excess = torus_kernel_excess(M, plane_kernel_generator(M), t)
    if excess < 1:
        raise ArithmeticError("witness torus shows no kernel excess")
    return NonlocalWitness((alpha, beta), e, (n, m), excess)
