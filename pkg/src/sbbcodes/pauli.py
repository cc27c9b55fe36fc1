"""Pauli vectors over the Laurent ring and gauge-generator constructors.

A Pauli vector has six components: the X support on the three sublattices
followed by the Z support on the same sublattices.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .laurent import ZERO, LaurentPoly, parse, poly_sum

Triple = tuple[LaurentPoly, LaurentPoly, LaurentPoly]


@dataclass(frozen=True)
class PauliVec:
    xblock: tuple[LaurentPoly, ...]
    zblock: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if len(self.xblock) != len(self.zblock):
            raise ValueError("X and Z blocks must have the same length")

    @classmethod
    def from_components(cls, comps: Sequence[LaurentPoly]) -> PauliVec:
        if len(comps) % 2:
            raise ValueError("a Pauli vector needs an even number of components")
        h = len(comps) // 2
        return cls(tuple(comps[:h]), tuple(comps[h:]))

    @property
    def components(self) -> tuple[LaurentPoly, ...]:
        return self.xblock + self.zblock

    @property
    def nsub(self) -> int:
        return len(self.xblock)

    def is_zero(self) -> bool:
        return not any(self.components)

    def is_pure_x(self) -> bool:
        return not any(self.zblock)

    def is_pure_z(self) -> bool:
        return not any(self.xblock)

    def bar(self) -> PauliVec:
        return PauliVec(tuple(p.bar() for p in self.xblock), tuple(p.bar() for p in self.zblock))

    def __add__(self, other: PauliVec) -> PauliVec:
        return PauliVec(
            tuple(p + q for p, q in zip(self.xblock, other.xblock)),
            tuple(p + q for p, q in zip(self.zblock, other.zblock)),
        )

    def scale(self, t: LaurentPoly) -> PauliVec:
        """Multiply every component by a ring element."""
        return PauliVec(tuple(t * p for p in self.xblock), tuple(t * p for p in self.zblock))

    def __str__(self) -> str:
        xs = ", ".join(map(str, self.xblock))
        zs = ", ".join(map(str, self.zblock))
        return f"({xs} | {zs})"


def zero_vec(nsub: int = 3) -> PauliVec:
    return PauliVec((ZERO,) * nsub, (ZERO,) * nsub)


def gauge_x(f: LaurentPoly, g: LaurentPoly, h: LaurentPoly) -> PauliVec:
    return PauliVec((f, g, h), (ZERO, ZERO, ZERO))


def gauge_z_reflected(f: LaurentPoly, g: LaurentPoly, h: LaurentPoly) -> PauliVec:
    """Z partner of ``gauge_x(f, g, h)`` under the diagonal reflection.

    The reflection swaps x and y and exchanges the second and third
    sublattices, giving ``(0, 0, 0 | f^s, h^s, g^s)``.
    """
    return PauliVec((ZERO, ZERO, ZERO), (f.sigma(), h.sigma(), g.sigma()))


def symplectic_product(v1: PauliVec, v2: PauliVec) -> LaurentPoly:
    """Laurent-valued commutation data ``bar(v1)^T Lambda v2``.

    The coefficient of ``x^a y^b`` is the GF(2) commutator of ``v1`` with
    ``v2`` translated by ``(a, b)``.
    """
    parts = [p.bar() * q for p, q in zip(v1.xblock, v2.zblock)]
    parts += [p.bar() * q for p, q in zip(v1.zblock, v2.xblock)]
    return poly_sum(parts)


def translate(v: PauliVec, monomial: LaurentPoly) -> PauliVec:
    if not monomial.is_monomial():
        raise ValueError(f"translation requires a monomial, got {monomial}")
    return v.scale(monomial)


def pauli_weight(v: PauliVec) -> int:
    """Number of qubits in the support (a Y counts once)."""
    total = 0
    for px, pz in zip(v.xblock, v.zblock):
        total += len(px.terms | pz.terms)
    return total


def reflected_pairing(w: Triple, w2: Triple) -> LaurentPoly:
    """``bar(f) f'^s + bar(g) h'^s + bar(h) g'^s``, the X-by-reflected-Z product."""
    f, g, h = w
    f2, g2, h2 = w2
    return f.bar() * f2.sigma() + g.bar() * h2.sigma() + h.bar() * g2.sigma()


@dataclass(frozen=True)
class GaugeGenerators:
    """Two X-type and two Z-type gauge generators per unit cell."""

    gx1: PauliVec
    gx2: PauliVec
    gz1: PauliVec
    gz2: PauliVec

    def __post_init__(self):
        for name in ("gx1", "gx2"):
            if not getattr(self, name).is_pure_x():
                raise ValueError(f"{name} must be X-type")
        for name in ("gz1", "gz2"):
            if not getattr(self, name).is_pure_z():
                raise ValueError(f"{name} must be Z-type")

    @property
    def x_gens(self) -> tuple[PauliVec, PauliVec]:
        return (self.gx1, self.gx2)

    @property
    def z_gens(self) -> tuple[PauliVec, PauliVec]:
        return (self.gz1, self.gz2)

    def translated(self, monomial: LaurentPoly) -> GaugeGenerators:
        return GaugeGenerators(*(translate(g, monomial) for g in (self.gx1, self.gx2, self.gz1, self.gz2)))


@dataclass(frozen=True)
class GaugeSpec:
    """Reflection-symmetric family fixed by two X triples ``w1`` and ``w2``."""

    w1: Triple
    w2: Triple

    def __post_init__(self):
        for w in (self.w1, self.w2):
            if len(w) != 3:
                raise ValueError("gauge triples need three components")

    @classmethod
    def from_strings(cls, f1: str, g1: str, h1: str, f2: str, g2: str, h2: str) -> GaugeSpec:
        return cls(
            (parse(f1), parse(g1), parse(h1)),
            (parse(f2), parse(g2), parse(h2)),
        )

    def as_strings(self) -> dict[str, str]:
        names = ("f1", "g1", "h1", "f2", "g2", "h2")
        return dict(zip(names, map(str, self.w1 + self.w2)))

    @property
    def weights(self) -> tuple[int, int]:
        return tuple(sum(p.weight for p in w) for w in (self.w1, self.w2))

    def is_weight4(self) -> bool:
        return self.weights == (4, 4)

    def generators(self) -> GaugeGenerators:
        return GaugeGenerators(
            gauge_x(*self.w1),
            gauge_x(*self.w2),
            gauge_z_reflected(*self.w1),
            gauge_z_reflected(*self.w2),
        )

    def translated(self, t1: LaurentPoly, t2: LaurentPoly | None = None) -> GaugeSpec:
        """Translate the first triple by ``t1`` and the second by ``t2``."""
        t2 = t1 if t2 is None else t2
        for t in (t1, t2):
            if not t.is_monomial():
                raise ValueError(f"translation requires a monomial, got {t}")
        return GaugeSpec(tuple(t1 * p for p in self.w1), tuple(t2 * p for p in self.w2))

    def swapped(self) -> GaugeSpec:
        """Relabel the second and third sublattices in both triples."""
        return GaugeSpec((self.w1[0], self.w1[2], self.w1[1]), (self.w2[0], self.w2[2], self.w2[1]))


def as_generators(spec: GaugeSpec | GaugeGenerators) -> GaugeGenerators:
    return spec.generators() if isinstance(spec, GaugeSpec) else spec
