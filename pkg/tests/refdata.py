"""Reference data for the six weight-4 codes and the guiding example."""

from __future__ import annotations

from dataclasses import dataclass

from sbbcodes.laurent import P
from sbbcodes.pauli import GaugeSpec
from sbbcodes.torus import TwistedTorus


@dataclass(frozen=True)
class RefCode:
    name: str
    w1: tuple[str, str, str]
    w2: tuple[str, str, str]
    torus: TwistedTorus
    nkd: tuple[int, int, int]
    matrix: tuple[str, str, str, str]
    sx: tuple[str, str]
    sz: tuple[str, str]

    @property
    def spec(self) -> GaugeSpec:
        return GaugeSpec.from_strings(*self.w1, *self.w2)

    @property
    def kd_over_n(self) -> float:
        n, k, d = self.nkd
        return k * d / n

    @property
    def kd2_over_n(self) -> float:
        n, k, d = self.nkd
        return k * d * d / n


REF_CODES = (
    RefCode(
        "27_6_3",
        ("y^2", "y", "1 + x*y"),
        ("1 + x*y + x^2", "1", "0"),
        TwistedTorus(3, 3, 0),
        (27, 6, 3),
        (
            "x^2*y^-2",
            "x^-1*y^-1 + y^-2 + x*y^-1",
            "x*y^-1 + x*y + x^2",
            "x^-2 + x^-2*y^2 + x^-1*y^-1 + y^2 + x*y",
        ),
        ("x^-2 + x^-1*y^-1 + x^-1*y", "x^-2*y^2"),
        ("x^-1*y^-1 + y^-2 + x*y^-1", "x^2*y^-2"),
    ),
    RefCode(
        "60_10_4",
        ("y^2", "x", "1 + x*y"),
        ("x^2 + x^2*y^2", "y^2 + x*y", "0"),
        TwistedTorus(5, 4, 4),
        (60, 10, 4),
        ("x^2*y^-2", "x*y^-1 + x*y", "x^-1*y^-1 + x*y^-1", "x^-2 + x^-2*y^2 + 1 + y^2"),
        ("x^-1*y + x*y", "x^-2*y^2"),
        ("x*y^-1 + x*y", "x^2*y^-2"),
    ),
    RefCode(
        "75_10_5",
        ("x^2", "y^2", "x + x^2*y"),
        ("1 + y^2", "x + y", "0"),
        TwistedTorus(5, 5, 0),
        (75, 10, 5),
        ("x^-2*y^2", "x^-1*y^-1 + x^-1*y", "x^-1*y + x*y", "y^-2 + 1 + x^2*y^-2 + x^2"),
        ("x^-1*y^-1 + x*y^-1", "x^2*y^-2"),
        ("x^-1*y^-1 + x^-1*y", "x^-2*y^2"),
    ),
    RefCode(
        "90_12_5",
        ("y^2", "x^2", "1 + x^2*y^2"),
        ("1 + x^3*y", "y^2 + x*y", "0"),
        TwistedTorus(6, 5, 2),
        (90, 12, 5),
        ("x^2*y^-2", "x^-1*y^-1 + x^2", "y^-2 + x*y", "x^-3*y^-1 + x^-2*y^2 + 1 + x*y^3"),
        ("x^-1*y^-1 + y^2", "x^-2*y^2"),
        ("x^-1*y^-1 + x^2", "x^2*y^-2"),
    ),
    RefCode(
        "108_12_6",
        ("y^2", "x^2", "1 + x^2*y^2"),
        ("1 + x^3*y", "y^2 + x*y", "0"),
        TwistedTorus(9, 4, 1),
        (108, 12, 6),
        ("x^2*y^-2", "x^-1*y^-1 + x^2", "y^-2 + x*y", "x^-3*y^-1 + x^-2*y^2 + 1 + x*y^3"),
        ("x^-1*y^-1 + y^2", "x^-2*y^2"),
        ("x^-1*y^-1 + x^2", "x^2*y^-2"),
    ),
    RefCode(
        "126_14_6",
        ("y^2", "x^2", "x + x^2*y"),
        ("x + x^3", "y^2 + x*y", "0"),
        TwistedTorus(7, 6, 6),
        (126, 14, 6),
        ("x^2*y^-2", "x^-1 + x", "y^-1 + y", "x^-3*y + x^-3*y^3 + x^-1*y + x^-1*y^3"),
        ("y^-1 + y", "x^-2*y^2"),
        ("x^-1 + x", "x^2*y^-2"),
    ),
)

REF_BY_NAME = {c.name: c for c in REF_CODES}
GUIDING = REF_BY_NAME["75_10_5"]

# Clifford layers of the guiding code, as (row, column) -> entry.
GUIDING_U1 = {
    (1, 0): "x^-2*y^2",
    (2, 0): "x^-1 + y",
    (3, 4): "x^2*y^-2",
    (3, 5): "x + y^-1",
}
GUIDING_U2 = {
    (0, 1): "y + x^-1",
    (0, 2): "x^-2*y^2",
    (4, 3): "y^-1 + x",
    (5, 3): "x^2*y^-2",
}
GUIDING_P = (("1", "0"), ("x^2*y^-1 + y^-1", "x^-1"))
GUIDING_Q = (("1", "x*y^-2 + x"), ("0", "y"))
GUIDING_PMQ_PIVOT = "x^-2*y^2"

# Induced BB stabilizers of the guiding code; the Z part carries an overall x^2 y^2.
GUIDING_BB_SX = ("x^-1*y^2 + x^-1*y^4 + x*y + x^2", "1 + y^2 + x*y + x*y^3")
GUIDING_BB_SZ_FACTOR = "x^2*y^2"
GUIDING_BB_SZ = ("1 + y^-2 + x^-1*y^-1 + x^-1*y^-3", "x*y^-2 + x*y^-4 + x^-1*y^-1 + x^-2")
GUIDING_BB = (50, 10, 5)

# Subsystem surface code gauge triangles, three qubits per cell.
SURFACE_GX = (("1", "1", "1"), ("x*y", "y", "x"))
SURFACE_GZ = (("y", "y", "1"), ("x", "1", "x"))


def polys(texts):
    return tuple(P(t) for t in texts)
