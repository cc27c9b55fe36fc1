from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from sbbcodes import gf2poly as gp

polys = st.integers(min_value=1, max_value=(1 << 12) - 1)


def test_small_irreducibles():
    assert gp.is_irreducible(0b111)
    assert gp.is_irreducible(0b1011)
    assert not gp.is_irreducible(0b101)  # (x + 1)^2
    assert gp.first_irreducible(4) == 0b10011


@given(polys, polys)
def test_division_identity(a, b):
    q, r = gp.divmod_(a, b)
    assert gp.mul(q, b) ^ r == a
    assert gp.deg(r) < gp.deg(b)


@given(polys, polys)
def test_gcd_divides(a, b):
    g = gp.gcd(a, b)
    assert gp.mod(a, g) == 0 and gp.mod(b, g) == 0


@given(polys)
def test_distinct_factors_exhaust_f(f):
    factors = gp.irreducible_factors(f)
    assert len(set(factors)) == len(factors)
    rest = f
    for p in factors:
        assert gp.is_irreducible(p)
        assert gp.mod(rest, p) == 0
        while gp.mod(rest, p) == 0:
            rest = gp.divmod_(rest, p)[0]
    assert rest == 1


def test_to_str():
    assert gp.to_str(0b1011) == "x^3 + x + 1"
