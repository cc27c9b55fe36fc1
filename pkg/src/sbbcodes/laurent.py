"""Sparse Laurent polynomials in GF(2)[x^{+-1}, y^{+-1}].

A polynomial is a frozen set of exponent pairs ``(a, b)`` standing for
``x^a y^b``; coefficients are implicitly 1.  Adding toggles membership, so
duplicate terms cancel.
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from typing import Literal

from . import gf2poly

Term = tuple[int, int]
Involution = Literal["bar", "sigma", "rho"]


class LaurentPoly:
    """Immutable element of the Laurent ring over GF(2)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[Term] = ()):
        acc: set[Term] = set()
        for t in terms:
            t = (int(t[0]), int(t[1]))
            if t in acc:
                acc.remove(t)
            else:
                acc.add(t)
        self.terms: frozenset[Term] = frozenset(acc)
        self._hash = hash(self.terms)

    @classmethod
    def _from_set(cls, terms: frozenset[Term]) -> LaurentPoly:
        p = object.__new__(cls)
        p.terms = terms
        p._hash = hash(terms)
        return p

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls) -> LaurentPoly:
        return ZERO

    @classmethod
    def one(cls) -> LaurentPoly:
        return ONE

    @classmethod
    def monomial(cls, a: int, b: int) -> LaurentPoly:
        return cls._from_set(frozenset({(a, b)}))

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        return parse(text)

    # -- basic protocol ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other in (0, 1):
            other = ONE if other else ZERO
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        return add(self, other)

    __sub__ = __add__

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        return mul(self, other)

    def __lt__(self, other: LaurentPoly) -> bool:
        return self.sorted_terms() < other.sorted_terms()

    # -- queries ----------------------------------------------------------

    @property
    def weight(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_one(self) -> bool:
        return self.terms == ONE.terms

    def sorted_terms(self) -> list[Term]:
        return sorted(self.terms)

    def exponent_box(self) -> tuple[int, int, int, int]:
        """(min a, max a, min b, max b); raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no support")
        aa = [t[0] for t in self.terms]
        bb = [t[1] for t in self.terms]
        return min(aa), max(aa), min(bb), max(bb)

    # -- operations -------------------------------------------------------

    def shift(self, a: int, b: int) -> LaurentPoly:
        """Multiply by ``x^a y^b``."""
        if a == 0 and b == 0:
            return self
        return LaurentPoly._from_set(frozenset((s + a, t + b) for s, t in self.terms))

    def bar(self) -> LaurentPoly:
        return LaurentPoly._from_set(frozenset((-a, -b) for a, b in self.terms))

    def sigma(self) -> LaurentPoly:
        return LaurentPoly._from_set(frozenset((b, a) for a, b in self.terms))

    def rho(self) -> LaurentPoly:
        return LaurentPoly._from_set(frozenset((-b, -a) for a, b in self.terms))

    def inverse_monomial(self) -> LaurentPoly:
        if not self.is_monomial():
            raise ValueError(f"{self} is not a monomial, hence not a unit")
        ((a, b),) = self.terms
        return LaurentPoly.monomial(-a, -b)


ZERO = LaurentPoly._from_set(frozenset())
ONE = LaurentPoly._from_set(frozenset({(0, 0)}))
X = LaurentPoly._from_set(frozenset({(1, 0)}))
Y = LaurentPoly._from_set(frozenset({(0, 1)}))


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return LaurentPoly._from_set(p.terms ^ q.terms)


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    if not p.terms or not q.terms:
        return ZERO
    if len(p.terms) == 1:
        ((a, b),) = p.terms
        return q.shift(a, b)
    if len(q.terms) == 1:
        ((a, b),) = q.terms
        return p.shift(a, b)
    acc: set[Term] = set()
    for a1, b1 in p.terms:
        for a2, b2 in q.terms:
            t = (a1 + a2, b1 + b2)
            if t in acc:
                acc.remove(t)
            else:
                acc.add(t)
    return LaurentPoly._from_set(frozenset(acc))


def poly_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    acc: frozenset[Term] = frozenset()
    for p in polys:
        acc = acc ^ p.terms
    return LaurentPoly._from_set(acc)


def involution(p: LaurentPoly, kind: Involution) -> LaurentPoly:
    if kind == "bar":
        return p.bar()
    if kind == "sigma":
        return p.sigma()
    if kind == "rho":
        return p.rho()
    raise ValueError(f"unknown involution {kind!r}")


def normalize_translation(p: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Split ``p`` as ``monomial * core`` with the core's minimum exponents at 0."""
    if not p.terms:
        raise ValueError("cannot normalize the zero polynomial")
    a0, _, b0, _ = p.exponent_box()
    return LaurentPoly.monomial(a0, b0), p.shift(-a0, -b0)


# ---------------------------------------------------------------------------
# Bivariate polynomials viewed as polynomials in y over GF(2)[x].
# A "ypoly" is a list of GF(2)[x] integers indexed by the y-degree, trimmed
# so the last entry is nonzero; the empty list is zero.


def to_ypoly(p: LaurentPoly) -> list[int]:
    """Coefficients in y of a polynomial with nonnegative exponents."""
    if not p.terms:
        return []
    top = max(b for _, b in p.terms)
    out = [0] * (top + 1)
    for a, b in p.terms:
        if a < 0 or b < 0:
            raise ValueError("to_ypoly expects nonnegative exponents")
        out[b] ^= 1 << a
    return out


def from_ypoly(c: list[int]) -> LaurentPoly:
    terms = []
    for b, coeff in enumerate(c):
        a = 0
        while coeff:
            if coeff & 1:
                terms.append((a, b))
            coeff >>= 1
            a += 1
    return LaurentPoly(terms)


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _content(c: list[int]) -> int:
    g = 0
    for coeff in c:
        g = gf2poly.gcd(g, coeff)
        if g == 1:
            break
    return g


def _scale(c: list[int], s: int) -> list[int]:
    return [gf2poly.mul(v, s) for v in c]


def _exact_div_scalar(c: list[int], s: int) -> list[int]:
    out = []
    for v in c:
        q, r = gf2poly.divmod_(v, s)
        if r:
            raise ArithmeticError("inexact scalar division")
        out.append(q)
    return out


def _primitive_part(c: list[int]) -> list[int]:
    if not c:
        return []
    g = _content(c)
    return _exact_div_scalar(c, g) if g != 1 else list(c)


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of ``a`` by ``b`` in GF(2)[x][y]."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = _scale(a, lb)
        for i, coeff in enumerate(b):
            a[i + shift] ^= gf2poly.mul(coeff, la)
        _trim(a)
    return a


def ypoly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Gcd in GF(2)[x][y] via primitive pseudo-remainder sequences."""
    a = _trim(list(a))
    b = _trim(list(b))
    if not a:
        return b
    if not b:
        return a
    ca, cb = _content(a), _content(b)
    c = gf2poly.gcd(ca, cb)
    a = _primitive_part(a)
    b = _primitive_part(b)
    if len(a) < len(b):
        a, b = b, a
    while b and len(b) > 1:
        r = _prem(a, b)
        a, b = b, _primitive_part(r)
    if b:  # b is a nonzero constant in y: the primitive gcd is trivial
        g = [1]
    else:
        g = a
    return _scale(g, c)


def gcd_bivariate(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Gcd in the Laurent ring, returned as a translation-normalized core.

    Monomials are the units of the ring, so the gcd is defined up to a
    monomial factor; the normalized core is the unique representative with
    all exponents nonnegative touching both axes.
    """
    if not p.terms and not q.terms:
        raise ValueError("gcd of two zero polynomials is undefined")
    if not p.terms:
        return normalize_translation(q)[1]
    if not q.terms:
        return normalize_translation(p)[1]
    cp = normalize_translation(p)[1]
    cq = normalize_translation(q)[1]
    g = from_ypoly(ypoly_gcd(to_ypoly(cp), to_ypoly(cq)))
    return normalize_translation(g)[1]


def gcd_many(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    g = ZERO
    for p in polys:
        if not p.terms:
            continue
        g = p if not g.terms else gcd_bivariate(g, p)
        if g.is_monomial():
            return ONE
    if not g.terms:
        raise ValueError("gcd of zero polynomials is undefined")
    return normalize_translation(g)[1]


def divide_exact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Quotient ``p / q``; raises ``ArithmeticError`` if ``q`` does not divide ``p``."""
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return ZERO
    mp, cp = normalize_translation(p)
    mq, cq = normalize_translation(q)
    # Lex-order division by a single polynomial leaves a zero remainder
    # exactly when it divides; cores are coprime to x and y, so this also
    # decides divisibility in the Laurent ring.
    lead_q = max(cq.terms)
    rem = set(cp.terms)
    quot: set[Term] = set()
    while rem:
        lead = max(rem)
        da, db = lead[0] - lead_q[0], lead[1] - lead_q[1]
        if da < 0 or db < 0:
            raise ArithmeticError(f"{q} does not divide {p}")
        quot ^= {(da, db)}
        rem ^= {(a + da, b + db) for a, b in cq.terms}
    ((a1, b1),) = mp.terms
    ((a2, b2),) = mq.terms
    return LaurentPoly(quot).shift(a1 - a2, b1 - b2)


def divides(q: LaurentPoly, p: LaurentPoly) -> bool:
    try:
        divide_exact(p, q)
    except ArithmeticError:
        return False
    return True


# ---------------------------------------------------------------------------
# Text syntax

_TERM_RE = re.compile(
    r"""^(?:
        (?P<one>1)
      | (?:(?P<x>x)(?:\^\{?(?P<xe>-?\d+)\}?)?)?
        \*?
        (?:(?P<y>y)(?:\^\{?(?P<ye>-?\d+)\}?)?)?
    )$""",
    re.VERBOSE,
)


class PolyParseError(ValueError):
    """Malformed polynomial text; ``column`` is 1-based within the string."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


def parse(text: str) -> LaurentPoly:
    """Parse ``"x^-2*y + y"``-style text.  ``"0"`` is the zero polynomial."""
    stripped = text.strip()
    if stripped == "0":
        return ZERO
    if not stripped:
        raise PolyParseError("empty polynomial", 1)
    terms: list[Term] = []
    pos = 0
    for raw in text.split("+"):
        col = pos + 1 + (len(raw) - len(raw.lstrip()))
        pos += len(raw) + 1
        tok = raw.strip().replace(" ", "")
        if not tok:
            raise PolyParseError("empty term", col)
        m = _TERM_RE.match(tok)
        if not m or (not m.group("one") and not m.group("x") and not m.group("y")):
            raise PolyParseError(f"cannot parse term {tok!r}", col)
        if m.group("one"):
            terms.append((0, 0))
            continue
        a = (int(m.group("xe")) if m.group("xe") else 1) if m.group("x") else 0
        b = (int(m.group("ye")) if m.group("ye") else 1) if m.group("y") else 0
        terms.append((a, b))
    return LaurentPoly(terms)


def _format_term(a: int, b: int) -> str:
    if a == 0 and b == 0:
        return "1"
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts)


def format_poly(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    return " + ".join(_format_term(a, b) for a, b in sorted(p.terms))


def P(text: str) -> LaurentPoly:
    """Shorthand for :func:`parse`."""
    return parse(text)
