"""Univariate polynomials over GF(2) encoded as Python integers.

Bit ``i`` of the integer is the coefficient of ``x^i``; ``0`` is the zero
polynomial.  These helpers back the finite-field contexts, the bivariate
gcd and the resultant-based unit-ideal test.
"""

from __future__ import annotations

import random


def deg(a: int) -> int:
    """Degree of ``a``; the zero polynomial has degree -1."""
    return a.bit_length() - 1


def mul(a: int, b: int) -> int:
    """Carry-less product."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def divmod_(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = deg(b)
    q = 0
    while a and deg(a) >= db:
        s = deg(a) - db
        q |= 1 << s
        a ^= b << s
    return q, a


def mod(a: int, b: int) -> int:
    db = deg(b)
    if db < 0:
        raise ZeroDivisionError("division by the zero polynomial")
    while a and deg(a) >= db:
        a ^= b << (deg(a) - db)
    return a


def gcd(a: int, b: int) -> int:
    while b:
        a, b = b, mod(a, b)
    return a


def mulmod(a: int, b: int, m: int) -> int:
    return mod(mul(a, b), m)


def powmod(a: int, k: int, m: int) -> int:
    r = 1
    a = mod(a, m)
    while k:
        if k & 1:
            r = mulmod(r, a, m)
        a = mulmod(a, a, m)
        k >>= 1
    return mod(r, m)


def derivative(a: int) -> int:
    # Only odd powers survive in characteristic 2.
    return (a >> 1) & int("01" * (a.bit_length() // 2 + 1), 2)


def sqrt(a: int) -> int:
    """Square root of a perfect square (all exponents even)."""
    r = 0
    i = 0
    while a:
        if a & 1:
            r |= 1 << (i // 2)
        a >>= 1
        i += 1
    return r


def is_irreducible(f: int) -> bool:
    """Rabin's test: x^(2^n) = x mod f and gcd(x^(2^(n/p)) - x, f) = 1."""
    n = deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    if not f & 1:
        return False
    x = 2
    if powmod(x, 1 << n, f) != mod(x, f):
        return False
    for p in _prime_factors(n):
        h = powmod(x, 1 << (n // p), f) ^ x
        if gcd(f, h) != 1:
            return False
    return True


def first_irreducible(e: int) -> int:
    """Lexicographically first irreducible polynomial of degree ``e``.

    Candidates are ordered by the coefficient vector read from ``x^(e-1)``
    down to the constant term, which coincides with integer order.
    """
    for f in range(1 << e, 1 << (e + 1)):
        if is_irreducible(f):
            return f
    raise ValueError(f"no irreducible polynomial of degree {e}")


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of a positive integer by trial division."""
    return _prime_factors(n)


def squarefree_factors(f: int) -> list[int]:
    """Distinct squarefree pieces whose product has the same roots as ``f``."""
    if deg(f) <= 0:
        return []
    out: list[int] = []
    stack = [f]
    while stack:
        g = stack.pop()
        if deg(g) <= 0:
            continue
        dg = derivative(g)
        if dg == 0:
            stack.append(sqrt(g))
            continue
        c = gcd(g, dg)
        squarefree = divmod_(g, c)[0]
        out.append(squarefree)
        if deg(c) > 0:
            stack.append(c)
    return out


def _distinct_degree(f: int) -> list[tuple[int, int]]:
    out = []
    h = 2
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = mulmod(h, h, f)
        g = gcd(f, h ^ 2)
        if g != 1:
            out.append((g, d))
            f = divmod_(f, g)[0]
            h = mod(h, f)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _equal_degree(f: int, d: int, rng: random.Random) -> list[int]:
    if deg(f) == d:
        return [f]
    n = deg(f)
    while True:
        a = rng.getrandbits(n) | 2
        a = mod(a, f)
        # Trace map a + a^2 + ... + a^(2^(d-1)) splits the factors.
        t = a
        s = a
        for _ in range(d - 1):
            s = mulmod(s, s, f)
            t ^= s
        g = gcd(f, t)
        if 0 < deg(g) < n:
            h = divmod_(f, g)[0]
            return _equal_degree(g, d, rng) + _equal_degree(h, d, rng)


def irreducible_factors(f: int) -> list[int]:
    """Distinct irreducible factors of ``f``, sorted by integer value."""
    rng = random.Random(0x5BB)
    found: set[int] = set()
    for sq in squarefree_factors(f):
        for g, d in _distinct_degree(sq):
            found.update(_equal_degree(g, d, rng))
    return sorted(found)


def to_str(a: int) -> str:
    if a == 0:
        return "0"
    terms = []
    for i in range(deg(a), -1, -1):
        if a >> i & 1:
            terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
    return " + ".join(terms)
