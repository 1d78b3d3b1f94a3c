"""Exact univariate polynomials over Z and Q.

Coefficient lists are little-endian: ``coeffs[i]`` multiplies ``x**i``.
Rational polynomials are plain lists of :class:`fractions.Fraction`; the
integer type :class:`IntPolynomial` is the immutable form used for field
definitions and minimal polynomials.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

QPoly = list  # list[Fraction], little-endian, no trailing zeros except [0]


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(a) for a in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        if not c:
            c = (0,)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.leading == 1

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def to_q(self) -> QPoly:
        return [Fraction(a) for a in self.coeffs]

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return head + "".join(f" {s} {b}" for s, b in terms[1:])


def trim(p: Iterable) -> QPoly:
    out = [Fraction(a) for a in p]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out or [Fraction(0)]


def is_zero(p: QPoly) -> bool:
    return len(p) == 1 and p[0] == 0


def degree(p: QPoly) -> int:
    return -1 if is_zero(p) else len(p) - 1


def add(p: QPoly, q: QPoly) -> QPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: QPoly, q: QPoly) -> QPoly:
    return add(p, [-a for a in q])


def mul(p: QPoly, q: QPoly) -> QPoly:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p: QPoly, c) -> QPoly:
    return trim([a * c for a in p])


def divmod_poly(p: QPoly, q: QPoly) -> tuple[QPoly, QPoly]:
    if is_zero(q):
        raise ZeroDivisionError("polynomial division by zero")
    r = list(trim(p))
    dq = len(q) - 1
    if len(r) - 1 < dq:
        return [Fraction(0)], r
    quot = [Fraction(0)] * (len(r) - dq)
    lead = q[-1]
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq] / lead
        quot[k] = c
        if c:
            for j in range(dq + 1):
                r[k + j] -= c * q[j]
    return trim(quot), trim(r[:dq] or [0])


def rem(p: QPoly, q: QPoly) -> QPoly:
    return divmod_poly(p, q)[1]


def monic(p: QPoly) -> QPoly:
    return scale(p, 1 / p[-1])


def gcd(p: QPoly, q: QPoly) -> QPoly:
    a, b = trim(p), trim(q)
    while not is_zero(b):
        a, b = b, rem(a, b)
    return a if is_zero(a) else monic(a)


def xgcd(p: QPoly, q: QPoly) -> tuple[QPoly, QPoly, QPoly]:
    """Return (g, s, t) with s*p + t*q = g, g monic (or zero when p = q = 0)."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = [Fraction(1)], [Fraction(0)]
    t0, t1 = [Fraction(0)], [Fraction(1)]
    while not is_zero(r1):
        quo, r2 = divmod_poly(r0, r1)
        r0, r1 = r1, r2
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if is_zero(r0):
        return r0, s0, t0
    lead = r0[-1]
    return scale(r0, 1 / lead), scale(s0, 1 / lead), scale(t0, 1 / lead)


def derivative(p: QPoly) -> QPoly:
    return trim([i * p[i] for i in range(1, len(p))] or [0])


def evaluate(p: Sequence, x):
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def squarefree_part(p: QPoly) -> QPoly:
    """p / gcd(p, p'), made monic."""
    g = gcd(p, derivative(p))
    quo, r = divmod_poly(p, g)
    assert is_zero(r)
    return monic(quo)


def is_squarefree(p: QPoly) -> bool:
    return degree(gcd(p, derivative(p))) == 0


def primitive_int(p: QPoly) -> IntPolynomial:
    """Scale a nonzero rational polynomial to primitive integer coefficients, positive lead."""
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (a.denominator for a in p), 1)
    ints = [int(a * den) for a in p]
    g = reduce(math.gcd, ints, 0)
    ints = [a // g for a in ints]
    if ints[-1] < 0:
        ints = [-a for a in ints]
    return IntPolynomial(tuple(ints))


def power(p: QPoly, n: int) -> QPoly:
    out = [Fraction(1)]
    for _ in range(n):
        out = mul(out, p)
    return out


def rational_roots(p: IntPolynomial) -> list[Fraction]:
    """Rational roots by the rational root test (small-degree sanity check only)."""
    c = list(p.coeffs)
    roots = []
    if c[0] == 0:
        roots.append(Fraction(0))
        while c and c[0] == 0:
            c.pop(0)
    if len(c) <= 1:
        return roots
    a0, an = abs(c[0]), abs(c[-1])
    for num in _divisors(a0):
        for den in _divisors(an):
            for s in (1, -1):
                x = Fraction(s * num, den)
                if x not in roots and evaluate(c, x) == 0:
                    roots.append(x)
    return roots


def _divisors(n: int) -> list[int]:
    out = []
    for i in range(1, math.isqrt(n) + 1):
        if n % i == 0:
            out.extend({i, n // i})
    return sorted(out)


def discriminant(p: IntPolynomial) -> int:
    """Polynomial discriminant via the resultant with the derivative."""
    from .linalg import det

    f = p.to_q()
    n = p.degree
    if n < 1:
        raise ValueError("discriminant of a constant")
    if n == 1:
        return 1
    fp = derivative(f)
    res = det(sylvester(f, fp))
    val = Fraction((-1) ** (n * (n - 1) // 2)) * res / f[-1]
    assert val.denominator == 1
    return int(val)


def sylvester(f: QPoly, g: QPoly) -> list[list[Fraction]]:
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fb, gb = list(reversed(f)), list(reversed(g))
    for i in range(n):
        rows.append([Fraction(0)] * i + fb + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gb + [Fraction(0)] * (size - n - 1 - i))
    return rows


def cyclotomic(n: int) -> IntPolynomial:
    """n-th cyclotomic polynomial by exact division of x^n - 1."""
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, r = divmod_poly(num, cyclotomic(d).to_q())
            assert is_zero(r)
    return IntPolynomial(tuple(int(a) for a in num))


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result
