"""Independent reference computations used only by the tests.

These deliberately avoid the package's own algorithms: Pell search instead
of stored units, sympy resultants instead of Faddeev-LeVerrier, numpy
companion-matrix roots instead of Aberth iteration.
"""
import itertools
import math

import mpmath
import numpy as np
import sympy


def pell_regulator(D: int):
    """log of the fundamental unit of the quadratic order of discriminant D, by direct search.

    The unit is (x + y sqrt D)/2 with the least y >= 1 making D y^2 +- 4 a square.
    """
    y = 1
    while True:
        for s in (-4, 4):
            t = D * y * y + s
            if t > 0:
                x = math.isqrt(t)
                if x * x == t:
                    with mpmath.workprec(200):
                        return mpmath.log((x + y * mpmath.sqrt(D)) / 2)
        y += 1


def sympy_charpoly(poly_coeffs, coords):
    """Characteristic polynomial of sum c_i theta^i as Res_y(f(y), x - c(y)), high degree first."""
    x, y = sympy.symbols("x y")
    f = sum(sympy.Integer(c) * y**i for i, c in enumerate(poly_coeffs))
    g = sum(sympy.Rational(c.numerator, c.denominator) * y**i for i, c in enumerate(coords))
    res = sympy.resultant(f, x - g, y)
    return sympy.Poly(res, x).all_coeffs()


def sympy_minpoly(poly_coeffs, coords):
    """Primitive integer minimal polynomial, low degree first."""
    x = sympy.symbols("x")
    cp = sympy.Poly(sympy_charpoly(poly_coeffs, coords), x)
    sf = sympy.Poly(sympy.quo(cp, sympy.gcd(cp, cp.diff(x))), x)
    _, prim = sf.primitive()
    coeffs = [int(c) for c in prim.all_coeffs()]
    if coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    return list(reversed(coeffs))


def float_mahler_height(minpoly_low_first):
    """(1/m) log M(f) with numpy roots, in double precision."""
    c = list(reversed(minpoly_low_first))
    roots = np.roots(c)
    m = len(c) - 1
    return (math.log(abs(c[0])) + sum(math.log(max(1.0, abs(z))) for z in roots)) / m


def float_log_embeddings(poly_coeffs, coords):
    """[d_w log|sigma_w(a)|] over places: real roots ascending, then upper-half-plane roots by real part."""
    roots = np.roots(list(reversed(poly_coeffs)))
    real = sorted(z.real for z in roots if abs(z.imag) < 1e-9)
    cplx = sorted((z for z in roots if z.imag > 1e-9), key=lambda z: (z.real, z.imag))
    val = lambda z: sum(float(c) * z**i for i, c in enumerate(coords))
    return [math.log(abs(val(z))) for z in real] + [2 * math.log(abs(val(z))) for z in cplx]


def brute_force_min_product(gen_logs, box):
    """Least product of d*h over independent r-tuples of u^e, |e_i| <= box (float)."""
    r = len(gen_logs)
    cands = []
    for e in itertools.product(range(-box, box + 1), repeat=r):
        if any(e):
            vec = np.dot(np.array(e, dtype=float), np.array(gen_logs))
            cands.append((0.5 * float(np.abs(vec).sum()), e))
    cands.sort()
    cands = cands[: 60]
    best = math.inf
    for combo in itertools.combinations(cands, r):
        if np.linalg.matrix_rank(np.array([c[1] for c in combo], dtype=float)) == r:
            best = min(best, math.prod(c[0] for c in combo))
    return best, cands[0][0]


def sympy_discriminant(poly_coeffs):
    x = sympy.symbols("x")
    return int(sympy.discriminant(sum(sympy.Integer(c) * x**i for i, c in enumerate(poly_coeffs)), x))
