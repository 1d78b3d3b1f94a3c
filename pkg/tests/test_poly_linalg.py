from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nfreg import linalg, poly
from nfreg.poly import IntPolynomial

from oracles import sympy_discriminant

small_ints = st.integers(-9, 9)
qpolys = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=5).map(poly.trim)


def test_int_polynomial_trims_and_formats():
    p = IntPolynomial((1, 0, -2, 0, 0))
    assert p.degree == 2 and p.coeffs == (1, 0, -2)
    assert str(IntPolynomial((-1, -2, 1, 1))) == "x^3 + x^2 - 2*x - 1"
    assert p(3) == -17


@given(qpolys, qpolys.filter(lambda q: not poly.is_zero(q)))
def test_divmod_reconstructs(p, q):
    quo, r = poly.divmod_poly(p, q)
    assert poly.add(poly.mul(quo, q), r) == poly.trim(p)
    assert poly.is_zero(r) or poly.degree(r) < poly.degree(q)


@given(qpolys, qpolys)
def test_xgcd_bezout(p, q):
    g, s, t = poly.xgcd(p, q)
    assert poly.add(poly.mul(s, p), poly.mul(t, q)) == g


@pytest.mark.parametrize(
    "coeffs",
    [(-2, 0, 1), (-1, -2, 1, 1), (1, 0, 0, 0, 1), (1, -2, 2, -2, 2, -1, 1), (3, 1, -4, 0, 1)],
)
def test_discriminant_matches_sympy(coeffs):
    assert poly.discriminant(IntPolynomial(coeffs)) == sympy_discriminant(coeffs)


def test_cyclotomic_and_phi():
    x = sympy.symbols("x")
    for n in range(1, 25):
        expected = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs())]
        assert list(poly.cyclotomic(n).coeffs) == expected
        assert poly.euler_phi(n) == sympy.totient(n)


def test_rational_roots_and_squarefree():
    p = IntPolynomial((-6, 11, -6, 1))  # (x-1)(x-2)(x-3)
    assert sorted(poly.rational_roots(p)) == [1, 2, 3]
    assert poly.rational_roots(IntPolynomial((-2, 0, 1))) == []
    sq = poly.mul([Fraction(-1), Fraction(1)], [Fraction(-1), Fraction(1)])
    assert not poly.is_squarefree(sq)
    assert poly.squarefree_part(sq) == [Fraction(-1), Fraction(1)]


@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_sympy(m):
    assert linalg.det(m) == sympy.Matrix(m).det()


@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse(m):
    if linalg.det(m) == 0:
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(m)
        return
    assert linalg.matmul(m, linalg.inverse(m)) == linalg.identity(3)


@settings(max_examples=60)
@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=6))
def test_hnf_spans_same_lattice(rows):
    h = linalg.hnf(rows)
    assert len(h) == sympy.Matrix(rows).rank()
    # upper triangular with positive pivots and reduced entries above them
    pivots = []
    for i, row in enumerate(h):
        j = next(k for k, x in enumerate(row) if x)
        assert row[j] > 0
        assert all(h[i2][j] == 0 for i2 in range(i + 1, len(h)))
        assert all(0 <= h[i2][j] < row[j] for i2 in range(i))
        pivots.append(j)
    assert pivots == sorted(pivots)
    # every original row is an integer combination of the HNF rows, and vice versa
    for a, b in ((rows, h), (h, rows)):
        stacked = sympy.Matrix(b).T
        for row in a:
            if any(row):
                sol = stacked.gauss_jordan_solve(sympy.Matrix(row))[0] if stacked.rank() == len(b) else None
                if sol is not None:
                    assert all(x.is_integer for x in sol)


def test_lattice_basis_rational():
    basis, den = linalg.lattice_basis([[Fraction(1, 2), 0], [0, Fraction(1, 3)], [1, 1]])
    assert den == 6
    assert abs(linalg.det(basis)) == Fraction(1, 6)
