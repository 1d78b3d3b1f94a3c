import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from nfreg import poly
from nfreg.field import (
    FieldDataError,
    char_poly,
    make_field,
    minimal_poly,
    norm,
    norm_and_trace,
    rationals_field,
    trace,
)
from nfreg.poly import IntPolynomial
from nfreg.roots import find_roots
from nfreg.sampling import random_element

from conftest import record
from oracles import sympy_charpoly

LABELS = ["x2-2", "x2+x+1", "x3-2", "x3+x2-2x-1", "x4-10x2+1", "x4-x-1", "x5-x3-x2+x+1", "x6-x5+2x4-2x3+2x2-2x+1"]


@st.composite
def squarefree_polys(draw):
    d = draw(st.integers(1, 7))
    coeffs = [draw(st.integers(-20, 20)) for _ in range(d)] + [1]
    p = IntPolynomial(tuple(coeffs))
    assume(poly.is_squarefree(p.to_q()))
    return p


@settings(max_examples=40, deadline=None)
@given(squarefree_polys())
def test_roots_certified_against_numpy(p):
    roots = find_roots(p, 128)
    assert len(roots) == p.degree
    ref = np.roots(list(reversed(p.coeffs)))
    for r in roots:
        assert r.radius <= mpmath.ldexp(1, -128 + 16)
        # the certified disc contains exactly one companion-matrix root
        close = [z for z in ref if abs(complex(r.value) - z) < 1e-6]
        assert len(close) == 1
    # canonical order: reals ascending, then conjugate pairs with positive imaginary part first
    reals = [r for r in roots if r.is_real]
    assert [float(r.value.real) for r in reals] == sorted(float(r.value.real) for r in reals)
    rest = roots[len(reals):]
    assert len(rest) % 2 == 0
    with mpmath.workprec(200):
        for a, b in zip(rest[::2], rest[1::2]):
            assert a.value.imag > 0
            assert abs(a.value - mpmath.conj(b.value)) <= a.radius + b.radius


def test_root_precision_scales():
    p = IntPolynomial((-2, 0, 1))
    for bits in (64, 256, 512):
        (r0, r1) = find_roots(p, bits)
        with mpmath.workprec(bits + 40):
            assert abs(r1.value - mpmath.sqrt(2)) <= r1.radius
        assert r1.radius <= mpmath.ldexp(1, -bits + 16)


def test_make_field_rejects_bad_data():
    with pytest.raises(FieldDataError, match="real embeddings|sign"):
        make_field("bad", [-1, -2, 1, 1], 49, (1, 1))
    with pytest.raises(FieldDataError, match="monic"):
        make_field("bad", [-1, 0, 2], 8, (2, 0))
    with pytest.raises(FieldDataError, match="discriminant"):
        make_field("bad", [-2, 0, 1], 12, (2, 0))
    with pytest.raises(FieldDataError, match="signature"):
        make_field("bad", [-2, 0, 1], 8, (1, 1))
    with pytest.raises(FieldDataError, match="rational root"):
        make_field("bad", [-1, 0, 1], 4, (2, 0))
    with pytest.raises(FieldDataError, match="sign"):
        make_field("bad", [1, 0, 1], 4, (0, 1))


def test_basic_element_arithmetic():
    k = record("x2-2").field
    s = k.gen()
    a = 1 + s
    assert a * (s - 1) == k.one()  # (1+sqrt2)(sqrt2-1) = 1
    assert a.inverse() == s - 1
    assert a ** -2 == (s - 1) ** 2
    assert s * s == k.rational(2)
    assert norm_and_trace(a) == (Fraction(-1), Fraction(2))
    assert char_poly(a) == [Fraction(-1), Fraction(-2), Fraction(1)]
    assert minimal_poly(k.rational(Fraction(3, 2))).coeffs == (-3, 2)


@pytest.mark.parametrize("label", LABELS)
def test_charpoly_matches_resultant(label):
    fld = record(label).field
    rng = random.Random(label)
    for _ in range(3):
        a = random_element(fld, rng)
        ours = [c for c in reversed(char_poly(a))]
        theirs = sympy_charpoly(fld.poly.coeffs, a.coords)
        lead = theirs[0]
        assert ours == [Fraction(int(c.p), int(c.q)) / Fraction(int(lead.p), int(lead.q)) for c in theirs]


@pytest.mark.parametrize("label", LABELS)
def test_ring_laws_and_norm_multiplicativity(label):
    fld = record(label).field
    rng = random.Random("ring" + label)
    for _ in range(5):
        a, b, c = (random_element(fld, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * a.inverse() == fld.one()
        assert norm(a * b) == norm(a) * norm(b)
        assert trace(a + b) == trace(a) + trace(b)


@pytest.mark.parametrize("label", LABELS)
def test_embeddings_are_homomorphisms(label):
    fld = record(label).field
    rng = random.Random("emb" + label)
    a, b = random_element(fld, rng), random_element(fld, rng)
    for j in range(fld.d):
        va, ea = fld.embed(a, j)
        vb, eb = fld.embed(b, j)
        vab, eab = fld.embed(a * b, j)
        with mpmath.workprec(fld.working_precision):
            tol = eab + abs(va) * eb + abs(vb) * ea + ea * eb
            assert abs(vab - va * vb) <= tol
    with mpmath.workprec(fld.working_precision):
        prod = mpmath.fprod(fld.embed(a, j)[0] for j in range(fld.d))
        assert abs(prod - mpmath.mpf(norm(a).numerator) / norm(a).denominator) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("label", LABELS)
def test_integral_coordinates_round_trip(label):
    fld = record(label).field
    rng = random.Random("int" + label)
    for _ in range(5):
        a = random_element(fld, rng)
        assert fld.from_integral(fld.integral_coords(a)) == a
    for row in fld.integral_basis:
        assert fld.element(row).is_integral()


def test_rationals_field():
    q = rationals_field()
    assert q.d == 1 and q.unit_rank == 0 and len(q.places) == 1
    assert q.gen().is_zero()
