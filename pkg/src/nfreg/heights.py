"""Weil heights of field elements and Arakelov heights of vectors.

All heights are logarithmic and absolute (normalised by the degree), so they
do not depend on the field used to compute them. Approximate values carry a
certified absolute error bound propagated from the root radii.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .field import FieldElement, NumberField, minimal_poly
from .lattice import ideal_norm
from .reports import MarginReport
from .roots import find_roots


@dataclass(frozen=True)
class HeightValue:
    value: mpmath.mpf
    error_bound: mpmath.mpf

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class FieldVector:
    field: NumberField
    entries: tuple[FieldElement, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("empty vector")
        if any(e.field is not self.field for e in self.entries):
            raise ValueError("vector entries from different fields")

    @classmethod
    def of(cls, entries: Sequence[FieldElement]) -> "FieldVector":
        entries = tuple(entries)
        return cls(entries[0].field, entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def scaled(self, eta) -> "FieldVector":
        return FieldVector(self.field, tuple(eta * e for e in self.entries))

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)


def _log_with_error(x, err):
    """log x for x > err >= 0, with the induced error bound err / (x - err)."""
    if x <= err:
        raise ArithmeticError("cannot bound the logarithm of a value indistinguishable from 0")
    return mpmath.log(x), err / (x - err)


def weil_height_places(elem: FieldElement) -> HeightValue:
    """Sum over places of log+|elem|_v.

    Archimedean terms come from the field's embeddings, weighted d_v/d. The
    finite places contribute (1/m) log|a_m| where a_m is the leading
    coefficient of the primitive minimal polynomial of degree m.
    """
    if elem.is_zero():
        raise ValueError("Weil height of 0 is undefined")
    fld = elem.field
    f = minimal_poly(elem)
    m = f.degree
    with mpmath.workprec(fld.working_precision):
        total = mpmath.mpf(0)
        err = mpmath.mpf(0)
        for place in fld.places:
            a, e = fld.place_abs(elem, place)
            if a + e <= 1:
                continue
            lg, le = _log_with_error(a, e)
            w = mpmath.mpf(place.local_degree) / fld.d
            total += w * max(lg, 0)
            err += w * le
        total += mpmath.log(abs(f.leading)) / m
        err += mpmath.ldexp(1, -fld.working_precision + 8)
    return HeightValue(total, err)


def weil_height_mahler(elem: FieldElement, precision: int | None = None) -> HeightValue:
    """(1/m) log M(f) for the primitive minimal polynomial f, from its own certified roots."""
    if elem.is_zero():
        raise ValueError("Weil height of 0 is undefined")
    precision = precision or elem.field.precision
    f = minimal_poly(elem)
    m = f.degree
    roots = find_roots(f, precision)
    wp = precision + 64
    with mpmath.workprec(wp):
        total = mpmath.log(abs(f.leading))
        err = mpmath.ldexp(1, -wp + 8)
        for r in roots:
            a = abs(r.value)
            if a + r.radius <= 1:
                continue
            lg, le = _log_with_error(a, r.radius)
            total += max(lg, 0)
            err += le
        return HeightValue(total / m, err / m)


def weil_height(elem: FieldElement) -> HeightValue:
    return weil_height_places(elem)


def finite_part(vec: FieldVector | Sequence[FieldElement], t: int | None = None) -> Fraction:
    """Product over finite places of ||vec||_v^{d_v}, exactly.

    Computed as t^d / N(J(t*vec)) for a positive integer t making every entry
    integral; by default the least such t.
    """
    vec = vec if isinstance(vec, FieldVector) else FieldVector.of(vec)
    if vec.is_zero():
        raise ValueError("finite part of the zero vector")
    fld = vec.field
    if t is None:
        t = 1
        for e in vec.entries:
            for c in fld.integral_coords(e):
                t = t * c.denominator // math.gcd(t, c.denominator)
    scaled = [t * e for e in vec.entries]
    if not all(e.is_integral() for e in scaled):
        raise ValueError(f"t = {t} does not clear the denominators of the vector")
    return Fraction(t) ** fld.d / ideal_norm(scaled)


def archimedean_norms(vec: FieldVector) -> list[tuple]:
    """[(place, ||vec||_v, error)] with the Euclidean norm at each archimedean place."""
    fld = vec.field
    out = []
    with mpmath.workprec(fld.working_precision):
        for place in fld.places:
            sq = mpmath.mpf(0)
            err = mpmath.mpf(0)
            for e in vec.entries:
                val, ve = fld.embed(e, place.root_index)
                sq += abs(val) ** 2
                err += ve
            out.append((place, mpmath.sqrt(sq), err))
    return out


def arakelov_height(vec: FieldVector | Sequence[FieldElement]) -> HeightValue:
    """log H(vec) = sum_{v|inf} (d_v/d) log||vec||_v + (1/d) log(finite part)."""
    vec = vec if isinstance(vec, FieldVector) else FieldVector.of(vec)
    if vec.is_zero():
        raise ValueError("Arakelov height of the zero vector")
    fld = vec.field
    fin = finite_part(vec)
    with mpmath.workprec(fld.working_precision):
        total = mpmath.mpf(0)
        err = mpmath.mpf(0)
        for place, nrm, e in archimedean_norms(vec):
            lg, le = _log_with_error(nrm, e)
            w = mpmath.mpf(place.local_degree) / fld.d
            total += w * lg
            err += w * le
        total += (mpmath.log(fin.numerator) - mpmath.log(fin.denominator)) / fld.d
        err += mpmath.ldexp(1, -fld.working_precision + 8)
    return HeightValue(total, err)


def power_vector(elem: FieldElement, M: int) -> FieldVector:
    if M < 1:
        raise ValueError("M must be positive")
    entries = [elem.field.one()]
    for _ in range(M - 1):
        entries.append(entries[-1] * elem)
    return FieldVector(elem.field, tuple(entries))


def check_lemma51(elem: FieldElement, M: int) -> MarginReport:
    """log H(1, a, ..., a^(M-1)) <= (1/2) log M + (M-1) h(a)."""
    lhs = arakelov_height(power_vector(elem, M))
    if elem.is_zero():
        if M > 1:
            raise ValueError("power vector of 0 needs h(0)")
        h = HeightValue(mpmath.mpf(0), mpmath.mpf(0))
    else:
        h = weil_height_places(elem)
    with mpmath.workprec(elem.field.working_precision):
        rhs = mpmath.log(M) / 2 + (M - 1) * h.value
        err = lhs.error_bound + (M - 1) * h.error_bound
    return MarginReport("power-vector-height", lhs.value, rhs, err, details={"M": M})


def tensor_vector(generators: Sequence[FieldElement], degrees: Sequence[int], field: NumberField | None = None) -> FieldVector:
    """Entries a_1^n_1 ... a_M^n_M, 0 <= n_m < N_m, mixed radix with n_M fastest."""
    if len(generators) != len(degrees):
        raise ValueError("one degree per generator")
    if any(n < 1 for n in degrees):
        raise ValueError("degrees must be positive")
    if not generators:
        if field is None:
            raise ValueError("empty generator list needs the field")
        return FieldVector(field, (field.one(),))
    fld = generators[0].field
    powers = [power_vector(a, n).entries for a, n in zip(generators, degrees)]
    entries = []
    for idx in itertools.product(*(range(n) for n in degrees)):
        e = fld.one()
        for m, n in enumerate(idx):
            if n:
                e = e * powers[m][n]
        entries.append(e)
    return FieldVector(fld, tuple(entries))


def check_lemma53(generators: Sequence[FieldElement], degrees: Sequence[int]) -> tuple[MarginReport, MarginReport]:
    """Multiplicativity H(beta) = prod H(a_m), and the bound on log H(beta).

    Returns (identity report, bound report). The identity report checks
    |log H(beta) - sum log H(a_m)| <= combined error, encoded as lhs <= rhs
    with lhs the absolute discrepancy and rhs = 0.
    """
    beta = tensor_vector(generators, degrees)
    hb = arakelov_height(beta)
    fld = beta.field
    parts = [arakelov_height(power_vector(a, n)) for a, n in zip(generators, degrees)]
    weil = [weil_height_places(a) for a in generators]
    with mpmath.workprec(fld.working_precision):
        total = mpmath.fsum(p.value for p in parts)
        id_err = hb.error_bound + mpmath.fsum(p.error_bound for p in parts)
        identity = MarginReport(
            "tensor-multiplicativity",
            abs(hb.value - total),
            mpmath.mpf(0),
            id_err,
            details={"log_H_beta": hb.value, "sum_log_H_parts": total, "degrees": list(degrees)},
        )
        n_total = math.prod(degrees)
        rhs = mpmath.log(n_total) / 2 + mpmath.fsum((n - 1) * h.value for n, h in zip(degrees, weil))
        b_err = hb.error_bound + mpmath.fsum((n - 1) * h.error_bound for n, h in zip(degrees, weil))
        bound = MarginReport("tensor-height-bound", hb.value, rhs, b_err, details={"degrees": list(degrees)})
    return identity, bound


def height_discriminant_lower(elem: FieldElement, disc_of_Q_alpha: int) -> MarginReport:
    """h(a) >= log(D / m^m) / (2 m (m-1)) with D the discriminant of Q(a), m = [Q(a):Q]."""
    m = minimal_poly(elem).degree
    if m < 2:
        raise ValueError("inequality needs an irrational element (m >= 2)")
    D = abs(int(disc_of_Q_alpha))
    if D < 1:
        raise ValueError("discriminant must be a positive integer")
    h = weil_height_places(elem)
    with mpmath.workprec(elem.field.working_precision):
        bound = (mpmath.log(D) - m * mpmath.log(m)) / (2 * m * (m - 1))
    return MarginReport(
        "height-discriminant",
        bound,
        h.value,
        h.error_bound,
        vacuous=bound <= 0,
        details={"m": m, "D": D},
    )
