"""Number fields given by a monic integer polynomial, and their elements.

Elements are exact rational coordinate vectors in the power basis
1, theta, ..., theta^(d-1). Complex embeddings come from certified roots of
the defining polynomial; each approximate embedding value carries an
absolute error bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import mpmath

from . import linalg, poly
from .config import default_precision
from .poly import IntPolynomial
from .roots import CertifiedRoot, find_roots


class FieldDataError(ValueError):
    """Ingested field data violates a structural invariant."""


@dataclass(frozen=True)
class Place:
    kind: str  # "real" | "complex"
    local_degree: int
    embedding_index: tuple[int, ...]

    @property
    def root_index(self) -> int:
        return self.embedding_index[0]


@dataclass(eq=False)
class NumberField:
    label: str
    poly: IntPolynomial
    discriminant: int
    signature: tuple[int, int]
    integral_basis: list[list[Fraction]]
    roots: list[CertifiedRoot]
    precision: int = 128
    _basis_inv_t: list = dc_field(default=None, repr=False)
    _power_cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def d(self) -> int:
        return self.poly.degree

    @property
    def abs_disc(self) -> int:
        return abs(self.discriminant)

    @property
    def r1(self) -> int:
        return self.signature[0]

    @property
    def r2(self) -> int:
        return self.signature[1]

    @property
    def unit_rank(self) -> int:
        return self.r1 + self.r2 - 1

    @property
    def working_precision(self) -> int:
        return self.precision + 64

    @property
    def places(self) -> list[Place]:
        out = [Place("real", 1, (i,)) for i in range(self.r1)]
        for k in range(self.r2):
            i = self.r1 + 2 * k
            out.append(Place("complex", 2, (i, i + 1)))
        return out

    def __repr__(self) -> str:
        return f"NumberField({self.label!r}, {self.poly})"

    # element construction -------------------------------------------------

    def element(self, coords: Sequence) -> "FieldElement":
        c = [Fraction(x) for x in coords]
        if len(c) > self.d:
            raise ValueError(f"{len(c)} coordinates for a degree-{self.d} field")
        c += [Fraction(0)] * (self.d - len(c))
        return FieldElement(self, tuple(c))

    def from_integral(self, coords: Sequence) -> "FieldElement":
        """Element with the given coordinates in the integral basis."""
        c = linalg.matvec(linalg.transpose(self.integral_basis), [Fraction(x) for x in coords])
        return self.element(c)

    def zero(self) -> "FieldElement":
        return self.element([])

    def one(self) -> "FieldElement":
        return self.element([1])

    def gen(self) -> "FieldElement":
        if self.d == 1:
            return self.element([-Fraction(self.poly.coeffs[0], self.poly.coeffs[1])])
        return self.element([0, 1])

    def rational(self, q) -> "FieldElement":
        return self.element([q])

    def integral_coords(self, elem: "FieldElement") -> list[Fraction]:
        if self._basis_inv_t is None:
            self._basis_inv_t = linalg.inverse(linalg.transpose(self.integral_basis))
        return linalg.matvec(self._basis_inv_t, elem.coords)

    # embeddings ----------------------------------------------------------

    def root_powers(self, j: int) -> list[tuple]:
        """[(theta_j^i, error bound)] for i < d, at working precision."""
        if j not in self._power_cache:
            root = self.roots[j]
            with mpmath.workprec(self.working_precision):
                z, r = root.value, root.radius
                az = abs(z)
                out = [(mpmath.mpc(1), mpmath.mpf(0))]
                for i in range(1, self.d):
                    # |(z+e)^i - z^i| <= (|z|+r)^i - |z|^i
                    err = (az + r) ** i - az ** i + mpmath.ldexp(abs(z) ** i + 1, -self.working_precision + 4)
                    out.append((z ** i, err))
            self._power_cache[j] = out
        return self._power_cache[j]

    def embed(self, elem: "FieldElement", j: int) -> tuple:
        """sigma_j(elem) as (mpc value, absolute error bound)."""
        powers = self.root_powers(j)
        with mpmath.workprec(self.working_precision):
            val = mpmath.mpc(0)
            err = mpmath.mpf(0)
            for c, (zp, e) in zip(elem.coords, powers):
                if c:
                    cq = mpmath.mpf(c.numerator) / c.denominator
                    val += cq * zp
                    err += abs(cq) * e + mpmath.ldexp(abs(cq * zp) + 1, -self.working_precision + 4)
        return val, err

    def place_abs(self, elem: "FieldElement", place: Place) -> tuple:
        """||elem||_v (usual absolute value of the embedding) with error bound."""
        val, err = self.embed(elem, place.root_index)
        with mpmath.workprec(self.working_precision):
            return abs(val), err


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: NumberField
    coords: tuple[Fraction, ...]

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords == self.field.rational(other).coords
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.coords))

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field.poly.to_q()
        prod = poly.rem(poly.mul(list(self.coords), list(o.coords)), f)
        return self.field.element(prod)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        f = self.field.poly.to_q()
        g, s, _ = poly.xgcd(poly.trim(self.coords), f)
        if poly.degree(g) != 0:
            raise ArithmeticError("defining polynomial is reducible")
        return self.field.element(poly.rem(s, f))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.field.integral_coords(self))

    def __repr__(self) -> str:
        return f"FieldElement({self.field.label}, [{', '.join(str(c) for c in self.coords)}])"


# --------------------------------------------------------------------------
# characteristic and minimal polynomials


def multiplication_matrix(elem: FieldElement) -> list[list[Fraction]]:
    """Matrix of y -> elem*y in the power basis (column j = coords of elem*theta^j)."""
    fld = elem.field
    d = fld.d
    cols = []
    cur = elem
    theta = fld.gen() if d > 1 else None
    for j in range(d):
        cols.append(list(cur.coords))
        if j + 1 < d:
            cur = cur * theta
    return linalg.transpose(cols)


def char_poly(elem: FieldElement) -> list[Fraction]:
    """Characteristic polynomial of multiplication by elem (monic, degree d).

    Faddeev-LeVerrier recursion, exact over Q.
    """
    a = multiplication_matrix(elem)
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        if k == 1:
            m = linalg.identity(n)
        else:
            m = linalg.matmul(a, m)
            for i in range(n):
                m[i][i] += coeffs[n - k + 1]
        am = linalg.matmul(a, m)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return coeffs


def minimal_poly(elem: FieldElement) -> IntPolynomial:
    """Primitive integer minimal polynomial with positive leading coefficient."""
    if elem.is_zero():
        return IntPolynomial((0, 1))
    return poly.primitive_int(poly.squarefree_part(char_poly(elem)))


def norm_and_trace(elem: FieldElement) -> tuple[Fraction, Fraction]:
    cp = char_poly(elem)
    d = elem.field.d
    return (-1) ** d * cp[0], -cp[d - 1]


def norm(elem: FieldElement) -> Fraction:
    return norm_and_trace(elem)[0]


def trace(elem: FieldElement) -> Fraction:
    """Trace via the multiplication matrix diagonal (cheaper than the full char poly)."""
    a = multiplication_matrix(elem)
    return sum(a[i][i] for i in range(len(a)))


# --------------------------------------------------------------------------
# construction from data


def make_field(
    label: str,
    coeffs: Sequence[int],
    discriminant: int,
    signature: Sequence[int],
    integral_basis: Sequence[Sequence] | None = None,
    precision: int | None = None,
) -> NumberField:
    """Build and validate a NumberField; raise FieldDataError on bad data."""
    precision = precision or default_precision()
    p = IntPolynomial(tuple(int(c) for c in coeffs))
    d = p.degree
    problems = []
    if d < 1:
        raise FieldDataError(f"{label}: defining polynomial has degree {d}")
    if not p.is_monic():
        raise FieldDataError(f"{label}: defining polynomial {p} is not monic")
    r1, r2 = (int(x) for x in signature)
    if r1 < 0 or r2 < 0 or r1 + 2 * r2 != d:
        raise FieldDataError(f"{label}: signature ({r1}, {r2}) inconsistent with degree {d}")
    if not poly.is_squarefree(p.to_q()):
        raise FieldDataError(f"{label}: defining polynomial is not squarefree")
    if 1 < d <= 3 and poly.rational_roots(p):
        raise FieldDataError(f"{label}: defining polynomial has a rational root")
    if integral_basis is None:
        basis = linalg.identity(d)
    else:
        basis = [[Fraction(x) for x in row] for row in integral_basis]
    if len(basis) != d or any(len(row) != d for row in basis):
        raise FieldDataError(f"{label}: integral basis is not {d}x{d}")
    det_b = linalg.det(basis)
    if det_b == 0:
        raise FieldDataError(f"{label}: integral basis is singular")
    if basis[0] != [Fraction(1)] + [Fraction(0)] * (d - 1):
        problems.append("first integral basis element is not 1")
    # disc(poly) = [O_k : Z[theta]]^2 * disc(k), and [O_k : Z[theta]] = 1/|det B|
    if d > 1:
        pdisc = poly.discriminant(p)
        if Fraction(pdisc) != Fraction(discriminant) / (det_b * det_b):
            problems.append(
                f"discriminant {discriminant} inconsistent with polynomial discriminant {pdisc} "
                f"and basis index {1 / abs(det_b)}"
            )
    elif discriminant not in (1, -1):
        problems.append("degree-1 field must have discriminant 1")
    if d > 1 and (discriminant < 0) != (r2 % 2 == 1):
        problems.append(f"sign of discriminant {discriminant} inconsistent with r2 = {r2}")
    if problems:
        raise FieldDataError(f"{label}: " + "; ".join(problems))
    roots = find_roots(p, precision)
    n_real = sum(1 for r in roots if r.is_real)
    if n_real != r1:
        raise FieldDataError(f"{label}: signature claims {r1} real embeddings but the polynomial has {n_real}")
    fld = NumberField(label, p, int(discriminant), (r1, r2), basis, roots, precision)
    return fld


def parse_field(record: dict, precision: int | None = None) -> NumberField:
    """NumberField from a corpus record (see :mod:`nfreg.corpus` for the schema)."""
    try:
        return make_field(
            record["label"],
            record["poly"],
            int(record["discriminant"]),
            record["signature"],
            [[Fraction(x) for x in row] for row in record["integral_basis"]],
            precision,
        )
    except KeyError as exc:
        raise FieldDataError(f"{record.get('label', '?')}: missing field {exc.args[0]!r}") from None


def rationals_field(precision: int | None = None) -> NumberField:
    return make_field("Q", [0, 1], 1, (1, 0), precision=precision)

