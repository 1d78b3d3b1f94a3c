"""Unit systems, regulators, relative norms and relative regulators.

A unit's log vector has one entry d_w log|sigma_w(u)| per archimedean place
w. Its entries sum to zero, so d * h(u) is half its l1 norm; the searches
below work on these vectors directly.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import mpmath

from . import linalg
from .field import FieldDataError, FieldElement, NumberField, minimal_poly, norm
from .heights import _log_with_error
from .poly import cyclotomic, euler_phi
from .reports import MarginReport


class UnitDataError(FieldDataError):
    """Supplied units are not a valid fundamental system."""


class SingularMatrixError(ArithmeticError):
    """A log matrix is singular within its certified error."""


@dataclass(frozen=True)
class RegulatorValue:
    value: mpmath.mpf
    error_bound: mpmath.mpf

    def __float__(self) -> float:
        return float(self.value)


def certified_abs_det(rows, errs, wp: int) -> tuple:
    """(|det rows|, error bound); Hadamard bound on the row perturbations plus rounding."""
    n = len(rows)
    if n == 0:
        return mpmath.mpf(1), mpmath.mpf(0)
    with mpmath.workprec(wp):
        value = abs(mpmath.det(mpmath.matrix(rows)))
        norms = [mpmath.sqrt(mpmath.fsum(x * x for x in row)) for row in rows]
        e = [mpmath.fsum(row) for row in errs]
        bound = mpmath.fprod(a + b for a, b in zip(norms, e)) - mpmath.fprod(norms)
        bound += mpmath.ldexp(mpmath.fprod(a + 1 for a in norms), -wp + 16)
    return value, bound


def log_vector(elem: FieldElement) -> tuple[list, list]:
    """([d_w log|elem|_w for each place w], matching error bounds)."""
    fld = elem.field
    vals, errs = [], []
    with mpmath.workprec(fld.working_precision):
        for place in fld.places:
            a, e = fld.place_abs(elem, place)
            lg, le = _log_with_error(a, e)
            vals.append(place.local_degree * lg)
            errs.append(place.local_degree * le)
    return vals, errs


def is_torsion(elem: FieldElement) -> bool:
    """Exact root-of-unity test: integral with a cyclotomic minimal polynomial."""
    if elem.is_zero() or not elem.is_integral():
        return False
    f = minimal_poly(elem)
    m = f.degree
    # phi(n) >= sqrt(n/2), so phi(n) = m forces n <= 2 m^2
    return any(euler_phi(n) == m and cyclotomic(n) == f for n in range(1, 2 * m * m + 1))


def is_unit(elem: FieldElement) -> bool:
    return not elem.is_zero() and elem.is_integral() and abs(norm(elem)) == 1


@dataclass
class UnitSystem:
    field: NumberField
    units: tuple
    torsion_order: int = 2

    def __post_init__(self):
        self.units = tuple(self.units)
        fld = self.field
        problems = []
        if self.torsion_order < 1 or self.torsion_order % 2:
            problems.append(f"torsion order {self.torsion_order} is not a positive even integer")
        if len(self.units) != fld.unit_rank:
            problems.append(f"{len(self.units)} units given, unit rank is {fld.unit_rank}")
        for i, u in enumerate(self.units):
            if u.field is not fld:
                problems.append(f"unit {i} belongs to another field")
            elif not u.is_integral():
                problems.append(f"unit {i} is not an algebraic integer")
            elif abs(norm(u)) != 1:
                problems.append(f"unit {i} has norm {norm(u)}")
        if not problems and self.units:
            reg = regulator(self, check=False)
            if reg.value <= reg.error_bound:
                problems.append("units are multiplicatively dependent (singular log matrix)")
        if problems:
            raise UnitDataError(f"{fld.label}: " + "; ".join(problems))

    @property
    def rank(self) -> int:
        return len(self.units)

    def log_matrix(self) -> tuple[list, list]:
        """Rows indexed by places, columns by units."""
        cols = [log_vector(u) for u in self.units]
        n = len(self.field.places)
        rows = [[c[0][w] for c in cols] for w in range(n)]
        errs = [[c[1][w] for c in cols] for w in range(n)]
        return rows, errs

    def element(self, exponents: Sequence[int]) -> FieldElement:
        out = self.field.one()
        for u, e in zip(self.units, exponents):
            if e:
                out = out * u ** e
        return out


def regulator(units: UnitSystem, drop: int | None = None, check: bool = True) -> RegulatorValue:
    """|det| of (d_w log|u_j|_w) over all places except ``drop`` (default: the last)."""
    fld = units.field
    if units.rank == 0:
        return RegulatorValue(mpmath.mpf(1), mpmath.mpf(0))
    rows, errs = units.log_matrix()
    n = len(rows)
    drop = n - 1 if drop is None else drop
    if not 0 <= drop < n:
        raise IndexError(f"place {drop} out of range")
    keep = [w for w in range(n) if w != drop]
    value, bound = certified_abs_det([rows[w] for w in keep], [errs[w] for w in keep], fld.working_precision)
    if check and value <= bound:
        raise SingularMatrixError(f"{fld.label}: log matrix is singular")
    return RegulatorValue(value, bound)


# --------------------------------------------------------------------------
# relative extensions


@dataclass(eq=False)
class RelativeExtension:
    base: NumberField
    top: NumberField
    base_embedding: list  # d_l x d_k; column j = image of theta_k^j in power-basis coordinates of l
    fibration: dict = dc_field(default=None)  # top place index -> base place index
    chosen_places: dict = dc_field(default=None)  # base place index -> top place index
    _qbasis_inv: list = dc_field(default=None, repr=False)

    def __post_init__(self):
        k, l = self.base, self.top
        self.base_embedding = [[Fraction(x) for x in row] for row in self.base_embedding]
        tag = f"{l.label}/{k.label}"
        if l.d % k.d:
            raise FieldDataError(f"{tag}: base degree {k.d} does not divide {l.d}")
        if len(self.base_embedding) != l.d or any(len(r) != k.d for r in self.base_embedding):
            raise FieldDataError(f"{tag}: embedding matrix is not {l.d}x{k.d}")
        img = self.image_of_generator()
        powers = [l.one()]
        for _ in range(k.d - 1):
            powers.append(powers[-1] * img)
        cols = linalg.transpose(self.base_embedding)
        if any(list(p.coords) != list(c) for p, c in zip(powers, cols)):
            raise FieldDataError(f"{tag}: embedding columns are not the powers of the generator image")
        val = l.zero()
        for c in reversed(k.poly.coeffs):
            val = val * img + c
        if not val.is_zero():
            raise FieldDataError(f"{tag}: generator image does not satisfy {k.poly}")
        if self.fibration is None:
            self.fibration = self._compute_fibration(img)
        fibres = self.fibers()
        n = self.relative_degree
        for v, place in enumerate(k.places):
            ws = fibres.get(v, [])
            if not ws:
                raise FieldDataError(f"{tag}: base place {v} has no place above it")
            if sum(l.places[w].local_degree for w in ws) != n * place.local_degree:
                raise FieldDataError(f"{tag}: local degrees over base place {v} do not sum to {n * place.local_degree}")
        if self.chosen_places is None:
            self.chosen_places = {v: ws[0] for v, ws in fibres.items()}
        self._check_choice(self.chosen_places)

    @property
    def relative_degree(self) -> int:
        return self.top.d // self.base.d

    @property
    def relative_rank(self) -> int:
        return self.top.unit_rank - self.base.unit_rank

    def image_of_generator(self) -> FieldElement:
        if self.base.d == 1:
            return self.top.rational(self.base.gen().coords[0])
        return self.top.element([row[1] for row in self.base_embedding])

    def embed(self, elem: FieldElement) -> FieldElement:
        """Image in the top field of an element of the base field."""
        if elem.field is not self.base:
            raise ValueError("element is not in the base field")
        return self.top.element(linalg.matvec(self.base_embedding, elem.coords))

    def fibers(self) -> dict:
        out: dict = {}
        for w, v in sorted(self.fibration.items()):
            out.setdefault(v, []).append(w)
        return out

    def _compute_fibration(self, img: FieldElement) -> dict:
        k, l = self.base, self.top
        root_place = {}
        for v, place in enumerate(k.places):
            for j in place.embedding_index:
                root_place[j] = v
        fib = {}
        for w, place in enumerate(l.places):
            z, ze = l.embed(img, place.root_index)
            with mpmath.workprec(l.working_precision):
                dists = [abs(z - r.value) - ze - r.radius for r in k.roots]
                hits = [j for j, dj in enumerate(dists) if dj <= 0]
            if len(hits) != 1:
                raise FieldDataError(
                    f"{l.label}/{k.label}: place {w} of the top field matches {len(hits)} base embeddings"
                )
            fib[w] = root_place[hits[0]]
        return fib

    def _check_choice(self, chosen: dict) -> None:
        fibres = self.fibers()
        if sorted(chosen) != sorted(fibres):
            raise ValueError("need exactly one chosen place over each base place")
        for v, w in chosen.items():
            if w not in fibres[v]:
                raise ValueError(f"place {w} does not lie over base place {v}")

    def all_choices(self):
        fibres = self.fibers()
        keys = sorted(fibres)
        for combo in itertools.product(*(fibres[v] for v in keys)):
            yield dict(zip(keys, combo))

    # relative norm ---------------------------------------------------------

    def _basis_inverse(self):
        """Inverse of the Q-basis e^a theta^i (a < d_k, i < n), column index a + d_k * i."""
        if self._qbasis_inv is None:
            l = self.top
            img = self.image_of_generator()
            theta = l.gen()
            epow = [l.one()]
            for _ in range(self.base.d - 1):
                epow.append(epow[-1] * img)
            cols = []
            tp = l.one()
            for _ in range(self.relative_degree):
                cols.extend((e * tp).coords for e in epow)
                tp = tp * theta
            self._qbasis_inv = linalg.inverse(linalg.transpose(cols))
        return self._qbasis_inv

    def relative_matrix(self, elem: FieldElement) -> list:
        """Matrix over the base field of y -> elem*y in the base-field basis 1, theta, ..., theta^(n-1)."""
        k, l = self.base, self.top
        n = self.relative_degree
        inv = self._basis_inverse()
        mat = [[None] * n for _ in range(n)]
        cur = elem
        theta = l.gen()
        for i in range(n):
            c = linalg.matvec(inv, cur.coords)
            for i2 in range(n):
                mat[i2][i] = k.element(c[k.d * i2 : k.d * (i2 + 1)])
            cur = cur * theta
        return mat


def _det_over_field(mat: list, fld: NumberField) -> FieldElement:
    m = [row[:] for row in mat]
    n = len(m)
    det = fld.one()
    for c in range(n):
        piv = next((r for r in range(c, n) if not m[r][c].is_zero()), None)
        if piv is None:
            return fld.zero()
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for r in range(c + 1, n):
            if m[r][c].is_zero():
                continue
            f = m[r][c] * inv
            for j in range(c, n):
                m[r][j] = m[r][j] - f * m[c][j]
    return det


def relative_norm(ext: RelativeExtension, elem: FieldElement) -> FieldElement:
    if elem.field is not ext.top:
        raise ValueError("element is not in the top field")
    if elem.is_zero():
        raise ValueError("norm of 0")
    return _det_over_field(ext.relative_matrix(elem), ext.base)


def is_relative_unit(ext: RelativeExtension, unit: FieldElement) -> bool:
    if not is_unit(unit):
        raise ValueError("not a unit of the top field")
    return is_torsion(relative_norm(ext, unit))


def relative_regulator(ext: RelativeExtension, rel_units: Sequence[FieldElement], chosen: dict | None = None) -> RegulatorValue:
    """|det| of (d_w log|eta_j|_w) with rows over top places other than the chosen ones."""
    n = ext.relative_rank
    if n <= 0:
        raise ValueError(f"relative unit rank is {n}; need a positive rank")
    if len(rel_units) != n:
        raise ValueError(f"{len(rel_units)} relative units given, relative rank is {n}")
    for u in rel_units:
        if not is_relative_unit(ext, u):
            raise ValueError("element is not a relative unit")
    chosen = ext.chosen_places if chosen is None else chosen
    ext._check_choice(chosen)
    skip = set(chosen.values())
    keep = [w for w in range(len(ext.top.places)) if w not in skip]
    cols = [log_vector(u) for u in rel_units]
    rows = [[c[0][w] for c in cols] for w in keep]
    errs = [[c[1][w] for c in cols] for w in keep]
    value, bound = certified_abs_det(rows, errs, ext.top.working_precision)
    if value <= bound:
        raise SingularMatrixError("relative log matrix is singular")
    return RegulatorValue(value, bound)


# --------------------------------------------------------------------------
# small-height searches


@dataclass
class SearchResult:
    exponents: list  # chosen exponent vectors over the generators
    elements: list
    dh: list  # degree times Weil height of each chosen element
    product: mpmath.mpf
    product_error: mpmath.mpf
    bound: mpmath.mpf  # r! * regulator
    bound_error: mpmath.mpf
    certified: bool
    box: int

    def report(self, name: str) -> MarginReport:
        return MarginReport(
            name,
            self.product,
            self.bound,
            self.product_error + self.bound_error,
            details={"box": self.box, "exponents": self.exponents, "found": len(self.exponents)},
            exact_ok=self.certified,
        )


def greedy_independent(gen_logs: list, gen_errs: list, box: int, wp: int) -> list:
    """Pick len(gen_logs) independent exponent vectors in [-box, box]^r of least d*h.

    d*h of u^e is half the l1 norm of sum e_i L_i. Candidates are ordered by
    height, ties (within rounding) by the exponent vector; each is kept when it
    raises the exact rank of the chosen exponents. Returns [(e, dh, err)].
    """
    r = len(gen_logs)
    if r == 0:
        return []
    nplaces = len(gen_logs[0])
    cands = []
    with mpmath.workprec(wp):
        tol = mpmath.ldexp(1, -wp // 2)
        for e in itertools.product(range(-box, box + 1), repeat=r):
            if not any(e):
                continue
            vec = [mpmath.fsum(ei * gen_logs[i][w] for i, ei in enumerate(e) if ei) for w in range(nplaces)]
            err = mpmath.fsum(abs(ei) * mpmath.fsum(gen_errs[i]) for i, ei in enumerate(e)) / 2
            cands.append((mpmath.fsum(abs(x) for x in vec) / 2, e, err))
        cands.sort(key=lambda c: c[0])
        # cluster near-equal heights, then order each cluster lexicographically
        ordered, cluster = [], []
        for c in cands:
            if cluster and c[0] - cluster[0][0] > tol:
                ordered.extend(sorted(cluster, key=lambda x: x[1]))
                cluster = []
            cluster.append(c)
        ordered.extend(sorted(cluster, key=lambda x: x[1]))
    chosen: list = []
    for dh, e, err in ordered:
        if linalg.rank([list(x[0]) for x in chosen] + [list(e)]) > len(chosen):
            chosen.append((e, dh, err))
            if len(chosen) == r:
                break
    return chosen


def _search(fld: NumberField, logs, box, bound, bound_err, make_element) -> SearchResult:
    wp = fld.working_precision
    r = len(logs)
    picked = greedy_independent([lv[0] for lv in logs], [lv[1] for lv in logs], box, wp)
    with mpmath.workprec(wp):
        dh = [p[1] for p in picked]
        prod = mpmath.fprod(dh) if dh else mpmath.mpf(1)
        # |prod(x_i + e_i) - prod x_i| <= prod(x_i + e_i) - prod x_i
        perr = mpmath.fprod(p[1] + p[2] for p in picked) - prod if picked else mpmath.mpf(0)
        found = len(picked) == r
        certified = found and prod - bound <= perr + bound_err
    return SearchResult(
        [list(p[0]) for p in picked],
        [make_element(p[0]) for p in picked],
        dh,
        prod,
        perr,
        bound,
        bound_err,
        certified,
        box,
    )


def search_small_units(fld: NumberField, units: UnitSystem, box: int = 5) -> SearchResult:
    """Independent units u^e (|e_i| <= box) with prod d*h <= r! Reg, reported."""
    if units.field is not fld:
        raise ValueError("unit system belongs to another field")
    reg = regulator(units)
    r = units.rank
    with mpmath.workprec(fld.working_precision):
        bound = math.factorial(r) * reg.value
        berr = math.factorial(r) * reg.error_bound
    logs = [log_vector(u) for u in units.units]
    return _search(fld, logs, box, bound, berr, units.element)


def search_relative_units(ext: RelativeExtension, rel_units: Sequence[FieldElement], box: int = 5) -> SearchResult:
    """As search_small_units, over the group generated by a relative-unit basis."""
    reg = relative_regulator(ext, rel_units)
    r = len(rel_units)
    l = ext.top
    with mpmath.workprec(l.working_precision):
        bound = math.factorial(r) * reg.value
        berr = math.factorial(r) * reg.error_bound
    logs = [log_vector(u) for u in rel_units]

    def make(e):
        out = l.one()
        for u, x in zip(rel_units, e):
            if x:
                out = out * u ** x
        return out

    return _search(l, logs, box, bound, berr, make)


def check_combined_bound(
    ext: RelativeExtension,
    base_units: UnitSystem,
    rel_units: Sequence[FieldElement],
    top_units: UnitSystem,
    box: int = 5,
) -> MarginReport:
    """prod (d_k h(beta_i)) * prod (d_l h(psi_j)) <= r(l)! Reg(l).

    beta comes from search_small_units on the base, psi from
    search_relative_units; both must certify for the report to hold.
    """
    if ext.relative_rank <= 0:
        raise ValueError("combined bound needs a positive relative unit rank")
    if base_units.field is not ext.base or top_units.field is not ext.top:
        raise ValueError("unit systems do not match the extension")
    base = search_small_units(ext.base, base_units, box)
    rel = search_relative_units(ext, rel_units, box)
    reg = regulator(top_units)
    l = ext.top
    with mpmath.workprec(l.working_precision):
        lhs = base.product * rel.product
        lerr = (base.product + base.product_error) * (rel.product + rel.product_error) - lhs
        fact = math.factorial(l.unit_rank)
        rhs = fact * reg.value
        err = lerr + fact * reg.error_bound
    return MarginReport(
        "combined-units",
        lhs,
        rhs,
        err,
        details={
            "base_product": base.product,
            "relative_product": rel.product,
            "base_certified": base.certified,
            "relative_certified": rel.certified,
            "box": box,
        },
        exact_ok=base.certified and rel.certified,
    )


def check_norm_places(ext: RelativeExtension, elem: FieldElement) -> MarginReport:
    """d_v log||N(a)||_v = sum over w | v of d_w log||a||_w at every base place v.

    Reported as the largest discrepancy against the summed error bounds.
    """
    n_val, n_err = log_vector(relative_norm(ext, elem))
    a_val, a_err = log_vector(elem)
    fibres = ext.fibers()
    with mpmath.workprec(ext.top.working_precision):
        rows = []
        for v, ws in fibres.items():
            gap = abs(n_val[v] - mpmath.fsum(a_val[w] for w in ws))
            rows.append((n_err[v] + mpmath.fsum(a_err[w] for w in ws) - gap, gap))
        slack, gap = min(rows)
    return MarginReport("norm-places", gap, mpmath.mpf(0), slack + gap, details={"places": len(fibres)})
