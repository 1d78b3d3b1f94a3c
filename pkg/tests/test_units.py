import math
import random
from fractions import Fraction

import mpmath
import pytest

from nfreg.field import norm
from nfreg.sampling import random_element
from nfreg.units import (
    RelativeExtension,
    UnitDataError,
    UnitSystem,
    check_combined_bound,
    check_norm_places,
    greedy_independent,
    is_relative_unit,
    is_torsion,
    is_unit,
    log_vector,
    regulator,
    relative_norm,
    relative_regulator,
    search_relative_units,
    search_small_units,
)

from conftest import record
from oracles import brute_force_min_product, float_log_embeddings, pell_regulator

WITH_UNITS = ["x2-2", "x2-x-1", "x3-2", "x3+x2-2x-1", "x4-10x2+1", "x4-x-1", "x4-x3-3x2+x+1", "x5-x3-x2+x+1"]


def _close(a, b, tol):
    with mpmath.workprec(256):
        return abs(mpmath.mpf(a) - mpmath.mpf(b)) <= mpmath.mpf(tol)


def biquadratic():
    rec = record("x4-10x2+1")
    t = rec.field.gen()
    return rec, (t**3 - 9 * t) / 2, (11 * t - t**3) / 2


@pytest.mark.parametrize("label", WITH_UNITS)
def test_regulator_matches_hint_and_any_dropped_place(label):
    rec = record(label)
    reg = regulator(rec.units)
    assert _close(reg.value, rec.regulator_hint, "1e-25")
    for w in range(len(rec.field.places)):
        other = regulator(rec.units, drop=w)
        with mpmath.workprec(256):
            assert abs(other.value - reg.value) <= other.error_bound + reg.error_bound


@pytest.mark.parametrize("label", WITH_UNITS)
def test_regulator_invariances(label):
    rec = record(label)
    fld, us = rec.field, list(rec.units.units)
    reg = regulator(rec.units).value
    # permutation, inversion, sign change and a unimodular change of basis
    variants = [list(reversed(us)), [u.inverse() for u in us], [-u for u in us]]
    if len(us) >= 2:
        variants.append([us[0] * us[1] ** 3] + us[1:])
    for v in variants:
        val = regulator(UnitSystem(fld, v, rec.units.torsion_order)).value
        assert _close(val, reg, "1e-30")
    # a square-index subgroup scales the regulator by the index
    doubled = [us[0] ** 2] + us[1:]
    with mpmath.workprec(256):
        assert _close(regulator(UnitSystem(fld, doubled, 2)).value, 2 * reg, "1e-30")


@pytest.mark.parametrize("label", WITH_UNITS)
def test_log_vector_against_float_oracle(label):
    rec = record(label)
    for u in rec.units.units:
        vals, _ = log_vector(u)
        ref = float_log_embeddings(rec.field.poly.coeffs, u.coords)
        assert all(abs(float(a) - b) < 1e-8 for a, b in zip(vals, ref))
        assert abs(float(mpmath.fsum(vals))) < 1e-30  # product formula for units


@pytest.mark.parametrize("D", [2, 3, 5, 6, 7, 10, 11, 13, 14, 15])
def test_real_quadratic_regulator_against_pell(D):
    label = {5: "x2-x-1", 13: "x2-x-3"}.get(D, f"x2-{D}")
    rec = record(label)
    assert abs(float(regulator(rec.units).value) - pell_regulator(D)) < 1e-12


def test_unit_system_rejects_bad_data():
    fld = record("x2-2").field
    s = fld.gen()
    with pytest.raises(UnitDataError, match="norm"):
        UnitSystem(fld, [1 + 2 * s])
    with pytest.raises(UnitDataError, match="integer"):
        UnitSystem(fld, [fld.element([Fraction(1, 2), Fraction(1, 2)])])
    with pytest.raises(UnitDataError, match="rank"):
        UnitSystem(fld, [])
    with pytest.raises(UnitDataError, match="even"):
        UnitSystem(fld, [1 + s], 3)
    rec, s2, s3 = biquadratic()
    u = rec.units.units[0]
    with pytest.raises(UnitDataError, match="dependent"):
        UnitSystem(rec.field, [u, u ** 2, rec.units.units[2]])


def test_torsion_and_unit_predicates():
    z = record("x6+x5+x4+x3+x2+x+1").field.gen()
    assert is_torsion(z) and is_torsion(-z**3)
    assert not is_torsion(1 + z)
    assert is_unit(1 + z)
    fld = record("x2-2").field
    assert not is_unit(fld.gen())
    assert is_torsion(-fld.one())


def test_relative_norm_examples():
    rec, s2, s3 = biquadratic()
    ext = next(e.ext for e in rec.extensions if e.base_label == "x2-2")
    k = ext.base
    n = relative_norm(ext, s3)
    assert n == k.rational(-3)
    a = k.element([3, 1])  # 3 + sqrt 2 in the base
    assert relative_norm(ext, ext.embed(a)) == a**2
    # norm to Q through the tower agrees with the absolute norm
    rng = random.Random(5)
    for _ in range(5):
        x = random_element(rec.field, rng)
        assert norm(relative_norm(ext, x)) == norm(x)
        y = random_element(rec.field, rng)
        assert relative_norm(ext, x * y) == relative_norm(ext, x) * relative_norm(ext, y)


def test_relative_norm_over_q_is_absolute_norm():
    for label in ("x2-3", "x2-x-1", "x3+x2-2x-1"):
        rec = record(label)
        ext = rec.extensions[0].ext
        rng = random.Random(label)
        for _ in range(3):
            x = random_element(rec.field, rng)
            assert relative_norm(ext, x).coords[0] == norm(x)


def test_norm_places_identity():
    rec, s2, s3 = biquadratic()
    rng = random.Random(11)
    for e in rec.extensions:
        for _ in range(4):
            assert check_norm_places(e.ext, random_element(rec.field, rng)).holds


@pytest.mark.parametrize("label", ["x2-2", "x2-7", "x2-x-1", "x2-x-13", "x3+x2-2x-1"])
def test_relative_regulator_over_q_is_absolute(label):
    rec = record(label)
    e = rec.extensions[0]
    rr = relative_regulator(e.ext, e.relative_units)
    assert _close(rr.value, regulator(rec.units).value, "1e-10")


def test_relative_regulator_biquadratic_all_choices():
    rec, _, _ = biquadratic()
    for e in rec.extensions:
        choices = list(e.ext.all_choices())
        assert len(choices) == 2 ** len(e.ext.base.places)
        vals = [relative_regulator(e.ext, e.relative_units, c) for c in choices]
        with mpmath.workprec(256):
            for v in vals:
                assert abs(v.value - vals[0].value) <= v.error_bound + vals[0].error_bound
        assert all(is_relative_unit(e.ext, u) for u in e.relative_units)


def test_relative_extension_rejects_bad_embedding():
    rec, _, _ = biquadratic()
    e = next(x for x in rec.extensions if x.base_label == "x2-2")
    bad = [[1, 0], [0, 0], [0, 0], [0, 1]]
    with pytest.raises(ValueError):
        RelativeExtension(e.ext.base, rec.field, bad)


def test_greedy_search_matches_brute_force():
    for label, box in (("x2-2", 3), ("x3+x2-2x-1", 3), ("x4-10x2+1", 2)):
        rec = record(label)
        logs = [log_vector(u) for u in rec.units.units]
        gl = [l[0] for l in logs]
        picked = greedy_independent(gl, [l[1] for l in logs], box, rec.field.working_precision)
        assert len(picked) == len(gl)
        best, hmin = brute_force_min_product([[float(x) for x in g] for g in gl], box)
        assert abs(float(picked[0][1]) - hmin) < 1e-9
        # greedy is a matroid optimum: no independent set has a smaller product
        assert float(math.prod(p[1] for p in picked)) <= best + 1e-9


def test_unit_search_certifies():
    for label, box in (("x2-2", 3), ("x2-x-1", 3), ("x3+x2-2x-1", 3)):
        rec = record(label)
        res = search_small_units(rec.field, rec.units, box)
        assert res.certified and res.report("unit-search").holds
    rank0 = record("x2+5")
    res = search_small_units(rank0.field, rank0.units, 3)
    assert res.exponents == [] and res.certified


def test_relative_search_and_combined_bound():
    rec, _, _ = biquadratic()
    base = {r.label: r for r in [record("x2-2"), record("x2-3")]}
    for e in rec.extensions:
        res = search_relative_units(e.ext, e.relative_units, 2)
        assert len(res.exponents) == e.ext.relative_rank
        rep = check_combined_bound(e.ext, base[e.base_label].units, e.relative_units, rec.units, 2)
        assert rep.holds, rep.to_dict()
