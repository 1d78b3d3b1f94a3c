import math

import mpmath
import pytest

from nfreg.bounds import (
    FRIEDMAN_FLOOR,
    InapplicableError,
    amoroso_explicit_bound,
    dhm_report,
    friedman_floor_report,
    quadratic_bound,
    silverman_bound,
    small_disc_bound,
    theorem1_bound,
    theorem2_bound,
    verify_field,
    voutier_constant,
)
from nfreg.units import regulator
from nfreg.reports import FAILED, HYPOTHESIS_FAILED, UNCHECKED, VACUOUS, VERIFIED

from conftest import record


def test_voutier_constant():
    assert abs(float(voutier_constant(3)) - 1.569e-4) < 1e-7
    assert abs(float(voutier_constant(16)) - 1.2440e-2) < 1e-5
    assert voutier_constant(2) < 0
    for d in range(3, 40):
        ref = (math.log(math.log(d)) / math.log(d)) ** 3 / 4
        assert abs(float(voutier_constant(d)) - ref) < 1e-15
    with pytest.raises(ValueError):
        voutier_constant(1)


def test_theorem1_closed_form():
    # d = 3, D = 49, r = 2, rho = 0: 3 (log(49/27) / 12)^2
    rep = theorem1_bound(3, 49, 2, 0)
    assert rep.verdict == UNCHECKED
    assert abs(float(rep.bound) - 3 * (math.log(49 / 27) / 12) ** 2) < 1e-15
    assert abs(float(rep.bound) - 0.00740) < 1e-5
    rep = theorem1_bound(4, 725, 3, 1)
    c = math.factorial(6) / math.factorial(3) ** 3
    ref = c * (math.log(math.log(4)) / (2 * math.log(4))) ** 3 * (math.log(725 / 256) / 16) ** 2
    assert abs(float(rep.bound) - ref) < 1e-15


def test_theorem1_hypotheses():
    assert theorem1_bound(3, 27, 2, 0).verdict == HYPOTHESIS_FAILED
    with pytest.raises(InapplicableError):
        theorem1_bound(2, 8, 1, 0)
    with pytest.raises(InapplicableError):
        theorem1_bound(4, 256, 1, 1)
    with pytest.raises(ValueError):
        theorem1_bound(3, 49, 1, 2)


def test_theorem2_closed_form():
    rep = theorem2_bound(3, 49, 2, 0)
    lg = math.log(49) - 3 ** math.log2(3) / 2 * math.log(3)
    ref = 0.2 / 2 * (6 * lg / (1 * 3 ** math.log2(3))) ** 2
    assert abs(float(rep.bound) - ref) < 1e-14
    assert abs(float(rep.bound) - 0.0637) < 1e-3


def test_silverman_examples():
    rep = silverman_bound(2, 10**6, 1, 0)
    lg = math.log(10**6) - 2 ** math.log2(16) * math.log(2)
    assert abs(float(rep.bound) - 2**-16 * lg) < 1e-18
    assert silverman_bound(3, 49, 2, 0).verdict == HYPOTHESIS_FAILED
    assert silverman_bound(2, 8, 1, 0, regulator=mpmath.mpf("0.88")).verdict == HYPOTHESIS_FAILED


def test_quadratic_bound():
    assert quadratic_bound(4, regulator=mpmath.mpf(1)).verdict == VACUOUS
    rep = quadratic_bound(8, regulator=regulator(record("x2-2").units))
    assert rep.verdict == VERIFIED
    assert quadratic_bound(10**6, regulator=mpmath.mpf(1)).verdict == FAILED
    with pytest.raises(InapplicableError):
        quadratic_bound(3, signature=(0, 1))


def test_small_disc_bound():
    rep = small_disc_bound(6, 9747, "theorem1", mpmath.mpf("0.2"))
    assert abs(float(rep.bound) - math.log(9747) / (5 * 6 * math.log(6))) < 1e-15
    assert rep.verdict == VERIFIED
    # the inequality is strict
    assert small_disc_bound(6, 9747, "theorem1", rep.bound).verdict == FAILED
    with pytest.raises(InapplicableError):
        small_disc_bound(3, 49, "theorem1", mpmath.mpf(1))
    with pytest.raises(ValueError):
        small_disc_bound(3, 49, "silverman", mpmath.mpf(1))


def test_amoroso_readings_and_rho_zero():
    rep = amoroso_explicit_bound(4, 725, 3, 1)
    assert any("alternative" in n for n in rep.notes)
    assert rep.bound > 0
    assert amoroso_explicit_bound(3, 49, 2, 0).verdict == HYPOTHESIS_FAILED


def test_friedman_floor_and_dhm():
    assert friedman_floor_report(mpmath.mpf("0.2053")).verdict == VERIFIED
    assert friedman_floor_report(mpmath.mpf("0.2")).verdict == FAILED
    assert FRIEDMAN_FLOOR == "0.2052"
    rep = dhm_report(record("x3-2").field)
    assert rep.quantity == "h(theta)" and rep.verdict == VERIFIED


def test_cubic_headline_numbers():
    rec = record("x3+x2-2x-1")
    reps = {r.theorem: r for r in verify_field(rec.field, rec.lattice, rec.units)}
    t1, t2 = reps["theorem1"], reps["theorem2"]
    assert t1.verdict == t2.verdict == VERIFIED
    assert abs(float(t1.margin) - 0.518) < 1e-3
    assert abs(float(t2.bound) - 0.0637) < 1e-3


def test_no_failures_on_the_corpus(corpus):
    for rec in corpus.values():
        reps = verify_field(rec.field, rec.lattice, rec.units)
        assert [r.theorem for r in reps] == sorted(r.theorem for r in reps)
        for r in reps:
            assert r.verdict != FAILED, (rec.label, r.to_dict())
            assert "cm" in r.hypotheses
        if reps and rec.lattice and rec.field.d >= 3 and rec.units.rank == 0:
            assert all(r.verdict == HYPOTHESIS_FAILED for r in reps if r.theorem.startswith("theorem"))
