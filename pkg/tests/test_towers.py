import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nfreg.towers import (
    LatticeError,
    SubfieldLattice,
    SubfieldNode,
    below_threshold,
    check_aleph_monotonic,
    check_lemma72,
    compare_power,
    is_cm,
    lemma72_sides,
    maximal_kstar,
    random_lattice,
    rho,
    verify_kstar,
)

from conftest import record

Q = SubfieldNode("Q", 1, (1, 0), 1)


def quartic_over_sqrt5(D):
    k5 = SubfieldNode("k5", 2, (2, 0), 5)
    top = SubfieldNode("top", 4, (4, 0), D)
    return SubfieldLattice.build([Q, k5, top], [("Q", "k5"), ("k5", "top")], "top")


def test_lambda_and_aleph_on_a_chain():
    lat = quartic_over_sqrt5(725)
    assert [lat.lam(x) for x in ("Q", "k5", "top")] == [0, 1, 2]
    assert [lat.aleph(x) for x in ("Q", "k5", "top")] == [Fraction(1, 64), Fraction(1, 4), 1]
    assert check_aleph_monotonic(lat, ["Q", "k5", "top"]).holds
    assert lemma72_sides(lat, "Q", "k5") == (Fraction(1, 4) - Fraction(4, 64), Fraction(1, 16))
    assert check_lemma72(lat, "k5", "top").holds


def test_kstar_depends_on_discriminant():
    # 725^(1/4) > 5, so the quadratic subfield is below the threshold
    assert maximal_kstar(quartic_over_sqrt5(725)).label == "k5"
    # 525^(1/4) < 5, so only Q is below the threshold
    assert maximal_kstar(quartic_over_sqrt5(525)).label == "Q"
    assert verify_kstar(quartic_over_sqrt5(525), "Q").holds
    assert not verify_kstar(quartic_over_sqrt5(725), "Q").holds
    assert not below_threshold(quartic_over_sqrt5(625), "k5")  # equality is not below


def test_corpus_lattices():
    lat = record("x4-10x2+1").lattice
    assert rho(lat) == 1 and not is_cm(lat)
    assert len(lat.maximal_chains()) == 3
    for chain in lat.maximal_chains():
        assert check_aleph_monotonic(lat, chain).holds
    assert is_cm(record("x4+1").lattice) and is_cm(record("x2+5").lattice)
    assert not is_cm(record("x6-x5+2x4-2x3+2x2-2x+1").lattice)
    assert rho(record("x3-2").lattice) == 0


def test_lattice_validation():
    k5 = SubfieldNode("k5", 2, (2, 0), 5)
    with pytest.raises(LatticeError, match="divide"):
        SubfieldLattice.build([Q, k5, SubfieldNode("top", 4, (4, 0), 726)], [("Q", "k5"), ("k5", "top")], "top")
    with pytest.raises(LatticeError):
        SubfieldLattice.build([Q, k5, SubfieldNode("top", 3, (3, 0), 49)], [("Q", "k5"), ("k5", "top")], "top")
    with pytest.raises(LatticeError):
        SubfieldLattice.build([Q, SubfieldNode("im", 2, (0, 1), 4), SubfieldNode("top", 4, (4, 0), 256)], [("Q", "im"), ("im", "top")], "top")
    with pytest.raises(LatticeError):
        SubfieldLattice.build([k5, SubfieldNode("top", 4, (4, 0), 725)], [("k5", "top")], "top")
    with pytest.raises(LatticeError):
        SubfieldLattice.build(
            [Q, k5, SubfieldNode("top", 4, (4, 0), 725)], [("Q", "k5"), ("k5", "top"), ("top", "k5")], "top"
        )


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 300), st.integers(1, 300), st.fractions(min_value=0, max_value=8, max_denominator=12))
def test_compare_power_small(a, b, e):
    p, q = e.numerator, e.denominator
    expect = (a**q > b**p) - (a**q < b**p)
    assert compare_power(a, b, e) == expect


def test_compare_power_large_exponents():
    rng = random.Random(1)
    for _ in range(40):
        a, b = rng.randint(2, 10**60), rng.randint(2, 10**60)
        e = Fraction(rng.randint(1, 700), rng.randint(1, 700))
        p, q = e.numerator, e.denominator
        expect = (a**q > b**p) - (a**q < b**p)
        assert compare_power(a, b, e) == expect
    # exact equality far past the direct threshold
    c = 3**50 + 2
    assert compare_power(c**457, c**331, Fraction(457, 331)) == 0
    assert compare_power(c**457 + 1, c**331, Fraction(457, 331)) == 1
    assert compare_power(c**457 - 1, c**331, Fraction(457, 331)) == -1


def test_compare_power_rejects_bad_input():
    with pytest.raises(ValueError):
        compare_power(0, 2, Fraction(1))
    with pytest.raises(ValueError):
        compare_power(2, 2, Fraction(-1))


@pytest.mark.parametrize("seed", range(40))
def test_synthetic_lattice_invariants(seed):
    lat = random_lattice(random.Random(seed))
    d = lat.degree
    assert 2 ** lat.lam(lat.top) <= d
    for lbl, node in lat.nodes.items():
        assert lat.aleph(lbl) <= 1
        assert (lbl == lat.top) == (lat.aleph(lbl) == 1)
        assert d % node.degree == 0
    for chain in lat.maximal_chains():
        assert check_aleph_monotonic(lat, chain).holds
    for small in lat.proper_nodes():
        for big in lat.strictly_above(small.label):
            assert check_lemma72(lat, small.label, big).holds
    ks = maximal_kstar(lat)
    assert verify_kstar(lat, ks.label).holds
