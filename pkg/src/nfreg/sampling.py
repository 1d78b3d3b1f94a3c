"""Seeded pseudorandom field elements and vectors for the randomized checks."""
from __future__ import annotations

import random
from fractions import Fraction

from . import linalg
from .field import FieldElement, NumberField
from .heights import FieldVector


def random_rational(rng: random.Random, bound: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def random_element(fld: NumberField, rng: random.Random, bound: int = 5, max_den: int = 4) -> FieldElement:
    """Nonzero element with small rational power-basis coordinates."""
    while True:
        e = fld.element([random_rational(rng, bound, max_den) for _ in range(fld.d)])
        if not e.is_zero():
            return e


def random_integral_element(fld: NumberField, rng: random.Random, bound: int = 5) -> FieldElement:
    while True:
        e = fld.from_integral([rng.randint(-bound, bound) for _ in range(fld.d)])
        if not e.is_zero():
            return e


def random_vector(fld: NumberField, rng: random.Random, bound: int = 5, max_den: int = 4) -> FieldVector:
    """d entries that are Q-linearly independent."""
    while True:
        entries = [random_element(fld, rng, bound, max_den) for _ in range(fld.d)]
        if linalg.rank([list(e.coords) for e in entries]) == fld.d:
            return FieldVector(fld, tuple(entries))
