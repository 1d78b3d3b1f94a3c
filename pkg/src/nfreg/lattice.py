"""Full-rank Z-lattices inside a number field, in integral-basis coordinates.

Two lattices matter: the Z-module spanned by the entries of a vector, and the
fractional ideal they generate. The ideal generated by b_1..b_n as an
O_k-module is the Z-span of the products b_i * w_j with w_j the integral
basis, so both are plain lattices and everything reduces to Hermite normal
forms and determinants.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .field import FieldElement, NumberField


class DependentEntriesError(ValueError):
    """Vector entries are Q-linearly dependent (the vector is not in B(k))."""


@dataclass(frozen=True)
class ModuleLattice:
    field: NumberField
    basis: tuple[tuple[Fraction, ...], ...]  # HNF rows, integral-basis coordinates

    @property
    def rank(self) -> int:
        return len(self.basis)

    def covolume(self) -> Fraction:
        """|det| of the basis: the index [O_k : L] when L is inside O_k, its inverse-scaled analogue otherwise."""
        if self.rank != self.field.d:
            raise DependentEntriesError("lattice is not of full rank")
        return abs(linalg.det([list(r) for r in self.basis]))

    def index_in(self, other: "ModuleLattice") -> Fraction:
        """[other : self] for self contained in other."""
        return self.covolume() / other.covolume()


def _lattice(field: NumberField, generators: Sequence[FieldElement]) -> ModuleLattice:
    rows = [field.integral_coords(g) for g in generators]
    basis, _ = linalg.lattice_basis(rows)
    return ModuleLattice(field, tuple(tuple(r) for r in basis))


def module_lattice(entries: Sequence[FieldElement]) -> ModuleLattice:
    """Z-module generated by the entries."""
    field = entries[0].field
    return _lattice(field, entries)


def ideal_lattice(entries: Sequence[FieldElement]) -> ModuleLattice:
    """Fractional ideal generated by the entries, as the Z-span of entries times integral basis."""
    field = entries[0].field
    omegas = [field.element(row) for row in field.integral_basis]
    products = [b * w for b in entries if not b.is_zero() for w in omegas]
    return _lattice(field, products)


def ideal_norm(entries: Sequence[FieldElement]) -> Fraction:
    """Absolute norm of the fractional ideal generated by the entries."""
    if all(e.is_zero() for e in entries):
        raise ValueError("ideal generated by the zero vector")
    return ideal_lattice(entries).covolume()
