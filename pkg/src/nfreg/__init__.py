"""Exact and certified arithmetic for checking regulator lower bounds on number fields."""

__version__ = "0.1.0"

from .field import FieldElement, NumberField, make_field, minimal_poly, norm, trace  # noqa: E402
from .heights import FieldVector, arakelov_height, weil_height  # noqa: E402
from .ideals import f_k, lattice_index  # noqa: E402
from .units import RelativeExtension, UnitSystem, regulator, relative_norm, relative_regulator  # noqa: E402

__all__ = [
    "FieldElement",
    "FieldVector",
    "NumberField",
    "RelativeExtension",
    "UnitSystem",
    "arakelov_height",
    "f_k",
    "lattice_index",
    "make_field",
    "minimal_poly",
    "norm",
    "regulator",
    "relative_norm",
    "relative_regulator",
    "trace",
    "weil_height",
]
