"""Embedding matrices, trace forms and the discriminant functional f_k.

For a vector beta of d elements of a degree-d field k:

* ``embedding_matrix`` is (sigma_j(beta_i)), certified numerically;
* ``gram_trace_matrix`` is (Tr(beta_i beta_j)), exact; it equals M M^T;
* ``f_k(beta) = |det Gram| * prod_{v finite} ||beta||_v^{2 d_v}``, an exact
  positive integer equal to [J(beta) : M(beta)]^2 * D_k, and bounded above by
  H(beta)^(2d).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from . import linalg
from .field import FieldElement, trace
from .heights import FieldVector, arakelov_height, finite_part
from .lattice import DependentEntriesError, ModuleLattice, ideal_lattice, module_lattice
from .reports import MarginReport

__all__ = [
    "DependentEntriesError",
    "EmbeddingMatrix",
    "ModuleLattice",
    "embedding_matrix",
    "gram_trace_matrix",
    "f_k",
    "lattice_index",
    "verify_prop41",
]


@dataclass(frozen=True)
class EmbeddingMatrix:
    entries: list  # entries[i][j] = sigma_j(beta_i), mpc
    errors: list  # matching absolute error bounds
    precision: int

    def det(self) -> tuple:
        """Determinant with a perturbation bound (Hadamard on the row perturbations)."""
        with mpmath.workprec(self.precision):
            m = mpmath.matrix(self.entries)
            value = mpmath.det(m) if len(self.entries) else mpmath.mpc(1)
            norms = [mpmath.sqrt(mpmath.fsum(abs(x) ** 2 for x in row)) for row in self.entries]
            errs = [mpmath.fsum(row) for row in self.errors]
            bound = mpmath.fprod(n + e for n, e in zip(norms, errs)) - mpmath.fprod(norms)
            bound += mpmath.ldexp(mpmath.fprod(n + 1 for n in norms), -self.precision + 16)
        return value, bound


def _as_vector(vec) -> FieldVector:
    return vec if isinstance(vec, FieldVector) else FieldVector.of(vec)


def _check_length(vec: FieldVector) -> None:
    if len(vec) != vec.field.d:
        raise ValueError(f"vector has {len(vec)} entries, field degree is {vec.field.d}")


def embedding_matrix(vec: FieldVector | Sequence[FieldElement]) -> EmbeddingMatrix:
    vec = _as_vector(vec)
    _check_length(vec)
    fld = vec.field
    rows, errs = [], []
    for b in vec.entries:
        pairs = [fld.embed(b, j) for j in range(fld.d)]
        rows.append([p[0] for p in pairs])
        errs.append([p[1] for p in pairs])
    return EmbeddingMatrix(rows, errs, fld.working_precision)


def gram_trace_matrix(vec: FieldVector | Sequence[FieldElement]) -> list[list[Fraction]]:
    vec = _as_vector(vec)
    _check_length(vec)
    b = vec.entries
    n = len(b)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = trace(b[i] * b[j])
    return g


def _require_independent(vec: FieldVector) -> Fraction:
    det_g = linalg.det(gram_trace_matrix(vec))
    if det_g == 0:
        raise DependentEntriesError("vector entries are Q-linearly dependent")
    return det_g


def f_k(vec: FieldVector | Sequence[FieldElement]) -> int:
    vec = _as_vector(vec)
    _check_length(vec)
    det_g = _require_independent(vec)
    val = abs(det_g) * finite_part(vec) ** 2
    if val.denominator != 1 or val <= 0:
        raise ArithmeticError(f"f_k evaluated to {val}, not a positive integer")
    return int(val)


def lattice_index(vec: FieldVector | Sequence[FieldElement]) -> int:
    """[J(beta) : M(beta)] for the ideal J and the Z-module M generated by the entries."""
    vec = _as_vector(vec)
    _check_length(vec)
    _require_independent(vec)
    idx = module_lattice(vec.entries).index_in(ideal_lattice(vec.entries))
    if idx.denominator != 1:
        raise ArithmeticError(f"lattice index {idx} is not an integer")
    return int(idx)


def verify_prop41(vec: FieldVector | Sequence[FieldElement]) -> MarginReport:
    """f_k = index^2 * D_k exactly, and log f_k <= 2d log H with certified margin."""
    vec = _as_vector(vec)
    fld = vec.field
    fk = f_k(vec)
    idx = lattice_index(vec)
    identity_ok = fk == idx * idx * fld.abs_disc
    h = arakelov_height(vec)
    with mpmath.workprec(fld.working_precision):
        lhs = mpmath.log(fk)
        rhs = 2 * fld.d * h.value
        err = 2 * fld.d * h.error_bound
    return MarginReport(
        "fk-index-height",
        lhs,
        rhs,
        err,
        details={"f_k": fk, "index": idx, "D_k": fld.abs_disc},
        exact_ok=identity_ok,
    )
