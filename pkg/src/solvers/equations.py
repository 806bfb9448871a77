"""
Residuation and tropical matrix equations.

A ⊗ x <= b  <=>  x <= A# ⊗' b =: x̄, so A ⊗ x = b is solvable iff x̄ solves
it. The matrix equation ⊕_i A_i ⊗ X ⊗ B_i = C is reduced to the vector
system D ⊗ vec(X) = vec(C) with D = ⊕_i A_i ⊠ B_iᵀ.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.algebra.matrix import (
    TropMatrix, conjugate, mat_oplus, mat_otimes, mat_otimes_prime, tensor,
    transpose, unvec, vec,
)
from src.errors import DimensionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatrixEquation:
    """⊕_i A_i ⊗ X ⊗ B_i = C with X of shape q x u."""

    terms: Tuple[Tuple[TropMatrix, TropMatrix], ...]
    rhs: TropMatrix

    def __post_init__(self):
        terms = tuple((a, b) for a, b in self.terms)
        if not terms:
            raise DimensionError("Matrix equation needs at least one term")
        object.__setattr__(self, 'terms', terms)

        first_a, first_b = terms[0]
        for index, (a, b) in enumerate(terms):
            if a.shape != first_a.shape:
                raise DimensionError(
                    f"Term {index}: A is {a.rows}x{a.cols}, expected {first_a.rows}x{first_a.cols}"
                )
            if b.shape != first_b.shape:
                raise DimensionError(
                    f"Term {index}: B is {b.rows}x{b.cols}, expected {first_b.rows}x{first_b.cols}"
                )
        if self.rhs.shape != (first_a.rows, first_b.cols):
            raise DimensionError(
                f"Right-hand side is {self.rhs.rows}x{self.rhs.cols}, "
                f"expected {first_a.rows}x{first_b.cols}"
            )

    @property
    def unknown_shape(self) -> Tuple[int, int]:
        a, b = self.terms[0]
        return a.cols, b.rows


@dataclass(frozen=True)
class EquationReport:
    """Outcome of solving a matrix equation through its vectorized form."""

    operator: TropMatrix
    principal: TropMatrix
    solvable: bool
    solution: Optional[TropMatrix]
    residual_rows: Tuple[int, ...]


def principal_solution(A: TropMatrix, b: TropMatrix) -> TropMatrix:
    """
    Greatest x with A ⊗ x <= b.

    x̄ = A# ⊗' b, componentwise x̄_j = min_i (b_i - a_ij); epsilon entries of A
    impose no constraint and contribute +inf.
    """
    if b.cols != 1 or A.rows != b.rows:
        raise DimensionError(
            f"principal_solution: A is {A.rows}x{A.cols}, b is {b.rows}x{b.cols}"
        )
    return mat_otimes_prime(conjugate(A), b)


def _residual_rows(A: TropMatrix, x: TropMatrix, b: TropMatrix) -> Tuple[int, ...]:
    mismatch = np.asarray(mat_otimes(A, x).payloads != b.payloads, dtype=bool)
    return tuple(int(i) for i in np.flatnonzero(mismatch[:, 0]))


def is_solvable(A: TropMatrix, b: TropMatrix) -> bool:
    """True iff A ⊗ x = b has a solution, i.e. iff A ⊗ x̄ = b."""
    return not _residual_rows(A, principal_solution(A, b), b)


def assemble_operator(equation: MatrixEquation) -> TropMatrix:
    """D = ⊕_i A_i ⊠ B_iᵀ, of shape (p·v) x (q·u)."""
    operator = None
    for a, b in equation.terms:
        term = tensor(a, transpose(b))
        operator = term if operator is None else mat_oplus(operator, term)
    return operator


def evaluate_equation(equation: MatrixEquation, X: TropMatrix) -> TropMatrix:
    """Direct evaluation of ⊕_i A_i ⊗ X ⊗ B_i."""
    if X.shape != equation.unknown_shape:
        q, u = equation.unknown_shape
        raise DimensionError(f"X is {X.rows}x{X.cols}, expected {q}x{u}")
    total = None
    for a, b in equation.terms:
        term = mat_otimes(mat_otimes(a, X), b)
        total = term if total is None else mat_oplus(total, term)
    return total


def solve_matrix_equation(equation: MatrixEquation) -> EquationReport:
    """
    Solve ⊕_i A_i ⊗ X ⊗ B_i = C via D ⊗ vec(X) = vec(C).

    The reported solution, when one exists, is the greatest one. Components
    of the principal solution that no equation constrains stay +inf.
    """
    operator = assemble_operator(equation)
    target = vec(equation.rhs)
    principal = principal_solution(operator, target)
    residual = _residual_rows(operator, principal, target)
    solvable = not residual

    logger.debug(
        "Operator %dx%d, %d residual row(s)", operator.rows, operator.cols, len(residual)
    )
    solution = unvec(principal, *equation.unknown_shape) if solvable else None
    return EquationReport(operator, principal, solvable, solution, residual)


def residual_rows(A: TropMatrix, b: TropMatrix) -> List[int]:
    """Rows where A ⊗ x̄ differs from b (empty iff solvable)."""
    return list(_residual_rows(A, principal_solution(A, b), b))
