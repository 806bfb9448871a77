"""
Tropical permanent via the assignment problem.

maper(A) = max over permutations π of Σ a[i, π(i)]. It is computed with the
Hungarian method on the negated (cost) matrix; the dual potentials (u, v) it
maintains satisfy u[i] + a[i, j] + v[j] <= 0 with equality on the optimal
permutation, so C = diag(u) and D = diag(v) scale A to a matrix that is
<= 0 and has permanent 0.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

import numpy as np

from src.algebra.matrix import (
    Permutation, TropMatrix, diag, from_scaled, require_primal, require_square, tensor,
)
from src.algebra.semiring import EPSILON, POS_INF, TropScalar
from src.errors import InfeasibleError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AssignmentResult:
    """maper value, one optimal permutation and the dual scalings."""

    value: TropScalar
    perm: Optional[Permutation]
    row_duals: Optional[Tuple[TropScalar, ...]]
    col_duals: Optional[Tuple[TropScalar, ...]]

    @property
    def is_feasible(self) -> bool:
        return self.perm is not None

    def scalings(self) -> Tuple[TropMatrix, TropMatrix]:
        """
        diag(row_duals), diag(col_duals).

        Raises:
            InfeasibleError: the permanent is epsilon, so there are no duals.
        """
        if not self.is_feasible:
            raise InfeasibleError("maper is epsilon; no permutation has finite weight")
        return diag(self.row_duals), diag(self.col_duals)


class TensorPermanentCheck(NamedTuple):
    """maper(A ⊠ B) next to the two candidate closed forms."""

    lhs: TropScalar
    rhs_own_order: TropScalar
    rhs_cross_order: TropScalar


def _hungarian(cost: np.ndarray) -> Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """
    Minimum-cost perfect assignment with potentials (O(n³)).

    Forbidden cells carry +inf cost. ``cost`` is float64 or an object array
    of Python ints; the potentials share its dtype. Returns
    (assignment, u, v) with assignment[i] the column of row i, or None when
    no perfect assignment avoids the forbidden cells.
    """
    n = cost.shape[0]
    # 1-indexed layout: row/column 0 is the virtual root of the alternating tree
    padded = np.full((n + 1, n + 1), POS_INF, dtype=cost.dtype)
    padded[1:, 1:] = cost
    u = np.zeros(n + 1, dtype=cost.dtype)
    v = np.zeros(n + 1, dtype=cost.dtype)
    match = np.zeros(n + 1, dtype=int)  # match[j] = row assigned to column j
    way = np.zeros(n + 1, dtype=int)

    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = np.full(n + 1, POS_INF, dtype=cost.dtype)
        used = np.zeros(n + 1, dtype=bool)

        while True:
            used[j0] = True
            i0 = match[j0]
            free = ~used
            reduced = padded[i0] - u[i0] - v
            improve = free & np.asarray(reduced < minv, dtype=bool)
            minv[improve] = reduced[improve]
            way[improve] = j0

            candidates = np.where(free, minv, POS_INF)
            j1 = int(np.argmin(candidates))
            delta = candidates[j1]
            if delta == POS_INF:
                logger.debug("No augmenting path from row %d; assignment infeasible", i)
                return None

            u[match[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if match[j0] == 0:
                break

        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1

    assignment = np.zeros(n, dtype=int)
    for j in range(1, n + 1):
        assignment[match[j] - 1] = j - 1
    return assignment, u[1:], v[1:]


def maper(A: TropMatrix) -> AssignmentResult:
    """
    Tropical permanent of a square, +inf-free matrix.

    Returns:
        AssignmentResult with the permanent, an optimal permutation and
        finite duals; value epsilon with perm/duals None when every
        permutation selects an epsilon entry.
    """
    require_square(A, 'maper')
    require_primal(A, 'maper')

    scaled, scale = A.to_scaled(headroom=4 * (A.rows + 1) ** 2)
    solved = _hungarian(-scaled)
    if solved is None:
        return AssignmentResult(EPSILON, None, None, None)

    assignment, u, v = solved
    row_duals = tuple(from_scaled(x, scale) for x in u)
    col_duals = tuple(from_scaled(x, scale) for x in v)
    value = TropScalar.finite(-Fraction(int(u.sum() + v.sum()), scale))

    logger.debug("maper of %dx%d matrix = %s", A.rows, A.cols, value)
    return AssignmentResult(value, Permutation(tuple(assignment)), row_duals, col_duals)


def hungarian_scaling(A: TropMatrix) -> Tuple[TropMatrix, TropMatrix]:
    """
    Diagonal C, D with C ⊗ A ⊗ D <= 0 and maper(C ⊗ A ⊗ D) = 0.

    Raises:
        InfeasibleError: no permutation has finite weight.
    """
    result = maper(A)
    if not result.is_feasible:
        raise InfeasibleError(
            f"maper of the {A.rows}x{A.cols} matrix is epsilon; "
            "no permutation has finite weight"
        )
    return result.scalings()


def _tropical_power(value: TropScalar, k: int) -> TropScalar:
    """value^k in max-plus, i.e. k * value (epsilon stays epsilon)."""
    if value.is_epsilon:
        return EPSILON
    return TropScalar.finite(k * value.value)


def _sum(a: TropScalar, b: TropScalar) -> TropScalar:
    if a.is_epsilon or b.is_epsilon:
        return EPSILON
    return TropScalar.finite(a.value + b.value)


def maper_tensor_identity(A: TropMatrix, B: TropMatrix) -> TropScalar:
    """
    Closed form of maper(A ⊠ B) for A of order n and B of order m.

    A ⊠ B consists of m×m blocks of order n, so the permanent is
    m * maper(A) + n * maper(B).
    """
    require_square(A, 'maper_tensor_identity')
    require_square(B, 'maper_tensor_identity')
    n, m = A.rows, B.rows
    return _sum(_tropical_power(maper(A).value, m), _tropical_power(maper(B).value, n))


def maper_tensor_exponent_check(A: TropMatrix, B: TropMatrix) -> TensorPermanentCheck:
    """
    Compare maper(A ⊠ B) with both candidate exponent assignments.

    rhs_own_order pairs each permanent with the order of its own factor,
    n * maper(A) + m * maper(B); rhs_cross_order swaps them,
    m * maper(A) + n * maper(B). lhs is the permanent of the nm×nm tensor;
    it always equals rhs_cross_order.
    """
    require_square(A, 'maper_tensor_exponent_check')
    require_square(B, 'maper_tensor_exponent_check')
    n, m = A.rows, B.rows
    maper_a = maper(A).value
    maper_b = maper(B).value

    lhs = maper(tensor(A, B)).value
    rhs_own_order = _sum(_tropical_power(maper_a, n), _tropical_power(maper_b, m))
    rhs_cross_order = _sum(_tropical_power(maper_a, m), _tropical_power(maper_b, n))
    return TensorPermanentCheck(lhs, rhs_own_order, rhs_cross_order)


def tensor_scaling(A: TropMatrix, B: TropMatrix) -> Tuple[TropMatrix, TropMatrix]:
    """
    Diagonal scalings of A ⊠ B assembled from those of the factors.

    With C_A ⊗ A ⊗ D_A and C_B ⊗ B ⊗ D_B normalized, the mixed-product law
    gives P ⊗ (A ⊠ B) ⊗ Q = (C_A⊗A⊗D_A) ⊠ (C_B⊗B⊗D_B) for
    P = C_A ⊠ C_B and Q = D_A ⊠ D_B.
    """
    c_a, d_a = hungarian_scaling(A)
    c_b, d_b = hungarian_scaling(B)
    return tensor(c_a, c_b), tensor(d_a, d_b)


def tensor_witness_permutation(pi: Permutation, sigma: Permutation) -> Permutation:
    """
    Zero permutation of C ⊠ D built from zero permutations of C and D.

    For C of order n with c[j, π(j)] = 0 and D of order m with
    d[k, σ(k)] = 0, row k*n + j maps to σ(k)*n + π(j), which selects
    c[j, π(j)] + d[k, σ(k)] = 0 in every row.
    """
    n = pi.n
    images = [sigma(k) * n + pi(j) for k in range(sigma.n) for j in range(n)]
    return Permutation(tuple(images))
