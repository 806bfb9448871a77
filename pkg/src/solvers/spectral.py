"""
Max-plus spectral theory: maximum cycle mean, Kleene star, eigenvectors and
irreducibility.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import networkx as nx
import numpy as np

from src.algebra.matrix import (
    TropMatrix, epsilon_matrix, identity, mat_oplus, mat_otimes, mat_power,
    require_primal, require_square, scalar_mul, tensor,
)
from src.algebra.semiring import EPSILON, NEG_INF, TropScalar, otimes
from src.errors import TropicalError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EigenResult:
    """Eigenvalue λ(A) with one eigenvector."""

    eigenvalue: TropScalar
    eigenvector: TropMatrix
    finite_eigenvector: bool


def max_cycle_mean(A: TropMatrix) -> TropScalar:
    """
    λ(A), the maximum mean weight of a cycle, by Karp's recursion.

    D_k(v) is the heaviest walk of exactly k arcs ending in v (starting
    anywhere), and λ(A) = max_v min_k (D_n(v) - D_k(v)) / (n - k).

    Returns:
        The exact cycle mean, or epsilon when the digraph of finite entries
        is acyclic.
    """
    require_square(A, 'max_cycle_mean')
    require_primal(A, 'max_cycle_mean')
    n = A.rows
    weights, scale = A.to_scaled(headroom=2 * (n + 1))

    walks = np.full((n + 1, n), NEG_INF, dtype=weights.dtype)
    walks[0] = 0
    for k in range(1, n + 1):
        walks[k] = (walks[k - 1][:, None] + weights).max(axis=0)

    best = None
    for v in range(n):
        if walks[n, v] == NEG_INF:
            continue
        mean = min(
            Fraction(int(walks[n, v] - walks[k, v]), (n - k) * scale)
            for k in range(n)
            if walks[k, v] != NEG_INF
        )
        if best is None or mean > best:
            best = mean

    if best is None:
        return EPSILON
    return TropScalar.finite(best)


def kleene_star(A: TropMatrix) -> Optional[TropMatrix]:
    """
    Γ(A) = I ⊕ A ⊕ A² ⊕ ... ⊕ A^(n-1).

    Returns:
        Γ(A) when λ(A) <= 0, None (divergent) when some cycle is positive.
    """
    require_square(A, 'kleene_star')
    require_primal(A, 'kleene_star')
    lam = max_cycle_mean(A)
    if lam.is_finite and lam.value > 0:
        return None
    return mat_power(mat_oplus(identity(A.rows), A), A.rows - 1)


def _normalized(A: TropMatrix, lam: TropScalar) -> TropMatrix:
    return scalar_mul(-lam.value, A)


def _weak_closure(normalized: TropMatrix) -> TropMatrix:
    """A_λ ⊗ Γ(A_λ); its zero diagonal entries mark the critical nodes."""
    star = kleene_star(normalized)
    if star is None:
        raise TropicalError("Normalized matrix has a positive cycle; λ(A) is not its maximum cycle mean")
    return mat_otimes(normalized, star)


def critical_nodes(A: TropMatrix) -> List[int]:
    """
    Nodes lying on a cycle of mean λ(A).

    j is critical iff (A_λ ⊗ Γ(A_λ))[j, j] = 0 where A_λ = (-λ) ⊗ A.
    """
    require_square(A, 'critical_nodes')
    lam = max_cycle_mean(A)
    if lam.is_epsilon:
        return []
    plus = _weak_closure(_normalized(A, lam))
    return [j for j in range(A.rows) if plus.payloads[j, j] == 0]


def _epsilon_column_indicator(A: TropMatrix) -> TropMatrix:
    """Unit-like vector at an all-epsilon column; one exists when A is acyclic."""
    columns = np.flatnonzero(A.epsilon_mask().all(axis=0))
    if columns.size == 0:
        raise TropicalError("Acyclic digraph without an all-epsilon column")
    indicator = epsilon_matrix(A.rows, 1).payloads.copy()
    indicator[int(columns[0]), 0] = 0
    return TropMatrix(indicator)


def eigenpair(A: TropMatrix) -> EigenResult:
    """
    λ(A) together with one eigenvector x ≠ ε, A ⊗ x = λ(A) ⊗ x.

    For finite λ the eigenvector is a critical column of the weak closure of
    A_λ; for λ = ε it is the indicator of an all-epsilon column of A.
    """
    require_square(A, 'eigenpair')
    require_primal(A, 'eigenpair')
    lam = max_cycle_mean(A)

    if lam.is_epsilon:
        x = _epsilon_column_indicator(A)
        return EigenResult(lam, x, x.is_finite())

    plus = _weak_closure(_normalized(A, lam))
    for j in range(A.rows):
        if plus.payloads[j, j] != 0:
            continue
        x = TropMatrix(plus.payloads[:, j:j + 1])
        if mat_otimes(A, x) == scalar_mul(lam, x):
            logger.debug("Eigenvector taken from critical column %d", j)
            return EigenResult(lam, x, x.is_finite())
        logger.warning("Critical column %d failed the eigen-equation", j)

    raise TropicalError(f"No critical column found for λ = {lam}")


def tensor_eigenpair(A: TropMatrix, B: TropMatrix) -> EigenResult:
    """
    Eigenpair of A ⊠ B assembled from the factors: (λ(A) + λ(B), x ⊠ y).
    """
    left = eigenpair(A)
    right = eigenpair(B)
    vector = tensor(left.eigenvector, right.eigenvector)
    return EigenResult(
        otimes(left.eigenvalue, right.eigenvalue), vector, vector.is_finite()
    )


def _digraph(A: TropMatrix) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(A.rows))
    rows, cols = np.nonzero(~A.epsilon_mask())
    graph.add_edges_from(zip(rows.tolist(), cols.tolist()))
    return graph


def strongly_connected_components(A: TropMatrix) -> List[List[int]]:
    """Strongly connected components of the digraph of non-epsilon entries."""
    require_square(A, 'strongly_connected_components')
    components = [sorted(c) for c in nx.strongly_connected_components(_digraph(A))]
    return sorted(components)


def is_irreducible(A: TropMatrix) -> bool:
    """True iff the digraph with an arc (i, j) for every a[i, j] ≠ ε is strongly connected."""
    require_square(A, 'is_irreducible')
    return nx.is_strongly_connected(_digraph(A))
