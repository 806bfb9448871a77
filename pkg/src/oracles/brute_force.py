"""
Brute-force reference implementations.

Permanents by enumerating every permutation, cycle means by enumerating every
elementary cycle. They share nothing with the solvers beyond the scalar and
matrix types. Inputs above the configured size guards raise OracleSizeError.
"""

import itertools
from fractions import Fraction
from typing import Optional, Tuple

from src.algebra.matrix import (
    Permutation, TropMatrix, mat_otimes, require_primal, require_square, scalar_mul,
)
from src.algebra.semiring import EPSILON, NEG_INF, TropScalar
from src.config import ORACLE_MAX_CYCLE, ORACLE_MAX_PERMANENT
from src.errors import DimensionError, OracleSizeError


def _guard(A: TropMatrix, limit: int, name: str):
    require_square(A, name)
    require_primal(A, name)
    if A.rows > limit:
        raise OracleSizeError(f"{name}: order {A.rows} exceeds the oracle limit {limit}")


def brute_maper(A: TropMatrix) -> Tuple[TropScalar, Optional[Permutation]]:
    """Maximum weight over all n! permutations, with the first maximizer found."""
    _guard(A, ORACLE_MAX_PERMANENT, 'brute_maper')
    entries = A.payloads
    n = A.rows

    best_value = None
    best_perm = None
    for images in itertools.permutations(range(n)):
        selected = [entries[i, images[i]] for i in range(n)]
        if any(x == NEG_INF for x in selected):
            continue
        weight = sum(selected)
        if best_value is None or weight > best_value:
            best_value, best_perm = weight, images

    if best_value is None:
        return EPSILON, None
    return TropScalar.finite(best_value), Permutation(best_perm)


def brute_cycle_mean(A: TropMatrix) -> TropScalar:
    """
    Maximum mean over all elementary cycles.

    Each cycle is enumerated once, from its smallest node, by depth-first
    search over larger nodes.
    """
    _guard(A, ORACLE_MAX_CYCLE, 'brute_cycle_mean')
    entries = A.payloads
    n = A.rows
    best = None

    def extend(start: int, node: int, weight, length: int, visited: set):
        nonlocal best
        for nxt in range(start, n):
            arc = entries[node, nxt]
            if arc == NEG_INF:
                continue
            if nxt == start:
                mean = Fraction(weight + arc) / (length + 1)
                if best is None or mean > best:
                    best = mean
            elif nxt not in visited:
                visited.add(nxt)
                extend(start, nxt, weight + arc, length + 1, visited)
                visited.remove(nxt)

    for start in range(n):
        extend(start, start, 0, 0, {start})

    if best is None:
        return EPSILON
    return TropScalar.finite(best)


def brute_eigen_check(A: TropMatrix, eigenvalue: TropScalar, x: TropMatrix) -> bool:
    """True iff A ⊗ x = λ ⊗ x and x is not all epsilon."""
    if x.cols != 1 or A.cols != x.rows:
        raise DimensionError(
            f"brute_eigen_check: A is {A.rows}x{A.cols}, x is {x.rows}x{x.cols}"
        )
    if x.is_all_epsilon():
        return False
    return mat_otimes(A, x) == scalar_mul(eigenvalue, x)
