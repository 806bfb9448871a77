"""
Dense max-plus matrices.

Entries are stored row-major in a read-only numpy object array holding exact
payloads (int / Fraction) with epsilon and top kept as -inf and +inf. Every
product resolves the -inf/+inf clash explicitly: the primal rule lets epsilon
absorb, the dual rule lets top win.

The tensor product uses the block layout where the entries of the *right*
factor index the blocks:

    (A ⊠ B)[i*m + k, j*q + l] = a[k, l] + b[i, j]      (A is m×q, B is r×s)

which is the max-plus analogue of ``np.kron(B, A)``. The vec identity of the
equation solver only holds in this layout.
"""

import logging
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra.semiring import (
    EPSILON, NEG_INF, POS_INF, Number, TropScalar, as_payload, format_token,
)
from src.errors import DimensionError, DomainError

logger = logging.getLogger(__name__)

# Largest magnitude below which float64 holds every integer exactly
FLOAT64_EXACT_LIMIT = 2 ** 53


class TropMatrix:
    """Immutable dense matrix over the extended reals."""

    __slots__ = ('_data',)

    def __init__(self, data: np.ndarray):
        """
        Wrap an object array of storage payloads.

        Prefer ``TropMatrix.from_rows``; this constructor trusts its input
        apart from the shape checks.
        """
        data = np.array(data, dtype=object)
        if data.ndim != 2:
            raise DimensionError(f"Matrix data must be 2-dimensional, got {data.ndim} dimension(s)")
        if data.shape[0] == 0 or data.shape[1] == 0:
            raise DimensionError(f"Empty matrices are not supported (shape {data.shape})")
        data.flags.writeable = False
        self._data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> 'TropMatrix':
        """
        Build a matrix from nested rows of scalars.

        Args:
            rows: Rectangular rows; entries may be TropScalar, int, Fraction,
                finite floats, or float('-inf') / float('inf').
        """
        rows = [list(row) for row in rows]
        if not rows or not rows[0]:
            raise DimensionError("Empty matrices are not supported")
        width = len(rows[0])
        for index, row in enumerate(rows):
            if len(row) != width:
                raise DimensionError(
                    f"Row {index} has {len(row)} entries, expected {width}"
                )
        data = np.empty((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                data[i, j] = as_payload(value)
        return cls(data)

    @classmethod
    def column(cls, values: Iterable) -> 'TropMatrix':
        """Column vector from a flat sequence of scalars."""
        return cls.from_rows([[value] for value in values])

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._data.shape

    @property
    def payloads(self) -> np.ndarray:
        """Read-only object array of storage payloads."""
        return self._data

    def __getitem__(self, index: Tuple[int, int]) -> TropScalar:
        i, j = index
        return TropScalar.from_number(self._data[i, j])

    def row(self, i: int) -> List[TropScalar]:
        return [TropScalar.from_number(x) for x in self._data[i, :]]

    def column_values(self, j: int) -> List[TropScalar]:
        return [TropScalar.from_number(x) for x in self._data[:, j]]

    def to_rows(self) -> List[List[TropScalar]]:
        return [self.row(i) for i in range(self.rows)]

    def epsilon_mask(self) -> np.ndarray:
        return np.asarray(self._data == NEG_INF, dtype=bool)

    def top_mask(self) -> np.ndarray:
        return np.asarray(self._data == POS_INF, dtype=bool)

    def finite_mask(self) -> np.ndarray:
        return ~(self.epsilon_mask() | self.top_mask())

    def has_top(self) -> bool:
        return bool(self.top_mask().any())

    def is_finite(self) -> bool:
        return bool(self.finite_mask().all())

    def is_all_epsilon(self) -> bool:
        return bool(self.epsilon_mask().all())

    def to_scaled(self, headroom: int = 1) -> Tuple[np.ndarray, int]:
        """
        Integer-scaled copy for the numeric kernels.

        Returns ``(array, scale)`` where ``scale`` is the lcm of the
        denominators of the finite entries, so every finite entry of
        ``array`` is an integer. ``headroom`` bounds how far a kernel grows
        its values past the largest entry. While that bound stays below
        2**53 the array is float64; above it the array holds Python ints
        (with -inf/+inf as floats) and stays exact.

        Raises:
            DomainError: the bound exceeds the float range, where +-inf can
                no longer be mixed with the integers.
        """
        finite = [x for x in self._data.flat if x != NEG_INF and x != POS_INF]
        scale = math.lcm(*(Fraction(x).denominator for x in finite)) if finite else 1
        bound = max((abs(x) for x in finite), default=0) * scale * headroom

        if bound < FLOAT64_EXACT_LIMIT:
            scaled = self._data * scale if scale != 1 else self._data
            return np.asarray(scaled, dtype=np.float64), scale
        if bound > sys.float_info.max:
            raise DomainError(f"Scaled entries of the {self.rows}x{self.cols} matrix exceed the float range")

        logger.debug("Scaled magnitude %.3e exceeds float64 precision; using exact integers", float(bound))
        exact = np.empty(self.shape, dtype=object)
        for index, x in np.ndenumerate(self._data):
            exact[index] = x if x in (NEG_INF, POS_INF) else int(x * scale)
        return exact, scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._data == other._data))

    def __hash__(self) -> int:
        return hash((self.shape, tuple(self._data.flat)))

    def __repr__(self) -> str:
        body = '; '.join(' '.join(format_token(x) for x in row) for row in self.to_rows())
        return f"TropMatrix([{body}])"


def from_scaled(value, scale: int) -> TropScalar:
    """Inverse of ``to_scaled`` for one scalar."""
    if value in (NEG_INF, POS_INF):
        return TropScalar.from_number(value)
    return TropScalar.finite(Fraction(int(value), scale))


@dataclass(frozen=True)
class Permutation:
    """Bijection of {0, ..., n-1} stored as its image sequence."""

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise DomainError(f"Not a permutation: {images}")
        object.__setattr__(self, 'images', images)

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls(tuple(range(n)))

    @classmethod
    def from_one_based(cls, images: Iterable[int]) -> 'Permutation':
        return cls(tuple(x - 1 for x in images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def one_based(self) -> List[int]:
        return [x + 1 for x in self.images]

    def inverse(self) -> 'Permutation':
        inverse = [0] * self.n
        for i, j in enumerate(self.images):
            inverse[j] = i
        return Permutation(tuple(inverse))

    def weight(self, A: TropMatrix) -> TropScalar:
        """w(π, A) = Σ a[i, π(i)], epsilon if any selected entry is epsilon."""
        _require_square(A, 'weight')
        if A.rows != self.n:
            raise DimensionError(f"Permutation of order {self.n} on a {A.rows}x{A.cols} matrix")
        selected = [A.payloads[i, j] for i, j in enumerate(self.images)]
        if any(x == NEG_INF for x in selected):
            return EPSILON
        return TropScalar.from_number(sum(selected))

    def to_matrix(self) -> TropMatrix:
        data = np.full((self.n, self.n), NEG_INF, dtype=object)
        for i, j in enumerate(self.images):
            data[i, j] = 0
        return TropMatrix(data)


# --- validation helpers -----------------------------------------------------

def _require_same_shape(A: TropMatrix, B: TropMatrix, operation: str):
    if A.shape != B.shape:
        raise DimensionError(
            f"{operation}: shapes {A.rows}x{A.cols} and {B.rows}x{B.cols} differ"
        )


def _require_compatible(A: TropMatrix, B: TropMatrix, operation: str):
    if A.cols != B.rows:
        raise DimensionError(
            f"{operation}: {A.rows}x{A.cols} and {B.rows}x{B.cols} are not product compatible"
        )


def _require_square(A: TropMatrix, operation: str):
    if A.rows != A.cols:
        raise DimensionError(f"{operation}: matrix must be square, got {A.rows}x{A.cols}")


def require_square(A: TropMatrix, operation: str):
    _require_square(A, operation)


def require_primal(A: TropMatrix, operation: str):
    """Reject +inf entries, which have no meaning on the max-plus path."""
    if A.has_top():
        raise DomainError(f"{operation}: matrix contains +inf entries")


# --- payload kernels --------------------------------------------------------

def _primal_add(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Broadcast x + y with epsilon absorbing (-inf + +inf = -inf)."""
    absorbed = np.asarray(x == NEG_INF, dtype=bool) | np.asarray(y == NEG_INF, dtype=bool)
    with np.errstate(invalid='ignore'):
        total = x + y
    return np.where(absorbed, NEG_INF, total).astype(object)


def _dual_add(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Broadcast x + y with top winning the -inf/+inf clash."""
    x_eps = np.asarray(x == NEG_INF, dtype=bool)
    y_eps = np.asarray(y == NEG_INF, dtype=bool)
    x_top = np.asarray(x == POS_INF, dtype=bool)
    y_top = np.asarray(y == POS_INF, dtype=bool)
    clash = (x_eps & y_top) | (x_top & y_eps)
    with np.errstate(invalid='ignore'):
        total = x + y
    return np.where(clash, POS_INF, total).astype(object)


# --- operations --------------------------------------------------------------

def mat_oplus(A: TropMatrix, B: TropMatrix) -> TropMatrix:
    """A ⊕ B, the entrywise maximum."""
    _require_same_shape(A, B, 'oplus')
    return TropMatrix(np.maximum(A.payloads, B.payloads))


def mat_otimes(A: TropMatrix, B: TropMatrix) -> TropMatrix:
    """
    Max-plus product: (A ⊗ B)[i, j] = max_k a[i, k] + b[k, j].

    Epsilon absorbs on every term, including against +inf; this is what lets
    the residuation check multiply by a principal solution containing +inf.
    """
    _require_compatible(A, B, 'otimes')
    terms = _primal_add(A.payloads[:, :, None], B.payloads[None, :, :])
    return TropMatrix(terms.max(axis=1))


def mat_otimes_prime(A: TropMatrix, B: TropMatrix) -> TropMatrix:
    """Min-plus product with the dual clash rule: min_k a[i, k] ⊗' b[k, j]."""
    _require_compatible(A, B, 'otimes_prime')
    terms = _dual_add(A.payloads[:, :, None], B.payloads[None, :, :])
    return TropMatrix(terms.min(axis=1))


def scalar_mul(alpha, A: TropMatrix) -> TropMatrix:
    """α ⊗ A, adding α to every entry."""
    alpha = as_payload(alpha)
    return TropMatrix(_primal_add(np.full(A.shape, alpha, dtype=object), A.payloads))


def transpose(A: TropMatrix) -> TropMatrix:
    return TropMatrix(A.payloads.T)


def conjugate(A: TropMatrix) -> TropMatrix:
    """A# = -Aᵀ; epsilon entries become +inf and vice versa."""
    return TropMatrix(-A.payloads.T)


def tensor(A: TropMatrix, B: TropMatrix) -> TropMatrix:
    """
    Tropical tensor product A ⊠ B.

    Block (i, j) of the result is b[i, j] ⊗ A; the result has shape
    (A.rows * B.rows, A.cols * B.cols).
    """
    require_primal(A, 'tensor')
    require_primal(B, 'tensor')
    m, q = A.shape
    r, s = B.shape
    blocks = _primal_add(B.payloads[:, None, :, None], A.payloads[None, :, None, :])
    return TropMatrix(blocks.reshape(r * m, s * q))


def vec(X: TropMatrix) -> TropMatrix:
    """Column-major stacking into a column vector."""
    return TropMatrix(X.payloads.reshape(-1, 1, order='F'))


def unvec(v: TropMatrix, rows: int, cols: int) -> TropMatrix:
    """Inverse of ``vec`` for a target shape rows x cols."""
    if v.cols != 1 or v.rows != rows * cols:
        raise DimensionError(
            f"unvec: a {v.rows}x{v.cols} vector cannot fill a {rows}x{cols} matrix"
        )
    return TropMatrix(v.payloads.reshape(rows, cols, order='F'))


def diag(d: Sequence) -> TropMatrix:
    """Diagonal matrix with finite diagonal d and epsilon elsewhere."""
    values = [as_payload(x) for x in d]
    if not values:
        raise DimensionError("diag: empty diagonal")
    for index, value in enumerate(values):
        if value in (NEG_INF, POS_INF):
            raise DomainError(f"diag: entry {index} is not finite")
    data = np.full((len(values), len(values)), NEG_INF, dtype=object)
    for i, value in enumerate(values):
        data[i, i] = value
    return TropMatrix(data)


def identity(n: int) -> TropMatrix:
    """Unit matrix I = diag(0, ..., 0)."""
    return diag([0] * n)


def epsilon_matrix(rows: int, cols: int) -> TropMatrix:
    return TropMatrix(np.full((rows, cols), NEG_INF, dtype=object))


def diagonal_entries(A: TropMatrix) -> List[TropScalar]:
    _require_square(A, 'diagonal_entries')
    return [A[i, i] for i in range(A.rows)]


def mat_power(A: TropMatrix, k: int) -> TropMatrix:
    """A^k by repeated squaring; A^0 = I."""
    _require_square(A, 'power')
    if k < 0:
        raise DomainError(f"power: exponent must be non-negative, got {k}")
    result = identity(A.rows)
    base = A
    while k:
        if k & 1:
            result = mat_otimes(result, base)
        base = mat_otimes(base, base)
        k >>= 1
    return result


def leq(A: TropMatrix, B: TropMatrix) -> bool:
    """Entrywise A <= B."""
    _require_same_shape(A, B, 'leq')
    return bool(np.all(A.payloads <= B.payloads))


def is_diagonal(A: TropMatrix) -> bool:
    if A.rows != A.cols or A.has_top():
        return False
    finite = A.finite_mask()
    return bool(np.array_equal(finite, np.eye(A.rows, dtype=bool)))


def is_generalized_permutation(A: TropMatrix) -> bool:
    """Exactly one finite entry per row and per column, no +inf."""
    if A.rows != A.cols or A.has_top():
        return False
    finite = A.finite_mask()
    return bool((finite.sum(axis=0) == 1).all() and (finite.sum(axis=1) == 1).all())


def try_invert(A: TropMatrix) -> Optional[TropMatrix]:
    """
    Inverse of a generalized permutation matrix.

    Returns:
        A⁻¹ with (A⁻¹)[π(i), i] = -a[i, π(i)], or None when A is not
        invertible (the invertible max-plus matrices are exactly the
        generalized permutation matrices).
    """
    _require_square(A, 'try_invert')
    if not is_generalized_permutation(A):
        return None

    finite = A.finite_mask()
    inverse = np.full(A.shape, NEG_INF, dtype=object)
    for i in range(A.rows):
        j = int(np.flatnonzero(finite[i])[0])
        inverse[j, i] = -A.payloads[i, j]
    result = TropMatrix(inverse)

    if mat_otimes(A, result) != identity(A.rows):
        logger.warning("Inverse failed re-verification for %r", A)
        return None
    return result


def mixed_sum(A: TropMatrix, B: TropMatrix, alpha: Number, beta: Number) -> TropMatrix:
    """
    α ⊗ (A ⊠ I_m) ⊕ β ⊗ (I_n ⊠ B) for square A (n×n) and B (m×m).

    If x, y are eigenvectors of A, B for λ, μ then x ⊠ y is an eigenvector of
    this operator for max(α + λ, β + μ).
    """
    _require_square(A, 'mixed_sum')
    _require_square(B, 'mixed_sum')
    left = scalar_mul(alpha, tensor(A, identity(B.rows)))
    right = scalar_mul(beta, tensor(identity(A.rows), B))
    return mat_oplus(left, right)
