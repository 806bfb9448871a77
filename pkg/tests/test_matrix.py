from fractions import Fraction

import numpy as np
import pytest

from factories import (
    E, M, random_diagonal, random_finite_matrix, random_generalized_permutation, random_matrix,
)
from src.algebra.matrix import (
    Permutation, TropMatrix, conjugate, diag, diagonal_entries, epsilon_matrix, identity,
    is_diagonal, is_generalized_permutation, leq, mat_oplus, mat_otimes, mat_otimes_prime,
    mat_power, scalar_mul, tensor, transpose, try_invert, unvec, vec,
)
from src.algebra.semiring import EPSILON, NEG_INF, POS_INF, TOP, TropScalar
from src.errors import DimensionError, DomainError

T = POS_INF


class TestConstruction:

    def test_from_rows_and_access(self):
        A = M([1, E], [Fraction(1, 2), 2])
        assert A.shape == (2, 2)
        assert A[0, 1] == EPSILON
        assert A[1, 0] == TropScalar.finite(Fraction(1, 2))
        assert A.column_values(1) == [EPSILON, TropScalar.finite(2)]

    def test_storage_is_read_only(self):
        A = M([1, 2])
        with pytest.raises(ValueError):
            A.payloads[0, 0] = 5

    @pytest.mark.parametrize('rows', [[], [[]], [[1, 2], [3]]])
    def test_rejects_empty_or_ragged(self, rows):
        with pytest.raises(DimensionError):
            TropMatrix.from_rows(rows)

    def test_masks(self):
        A = M([E, 0], [T, 3])
        assert A.epsilon_mask().tolist() == [[True, False], [False, False]]
        assert A.has_top()
        assert not A.is_finite()
        assert epsilon_matrix(2, 3).is_all_epsilon()

    def test_scaled_copy_is_float_for_small_entries(self):
        scaled, scale = M([Fraction(1, 2), Fraction(1, 3)], [E, 1]).to_scaled()
        assert scale == 6
        assert scaled.dtype == np.float64
        assert scaled.tolist() == [[3.0, 2.0], [NEG_INF, 6.0]]

    def test_scaled_copy_keeps_large_integers_exact(self):
        scaled, scale = M([10 ** 17, 0], [E, 10 ** 17 + 1]).to_scaled()
        assert scale == 1
        assert scaled.dtype == object
        assert scaled.tolist() == [[10 ** 17, 0], [NEG_INF, 10 ** 17 + 1]]
        assert type(scaled[1, 1]) is int

    def test_scaled_copy_with_coprime_denominators(self):
        scaled, scale = M([Fraction(1, 2 ** 30 - 35), Fraction(1, 2 ** 31 - 1)]).to_scaled()
        assert scale == (2 ** 30 - 35) * (2 ** 31 - 1)
        assert scaled.tolist() == [[2 ** 31 - 1, 2 ** 30 - 35]]

    def test_scaled_copy_headroom(self):
        assert M([2 ** 50]).to_scaled()[0].dtype == np.float64
        assert M([2 ** 50]).to_scaled(headroom=8)[0].dtype == object

    def test_scaled_copy_beyond_float_range(self):
        with pytest.raises(DomainError):
            M([10 ** 400]).to_scaled()

    def test_equality_is_exact(self):
        assert M([1, 2]) == M([1, 2])
        assert M([1, 2]) != M([1, 3])
        assert M([1, 2]) != M([1], [2])
        assert hash(M([Fraction(2, 2), E])) == hash(M([1, E]))


class TestOperationExamples:

    def test_oplus(self):
        assert mat_oplus(M([1, E], [0, 2]), M([0, 3], [E, 2])) == M([1, 3], [0, 2])

    def test_oplus_identity_and_idempotency(self, rng):
        A = random_matrix(rng, 3, 4)
        assert mat_oplus(A, A) == A
        assert mat_oplus(A, epsilon_matrix(3, 4)) == A

    def test_oplus_shape_mismatch_names_both_shapes(self):
        with pytest.raises(DimensionError, match=r'2x2.*1x2'):
            mat_oplus(M([1, 2], [3, 4]), M([1, 2]))

    def test_otimes(self):
        assert mat_otimes(M([2, 1], [0, 3]), M([0], [1])) == M([2], [4])

    def test_otimes_identities(self, rng):
        A = random_matrix(rng, 3, 3)
        assert mat_otimes(identity(3), A) == A
        assert mat_otimes(epsilon_matrix(3, 3), A).is_all_epsilon()

    def test_otimes_incompatible(self):
        with pytest.raises(DimensionError):
            mat_otimes(M([1, 2]), M([1, 2]))

    def test_otimes_prime(self):
        assert mat_otimes_prime(M([0, T], [-2, -1]), M([3], [4])) == M([3], [1])

    def test_otimes_prime_unit_and_top_row(self, rng):
        A = random_finite_matrix(rng, 2, 3)
        dual_unit = M([0, T], [T, 0])
        assert mat_otimes_prime(dual_unit, A) == A
        assert mat_otimes_prime(M([T, T]), M([E], [4])) == M([T])

    def test_scalar_mul(self, rng):
        A = random_matrix(rng, 2, 3)
        assert scalar_mul(5, M([0, 1])) == M([5, 6])
        assert scalar_mul(0, A) == A
        assert scalar_mul(EPSILON, A).is_all_epsilon()

    def test_conjugate(self, rng):
        A = random_matrix(rng, 3, 2)
        assert conjugate(M([0, 2], [E, 1])) == M([0, T], [-2, -1])
        assert conjugate(conjugate(A)) == A
        assert conjugate(M([E])) == M([T])

    def test_tensor(self, rng):
        A = random_matrix(rng, 2, 3)
        assert tensor(M([0, 1]), M([2], [3])) == M([2, 3], [3, 4])
        assert tensor(A, M([0])) == A
        assert tensor(identity(2), identity(3)) == identity(6)

    def test_tensor_block_layout(self):
        A = M([1, 2], [3, 4])
        B = M([10, E], [0, 20])
        # block (i, j) is b[i, j] ⊗ A
        assert tensor(A, B) == M(
            [11, 12, E, E],
            [13, 14, E, E],
            [1, 2, 21, 22],
            [3, 4, 23, 24],
        )

    def test_tensor_rejects_top(self):
        with pytest.raises(DomainError):
            tensor(M([T]), M([0]))

    def test_vec(self):
        assert vec(M([1, 2], [3, 4])) == M([1], [3], [2], [4])
        assert vec(M([1], [2])) == M([1], [2])
        assert vec(M([E, 0])) == M([E], [0])

    def test_unvec(self):
        assert unvec(M([1], [3], [2], [4]), 2, 2) == M([1, 2], [3, 4])
        assert unvec(M([5]), 1, 1) == M([5])
        assert unvec(M([1], [2]), 1, 2) == M([1, 2])

    def test_unvec_length_mismatch(self):
        with pytest.raises(DimensionError):
            unvec(M([1], [2], [3]), 2, 2)

    def test_diag(self):
        assert diag([0, 0]) == identity(2)
        assert diag([1]) == M([1])
        assert diag([-2, -3]) == M([-2, E], [E, -3])

    def test_diag_rejects_non_finite(self):
        with pytest.raises(DomainError):
            diag([0, NEG_INF])

    def test_try_invert(self):
        assert try_invert(M([E, 2], [3, E])) == M([E, -3], [-2, E])
        assert try_invert(identity(3)) == identity(3)
        assert try_invert(M([0, 0], [E, 0])) is None

    def test_try_invert_non_square(self):
        with pytest.raises(DimensionError):
            try_invert(M([0, E]))

    def test_power_and_leq(self):
        A = M([E, -1], [-1, E])
        assert mat_power(A, 0) == identity(2)
        assert mat_power(A, 2) == M([-2, E], [E, -2])
        assert leq(M([E, 1]), M([0, 1]))
        assert not leq(M([2, 1]), M([0, 1]))

    def test_structure_predicates(self):
        assert is_diagonal(diag([1, 2]))
        assert not is_diagonal(M([1, 0], [E, 2]))
        assert is_generalized_permutation(M([E, 2], [3, E]))
        assert not is_generalized_permutation(M([E, T], [3, E]))
        assert diagonal_entries(M([1, 2], [3, 4])) == [TropScalar.finite(1), TropScalar.finite(4)]


class TestPermutation:

    def test_rejects_non_bijection(self):
        with pytest.raises(DomainError):
            Permutation((0, 0, 2))

    def test_one_based_round_trip(self):
        perm = Permutation.from_one_based([2, 3, 1])
        assert perm.images == (1, 2, 0)
        assert perm.one_based() == [2, 3, 1]
        assert perm.inverse().images == (2, 0, 1)

    def test_weight(self):
        A = M([2, 1], [0, 3])
        assert Permutation.identity(2).weight(A) == TropScalar.finite(5)
        assert Permutation((1, 0)).weight(A) == TropScalar.finite(1)
        assert Permutation((1, 0)).weight(M([0, E], [0, 0])) == EPSILON

    def test_to_matrix_is_invertible(self):
        P = Permutation((2, 0, 1)).to_matrix()
        assert is_generalized_permutation(P)
        assert mat_otimes(P, try_invert(P)) == identity(3)


def _dims(rng, count, high=4):
    return [int(x) for x in rng.integers(1, high + 1, size=count)]


class TestTensorLaws:

    def test_mixed_product(self, rng):
        for _ in range(200):
            p, q, s, u, v, w = _dims(rng, 6)
            A, C = random_matrix(rng, p, q), random_matrix(rng, q, s)
            B, D = random_matrix(rng, u, v), random_matrix(rng, v, w)
            assert mat_otimes(tensor(A, B), tensor(C, D)) == tensor(mat_otimes(A, C), mat_otimes(B, D))

    def test_transpose(self, rng):
        for _ in range(100):
            p, q, u, v = _dims(rng, 4)
            A, B = random_matrix(rng, p, q), random_matrix(rng, u, v)
            assert transpose(tensor(A, B)) == tensor(transpose(A), transpose(B))

    def test_tensor_inverse(self, rng):
        for _ in range(100):
            n, m = _dims(rng, 2, high=5)
            A = random_generalized_permutation(rng, n)
            B = random_generalized_permutation(rng, m)
            inverse = try_invert(tensor(A, B))
            assert inverse == tensor(try_invert(A), try_invert(B))
            assert mat_otimes(tensor(A, B), inverse) == identity(n * m)

    def test_tensor_of_diagonals_is_diagonal(self, rng):
        for _ in range(50):
            n, m = _dims(rng, 2)
            assert is_diagonal(tensor(random_diagonal(rng, n), random_diagonal(rng, m)))

    def test_unvec_inverts_vec(self, rng):
        for _ in range(100):
            rows, cols = _dims(rng, 2, high=5)
            X = random_matrix(rng, rows, cols)
            assert unvec(vec(X), rows, cols) == X


def _below(bound: TropMatrix, rng) -> TropMatrix:
    """A vector entrywise <= bound: finite parts lowered, +inf capped, epsilon kept."""
    values = []
    for x in bound.payloads[:, 0]:
        if x == NEG_INF:
            values.append(NEG_INF)
        else:
            values.append(min(x, 10) - int(rng.integers(0, 5)))
    return TropMatrix.column(values)


class TestResiduation:

    def test_greatest_subsolution(self, rng):
        for _ in range(200):
            rows, cols = _dims(rng, 2)
            A = random_matrix(rng, rows, cols)
            b = random_matrix(rng, rows, 1, epsilon_density=0.1)
            bound = mat_otimes_prime(conjugate(A), b)

            x = random_finite_matrix(rng, cols, 1)
            assert leq(mat_otimes(A, x), b) == leq(x, bound)

            below = _below(bound, rng)
            assert leq(mat_otimes(A, below), b)

            finite = np.flatnonzero(bound.finite_mask()[:, 0])
            if finite.size:
                raised = below.payloads.copy()
                j = int(rng.choice(finite))
                raised[j, 0] = bound.payloads[j, 0] + 1
                assert not leq(mat_otimes(A, TropMatrix(raised)), b)

    def test_epsilon_column_leaves_component_unconstrained(self):
        bound = mat_otimes_prime(conjugate(M([E, 0], [E, 1])), M([3], [4]))
        assert bound[0, 0] == TOP
        assert bound[1, 0] == TropScalar.finite(3)
