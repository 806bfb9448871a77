import time
from fractions import Fraction

import pytest

from factories import (
    E, M, random_diagonal, random_finite_matrix, random_matrix, random_prime_fraction_matrix,
    random_with_finite_maper,
)
from src.algebra.matrix import (
    Permutation, TropMatrix, diagonal_entries, identity, leq, mat_otimes, tensor,
)
from src.algebra.semiring import EPSILON, POS_INF, TropScalar
from src.errors import DimensionError, DomainError, InfeasibleError
from src.oracles.brute_force import brute_maper
from src.solvers.assignment import (
    hungarian_scaling, maper, maper_tensor_exponent_check, maper_tensor_identity,
    tensor_scaling, tensor_witness_permutation,
)


def f(value) -> TropScalar:
    return TropScalar.finite(value)


def zeros(n: int) -> TropMatrix:
    return TropMatrix.from_rows([[0] * n for _ in range(n)])


def scaled(A: TropMatrix, C: TropMatrix, D: TropMatrix) -> TropMatrix:
    return mat_otimes(mat_otimes(C, A), D)


def diagonal_sum(C: TropMatrix):
    return sum(x.value for x in diagonal_entries(C))


class TestMaper:

    def test_two_by_two(self):
        result = maper(M([2, 1], [0, 3]))
        assert result.value == f(5)
        assert result.perm == Permutation.identity(2)
        assert result.is_feasible

    def test_unit_matrix(self):
        result = maper(identity(4))
        assert result.value == f(0)
        assert result.perm == Permutation.identity(4)

    def test_epsilon_column_is_infeasible(self):
        result = maper(M([E, 1], [E, 2]))
        assert result.value == EPSILON
        assert result.perm is None
        assert result.row_duals is None and result.col_duals is None

    def test_fractional_entries_stay_exact(self):
        result = maper(M([Fraction(1, 2), Fraction(1, 3)], [0, Fraction(1, 6)]))
        assert result.value == f(Fraction(2, 3))

    def test_forced_anti_diagonal(self):
        result = maper(M([E, 7, E], [E, E, -2], [4, E, E]))
        assert result.value == f(9)
        assert result.perm.one_based() == [2, 3, 1]

    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            maper(M([1, 2]))

    def test_rejects_top(self):
        with pytest.raises(DomainError):
            maper(M([POS_INF]))

    def test_duals_certify_value(self, rng):
        for _ in range(50):
            A = random_with_finite_maper(rng, int(rng.integers(1, 7)))
            result = maper(A)
            assert all(x.is_finite for x in result.row_duals + result.col_duals)
            total = sum(x.value for x in result.row_duals + result.col_duals)
            assert result.value == f(-total)

    def test_agrees_with_oracle(self, rng):
        for _ in range(300):
            A = random_matrix(rng, *([int(rng.integers(1, 8))] * 2))
            result = maper(A)
            expected, _ = brute_maper(A)
            assert result.value == expected
            if result.is_feasible:
                assert result.perm.weight(A) == result.value
            else:
                assert result.perm is None

    def test_dense_runtime(self, rng):
        A = random_finite_matrix(rng, 200, 200)
        start = time.perf_counter()
        C, D = hungarian_scaling(A)
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0
        assert maper(A).value == f(-(diagonal_sum(C) + diagonal_sum(D)))

    def test_coprime_denominators_stay_exact(self, rng):
        for _ in range(20):
            A = random_prime_fraction_matrix(rng)
            result = maper(A)
            assert result.value == brute_maper(A)[0]
            assert result.perm.weight(A) == result.value
            assert result.value == f(-sum(x.value for x in result.row_duals + result.col_duals))

    def test_large_integers_stay_exact(self):
        A = M([10 ** 17, 0], [0, 10 ** 17 + 1])
        assert maper(A).value == f(2 * 10 ** 17 + 1)
        assert maper(A).value == brute_maper(A)[0]


class TestScaling:

    def test_scalings_from_result(self, rng):
        for _ in range(20):
            A = random_with_finite_maper(rng, int(rng.integers(1, 6)))
            assert maper(A).scalings() == hungarian_scaling(A)

    def test_scalings_of_infeasible_result(self):
        with pytest.raises(InfeasibleError):
            maper(M([E, 1], [E, 2])).scalings()

    def test_coprime_denominators(self, rng):
        A = random_prime_fraction_matrix(rng)
        C, D = hungarian_scaling(A)
        result = scaled(A, C, D)
        assert leq(result, zeros(4))
        assert maper(result).value == f(0)

    def test_two_by_two_postconditions(self):
        A = M([2, 1], [0, 3])
        C, D = hungarian_scaling(A)
        result = scaled(A, C, D)
        assert leq(result, zeros(2))
        assert maper(result).value == f(0)

    def test_one_by_one(self):
        C, D = hungarian_scaling(M([5]))
        assert scaled(M([5]), C, D) == M([0])

    def test_unit_matrix(self):
        C, D = hungarian_scaling(identity(3))
        assert scaled(identity(3), C, D) == identity(3)

    def test_infeasible(self):
        with pytest.raises(InfeasibleError):
            hungarian_scaling(M([E, 1], [E, 2]))

    def test_random_instances(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 8))
            A = random_with_finite_maper(rng, n)
            C, D = hungarian_scaling(A)
            result = scaled(A, C, D)
            assert leq(result, zeros(n))
            assert result.epsilon_mask().tolist() == A.epsilon_mask().tolist()
            assert maper(result).value == f(0)
            assert maper(A).value == f(-(diagonal_sum(C) + diagonal_sum(D)))

    def test_scaling_invariance(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 6))
            A = random_with_finite_maper(rng, n)
            C, D = random_diagonal(rng, n), random_diagonal(rng, n)
            original = maper(A)
            rescaled = maper(scaled(A, C, D))
            assert rescaled.value == f(diagonal_sum(C) + original.value.value + diagonal_sum(D))
            assert original.perm.weight(scaled(A, C, D)) == rescaled.value


class TestTensorPermanent:

    def test_scalar_times_two_by_two(self):
        check = maper_tensor_exponent_check(M([4]), M([2, 1], [0, 3]))
        assert check.lhs == f(13)
        assert check.rhs_cross_order == f(13)
        assert check.rhs_own_order == f(14)

    def test_unit_matrices(self):
        check = maper_tensor_exponent_check(identity(2), identity(2))
        assert check.lhs == check.rhs_own_order == check.rhs_cross_order == f(0)

    def test_two_by_two_with_three_by_three_against_oracle(self, rng):
        A = random_with_finite_maper(rng, 2)
        B = random_with_finite_maper(rng, 3)
        check = maper_tensor_exponent_check(A, B)
        assert check.lhs == brute_maper(tensor(A, B))[0]
        assert check.lhs == check.rhs_cross_order

    @pytest.mark.parametrize('n', [1, 2, 3])
    @pytest.mark.parametrize('m', [1, 2, 3])
    def test_exponent_law(self, rng, n, m):
        decisive = 0
        for _ in range(50):
            A = random_with_finite_maper(rng, n)
            B = random_with_finite_maper(rng, m)
            check = maper_tensor_exponent_check(A, B)
            assert check.lhs == check.rhs_cross_order
            assert check.lhs == maper_tensor_identity(A, B)
            if n * m <= 8:
                assert check.lhs == brute_maper(tensor(A, B))[0]
            if check.lhs != check.rhs_own_order:
                decisive += 1
        if n != m:
            assert decisive > 0
        else:
            assert decisive == 0

    def test_diagonal_factor(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 5))
            A = random_with_finite_maper(rng, n)
            Q = random_diagonal(rng, n)
            expected = f(n * maper(A).value.value + n * maper(Q).value.value)
            assert maper(tensor(A, Q)).value == expected
            assert maper(tensor(Q, A)).value == expected

    def test_witness_selects_zeros(self, rng):
        for _ in range(50):
            n, m = int(rng.integers(1, 4)), int(rng.integers(1, 4))
            A = random_with_finite_maper(rng, n)
            B = random_with_finite_maper(rng, m)
            P, Q = tensor_scaling(A, B)
            normalized = scaled(tensor(A, B), P, Q)
            assert leq(normalized, zeros(n * m))

            tau = tensor_witness_permutation(maper(A).perm, maper(B).perm)
            assert all(normalized[i, tau(i)] == f(0) for i in range(n * m))
            assert tau.weight(tensor(A, B)) == maper(tensor(A, B)).value
