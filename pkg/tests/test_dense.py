import numpy as np
import pytest

from blockdet import (
    DimensionMismatch,
    ScaledDet,
    SingularMatrix,
    det_dense,
    invert,
    lu_decompose,
    matadd,
    matmul,
    matsub,
    relative_difference,
    scalar_mul,
    solve,
)
from conftest import random_complex, well_conditioned


def reconstruct(factors):
    return factors.lower() @ factors.upper()


class TestLu:
    def test_identity(self):
        f = lu_decompose(np.eye(3))
        assert np.array_equal(f.lower(), np.eye(3))
        assert np.array_equal(f.upper(), np.eye(3))
        assert f.parity == 1
        assert not f.singular

    def test_permutation(self):
        f = lu_decompose([[0, 1], [1, 0]])
        assert f.parity == -1
        assert not f.singular
        assert list(f.pivots) == [1, 0]

    def test_reconstruction_residual(self, rng):
        a = random_complex(rng, 8)
        f = lu_decompose(a)
        residual = np.max(np.abs(a[f.pivots] - reconstruct(f)))
        assert residual < 1e-12 * np.max(np.abs(a))

    @pytest.mark.parametrize("dim", [2, 5, 16, 64])
    def test_reconstruction_property(self, rng, dim):
        for _ in range(5):
            a = random_complex(rng, dim)
            f = lu_decompose(a)
            residual = np.max(np.abs(a[f.pivots] - reconstruct(f)))
            assert residual < 1e-12 * np.max(np.abs(a))

    def test_singular_flag(self):
        f = lu_decompose([[1, 2], [2, 4]])
        assert f.singular

    def test_rejects_rectangular(self):
        with pytest.raises(DimensionMismatch):
            lu_decompose(np.ones((2, 3)))

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            lu_decompose([[np.inf, 0], [0, 1]])


class TestDet:
    def test_identity(self):
        for n in (1, 3, 7):
            assert det_dense(np.eye(n)) == ScaledDet.one()

    def test_2x2_by_hand(self):
        # ad - bc = 3*4 - 1*2
        value = det_dense([[3, 1], [2, 4]])
        assert value.to_complex() == pytest.approx(10.0)

    def test_singular_is_exact_zero(self):
        assert det_dense([[1, 2], [2, 4]]).is_zero

    def test_triangular_is_diagonal_product(self, rng):
        a = np.triu(random_complex(rng, 9))
        expected = ScaledDet.from_factors(np.diag(a))
        assert relative_difference(det_dense(a), expected) < 1e-12

    def test_product_rule(self, rng):
        for n in (2, 5, 16):
            a, b = random_complex(rng, n), random_complex(rng, n)
            lhs = det_dense(a @ b)
            rhs = det_dense(a) * det_dense(b)
            assert relative_difference(lhs, rhs) < 1e-9

    def test_24x24_against_scalar_schur_reduction(self, rng):
        # independent oracle: recursive 2x2 Schur splitting down to scalars
        def schur_det(m):
            dim = m.shape[0]
            if dim == 1:
                return complex(m[0, 0])
            half = dim // 2
            a, b = m[:half, :half], m[:half, half:]
            c, d = m[half:, :half], m[half:, half:]
            return schur_det(a - b @ np.linalg.solve(d, c)) * schur_det(d)

        m = random_complex(rng, 24)
        expected = ScaledDet.from_complex(schur_det(m))
        assert relative_difference(det_dense(m), expected) < 1e-8


class TestSolveInvert:
    def test_identity_inverse(self):
        assert np.allclose(invert(np.eye(4)), np.eye(4))

    def test_diagonal_inverse(self):
        assert np.allclose(invert(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))

    def test_inverse_residual(self, rng):
        m = well_conditioned(rng, 8)
        inv = invert(m)
        assert np.max(np.abs(m @ inv - np.eye(8))) < 1e-10
        assert np.max(np.abs(inv @ m - np.eye(8))) < 1e-10

    def test_singular_raises(self):
        with pytest.raises(SingularMatrix):
            invert([[1, 1], [1, 1]])

    def test_solve_identity(self, rng):
        rhs = random_complex(rng, 4, 2)
        assert np.allclose(solve(np.eye(4), rhs), rhs)

    def test_solve_diagonal(self):
        x = solve(np.diag([2.0, 5.0]), [[2.0], [5.0]])
        assert np.allclose(x, [[1.0], [1.0]])

    def test_solve_residual(self, rng):
        m = well_conditioned(rng, 8)
        rhs = random_complex(rng, 8, 3)
        x = solve(m, rhs)
        assert np.max(np.abs(m @ x - rhs)) < 1e-10 * np.max(np.abs(rhs))

    def test_solve_shape_check(self, rng):
        with pytest.raises(DimensionMismatch):
            solve(np.eye(3), np.ones((4, 1)))


class TestArithmetic:
    def test_matmul_identity(self, rng):
        a = random_complex(rng, 3, 5)
        assert np.array_equal(matmul(a, np.eye(5)), a)

    def test_self_subtraction(self, rng):
        a = random_complex(rng, 4)
        assert np.all(matsub(a, a) == 0)

    def test_add_scalar_mul(self, rng):
        a = random_complex(rng, 4)
        assert np.allclose(matadd(a, a), scalar_mul(2, a))

    def test_associativity(self, rng):
        for _ in range(5):
            a, b, c = (random_complex(rng, 4) for _ in range(3))
            assert np.max(np.abs(matmul(matmul(a, b), c) - matmul(a, matmul(b, c)))) < 1e-12

    def test_dimension_errors(self):
        with pytest.raises(DimensionMismatch):
            matmul(np.ones((2, 3)), np.ones((2, 3)))
        with pytest.raises(DimensionMismatch):
            matadd(np.ones((2, 3)), np.ones((3, 2)))
        with pytest.raises(DimensionMismatch):
            matsub(np.ones((2, 2)), np.ones((3, 3)))
