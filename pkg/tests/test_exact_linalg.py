import os
import tempfile
import unittest
from fractions import Fraction

import numpy as np
from pydantic import ValidationError

from src.lib.algebra.exact_linalg import (CoefficientDomain, ExactMatrix, best_lift_unit, determinant, hnf_transform,
                                          incremental_closure, integer_kernel_check, nullspace, rank, rcf,
                                          row_space_equal, symmetric_lift)
from src.lib.algebra.modular_echelon import ModularEchelon, modular_matmul, reduce_mod, storage_dtype
from src.lib.exception.exception_algebra import DimensionMismatchException, DomainMismatchException

QQ = CoefficientDomain.rationals()
ZZ = CoefficientDomain.integers()
GF101 = CoefficientDomain.prime_field(101)


class TestCoefficientDomain(unittest.TestCase):

    def test_constructors(self):
        self.assertEqual(str(QQ), "QQ")
        self.assertEqual(str(ZZ), "ZZ")
        self.assertEqual(str(GF101), "GF(101)")
        self.assertTrue(GF101.is_field)
        self.assertFalse(ZZ.is_field)

    def test_modulus_must_be_prime(self):
        with self.assertRaises(ValidationError):
            CoefficientDomain.prime_field(100)


class TestRowCanonicalForm(unittest.TestCase):

    def test_zero_matrix(self):
        R, r = rcf(ExactMatrix.zeros(3, 4, QQ))
        self.assertEqual(r, 0)
        self.assertTrue(R.is_zero())

    def test_rational_example(self):
        M = ExactMatrix.from_rows([[1, 2, 3], [2, 4, 7], [1, 2, 4]], QQ)
        R, r = rcf(M)
        self.assertEqual(r, 2)
        self.assertEqual(R.to_rows(), [[1, 2, 0], [0, 0, 1], [0, 0, 0]])

    def test_fractions(self):
        M = ExactMatrix.from_rows([[2, 1]], QQ)
        R, _ = rcf(M)
        self.assertEqual(R.to_rows(), [[1, Fraction(1, 2)]])

    def test_prime_field_agrees(self):
        rows = [[1, 2, 3], [2, 4, 7], [1, 2, 4]]
        R, r = rcf(ExactMatrix.from_rows(rows, GF101))
        self.assertEqual(r, 2)
        self.assertEqual(R.to_rows(), [[1, 2, 0], [0, 0, 1], [0, 0, 0]])

    def test_integers_are_rejected(self):
        with self.assertRaises(DomainMismatchException):
            rcf(ExactMatrix.from_rows([[1, 2]], ZZ))

    def test_rank_drops_mod_p(self):
        M = [[1, 0], [0, 101]]
        self.assertEqual(rank(ExactMatrix.from_rows(M, QQ)), 2)
        self.assertEqual(rank(ExactMatrix.from_rows(M, GF101)), 1)


class TestNullspace(unittest.TestCase):

    def test_identity(self):
        self.assertEqual(nullspace(ExactMatrix.identity(3, QQ)).nrows, 0)
        self.assertEqual(nullspace(ExactMatrix.identity(3, GF101)).nrows, 0)

    def test_kernel_vectors(self):
        for domain in (QQ, GF101):
            M = ExactMatrix.from_rows([[1, 1, 0], [0, 1, 1]], domain)
            N = nullspace(M)
            self.assertEqual(N.shape, (1, 3))
            self.assertTrue((M @ N.transpose()).is_zero())


class TestIntegerMethods(unittest.TestCase):

    def test_hnf_example(self):
        H, U = hnf_transform(ExactMatrix.from_rows([[2, 4], [1, 1]], ZZ))
        self.assertEqual(H.to_rows(), [[1, 1], [0, 2]])
        self.assertEqual(U.to_rows(), [[0, 1], [1, -2]])
        self.assertEqual(abs(determinant(U)), 1)

    def test_hnf_identity(self):
        M = ExactMatrix.from_rows([[3, 5, 7], [1, 2, 3], [4, 7, 10]], ZZ)
        H, U = hnf_transform(M)
        self.assertEqual(U @ M, H)
        self.assertEqual(abs(determinant(U)), 1)

    def test_hnf_needs_integers(self):
        with self.assertRaises(DomainMismatchException):
            hnf_transform(ExactMatrix.from_rows([[1]], QQ))

    def test_symmetric_lift(self):
        self.assertEqual(symmetric_lift([100, 0, 50, 51], 101), [-1, 0, 50, -50])
        self.assertEqual(symmetric_lift([1, 50, 51, 100], 101, unit=2), [2, -1, 1, -2])

    def test_best_lift_unit(self):
        self.assertEqual(best_lift_unit([0, 0], 101), 1)
        self.assertEqual(best_lift_unit([1, 100], 101), 1)
        unit = best_lift_unit([51, 50], 101)
        self.assertEqual(max(abs(x) for x in symmetric_lift([51, 50], 101, unit)), 1)

    def test_integer_kernel_check(self):
        M = ExactMatrix.from_rows([[1, 1, 0], [0, 1, 1]], QQ)
        self.assertTrue(integer_kernel_check(M, [1, -1, 1]))
        self.assertFalse(integer_kernel_check(M, [1, 100, 1]))
        with self.assertRaises(DimensionMismatchException):
            integer_kernel_check(M, [1, 1])


class TestMatrixOperations(unittest.TestCase):

    def test_row_space_equal(self):
        A = ExactMatrix.from_rows([[1, 0, 1], [0, 1, 1]], QQ)
        B = ExactMatrix.from_rows([[1, 1, 2], [1, -1, 0]], QQ)
        self.assertTrue(row_space_equal(A, B))
        self.assertFalse(row_space_equal(A, ExactMatrix.from_rows([[1, 0, 0]], QQ)))
        with self.assertRaises(DimensionMismatchException):
            row_space_equal(A, ExactMatrix.from_rows([[1, 0]], QQ))

    def test_dump_and_load(self):
        for M in (ExactMatrix.from_rows([[1, -2], [3, 4]], ZZ),
                  ExactMatrix.from_rows([[Fraction(1, 3), 0]], QQ),
                  ExactMatrix.from_rows([[100, 5], [0, 1]], GF101)):
            with tempfile.TemporaryDirectory() as directory:
                path = os.path.join(directory, "matrix.txt")
                M.dump(path)
                self.assertEqual(ExactMatrix.load(path), M)

    def test_vstack_and_take_rows(self):
        A = ExactMatrix.from_rows([[1, 2]], QQ)
        B = ExactMatrix.from_rows([[3, 4], [5, 6]], QQ)
        stacked = A.vstack(B)
        self.assertEqual(stacked.shape, (3, 2))
        self.assertEqual(stacked.take_rows([2, 0]).to_rows(), [[5, 6], [1, 2]])
        self.assertEqual(stacked.row_weights(), [2, 2, 2])

    def test_closure_of_nothing(self):
        closure = incremental_closure([], 5, GF101)
        self.assertEqual(closure.rank, 0)
        self.assertEqual(closure.redundant_generators(), [])


class TestModularEchelon(unittest.TestCase):

    def test_storage_dtype(self):
        self.assertEqual(storage_dtype(101), np.int8)
        self.assertEqual(storage_dtype(32003), np.int16)
        self.assertEqual(reduce_mod(np.array([-1, 102]), 101).tolist(), [100, 1])

    def test_matmul(self):
        left = np.array([[100, 100]])
        right = np.array([[100], [1]])
        self.assertEqual(modular_matmul(left, right, 101).tolist(), [[0.0]])

    def test_incremental_rank(self):
        echelon = ModularEchelon(3, 101, chunk_rows=1)
        self.assertEqual(echelon.add_rows(np.array([[1, 2, 3], [2, 4, 6]])), 1)
        self.assertEqual(echelon.add_rows(np.array([[0, 1, 1]])), 1)
        self.assertEqual(echelon.rank, 2)
        self.assertEqual(echelon.pivots.tolist(), [0, 1])
        self.assertTrue(echelon.contains(np.array([1, 3, 4])))
        self.assertFalse(echelon.contains(np.array([0, 0, 1])))
        self.assertEqual(echelon.matrix().tolist(), [[1, 0, 1], [0, 1, 1]])
        self.assertEqual(echelon.nullspace().astype(np.int64).tolist(), [[100, 100, 1]])

    def test_width_is_checked(self):
        with self.assertRaises(DimensionMismatchException):
            ModularEchelon(3, 101).add_rows(np.array([[1, 2]]))

    def test_large_modulus_rejected(self):
        with self.assertRaises(DomainMismatchException):
            ModularEchelon(3, 2 ** 31 - 1)


if __name__ == "__main__":
    unittest.main()
