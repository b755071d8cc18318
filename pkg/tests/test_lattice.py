import math
import unittest
from collections import Counter
from fractions import Fraction

from src.lib.algebra.lattice import (LatticeBasis, exact_lll, format_multiset, gram_schmidt, is_lll_reduced, lll,
                                     measure, parse_delta, same_lattice, squared_lengths)
from src.lib.exception.exception_algebra import LatticeException


class TestDelta(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(parse_delta("3/4"), Fraction(3, 4))
        self.assertEqual(parse_delta("0.99"), Fraction(99, 100))
        self.assertEqual(parse_delta(Fraction(1, 2)), Fraction(1, 2))
        self.assertEqual(parse_delta("1"), Fraction(1))

    def test_bounds(self):
        for value in ("1/4", "0", "5/4", "1001/1000", "abc", "1/0"):
            with self.assertRaises(LatticeException, msg=value):
                parse_delta(value)


class TestMeasure(unittest.TestCase):

    def test_measure(self):
        self.assertAlmostEqual(measure([[3, 4]]), math.log10(25))
        self.assertAlmostEqual(measure([[1, 0], [0, 10]]), 2.0)

    def test_zero_row(self):
        with self.assertRaises(LatticeException):
            measure([[1, 2], [0, 0]])

    def test_multiset(self):
        self.assertEqual(squared_lengths([[1, 1], [2, 0], [0, 2]]), Counter({2: 1, 4: 2}))
        self.assertEqual(format_multiset(Counter({16: 14, 14: 13, 18: 1})), "14^13, 16^14, 18")


class TestReduction(unittest.TestCase):

    def test_two_dimensional(self):
        self.assertEqual(lll([[1, 0], [4, 1]]), [[1, 0], [0, 1]])

    def test_gram_schmidt(self):
        ortho, mu = gram_schmidt([[1, 0], [4, 1]])
        self.assertEqual(ortho[1], [Fraction(0), Fraction(1)])
        self.assertEqual(mu[1][0], Fraction(4))

    def test_is_lll_reduced(self):
        self.assertFalse(is_lll_reduced([[1, 0], [4, 1]]))
        self.assertTrue(is_lll_reduced([[1, 0], [0, 1]]))
        self.assertTrue(is_lll_reduced([[2, 0], [1, 1]], "1/2"))
        self.assertFalse(is_lll_reduced([[2, 0], [1, 1]], "3/4"))

    def test_reduction_keeps_the_lattice(self):
        rows = [[1, 1, 1, 0], [-1, 0, 2, 1], [3, 5, 6, 2]]
        for delta in ("3/4", "99/100"):
            reduced = lll(rows, delta)
            self.assertTrue(is_lll_reduced(reduced, delta))
            self.assertTrue(same_lattice(rows, reduced))

    def test_exact_reduction_at_one(self):
        self.assertEqual(lll([[1, 0], [4, 1]], "1"), [[1, 0], [0, 1]])
        self.assertEqual(lll([[2, 0], [1, 1]], "1"), [[1, 1], [1, -1]])
        rows = [[1, 1, 1, 0], [-1, 0, 2, 1], [3, 5, 6, 2]]
        reduced = lll(rows, "1")
        self.assertTrue(is_lll_reduced(reduced, 1))
        self.assertTrue(same_lattice(rows, reduced))

    def test_exact_reduction_below_one(self):
        rows = [[1, 1, 1, 0], [-1, 0, 2, 1], [3, 5, 6, 2]]
        reduced = exact_lll(rows, "3/4")
        self.assertTrue(is_lll_reduced(reduced, "3/4"))
        self.assertTrue(same_lattice(rows, reduced))
        with self.assertRaises(LatticeException):
            exact_lll([[1, 2], [2, 4]])

    def test_same_lattice(self):
        self.assertTrue(same_lattice([[1, 0], [4, 1]], [[1, 0], [0, 1]]))
        self.assertFalse(same_lattice([[2, 0], [0, 1]], [[1, 0], [0, 1]]))
        self.assertFalse(same_lattice([[1, 0]], [[1, 0, 0]]))

    def test_dependent_rows(self):
        with self.assertRaises(LatticeException):
            lll([[1, 2], [2, 4]])
        with self.assertRaises(LatticeException):
            lll([[1, 0], [0, 1], [1, 1]])


class TestLatticeBasis(unittest.TestCase):

    def test_basis(self):
        basis = LatticeBasis.of([[4, 1], [1, 0]], "3/4")
        self.assertEqual(len(basis), 2)
        self.assertEqual(basis.width, 2)
        self.assertEqual(basis.shortest(), (1, (1, 0)))
        reduced = basis.reduced()
        self.assertEqual(reduced.delta, Fraction(3, 4))
        self.assertEqual(reduced.squared_lengths(), Counter({1: 2}))
        self.assertEqual(reduced.measure(), 0.0)

    def test_ties_go_to_the_first_row(self):
        self.assertEqual(LatticeBasis.of([[0, 1], [1, 0]]).shortest()[0], 0)

    def test_unequal_widths(self):
        with self.assertRaises(LatticeException):
            LatticeBasis.of([[1, 0], [1]])


if __name__ == "__main__":
    unittest.main()
