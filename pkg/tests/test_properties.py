import random
import unittest

from src.lib.algebra.exact_linalg import CoefficientDomain, ExactMatrix, hnf_transform, rank, rcf
from src.lib.algebra.expansion import expand, expand_element
from src.lib.algebra.skew_ternary import SkewElement, TernaryMonomial, act, skew_basis, straighten
from src.lib.algebra.zinbiel_core import Permutation, ZinbielElement, binary_association_types, fill_shape, unrank


def relabel(tree, sigma: Permutation):
    if isinstance(tree, int):
        return sigma(tree)
    return tuple(relabel(child, sigma) for child in tree)


def random_permutation(rng: random.Random, n: int) -> Permutation:
    letters = list(range(n))
    rng.shuffle(letters)
    return Permutation(tuple(letters))


class TestRandomized(unittest.TestCase):

    def setUp(self):
        self.rng = random.Random(2024)

    def test_normal_form_commutes_with_relabelling(self):
        shapes = binary_association_types(5)
        for _ in range(30):
            tree = fill_shape(self.rng.choice(shapes), random_permutation(self.rng, 5).letters)
            sigma = random_permutation(self.rng, 5)
            left = ZinbielElement.from_trees(5, [(1, relabel(tree, sigma))])
            right = ZinbielElement.from_trees(5, [(1, tree)]).permuted(sigma)
            self.assertEqual(left, right)

    def test_straighten_is_idempotent(self):
        basis = skew_basis(7)
        for _ in range(50):
            shape = self.rng.choice(basis.type_shapes)
            monomial = TernaryMonomial(fill_shape(shape, random_permutation(self.rng, 7).letters))
            sign, canonical = straighten(monomial)
            self.assertIn(sign, (1, -1))
            self.assertTrue(canonical.canonical)
            self.assertEqual(straighten(canonical), (1, canonical))
            self.assertEqual(expand(canonical).scale(sign), expand_element(SkewElement.from_monomial(monomial)))

    def test_action_on_monomials(self):
        basis = skew_basis(5)
        for _ in range(30):
            column = self.rng.randrange(len(basis))
            sigma = unrank(self.rng.randint(1, 120), 5)
            monomial = basis.monomial(column)
            moved = SkewElement.from_monomial(relabel(monomial.tree, sigma))
            self.assertEqual(act(sigma, SkewElement.from_monomial(monomial)), moved)


def random_rows(rng: random.Random, nrows: int, ncols: int, low: int = -4, high: int = 4):
    return [[rng.randint(low, high) for _ in range(ncols)] for _ in range(nrows)]


def low_rank_rows(rng: random.Random, nrows: int, ncols: int, inner: int):
    left = random_rows(rng, nrows, inner, -2, 2)
    right = random_rows(rng, inner, ncols, -2, 2)
    return [[sum(a * b for a, b in zip(row, column)) for column in zip(*right)] for row in left]


def scramble(rng: random.Random, rows, steps: int = 12):
    """Random elementary integer row operations: add a multiple, swap, negate."""
    rows = [list(row) for row in rows]
    for _ in range(steps):
        i, j = rng.sample(range(len(rows)), 2)
        move = rng.randrange(3)
        if move == 0:
            q = rng.choice([-3, -2, -1, 1, 2, 3])
            rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
        elif move == 1:
            rows[i], rows[j] = rows[j], rows[i]
        else:
            rows[i] = [-a for a in rows[i]]
    return rows


class TestRandomizedLinearAlgebra(unittest.TestCase):

    def setUp(self):
        self.rng = random.Random(77)
        self.integers = CoefficientDomain.integers()
        self.fields = [CoefficientDomain.rationals(), CoefficientDomain.prime_field(101)]

    def samples(self, count: int):
        for index in range(count):
            nrows, ncols = self.rng.randint(2, 6), self.rng.randint(2, 6)
            if index % 2:
                yield low_rank_rows(self.rng, nrows, ncols, self.rng.randint(1, min(nrows, ncols)))
            else:
                yield random_rows(self.rng, nrows, ncols)

    def test_hermite_form_is_invariant_under_unimodular_rows(self):
        for rows in self.samples(40):
            M = ExactMatrix.from_rows(rows, self.integers)
            H, U = hnf_transform(M)
            self.assertEqual(U @ M, H)
            scrambled = ExactMatrix.from_rows(scramble(self.rng, rows), self.integers, ncols=M.ncols)
            self.assertEqual(hnf_transform(scrambled)[0], H, rows)

    def test_row_canonical_form_is_idempotent(self):
        for rows in self.samples(40):
            for domain in self.fields:
                R, r = rcf(ExactMatrix.from_rows(rows, domain))
                self.assertEqual(rcf(R), (R, r), rows)

    def test_rank_of_the_transpose(self):
        for rows in self.samples(40):
            for domain in self.fields:
                M = ExactMatrix.from_rows(rows, domain)
                self.assertEqual(rank(M), rank(M.transpose()), rows)


if __name__ == "__main__":
    unittest.main()
