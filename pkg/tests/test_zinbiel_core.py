import itertools
import math
import unittest
from typing import Sequence

from src.helpers.experiment.sanity_experiment import zinbiel_identity
from src.lib.algebra.zinbiel_core import (BinaryMonomial, Permutation, RightNormedMonomial, ZinbielElement,
                                          binary_association_types, letter_index, lex_rank, normal_form_table,
                                          permutation_table, unrank, znf)
from src.lib.exception.exception_algebra import MalformedInputException, UnsupportedArityException


def words(element: ZinbielElement):
    return [str(word) for _, word in element.terms()]


def ordered_words(prefix: str, before: Sequence[str]) -> ZinbielElement:
    """Sum of the right-normed words prefix + w, w running over the remaining letters with x before y for each xy."""
    rest = [c for c in "abcde" if c not in prefix]
    terms = []
    for order in itertools.permutations(rest):
        word = prefix + "".join(order)
        if all(word.index(x) < word.index(y) for x, y in before):
            terms.append((1, RightNormedMonomial(tuple(letter_index(c) for c in word)).tree))
    return ZinbielElement.from_trees(5, terms)


# normal forms of the 14 association types in arity 5
ARITY5_NORMAL_FORMS = [
    ("(((ab)c)d)e", "a", []),
    ("((a(bc))d)e", "a", ["bc"]),
    ("((ab)(cd))e", "a", ["cd"]),
    ("(a((bc)d))e", "a", ["bc", "bd"]),
    ("(a(b(cd)))e", "a", ["bc", "cd"]),
    ("((ab)c)(de)", "a", ["de"]),
    ("(a(bc))(de)", "a", ["bc", "de"]),
    ("(ab)((cd)e)", "a", ["cd", "ce"]),
    ("(ab)(c(de))", "a", ["cd", "de"]),
    ("a(((bc)d)e)", "ab", []),
    ("a((b(cd))e)", "ab", ["cd"]),
    ("a((bc)(de))", "ab", ["de"]),
    ("a(b((cd)e))", "abc", []),
    ("a(b(c(de)))", "abcde", []),
]


class TestPermutation(unittest.TestCase):

    def test_lex_rank(self):
        self.assertEqual(lex_rank(Permutation.from_word("abcde")), 1)
        self.assertEqual(lex_rank(Permutation.from_word("abced")), 2)
        self.assertEqual(lex_rank(Permutation.from_word("edcba")), 120)

    def test_unrank_inverts_lex_rank(self):
        for rank in (1, 2, 57, 719, 720):
            self.assertEqual(lex_rank(unrank(rank, 6)), rank)
        with self.assertRaises(MalformedInputException):
            unrank(0, 3)

    def test_compose_and_inverse(self):
        sigma = Permutation.from_word("bcdea")
        tau = Permutation.from_cycles(5, [0, 1])
        self.assertEqual(sigma.compose(tau)(0), sigma(tau(0)))
        self.assertEqual(sigma.compose(sigma.inverse()), Permutation.identity(5))
        self.assertEqual(tau.sign(), -1)
        self.assertEqual(sigma.cycle_type(), (5,))
        self.assertEqual(Permutation.from_cycles(5, [0, 1], [2, 3, 4]).cycle_type(), (3, 2))

    def test_not_a_permutation(self):
        with self.assertRaises(MalformedInputException):
            Permutation((0, 0, 1))

    def test_table_is_lex_ordered(self):
        table = permutation_table(4)
        self.assertEqual(len(table), 24)
        self.assertEqual([tuple(p) for p in table.perms], list(itertools.permutations(range(4))))
        self.assertEqual(table.index_of(table.perms).tolist(), list(range(24)))

    def test_relabel_indices(self):
        table = permutation_table(4)
        sigma = Permutation.from_word("bdac")
        images = table.relabel_indices(sigma)
        for i, p in enumerate(table.perms):
            expected = sigma.compose(Permutation(tuple(p)))
            self.assertEqual(images[i], lex_rank(expected) - 1)

    def test_table_arity_limit(self):
        with self.assertRaises(UnsupportedArityException):
            permutation_table(8)


class TestParser(unittest.TestCase):

    def test_juxtaposition(self):
        self.assertEqual(BinaryMonomial.parse("(ab)c").tree, ((0, 1), 2))
        self.assertEqual(BinaryMonomial.parse("a(b(cd))").tree, (0, (1, (2, 3))))
        self.assertEqual(str(BinaryMonomial.parse("(ab)(cd)")), "(ab)(cd)")

    def test_bracket_syntax(self):
        monomial = BinaryMonomial.parse("[[a,b],c]")
        self.assertEqual(monomial.tree, ((0, 1), 2))
        self.assertEqual(monomial.bracket_str(), "[[a,b],c]")

    def test_errors(self):
        for text in ("", "(ab", "abc", "a(bb)", "(ab)c)"):
            with self.assertRaises(MalformedInputException, msg=text):
                BinaryMonomial.parse(text)

    def test_repeated_variable_message(self):
        with self.assertRaises(MalformedInputException) as context:
            BinaryMonomial.parse("(ab)a")
        self.assertIn("repeated variable 'a'", context.exception.message)
        self.assertEqual(context.exception.position, 4)


class TestNormalForm(unittest.TestCase):

    def test_base_case(self):
        self.assertEqual(znf(0), [RightNormedMonomial((0,))])

    def test_zinbiel_rule(self):
        self.assertEqual([str(m) for m in znf(BinaryMonomial.parse("(ab)c"))], ["a(bc)", "a(cb)"])

    def test_product_of_words(self):
        element = ZinbielElement.from_trees(4, [(1, BinaryMonomial.parse("(ab)(cd)").tree)])
        self.assertEqual(words(element), ["a(b(cd))", "a(c(bd))", "a(c(db))"])

    def test_left_normed_is_every_word_starting_with_a(self):
        element = ZinbielElement.from_trees(5, [(1, BinaryMonomial.parse("(((ab)c)d)e").tree)])
        self.assertEqual(element.term_count(), 24)
        self.assertTrue(all(c == 1 for c, word in element.terms()))
        self.assertTrue(all(word.letters[0] == 0 for _, word in element.terms()))

    def test_right_normed_is_fixed(self):
        for p in itertools.permutations(range(4)):
            monomial = RightNormedMonomial(p)
            self.assertEqual(znf(monomial.tree), [monomial])

    def test_zinbiel_identity_vanishes(self):
        self.assertTrue(zinbiel_identity().is_zero())

    def test_normal_form_table(self):
        table = normal_form_table(5)
        self.assertEqual(len(table), 14)
        self.assertEqual(len(binary_association_types(5)), 14)
        counts = {str(monomial): element.term_count() for monomial, element in table}
        self.assertEqual(counts["a(b(c(de)))"], 1)
        self.assertEqual(counts["(a(bc))(de)"], 6)
        self.assertEqual(sum(1 for _ in permutation_table(5).perms), 120)

    def test_association_type_formulas(self):
        table = {str(monomial): element for monomial, element in normal_form_table(5)}
        self.assertEqual(set(table), {text for text, _, _ in ARITY5_NORMAL_FORMS})
        for text, prefix, before in ARITY5_NORMAL_FORMS:
            expected = ordered_words(prefix, before)
            self.assertEqual(table[text], expected, text)
            self.assertEqual(ZinbielElement.from_trees(5, [(1, BinaryMonomial.parse(text).tree)]), expected, text)

    def test_nested_left_normed_factor(self):
        element = ZinbielElement.from_trees(5, [(1, BinaryMonomial.parse("a(b((cd)e))").tree)])
        self.assertEqual(words(element), ["a(b(c(de)))", "a(b(c(ed)))"])

    def test_term_counts_are_shuffle_counts(self):
        # u v = u1 (u' shuffled with v) for right-normed words u, v
        for left, right in ((2, 2), (3, 2), (2, 3), (3, 3)):
            u = tuple(range(left))
            v = tuple(range(left, left + right))
            element = ZinbielElement.from_trees(left + right, [(1, (RightNormedMonomial(u).tree, RightNormedMonomial(v).tree))])
            self.assertEqual(element.term_count(), math.comb(left - 1 + right, right))


class TestZinbielElement(unittest.TestCase):

    def test_arithmetic(self):
        x = ZinbielElement.from_trees(3, [(1, ((0, 1), 2))])
        y = ZinbielElement.from_trees(3, [(1, (0, (1, 2)))])
        self.assertEqual((x - y).term_count(), 1)
        self.assertEqual((x - y).coefficient("acb"), 1)
        self.assertTrue((x + (-x)).is_zero())
        self.assertEqual(x.scale(3).coefficient("abc"), 3)

    def test_str(self):
        x = ZinbielElement.from_trees(3, [(2, ((0, 1), 2)), (-1, (1, (0, 2)))])
        self.assertEqual(str(x), "2a(bc) + 2a(cb) - b(ac)")
        self.assertEqual(str(ZinbielElement.zero(3)), "0")

    def test_permuted_is_an_action(self):
        x = ZinbielElement.from_trees(4, [(1, ((0, 1), (2, 3))), (-2, (3, ((1, 0), 2)))])
        sigma = Permutation.from_word("cadb")
        tau = Permutation.from_word("bdca")
        self.assertEqual(x.permuted(sigma).permuted(tau), x.permuted(tau.compose(sigma)))

    def test_sign_string_needs_units(self):
        with self.assertRaises(MalformedInputException):
            ZinbielElement.from_trees(3, [(1, ((0, 1), 2))]).sign_string()

    def test_wrong_length(self):
        with self.assertRaises(UnsupportedArityException):
            ZinbielElement(3, [1, 2, 3])


if __name__ == "__main__":
    unittest.main()
