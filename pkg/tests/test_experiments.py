import os
import unittest

from src.helpers.experiment.experiment_manager import ExperimentManager
from src.lib.algebra.symrep import conjugate_labels
from src.lib.configuration.configuration import config_manager
from src.lib.exception.exception_algebra import MalformedInputException, UnsupportedArityException
from src.models.cli.cli_config import CliConfig

SLOW = os.environ.get("TORTKARA_SLOW") == "1"


def run(command: str, **flags):
    cli_config = CliConfig(command=command, quiet=True, **flags)
    return ExperimentManager.run(cli_config, config_manager.reload(cli_config))


class TestSmallExperiments(unittest.TestCase):

    def test_sanity(self):
        report = run("sanity")
        self.assertEqual(report.failed_checks(), [])
        self.assertEqual(report.e3_shape, "6x3")
        self.assertEqual(report.tt_terms, 14)

    def test_znf(self):
        report = run("znf", monomial="(ab)(cd)")
        self.assertEqual(report.arity, 4)
        self.assertEqual(report.term_count, 3)
        self.assertEqual(report.normal_form, "a(b(cd)) + a(c(bd)) + a(c(db))")
        self.assertEqual(report.terms[0], "+1 a(b(cd))")

    def test_expand(self):
        report = run("expand", monomial="[b,a,c]")
        self.assertEqual(report.canonical, "[a,b,c]")
        self.assertEqual(report.straighten_sign, -1)
        self.assertEqual(report.sign_string, "--+++-")
        self.assertEqual(report.column, 0)

    def test_expand_arity_five(self):
        report = run("expand", monomial="[a,b,[c,d,e]]")
        self.assertEqual(report.association_type, "[**[***]]")
        self.assertEqual(report.column, 60)
        self.assertEqual(report.term_count, 120)
        self.assertEqual(report.sign_rows[0], "++---+++++++-------+--++")

    def test_missing_arguments(self):
        with self.assertRaises(MalformedInputException):
            run("znf")
        with self.assertRaises(MalformedInputException):
            run("rep", arity=5)
        with self.assertRaises(UnsupportedArityException):
            run("rep", arity=5, partition="3,3,1")

    def test_representation_arity_five(self):
        report = run("rep", arity=5, partition="2,1,1,1")
        self.assertEqual(report.failed_checks(), [])
        self.assertEqual(report.row.partition, "21^3")
        self.assertEqual(report.row.dimension, 4)
        self.assertEqual(report.row.all, 2)
        self.assertIsNone(report.row.sym_con_new)


class TestArity5(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.report = run("arity5")

    def test_all_checks_pass(self):
        self.assertEqual([check.name for check in self.report.failed_checks()], [])

    def test_expansion(self):
        self.assertEqual(self.report.expansion_shape, [120, 90])
        self.assertEqual(self.report.expansion_rank, 60)
        self.assertEqual(self.report.nullity, 30)

    def test_lattice(self):
        reduced = self.report.lattices[-1]
        self.assertEqual(reduced.name, "N_lll")
        self.assertEqual(reduced.rows, 30)
        self.assertEqual(reduced.shortest_squared_length, 14)
        self.assertLessEqual(reduced.measure, self.report.lattices[0].measure)

    def test_generator(self):
        self.assertEqual(self.report.tt_candidate_terms, 14)
        self.assertTrue(self.report.closure_equals_nullspace)
        self.assertTrue(self.report.bundled_tt_same_module)

    def test_character(self):
        self.assertEqual(self.report.character, [30, -6, 2, 0, 0, 0, 0])
        self.assertEqual(self.report.decomposition, {"32": 1, "31^2": 1, "2^21": 2, "21^3": 2, "1^5": 1})
        self.assertEqual(self.report.isotypic_nullity_minus_sym, self.report.decomposition)

    def test_printed_decomposition_uses_conjugate_labels(self):
        self.assertEqual(self.report.printed_decomposition, {"5": 1, "41": 2, "32": 2, "31^2": 1, "2^21": 1})
        self.assertEqual(conjugate_labels(self.report.printed_decomposition, 5), self.report.decomposition)

    def test_reference_lattice_values(self):
        self.assertTrue(self.report.hnf_unimodular)
        self.assertEqual(self.report.reference_multiset, "14^13, 16^14, 18, 20, 22")
        self.assertTrue(self.report.reference_multiset_matched)
        self.assertEqual(self.report.lattices[-1].squared_lengths, self.report.reference_multiset)
        deviation = abs(self.report.lattices[0].measure - self.report.reference_measure)
        self.assertEqual(self.report.reference_measure_matched, deviation <= 0.01)


@unittest.skipUnless(SLOW, "set TORTKARA_SLOW=1 for the arity 7 runs")
class TestArity7(unittest.TestCase):

    def test_new_relation(self):
        report = run("verify-figure2")
        self.assertEqual(report.failed_checks(), [])
        self.assertEqual((report.dim_con, report.rank_with_con), (4794, 4900))

    def test_arity7(self):
        report = run("arity7", threads=4)
        self.assertEqual([check.name for check in report.failed_checks()], [])
        self.assertEqual(report.con_ranks, [1785, 2730, 3150, 3150, 3150, 4410, 4410, 4794])
        self.assertEqual(report.redundant_consequences, [4, 5, 7])
        self.assertEqual([step.rank for step in report.filtration], [4900, 4970, 5040])
        self.assertEqual(report.first_generator_terms, 60)
        self.assertLessEqual(set(report.first_generator_coefficients), {-2, -1, 1, 2})
        self.assertTrue(report.first_generator_expands_to_zero)

    def test_new_relation_alias(self):
        report = run("verify-new-relation")
        self.assertEqual(report.command, "verify-figure2")
        self.assertEqual(report.failed_checks(), [])

    def test_representation_misprint(self):
        report = run("rep", arity=7, partition="3,2,2")
        self.assertEqual(report.failed_checks(), [])
        self.assertEqual([(flag.table, flag.computed) for flag in report.discrepancies], [("nullity", 115)])


if __name__ == "__main__":
    unittest.main()
