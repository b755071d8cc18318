from src.helpers.experiment.experiment_base import ExperimentBase
from src.lib.algebra.exact_linalg import CoefficientDomain, rank
from src.lib.algebra.expansion import anticommutator_associator, expand_element, expansion_matrix, tortkara_identity
from src.lib.algebra.zinbiel_core import ZinbielElement
from src.lib.log.api_logger import ApiLogger
from src.models.report.sanity_report import SanityReport


def zinbiel_identity() -> ZinbielElement:
    """(ab)c - a(bc) - a(cb), normalized."""
    a, b, c = range(3)
    return ZinbielElement.from_trees(3, [(1, ((a, b), c)), (-1, (a, (b, c))), (-1, (a, (c, b)))])


class SanityExperiment(ExperimentBase):
    experiment_name = "sanity"

    def run(self) -> SanityReport:
        report = SanityReport()

        api_logger = ApiLogger("[SANITY] [E3] : arity 3 expansion matrix")
        e3 = expansion_matrix(3, CoefficientDomain.rationals()).matrix
        self.dump_matrix("E3", lambda: expansion_matrix(3, CoefficientDomain.integers()).matrix)
        report.e3_shape = f"{e3.nrows}x{e3.ncols}"
        report.e3_nullity = e3.ncols - rank(e3)
        api_logger.print_log(f"nullity {report.e3_nullity}")
        self.audit(report, "e3_nullity", 0, report.e3_nullity)

        report.zinbiel_identity_residual = zinbiel_identity().term_count()
        self.audit(report, "zinbiel_identity", 0, report.zinbiel_identity_residual)

        report.tortkara_identity_residual = tortkara_identity().term_count()
        self.audit(report, "tortkara_identity", 0, report.tortkara_identity_residual)

        report.anticommutator_associativity_residual = anticommutator_associator().term_count()
        self.audit(report, "anticommutator_associativity", 0, report.anticommutator_associativity_residual)

        tt = self.tt_relation()
        report.tt_terms = tt.term_count()
        report.tt_expansion_residual = expand_element(tt).term_count()
        self.audit(report, "tt_terms", 14, report.tt_terms)
        self.audit(report, "tt_expansion", 0, report.tt_expansion_residual)
        return report
