from src.helpers.experiment.experiment_base import ExperimentBase
from src.lib.algebra.exact_linalg import incremental_closure
from src.lib.algebra.expansion import expand_element
from src.lib.algebra.skew_ternary import consequences
from src.lib.log.api_logger import ApiLogger
from src.models.report.new_relation_report import NewRelationReport


class NewRelationExperiment(ExperimentBase):
    """The bundled 60-term relation: exact integer expansion and its rank over Con(7)."""
    experiment_name = "new_relation"

    def run(self) -> NewRelationReport:
        report = NewRelationReport(prime=self.prime)
        relation = self.new_relation()
        report.terms = relation.term_count()
        report.coefficients = relation.coefficient_set()
        self.audit(report, "terms", 60, report.terms)
        self.audit(report, "coefficients", [-2, -1, 1, 2], report.coefficients)

        api_logger = ApiLogger("[NEW RELATION] [EXPANSION] : over the integers")
        expansion = expand_element(relation)
        report.expansion_length = len(expansion.coefficients)
        report.integer_expansion_zero = expansion.is_zero()
        api_logger.print_log(f"{expansion.term_count()} nonzero terms")
        self.check(report, "integer_expansion_zero", report.integer_expansion_zero)

        api_logger = ApiLogger(f"[NEW RELATION] [RANK] : Con(7) mod {self.prime}")
        closure = incremental_closure(consequences(self.tt_relation()), 7, self.field, threads=self.threads,
                                      chunk_rows=self.chunk_rows)
        report.dim_con = closure.rank
        extended = incremental_closure([relation], 7, self.field, threads=self.threads, chunk_rows=self.chunk_rows,
                                       echelon=closure.echelon)
        report.rank_with_con = extended.rank
        api_logger.print_log(f"{report.dim_con} -> {report.rank_with_con}")
        self.audit(report, "dim_con", 4794, report.dim_con)
        self.audit(report, "rank_with_con", 4900, report.rank_with_con)
        return report
