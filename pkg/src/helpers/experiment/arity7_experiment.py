from typing import List, Optional, Tuple

import numpy as np

from src.helpers.experiment.experiment_base import ExperimentBase
from src.helpers.experiment.printed_tables import (ALL_OVER_CON, CON_NEW_OVER_CON, CON_RANKS, EXPANSION,
                                                   FILTRATION_RANKS, REDUNDANT_CONSEQUENCES, SYM, SYM_CON, SYM_CON_NEW)
from src.helpers.experiment.representation_experiment import (compare_with_printed, partition_rows,
                                                              representation_inputs, unexpected)
from src.lib.algebra.exact_linalg import ClosureResult, ExactMatrix, best_lift_unit, incremental_closure, symmetric_lift
from src.lib.algebra.expansion import expand_element, expansion_array
from src.lib.algebra.modular_echelon import ModularEchelon, reduce_mod
from src.lib.algebra.skew_ternary import SkewElement, consequences, skew_basis
from src.lib.algebra.symrep import all_partition_ranks
from src.lib.log.api_logger import ApiLogger
from src.models.report.arity7_report import Arity7Report, FiltrationStep, PartitionRow

TYPE_SIZES = [2520, 1260, 1260, 630, 630, 1260]
DIMENSIONS = {"skew": 7560, "con": 4794, "all": 5040, "expansion": 2520, "con_new_over_con": 106, "all_over_con": 246}
FIRST_GENERATOR_TERMS = 60
LIFTED_COEFFICIENTS = {-2, -1, 1, 2}


def row_weight_profile(echelon: ModularEchelon) -> Tuple[int, int]:
    """Smallest and largest number of nonzero entries over the rows of an echelon form."""
    weights = echelon.row_weights()
    return int(weights.min()), int(weights.max())


def weighted_sum(rows: List[PartitionRow], attribute: str) -> int:
    return sum(getattr(row, attribute) * row.dimension for row in rows)


class Arity7Experiment(ExperimentBase):
    experiment_name = "arity7"

    def _consequences(self, report: Arity7Report) -> List[SkewElement]:
        api_logger = ApiLogger("[ARITY7] [STEP 1] [CONSEQUENCES]")
        basis = skew_basis(7)
        report.basis_size = len(basis)
        report.type_sizes = list(basis.type_sizes)
        self.audit(report, "skew_basis_size", 7560, report.basis_size)
        self.audit(report, "type_sizes", TYPE_SIZES, report.type_sizes)

        generators = consequences(self.tt_relation())
        report.consequence_terms = [g.term_count() for g in generators]
        api_logger.print_log(f"terms {report.consequence_terms}")
        return generators

    def _closure(self, report: Arity7Report, generators: List[SkewElement]) -> ClosureResult:
        api_logger = ApiLogger(f"[ARITY7] [STEP 2] [CLOSURE] : mod {self.prime}")
        closure = incremental_closure(generators, 7, self.field, threads=self.threads, chunk_rows=self.chunk_rows)
        report.con_ranks = list(closure.ranks)
        report.redundant_consequences = closure.redundant_generators()
        report.dim_con = closure.rank
        api_logger.print_log(f"ranks {report.con_ranks}")
        self.dump_matrix("con7", lambda: closure.basis)
        self.audit(report, "con_ranks", CON_RANKS, report.con_ranks)
        self.audit(report, "redundant_consequences", REDUNDANT_CONSEQUENCES, report.redundant_consequences)
        return closure

    def _expansion(self, report: Arity7Report) -> np.ndarray:
        api_logger = ApiLogger(f"[ARITY7] [STEP 3] [EXPANSION MATRIX] : mod {self.prime}")
        array = reduce_mod(expansion_array(7), self.prime)
        self.dump_matrix("E7", lambda: ExactMatrix(array, self.field))
        echelon = ModularEchelon(array.shape[1], self.prime, self.chunk_rows)
        echelon.add_rows(array)
        report.expansion_rank = echelon.rank
        report.nullity = array.shape[1] - echelon.rank
        report.dim_new = report.nullity - report.dim_con
        kernel = echelon.nullspace()
        api_logger.print_log(f"rank {report.expansion_rank} nullity {report.nullity}")
        self.dump_matrix("nullspace7", lambda: ExactMatrix(kernel, self.field))
        self.audit(report, "e7_rank", 2520, report.expansion_rank)
        self.audit(report, "e7_nullity", 5040, report.nullity)
        self.audit(report, "dim_new", 246, report.dim_new)
        return kernel

    def _filtration(self, report: Arity7Report, closure: ClosureResult, kernel: np.ndarray) -> Optional[np.ndarray]:
        """Nullspace rows by increasing weight; each one outside the current module becomes a generator."""
        api_logger = ApiLogger("[ARITY7] [STEP 4] [FILTRATION]")
        canonical = ModularEchelon(kernel.shape[1], self.prime, self.chunk_rows)
        canonical.add_rows(kernel)
        report.row_weight_min, report.row_weight_max = row_weight_profile(canonical)
        self.audit(report, "row_weight_min", 17, report.row_weight_min)
        self.audit(report, "row_weight_max", 1397, report.row_weight_max)

        weights = canonical.row_weights()
        order = np.argsort(weights, kind="stable")
        module = closure.echelon
        first = None
        position = 0
        while module.rank < report.nullity and position < len(order):
            batch = order[position:position + self.chunk_rows]
            hits = np.flatnonzero(module.reduce(canonical.rows(batch)).any(axis=1))
            if len(hits) == 0:
                position += len(batch)
                continue
            position += int(hits[0])
            row = canonical.rows([order[position]])[0]
            incremental_closure([SkewElement(7, row, self.prime)], 7, self.field, threads=self.threads,
                                chunk_rows=self.chunk_rows, echelon=module)
            step = FiltrationStep(position=position + 1, terms=int(weights[order[position]]), rank=module.rank)
            report.filtration.append(step)
            ApiLogger(f"[ARITY7] [STEP 4] [GENERATOR] : {step.terms} terms, rank {step.rank}")
            if first is None:
                first = row
            position += 1
        api_logger.print_log(f"ranks {[step.rank for step in report.filtration]}")
        self.audit(report, "filtration_ranks", FILTRATION_RANKS, [step.rank for step in report.filtration])
        self.audit(report, "all_generated", report.nullity, module.rank)
        return first

    def _lift(self, report: Arity7Report, row: np.ndarray) -> SkewElement:
        api_logger = ApiLogger("[ARITY7] [STEP 4] [LIFT]")
        unit = best_lift_unit(row, self.prime)
        generator = SkewElement(7, symmetric_lift(row, self.prime, unit))
        report.first_generator_lift_unit = unit
        report.first_generator_terms = generator.term_count()
        report.first_generator_coefficients = generator.coefficient_set()
        report.first_generator_expands_to_zero = expand_element(generator).is_zero()
        report.first_generator = generator.to_text(compact=True)
        api_logger.print_log(f"{report.first_generator_terms} terms, coefficients {report.first_generator_coefficients}")
        self.audit(report, "first_generator_terms", FIRST_GENERATOR_TERMS, report.first_generator_terms)
        lifted = set(report.first_generator_coefficients) <= LIFTED_COEFFICIENTS
        self.check(report, "first_generator_coefficients", lifted,
                   f"{report.first_generator_coefficients} within {sorted(LIFTED_COEFFICIENTS)}")
        self.check(report, "first_generator_expands_to_zero", report.first_generator_expands_to_zero)
        self.check(report, "first_generator_in_kernel_mod_p", expand_element(generator.reduce(self.prime)).is_zero())
        return generator

    def _representations(self, report: Arity7Report, generators: List[SkewElement], new: List[SkewElement]):
        api_logger = ApiLogger("[ARITY7] [STEPS 5-6] [REPRESENTATIONS]")
        sym_rows, con_rows, new_rows, bases = representation_inputs(7, generators, new)
        ranks = all_partition_ranks(7, sym_rows, con_rows, new_rows, bases, self.field, threads=self.threads)
        rows = partition_rows(ranks, len(bases))
        report.partitions = rows
        report.con_new_over_con = {row.partition: row.con_new_over_con for row in rows if row.con_new_over_con}
        report.all_over_con = {row.partition: row.all_over_con for row in rows if row.all_over_con}
        report.dimensions = {name: weighted_sum(rows, name) for name in DIMENSIONS}
        api_logger.print_log(f"dimensions {report.dimensions}")

        self.audit(report, "dimensions", DIMENSIONS, report.dimensions)
        self.audit(report, "sym_row", SYM, [row.sym for row in rows])
        self.audit(report, "sym_con_row", SYM_CON, [row.sym_con for row in rows])
        self.audit(report, "sym_con_new_row", SYM_CON_NEW, [row.sym_con_new for row in rows])
        self.audit(report, "expansion_row", EXPANSION, [row.expansion for row in rows])
        self.audit(report, "con_new_over_con", CON_NEW_OVER_CON, report.con_new_over_con)
        self.audit(report, "all_over_con", ALL_OVER_CON, report.all_over_con)
        self.check(report, "containment", all(row.sym_con_new <= row.nullity for row in rows))

        for row in rows:
            report.discrepancies += compare_with_printed(row)
        surprises = unexpected(report.discrepancies)
        self.check(report, "printed_tables", not surprises,
                   "; ".join(f"{f.table} at {f.partition}: printed {f.printed}, computed {f.computed}" for f in surprises))

    def run(self) -> Arity7Report:
        report = Arity7Report(prime=self.prime)
        generators = self._consequences(report)
        closure = self._closure(report, generators)
        kernel = self._expansion(report)
        row = self._filtration(report, closure, kernel)
        del kernel
        new = [self._lift(report, row)] if row is not None else [self.new_relation()]
        self._representations(report, generators, new)
        return report
