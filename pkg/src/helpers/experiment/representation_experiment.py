from typing import List, Sequence, Tuple

import numpy as np

from src.helpers.experiment.experiment_base import ExperimentBase
from src.helpers.experiment.printed_tables import KNOWN_MISPRINTS, PARTITION_LABELS, printed_row
from src.lib.algebra.expansion import base_sign_vectors
from src.lib.algebra.skew_ternary import SkewElement, consequences
from src.lib.algebra.symrep import Partition, PartitionRanks, all_partition_ranks, skew_components, symmetry_components
from src.lib.exception.exception_algebra import UnsupportedArityException
from src.lib.log.api_logger import ApiLogger
from src.models.report.arity7_report import DiscrepancyFlag, PartitionRow
from src.models.report.representation_report import RepresentationReport

GroupAlgebraRows = List[List[np.ndarray]]


def representation_inputs(arity: int, con: Sequence[SkewElement],
                          new: Sequence[SkewElement]) -> Tuple[GroupAlgebraRows, GroupAlgebraRows, GroupAlgebraRows, List[np.ndarray]]:
    """Symmetry, consequence and new-relation block rows plus the expansion of each association type."""
    sym_rows = symmetry_components(arity)
    con_rows = [skew_components(x) for x in con]
    new_rows = [skew_components(x) for x in new]
    bases = [vector.to_array().astype(np.int64) for vector in base_sign_vectors(arity)]
    return sym_rows, con_rows, new_rows, bases


def compare_with_printed(row: PartitionRow) -> List[DiscrepancyFlag]:
    if row.partition not in PARTITION_LABELS:
        return []
    flags = []
    for table, printed in printed_row(row.partition).items():
        computed = getattr(row, table)
        if computed is not None and computed != printed:
            flags.append(DiscrepancyFlag(table=table, partition=row.partition, printed=printed, computed=computed))
    return flags


def unexpected(flags: Sequence[DiscrepancyFlag]) -> List[DiscrepancyFlag]:
    return [flag for flag in flags if (flag.table, flag.partition) not in KNOWN_MISPRINTS]


def partition_rows(ranks: Sequence[PartitionRanks], types: int) -> List[PartitionRow]:
    return [PartitionRow.from_ranks(r, types) for r in ranks]


class RepresentationExperiment(ExperimentBase):
    """Table entries for one partition: the bundled arity 7 relation as the new generator, or arity 5 alone."""
    experiment_name = "rep"

    def __init__(self, config, arity: int, partition: Partition):
        super().__init__(config)
        if arity not in (5, 7) or partition.n != arity:
            raise UnsupportedArityException(f"rep needs arity 5 or 7 and a partition of it, got {arity} and {partition}")
        self.arity = arity
        self.partition = partition

    def _generators(self) -> Tuple[List[SkewElement], List[SkewElement]]:
        tt = self.tt_relation()
        if self.arity == 5:
            return [tt], []
        return consequences(tt), [self.new_relation()]

    def run(self) -> RepresentationReport:
        report = RepresentationReport(arity=self.arity, prime=self.prime)
        api_logger = ApiLogger(f"[REP] [ARITY {self.arity}] [{self.partition.label}]")
        con, new = self._generators()
        sym_rows, con_rows, new_rows, bases = representation_inputs(self.arity, con, new)
        ranks = all_partition_ranks(self.arity, sym_rows, con_rows, new_rows, bases, self.field, only=[self.partition])
        report.row = partition_rows(ranks, len(bases))[0]
        api_logger.print_log()

        self.check(report, "sym_within_sym_con", report.row.sym <= report.row.sym_con)
        if self.arity == 5:
            # TT generates every relation in arity 5
            self.audit(report, "sym_con_equals_nullity", report.row.nullity, report.row.sym_con)
            return report

        report.printed = printed_row(report.row.partition)
        report.discrepancies = compare_with_printed(report.row)
        self.check(report, "sym_con_new_within_nullity", report.row.sym_con_new <= report.row.nullity)
        surprises = unexpected(report.discrepancies)
        self.check(report, "printed_tables", not surprises,
                   "; ".join(f"{f.table} printed {f.printed} computed {f.computed}" for f in surprises))
        return report
