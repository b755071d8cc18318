from typing import Dict, List, Optional

from pydantic import BaseModel

from src.models import ReportModel


class FiltrationStep(BaseModel):
    position: int
    terms: int
    rank: int


class PartitionRow(BaseModel):
    partition: str
    dimension: int
    sym: int
    sym_con: int
    sym_con_new: Optional[int] = None
    expansion: int
    nullity: int
    skew: int
    con: int
    con_new_over_con: Optional[int] = None
    all_over_con: int
    all: int

    @classmethod
    def from_ranks(cls, ranks, types: int) -> "PartitionRow":
        d = ranks.dimension
        return cls(
            partition=ranks.partition.label,
            dimension=d,
            sym=ranks.sym,
            sym_con=ranks.sym_con,
            sym_con_new=ranks.sym_con_new,
            expansion=ranks.expansion,
            nullity=ranks.nullity,
            skew=types * d - ranks.sym,
            con=ranks.sym_con - ranks.sym,
            con_new_over_con=None if ranks.sym_con_new is None else ranks.sym_con_new - ranks.sym_con,
            all_over_con=ranks.nullity - ranks.sym_con,
            all=ranks.nullity - ranks.sym,
        )


class DiscrepancyFlag(BaseModel):
    table: str
    partition: str
    printed: int
    computed: int


class Arity7Report(ReportModel):
    command: str = "arity7"

    prime: int = 0
    basis_size: int = 0
    type_sizes: List[int] = []
    consequence_terms: List[int] = []
    con_ranks: List[int] = []
    redundant_consequences: List[int] = []
    dim_con: int = 0
    expansion_rank: int = 0
    nullity: int = 0
    dim_new: int = 0
    row_weight_min: int = 0
    row_weight_max: int = 0
    filtration: List[FiltrationStep] = []
    first_generator_terms: int = 0
    first_generator_coefficients: List[int] = []
    first_generator_lift_unit: int = 1
    first_generator_expands_to_zero: bool = False
    first_generator: str = ""
    partitions: List[PartitionRow] = []
    con_new_over_con: Dict[str, int] = {}
    all_over_con: Dict[str, int] = {}
    dimensions: Dict[str, int] = {}
    discrepancies: List[DiscrepancyFlag] = []
