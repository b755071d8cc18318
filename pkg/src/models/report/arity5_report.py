from typing import Dict, List, Optional

from pydantic import BaseModel

from src.models import ReportModel


class LatticeSummary(BaseModel):
    name: str
    delta: Optional[str] = None
    rows: int
    measure: float
    squared_lengths: str
    shortest_squared_length: int


class Arity5Report(ReportModel):
    command: str = "arity5"

    expansion_shape: List[int] = []
    expansion_rank: int = 0
    expansion_rank_mod_p: int = 0
    nullity: int = 0
    hnf_rank: int = 0
    lattices: List[LatticeSummary] = []
    lattice_preserved: bool = False
    tt_candidate: str = ""
    tt_candidate_terms: int = 0
    tt_candidate_squared_length: int = 0
    tt_candidate_row: int = -1
    tt_candidate_in_integer_kernel: bool = False
    closure_equals_nullspace: bool = False
    bundled_tt_same_module: bool = False
    character: List[int] = []
    class_types: List[str] = []
    decomposition: Dict[str, int] = {}
    isotypic_nullity_minus_sym: Dict[str, int] = {}
    # published multiplicities, labelled by conjugate partitions
    printed_decomposition: Dict[str, int] = {}
    hnf_unimodular: bool = False
    reference_measure: float = 0.0
    reference_measure_matched: bool = False
    reference_multiset: str = ""
    reference_multiset_matched: bool = False
