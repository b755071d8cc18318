from typing import List

from src.models import ReportModel


class NewRelationReport(ReportModel):
    command: str = "verify-figure2"

    prime: int = 0
    terms: int = 0
    coefficients: List[int] = []
    integer_expansion_zero: bool = False
    expansion_length: int = 0
    dim_con: int = 0
    rank_with_con: int = 0
