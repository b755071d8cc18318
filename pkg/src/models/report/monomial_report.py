from typing import List

from src.models import ReportModel


class ZnfReport(ReportModel):
    command: str = "znf"

    monomial: str
    arity: int
    term_count: int = 0
    normal_form: str = ""
    terms: List[str] = []


class ExpansionReport(ReportModel):
    command: str = "expand"

    monomial: str
    canonical: str = ""
    straighten_sign: int = 1
    arity: int = 0
    association_type: str = ""
    column: int = -1
    term_count: int = 0
    sign_string: str = ""
    sign_rows: List[str] = []
