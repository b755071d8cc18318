from typing import Dict, List, Optional

from src.models import ReportModel
from src.models.report.arity7_report import DiscrepancyFlag, PartitionRow


class RepresentationReport(ReportModel):
    command: str = "rep"

    arity: int
    prime: int = 0
    row: Optional[PartitionRow] = None
    printed: Dict[str, int] = {}
    discrepancies: List[DiscrepancyFlag] = []
