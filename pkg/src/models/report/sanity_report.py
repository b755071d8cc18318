from src.models import ReportModel


class SanityReport(ReportModel):
    command: str = "sanity"

    e3_shape: str = ""
    e3_nullity: int = -1
    zinbiel_identity_residual: int = -1
    tortkara_identity_residual: int = -1
    anticommutator_associativity_residual: int = -1
    tt_terms: int = 0
    tt_expansion_residual: int = -1
