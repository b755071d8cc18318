from src.helpers.experiment.experiment_base import ExperimentBase
from src.lib.algebra.expansion import SignVector, expand
from src.lib.algebra.skew_ternary import TernaryMonomial, format_shape, skew_basis, straighten
from src.lib.algebra.zinbiel_core import BinaryMonomial, ZinbielElement
from src.lib.exception.exception_algebra import MalformedInputException
from src.lib.log.api_logger import ApiLogger
from src.models.report.monomial_report import ExpansionReport, ZnfReport


class ZnfExperiment(ExperimentBase):
    experiment_name = "znf"

    def __init__(self, config, monomial: str):
        super().__init__(config)
        if not monomial:
            raise MalformedInputException("znf needs a monomial such as a(b(cd)) or (ab)(cd)")
        self.monomial = monomial

    def run(self) -> ZnfReport:
        api_logger = ApiLogger(f"[ZNF] : {self.monomial}")
        parsed = BinaryMonomial.parse(self.monomial)
        element = ZinbielElement.from_trees(parsed.arity, [(1, parsed.tree)])
        report = ZnfReport(monomial=str(parsed), arity=parsed.arity)
        report.term_count = element.term_count()
        report.normal_form = str(element)
        report.terms = [f"{coefficient:+d} {word}" for coefficient, word in element.terms()]
        api_logger.print_log(f"{report.term_count} terms")
        return report


class ExpansionExperiment(ExperimentBase):
    experiment_name = "expand"

    def __init__(self, config, monomial: str):
        super().__init__(config)
        if not monomial:
            raise MalformedInputException("expand needs a ternary monomial such as [[a,b,c],d,e]")
        self.monomial = monomial

    def run(self) -> ExpansionReport:
        api_logger = ApiLogger(f"[EXPAND] : {self.monomial}")
        parsed = TernaryMonomial.parse(self.monomial)
        sign, canonical = straighten(parsed)
        element = expand(canonical).scale(sign)
        report = ExpansionReport(monomial=str(parsed))
        report.canonical = str(canonical)
        report.straighten_sign = sign
        report.arity = canonical.arity
        report.association_type = format_shape(canonical.shape)
        report.column = skew_basis(canonical.arity).column_of(canonical)[0]
        report.term_count = element.term_count()
        report.sign_string = element.sign_string()
        report.sign_rows = SignVector(canonical.arity, canonical.shape, report.sign_string).rows()
        api_logger.print_log(f"{report.term_count} terms")
        return report
