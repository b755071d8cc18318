import os
from typing import Callable, Optional, Union

from src.lib.algebra.exact_linalg import CoefficientDomain, ExactMatrix
from src.lib.algebra.skew_ternary import SkewElement, parse_relation
from src.lib.configuration.configuration import Config
from src.lib.log.api_logger import ApiLogger, EnumColor
from src.models import ReportModel

TT_RELATION_FILE = "tt_relation.txt"
NEW_RELATION_FILE = "new_relation7.txt"


class ExperimentBase:
    experiment_name = "experiment"

    def __init__(self, config: Config):
        self.config = config
        self.prime = config.linalg.prime
        self.field = CoefficientDomain.prime_field(self.prime)
        self.threads = config.linalg.threads
        self.chunk_rows = config.linalg.chunk_rows

    def run(self) -> ReportModel:
        raise NotImplementedError

    @staticmethod
    def get_dir_path() -> str:
        return os.path.dirname(__file__)

    @staticmethod
    def load_relation(file_name: str, folder_name: str = "data") -> SkewElement:
        file_path = os.path.join(ExperimentBase.get_dir_path(), folder_name, file_name)
        api_logger = ApiLogger(f"[EXPERIMENT] [DATA] [LOAD] : {file_name}")
        with open(file_path, encoding="utf-8") as file:
            relation = parse_relation(file.read())
        api_logger.print_log(f"{relation.term_count()} terms in arity {relation.arity}")
        return relation

    @classmethod
    def tt_relation(cls) -> SkewElement:
        return cls.load_relation(TT_RELATION_FILE)

    @classmethod
    def new_relation(cls) -> SkewElement:
        return cls.load_relation(NEW_RELATION_FILE)

    def audit(self, report: ReportModel, name: str, expected, actual) -> bool:
        passed = expected == actual
        detail = f"{actual}" if passed else f"expected {expected}, got {actual}"
        if not passed:
            ApiLogger(f"[{self.experiment_name.upper()}] [AUDIT] [{name}] : {detail}", color=EnumColor.RED)
        return report.add_check(name, passed, detail)

    def check(self, report: ReportModel, name: str, passed: bool, detail: str = "") -> bool:
        if not passed:
            ApiLogger(f"[{self.experiment_name.upper()}] [CHECK] [{name}] : {detail or 'failed'}", color=EnumColor.RED)
        return report.add_check(name, passed, detail)

    def wants_matrix(self, name: str) -> bool:
        return name in self.config.output.dump_matrices

    def dump_matrix(self, name: str, matrix: Union[ExactMatrix, Callable[[], ExactMatrix]]) -> Optional[str]:
        """Write a named intermediate matrix if it was requested with --dump-matrix."""
        if not self.wants_matrix(name):
            return None
        path = self.config.output.dump_matrices[name]
        api_logger = ApiLogger(f"[{self.experiment_name.upper()}] [DUMP] [{name}] : {path}")
        if callable(matrix):
            matrix = matrix()
        matrix.dump(path)
        api_logger.print_log(f"{matrix.nrows}x{matrix.ncols}")
        return path
