from src.helpers.experiment.arity5_experiment import Arity5Experiment
from src.helpers.experiment.arity7_experiment import Arity7Experiment
from src.helpers.experiment.experiment_base import ExperimentBase
from src.helpers.experiment.new_relation_experiment import NewRelationExperiment
from src.helpers.experiment.monomial_experiment import ExpansionExperiment, ZnfExperiment
from src.helpers.experiment.representation_experiment import RepresentationExperiment
from src.helpers.experiment.sanity_experiment import SanityExperiment
from src.lib.algebra.symrep import Partition
from src.lib.configuration.configuration import Config
from src.lib.exception.exception_algebra import MalformedInputException
from src.models import ReportModel
from src.models.cli.cli_config import CliConfig


class ExperimentManager:

    @staticmethod
    def build(cli_config: CliConfig, config: Config) -> ExperimentBase:
        command = cli_config.command
        if command == "sanity":
            return SanityExperiment(config)
        elif command == "znf":
            return ZnfExperiment(config, cli_config.monomial)
        elif command == "expand":
            return ExpansionExperiment(config, cli_config.monomial)
        elif command == "arity5":
            return Arity5Experiment(config)
        elif command == "arity7":
            return Arity7Experiment(config)
        elif command in ("verify-figure2", "verify-new-relation"):
            return NewRelationExperiment(config)
        elif command == "rep":
            if cli_config.arity is None or not cli_config.partition:
                raise MalformedInputException("rep needs --arity and --partition")
            return RepresentationExperiment(config, cli_config.arity, Partition.parse(cli_config.partition))
        raise MalformedInputException(f"unknown command {command!r}")

    @staticmethod
    def run(cli_config: CliConfig, config: Config) -> ReportModel:
        return ExperimentManager.build(cli_config, config).run()
