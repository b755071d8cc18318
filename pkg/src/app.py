import argparse
import sys
from typing import List, Optional

from src.apps import arity5_command, arity7_command, monomial_command, representation_command, sanity_command
from src.helpers.experiment.experiment_manager import ExperimentManager
from src.lib.configuration.configuration import DEFAULT_CHUNK_ROWS, DEFAULT_DELTA, DEFAULT_PRIME, config_manager
from src.lib.exception.exception_algebra import AuditFailureException
from src.lib.exception.exception_handler import handle_exception
from src.lib.log.api_logger import ApiLogger
from src.lib.metrics.algebra_metrics import write_metrics
from src.lib.utility.utils import parse_assignments
from src.models import ReportModel
from src.models.cli.cli_config import DUMPABLE_MATRICES, CliConfig

COMMANDS = (sanity_command, monomial_command, arity5_command, arity7_command, representation_command)


def global_flags() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--prime", type=int, default=DEFAULT_PRIME, help="modulus for the finite-field steps")
    flags.add_argument("--delta", default=DEFAULT_DELTA, help="LLL parameter as a rational, 1/4 < delta <= 1")
    flags.add_argument("--format", choices=("text", "json"), default="text")
    flags.add_argument("--threads", type=int, default=1)
    flags.add_argument("--chunk-rows", type=int, default=DEFAULT_CHUNK_ROWS, dest="chunk_rows")
    flags.add_argument("--output", help="write the report here instead of stdout")
    flags.add_argument("--dump-matrix", action="append", dest="dump_matrix", metavar="NAME=PATH",
                       help=f"write an intermediate matrix; NAME in {', '.join(DUMPABLE_MATRICES)}")
    flags.add_argument("--metrics-file", dest="metrics_file", help="write prometheus exposition text here")
    flags.add_argument("--quiet", action="store_true", help="no progress log on stderr")
    return flags


def create_app() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tortkara", description="Tortkara triple systems in the free Zinbiel operad")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    parents = [global_flags()]
    for command in COMMANDS:
        command.register(subparsers, parents)
    return parser


def cli_config_of(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        command=args.command,
        prime=args.prime,
        delta=args.delta,
        format=args.format,
        output=args.output,
        dump_matrices=parse_assignments(args.dump_matrix),
        metrics_file=args.metrics_file,
        threads=args.threads,
        chunk_rows=args.chunk_rows,
        quiet=args.quiet,
        **args.handler(args),
    )


def write_report(report: ReportModel, output_format: str, output: Optional[str]):
    text = report.render(output_format)
    if output:
        with open(output, "w", encoding="utf-8") as file:
            file.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = create_app()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else 0

    output_format = args.format
    try:
        cli_config = cli_config_of(args)
        config = config_manager.reload(cli_config)
        api_logger = ApiLogger(f"[APP] [{cli_config.command.upper()}]")
        report = ExperimentManager.run(cli_config, config)
        write_report(report, output_format, config.output.output)
        write_metrics(config.output.metrics_file)
        failed = report.failed_checks()
        if failed:
            raise AuditFailureException(failed[0].name, actual=failed[0].detail)
        api_logger.print_log(f"{len(report.checks)} checks passed")
        return 0
    except Exception as error:
        return handle_exception(error, output_format)


if __name__ == "__main__":
    sys.exit(main())
