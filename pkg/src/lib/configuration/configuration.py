from dataclasses import dataclass, field
from typing import Dict, Optional

from src.lib.log.api_logger import ApiLogger, set_log_enabled

DEFAULT_PRIME = 101
DEFAULT_DELTA = "999/1000"
DEFAULT_CHUNK_ROWS = 256


@dataclass
class LinalgConfig:
    prime: int = DEFAULT_PRIME
    chunk_rows: int = DEFAULT_CHUNK_ROWS
    threads: int = 1


@dataclass
class LatticeConfig:
    delta: str = DEFAULT_DELTA


@dataclass
class OutputConfig:
    format: str = "text"
    output: Optional[str] = None
    dump_matrices: Dict[str, str] = field(default_factory=dict)
    metrics_file: Optional[str] = None


@dataclass
class Config:
    log: bool = True

    linalg: LinalgConfig = field(default_factory=LinalgConfig)
    lattice: LatticeConfig = field(default_factory=LatticeConfig)
    output: OutputConfig = field(default_factory=OutputConfig)


class ConfigManager:
    def __init__(self):
        self._config = Config()

    def reload(self, cli_config) -> Config:
        """Rebuild the active configuration from validated command-line flags."""
        set_log_enabled(not cli_config.quiet)
        api_logger = ApiLogger(f"[CONFIGURATION] [RELOAD] [FLAGS] : command={cli_config.command}")

        self._config = Config(
            log=not cli_config.quiet,
            linalg=LinalgConfig(
                prime=cli_config.prime,
                chunk_rows=cli_config.chunk_rows,
                threads=cli_config.threads,
            ),
            lattice=LatticeConfig(delta=cli_config.delta),
            output=OutputConfig(
                format=cli_config.format,
                output=cli_config.output,
                dump_matrices=dict(cli_config.dump_matrices),
                metrics_file=cli_config.metrics_file,
            ),
        )
        api_logger.print_log(f"prime={cli_config.prime} delta={cli_config.delta} threads={cli_config.threads}")
        return self._config


config_manager = ConfigManager()
