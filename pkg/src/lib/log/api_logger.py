import datetime
import sys
import time
from enum import IntEnum
from typing import Optional


class EnumColor(IntEnum):
    RED = 196
    GREEN = 46
    YELLOW = 220


_log_enabled = True


def set_log_enabled(enabled: bool):
    global _log_enabled
    _log_enabled = enabled


def logger_print(message: str, color: Optional[EnumColor] = EnumColor.RED):
    # stdout is reserved for reports
    if not _log_enabled:
        return
    stream = sys.stderr
    line = f"{datetime.datetime.now()} {message}"
    if color is not None and stream.isatty():
        line = f"\u001b[38;5;{color.value}m {line}\u001b[0m"
    print(line, file=stream)


class ApiLogger(object):
    """One pipeline stage: announced on creation, closed by print_log or print_error with the elapsed time."""

    def __init__(self, message: str, color: EnumColor = EnumColor.YELLOW):
        self.message = message
        self.time_logger_created = time.time_ns()
        logger_print(self.message, color=color)

    def elapsed(self) -> str:
        return ApiLogger.convert_ns_to_hours_format(time.time_ns() - self.time_logger_created)

    def print_log(self, extend_message: Optional[str] = None, color: EnumColor = EnumColor.GREEN):
        suffix = f" --- {extend_message}" if extend_message else ""
        logger_print(f"{self.message}{suffix}: {self.elapsed()}", color=color)

    def print_error(self, message_error: str, color: EnumColor = EnumColor.RED):
        logger_print(f"{self.message} --- failed: {message_error}: {self.elapsed()}", color=color)

    @staticmethod
    def convert_ns_to_hours_format(time_in_ns: int) -> str:
        seconds, milliseconds = divmod(time_in_ns // 1_000_000, 1000)
        minutes, seconds = divmod(seconds, 60)
        hours, minutes = divmod(minutes, 60)
        return f"{hours:02d}:{minutes:02d}:{seconds:02d}.{milliseconds:03d}"
