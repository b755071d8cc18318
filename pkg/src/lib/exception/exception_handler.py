import json
import sys

from pydantic import ValidationError

from src.lib.exception.exception_algebra import SafeException, UnsafeException
from src.lib.log.api_logger import ApiLogger, EnumColor
from src.models import SCHEMA_VERSION


def _validation_message(error: ValidationError) -> str:
    return "; ".join(f"{'.'.join(str(x) for x in e['loc']) or 'input'}: {e['msg']}" for e in error.errors())


def _emit(kind: str, message: str, code: int, output_format: str):
    if output_format == "json":
        payload = {"schema": SCHEMA_VERSION, "error": {"kind": kind, "message": message, "code": code}}
        print(json.dumps(payload), file=sys.stderr)
    else:
        print(f"error: {kind}: {message}", file=sys.stderr)


def handle_exception(error: BaseException, output_format: str = "text") -> int:
    """Report error on stderr and return the process exit code."""
    if isinstance(error, SafeException):
        _emit(type(error).__name__, error.message, error.code, output_format)
        return error.code

    if isinstance(error, ValidationError):
        _emit("InvalidArgument", _validation_message(error), 2, output_format)
        return 2

    if isinstance(error, ValueError):
        _emit("InvalidArgument", str(error), 2, output_format)
        return 2

    unsafe = error if isinstance(error, UnsafeException) else UnsafeException(f"{type(error).__name__}: {error}")
    ApiLogger(f"[EXCEPTION] [UNSAFE] : {unsafe.message}", color=EnumColor.RED)
    _emit("UnsafeException", f"internal error ({unsafe.message}), contact the maintainers", unsafe.code, output_format)
    return unsafe.code
