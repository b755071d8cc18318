import json
from typing import Any, List

from pydantic import BaseModel, ConfigDict, Field

from src.lib.utility.utils import AlgebraJSONEncoder

SCHEMA_VERSION = 1


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class ReportModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    command: str
    checks: List[CheckResult] = Field(default_factory=list)

    def to_json(self) -> dict:
        return self.model_dump(by_alias=True, exclude_none=False)

    def add_check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(CheckResult(name=name, passed=bool(passed), detail=detail))
        return bool(passed)

    def failed_checks(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def render(self, output_format: str = "text") -> str:
        if output_format == "json":
            return self.model_dump_json(by_alias=True, indent=2) + "\n"
        return "\n".join(_text_lines(self.to_json(), 0)) + "\n"


def _scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.3f}"
    if isinstance(value, (list, dict)):
        return json.dumps(value, cls=AlgebraJSONEncoder)
    return str(value)


def _flat(value: Any) -> bool:
    if isinstance(value, dict):
        return False
    if isinstance(value, list):
        return all(not isinstance(item, (dict, list)) for item in value)
    return True


def _text_lines(data: dict, indent: int) -> List[str]:
    """key: value per field in order; nested lists and models one item per line."""
    pad = "  " * indent
    lines = []
    for key, value in data.items():
        if _flat(value):
            lines.append(f"{pad}{key}: {_scalar(value)}")
        elif isinstance(value, dict):
            if all(_flat(item) and not isinstance(item, list) for item in value.values()):
                lines.append(f"{pad}{key}: " + ", ".join(f"{k}={_scalar(v)}" for k, v in value.items()))
            else:
                lines.append(f"{pad}{key}:")
                lines += _text_lines(value, indent + 1)
        else:
            lines.append(f"{pad}{key}:")
            for item in value:
                if isinstance(item, dict):
                    inner = _text_lines(item, indent + 2)
                    lines.append(f"{pad}  - " + inner[0].strip())
                    lines += inner[1:]
                else:
                    lines.append(f"{pad}  - {_scalar(item)}")
    return lines
