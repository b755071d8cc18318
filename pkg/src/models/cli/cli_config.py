from typing import Dict, Literal, Optional

from pydantic import BaseModel, Field, field_validator
from sympy import isprime

from src.lib.algebra.lattice import parse_delta
from src.lib.algebra.modular_echelon import MAX_MODULUS
from src.lib.configuration.configuration import DEFAULT_CHUNK_ROWS, DEFAULT_DELTA, DEFAULT_PRIME
from src.lib.exception.exception_algebra import LatticeException

DUMPABLE_MATRICES = ("E3", "E5", "N", "N_lll", "E7", "con7", "nullspace7")


class CliConfig(BaseModel):
    command: str
    prime: int = DEFAULT_PRIME
    delta: str = DEFAULT_DELTA
    format: Literal["text", "json"] = "text"
    output: Optional[str] = None
    dump_matrices: Dict[str, str] = Field(default_factory=dict)
    metrics_file: Optional[str] = None
    threads: int = Field(1, ge=1)
    chunk_rows: int = Field(DEFAULT_CHUNK_ROWS, ge=1)
    quiet: bool = False

    monomial: Optional[str] = None
    arity: Optional[int] = None
    partition: Optional[str] = None

    @field_validator("prime")
    @classmethod
    def check_prime(cls, value: int) -> int:
        if not isprime(value):
            raise ValueError(f"{value} is not prime")
        if value >= MAX_MODULUS:
            raise ValueError(f"primes below {MAX_MODULUS} are supported")
        return value

    @field_validator("delta")
    @classmethod
    def check_delta(cls, value: str) -> str:
        try:
            return str(parse_delta(value))
        except LatticeException as error:
            raise ValueError(error.message)

    @field_validator("dump_matrices")
    @classmethod
    def check_dump_names(cls, value: Dict[str, str]) -> Dict[str, str]:
        unknown = sorted(set(value) - set(DUMPABLE_MATRICES))
        if unknown:
            raise ValueError(f"unknown matrix names {unknown}; choose from {list(DUMPABLE_MATRICES)}")
        return value
