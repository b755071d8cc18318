"""Dense exact matrices over the integers, the rationals and GF(p).

Integer and rational matrices are sympy DomainMatrix objects over ZZ and QQ; prime-field matrices
are numpy arrays of canonical residues handled by the modular_echelon kernel.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from sympy import isprime
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from src.lib.algebra.modular_echelon import ModularEchelon, modular_matmul, reduce_mod
from src.lib.exception.exception_algebra import DimensionMismatchException, DomainMismatchException, MalformedInputException
from src.lib.log.api_logger import ApiLogger
from src.lib.metrics.algebra_metrics import HNF_TIME, RATIONAL_RCF_TIME

Scalar = Union[int, Fraction]


class DomainKind(str, Enum):
    INTEGERS = "integers"
    RATIONALS = "rationals"
    PRIME_FIELD = "prime"


class CoefficientDomain(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: DomainKind
    modulus: int = 0

    @model_validator(mode="after")
    def check_modulus(self):
        if self.kind == DomainKind.PRIME_FIELD:
            if not isprime(self.modulus):
                raise ValueError(f"{self.modulus} is not prime")
        elif self.modulus != 0:
            raise ValueError("only prime fields carry a modulus")
        return self

    @classmethod
    def integers(cls) -> "CoefficientDomain":
        return cls(kind=DomainKind.INTEGERS)

    @classmethod
    def rationals(cls) -> "CoefficientDomain":
        return cls(kind=DomainKind.RATIONALS)

    @classmethod
    def prime_field(cls, p: int = 101) -> "CoefficientDomain":
        return cls(kind=DomainKind.PRIME_FIELD, modulus=p)

    @property
    def is_field(self) -> bool:
        return self.kind != DomainKind.INTEGERS

    @property
    def is_prime_field(self) -> bool:
        return self.kind == DomainKind.PRIME_FIELD

    @property
    def sympy_domain(self):
        if self.is_prime_field:
            raise DomainMismatchException("prime-field matrices are not stored as DomainMatrix")
        return ZZ if self.kind == DomainKind.INTEGERS else QQ

    def __str__(self):
        if self.is_prime_field:
            return f"GF({self.modulus})"
        return "ZZ" if self.kind == DomainKind.INTEGERS else "QQ"


def _to_scalar(element) -> Scalar:
    denominator = int(getattr(element, "denominator", 1))
    numerator = int(getattr(element, "numerator", element))
    return numerator if denominator == 1 else Fraction(numerator, denominator)


def _to_domain_element(value, domain):
    value = Fraction(value)
    if domain == ZZ:
        if value.denominator != 1:
            raise DomainMismatchException(f"non-integer entry {value} in an integer matrix")
        return ZZ(value.numerator)
    return QQ(value.numerator, value.denominator)


class ExactMatrix:
    """A dense matrix whose entries live in one CoefficientDomain."""

    __hash__ = None

    def __init__(self, rep, domain: CoefficientDomain, shape: Optional[Tuple[int, int]] = None):
        self.domain = domain
        if domain.is_prime_field:
            if not isinstance(rep, np.ndarray) or rep.ndim != 2:
                raise DomainMismatchException("prime-field matrices are 2-d numpy arrays")
            self._rep = rep
        else:
            if not isinstance(rep, DomainMatrix):
                raise DomainMismatchException("integer and rational matrices are DomainMatrix objects")
            self._rep = rep if rep.domain == domain.sympy_domain else rep.convert_to(domain.sympy_domain)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], domain: CoefficientDomain, ncols: Optional[int] = None) -> "ExactMatrix":
        rows = [list(row) for row in rows]
        width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        if any(len(row) != width for row in rows):
            raise DimensionMismatchException("rows of unequal width")
        if domain.is_prime_field:
            values = [[Fraction(x) for x in row] for row in rows]
            array = np.array([[(x.numerator * pow(x.denominator, -1, domain.modulus)) % domain.modulus for x in row] for row in values],
                             dtype=np.int64).reshape(len(rows), width)
            return cls(reduce_mod(array, domain.modulus), domain)
        sympy_domain = domain.sympy_domain
        if not rows:
            return cls(DomainMatrix.zeros((0, width), sympy_domain), domain)
        elements = [[_to_domain_element(x, sympy_domain) for x in row] for row in rows]
        return cls(DomainMatrix(elements, (len(rows), width), sympy_domain), domain)

    @classmethod
    def from_array(cls, array: np.ndarray, domain: CoefficientDomain) -> "ExactMatrix":
        array = np.asarray(array)
        if array.ndim != 2:
            raise DimensionMismatchException(f"expected a 2-d array, got shape {array.shape}")
        if domain.is_prime_field:
            return cls(reduce_mod(array, domain.modulus), domain)
        return cls.from_rows(array.astype(np.int64).tolist(), domain, ncols=array.shape[1])

    @classmethod
    def zeros(cls, nrows: int, ncols: int, domain: CoefficientDomain) -> "ExactMatrix":
        if domain.is_prime_field:
            return cls(np.zeros((nrows, ncols), dtype=np.int64), domain)
        return cls(DomainMatrix.zeros((nrows, ncols), domain.sympy_domain), domain)

    @classmethod
    def identity(cls, n: int, domain: CoefficientDomain) -> "ExactMatrix":
        if domain.is_prime_field:
            return cls(np.eye(n, dtype=np.int64), domain)
        return cls(DomainMatrix.eye(n, domain.sympy_domain), domain)

    @property
    def shape(self) -> Tuple[int, int]:
        return tuple(self._rep.shape)

    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    @property
    def domain_matrix(self) -> DomainMatrix:
        if self.domain.is_prime_field:
            raise DomainMismatchException("prime-field matrix has no DomainMatrix form")
        return self._rep

    def to_rows(self) -> List[List[Scalar]]:
        if self.domain.is_prime_field:
            return self._rep.astype(np.int64).tolist()
        if self.nrows == 0:
            return []
        return [[_to_scalar(x) for x in row] for row in self._rep.to_list()]

    def to_array(self) -> np.ndarray:
        if self.domain.is_prime_field:
            return self._rep.astype(np.int64)
        rows = self.to_rows()
        if any(isinstance(x, Fraction) for row in rows for x in row):
            raise DomainMismatchException("matrix has non-integer entries")
        return np.array(rows, dtype=np.int64).reshape(self.shape)

    def transpose(self) -> "ExactMatrix":
        if self.domain.is_prime_field:
            return ExactMatrix(np.ascontiguousarray(self._rep.T), self.domain)
        return ExactMatrix(self._rep.transpose(), self.domain)

    def take_rows(self, indices: Sequence[int]) -> "ExactMatrix":
        indices = [int(i) for i in indices]
        if self.domain.is_prime_field:
            return ExactMatrix(self._rep[indices], self.domain)
        rows = self.to_rows()
        return ExactMatrix.from_rows([rows[i] for i in indices], self.domain, ncols=self.ncols)

    def vstack(self, *others: "ExactMatrix") -> "ExactMatrix":
        for other in others:
            if other.ncols != self.ncols or other.domain != self.domain:
                raise DimensionMismatchException("vstack needs equal widths and domains")
        if self.domain.is_prime_field:
            return ExactMatrix(np.concatenate([self._rep] + [o._rep for o in others]), self.domain)
        rows = self.to_rows() + [row for o in others for row in o.to_rows()]
        return ExactMatrix.from_rows(rows, self.domain, ncols=self.ncols)

    def convert_to(self, domain: CoefficientDomain) -> "ExactMatrix":
        if domain == self.domain:
            return self
        if domain.is_prime_field:
            return ExactMatrix.from_rows(self.to_rows(), domain, ncols=self.ncols)
        if self.domain.is_prime_field:
            return ExactMatrix.from_rows(self.to_rows(), domain, ncols=self.ncols)
        return ExactMatrix(self._rep.convert_to(domain.sympy_domain), domain)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows or self.domain != other.domain:
            raise DimensionMismatchException(f"cannot multiply {self.shape} by {other.shape}")
        if self.domain.is_prime_field:
            return ExactMatrix(modular_matmul(self._rep, other._rep, self.domain.modulus).astype(np.int64), self.domain)
        return ExactMatrix(self._rep * other._rep, self.domain)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.domain != other.domain or self.shape != other.shape:
            return False
        if self.domain.is_prime_field:
            return bool(np.array_equal(self._rep.astype(np.int64), other._rep.astype(np.int64)))
        return self.to_rows() == other.to_rows()

    def is_zero(self) -> bool:
        if self.domain.is_prime_field:
            return not self._rep.any()
        return all(x == 0 for row in self.to_rows() for x in row)

    def row_weights(self) -> List[int]:
        if self.domain.is_prime_field:
            return np.count_nonzero(self._rep, axis=1).tolist()
        return [sum(1 for x in row if x != 0) for row in self.to_rows()]

    def dump(self, path: str):
        """First line "rows cols modulus" (0 for exact entries), then one row per line."""
        with open(path, "w", encoding="utf-8") as file:
            file.write(f"{self.nrows} {self.ncols} {self.domain.modulus}\n")
            if self.domain.is_prime_field:
                for start in range(0, self.nrows, 1024):
                    for row in self._rep[start:start + 1024].astype(np.int64):
                        file.write(" ".join(map(str, row.tolist())) + "\n")
                return
            for row in self.to_rows():
                file.write(" ".join(str(x) for x in row) + "\n")

    @classmethod
    def load(cls, path: str) -> "ExactMatrix":
        with open(path, encoding="utf-8") as file:
            header = file.readline().split()
            if len(header) != 3:
                raise MalformedInputException(f"bad matrix header in {path}")
            nrows, ncols, modulus = (int(x) for x in header)
            rows = [[Fraction(token) for token in line.split()] for line in file if line.strip()]
        if len(rows) != nrows:
            raise MalformedInputException(f"{path} declares {nrows} rows but holds {len(rows)}")
        if modulus:
            domain = CoefficientDomain.prime_field(modulus)
        elif all(x.denominator == 1 for row in rows for x in row):
            domain = CoefficientDomain.integers()
        else:
            domain = CoefficientDomain.rationals()
        return cls.from_rows([[int(x) if x.denominator == 1 else x for x in row] for row in rows], domain, ncols=ncols)

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols} over {self.domain})"


def _require_field(M: ExactMatrix, operation: str):
    if not M.domain.is_field:
        raise DomainMismatchException(f"{operation} needs a field; use hnf_transform over the integers")


def echelon_of(M: ExactMatrix, chunk_rows: int = 256) -> ModularEchelon:
    echelon = ModularEchelon(M.ncols, M.domain.modulus, chunk_rows)
    echelon.add_rows(M._rep)
    return echelon


def rcf(M: ExactMatrix) -> Tuple[ExactMatrix, int]:
    """Row canonical form (same shape, zero rows last) and rank."""
    _require_field(M, "rcf")
    if M.domain.is_prime_field:
        echelon = echelon_of(M)
        R = np.zeros(M.shape, dtype=np.int64)
        R[:echelon.rank] = echelon.matrix()
        return ExactMatrix(R, M.domain), echelon.rank
    with RATIONAL_RCF_TIME.time():
        if M.nrows == 0 or M.ncols == 0:
            return M, 0
        R, pivots = M.domain_matrix.rref(method="FF")
    return ExactMatrix(R, M.domain), len(pivots)


def rank(M: ExactMatrix) -> int:
    return rcf(M)[1]


def pivot_columns(R: ExactMatrix) -> List[int]:
    """Leading columns of a matrix already in row canonical form."""
    pivots = []
    for row in R.to_rows():
        for j, x in enumerate(row):
            if x != 0:
                pivots.append(j)
                break
    return pivots


def nullspace(M: ExactMatrix) -> ExactMatrix:
    """Right nullspace basis (rows), one vector per free column."""
    _require_field(M, "nullspace")
    if M.domain.is_prime_field:
        return ExactMatrix(echelon_of(M).nullspace(), M.domain)
    R, r = rcf(M)
    rows = R.to_rows()[:r]
    pivots = pivot_columns(ExactMatrix.from_rows(rows, M.domain, ncols=M.ncols))
    free = [j for j in range(M.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        vector: List[Scalar] = [0] * M.ncols
        vector[f] = 1
        for i, p in enumerate(pivots):
            vector[p] = -rows[i][f]
        basis.append(vector)
    return ExactMatrix.from_rows(basis, M.domain, ncols=M.ncols)


def row_space_equal(A: ExactMatrix, B: ExactMatrix) -> bool:
    if A.ncols != B.ncols:
        raise DimensionMismatchException(f"row spaces of widths {A.ncols} and {B.ncols} are not comparable")
    if A.domain != B.domain:
        raise DomainMismatchException(f"cannot compare row spaces over {A.domain} and {B.domain}")
    _require_field(A, "row_space_equal")
    if A.domain.is_prime_field:
        left, right = echelon_of(A), echelon_of(B)
        return left.rank == right.rank and np.array_equal(left.matrix(), right.matrix())
    RA, rank_a = rcf(A)
    RB, rank_b = rcf(B)
    return rank_a == rank_b and RA.to_rows()[:rank_a] == RB.to_rows()[:rank_b]


def hnf_transform(M: ExactMatrix) -> Tuple[ExactMatrix, ExactMatrix]:
    """Row-style Hermite normal form H and unimodular U with U*M = H, by Euclidean row operations."""
    if M.domain.kind != DomainKind.INTEGERS:
        raise DomainMismatchException(f"hnf_transform works over the integers, got {M.domain}")
    api_logger = ApiLogger(f"[LINALG] [HNF] : {M.nrows}x{M.ncols}")
    with HNF_TIME.time():
        A = [list(row) for row in M.to_rows()]
        m = len(A)
        U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

        def swap(i, j):
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

        def subtract(target, source, q):
            A[target] = [a - q * b for a, b in zip(A[target], A[source])]
            U[target] = [a - q * b for a, b in zip(U[target], U[source])]

        pivot_row = 0
        for column in range(M.ncols):
            if pivot_row == m:
                break
            if all(A[i][column] == 0 for i in range(pivot_row, m)):
                continue
            while True:
                candidates = [i for i in range(pivot_row, m) if A[i][column] != 0]
                smallest = min(candidates, key=lambda i: (abs(A[i][column]), i))
                if smallest != pivot_row:
                    swap(smallest, pivot_row)
                cleared = True
                for i in range(pivot_row + 1, m):
                    if A[i][column]:
                        subtract(i, pivot_row, A[i][column] // A[pivot_row][column])
                        cleared = cleared and A[i][column] == 0
                if cleared:
                    break
            if A[pivot_row][column] < 0:
                A[pivot_row] = [-a for a in A[pivot_row]]
                U[pivot_row] = [-a for a in U[pivot_row]]
            for i in range(pivot_row):
                subtract(i, pivot_row, A[i][column] // A[pivot_row][column])
            pivot_row += 1
    api_logger.print_log(f"rank {pivot_row}")
    return ExactMatrix.from_rows(A, M.domain, ncols=M.ncols), ExactMatrix.from_rows(U, M.domain, ncols=m)


def determinant(M: ExactMatrix) -> Scalar:
    if M.nrows != M.ncols:
        raise DimensionMismatchException("determinant of a non-square matrix")
    if M.domain.is_prime_field:
        raise DomainMismatchException("determinant is provided over the integers and rationals")
    return _to_scalar(M.domain_matrix.det())


def symmetric_lift(vector: Sequence[int], modulus: int, unit: int = 1) -> List[int]:
    """Scale by a unit mod p, then lift each entry to (-p/2, p/2]."""
    lifted = []
    for value in vector:
        value = (int(value) * unit) % modulus
        lifted.append(value - modulus if value > modulus // 2 else value)
    return lifted


def integer_kernel_check(M: ExactMatrix, vector: Sequence[int]) -> bool:
    """M v = 0 computed over the integers, whatever field v was found in."""
    if len(vector) != M.ncols:
        raise DimensionMismatchException(f"vector of length {len(vector)} against {M.ncols} columns")
    integers = CoefficientDomain.integers()
    column = ExactMatrix.from_rows([[int(x)] for x in vector], integers)
    return (M.convert_to(integers) @ column).is_zero()


def best_lift_unit(vector: Sequence[int], modulus: int) -> int:
    """Smallest unit u minimising the largest |entry| of symmetric_lift(vector, p, u)."""
    support = [int(v) % modulus for v in vector if int(v) % modulus]
    if not support:
        return 1
    best_unit, best_height = 1, None
    for unit in range(1, modulus):
        height = max(abs(x) for x in symmetric_lift(support, modulus, unit))
        if best_height is None or height < best_height:
            best_unit, best_height = unit, height
    return best_unit


@dataclass
class ClosureResult:
    ranks: List[int]
    domain: CoefficientDomain
    rows: Optional[ExactMatrix] = field(default=None, repr=False)
    echelon: Optional[ModularEchelon] = field(default=None, repr=False)

    @property
    def basis(self) -> ExactMatrix:
        """Row canonical basis of the generated module."""
        if self.rows is None:
            self.rows = ExactMatrix(self.echelon.matrix(), self.domain)
        return self.rows

    @property
    def rank(self) -> int:
        return self.ranks[-1] if self.ranks else 0

    def redundant_generators(self) -> List[int]:
        """1-based positions of generators that did not raise the rank."""
        previous, redundant = 0, []
        for position, value in enumerate(self.ranks, start=1):
            if value == previous:
                redundant.append(position)
            previous = value
        return redundant


def incremental_closure(generators: list, arity: int, domain: CoefficientDomain, threads: int = 1,
                        chunk_rows: int = 256, echelon: Optional[ModularEchelon] = None) -> ClosureResult:
    """S_n-module generated by the generators: after each one, the rank of everything seen so far."""
    from src.lib.algebra.skew_ternary import all_permuted_copies, skew_basis

    width = len(skew_basis(arity))
    for generator in generators:
        if generator.arity != arity:
            raise DimensionMismatchException(f"generator of arity {generator.arity} in an arity {arity} closure")
    if not domain.is_field:
        raise DomainMismatchException("incremental_closure needs a field")

    ranks: List[int] = []
    if domain.is_prime_field:
        if echelon is None:
            echelon = ModularEchelon(width, domain.modulus, chunk_rows)
        for position, generator in enumerate(generators, start=1):
            api_logger = ApiLogger(f"[LINALG] [CLOSURE] [GENERATOR {position}] : {generator.term_count()} terms")
            copies = all_permuted_copies(generator.reduce(domain.modulus), threads=threads)
            echelon.add_rows(copies)
            ranks.append(echelon.rank)
            api_logger.print_log(f"rank {echelon.rank}")
        return ClosureResult(ranks, domain, echelon=echelon)

    current = ExactMatrix.zeros(0, width, domain)
    for generator in generators:
        if math.factorial(arity) * width > 10 ** 7:
            raise DomainMismatchException("exact closure is limited to small arities; use a prime field")
        copies = ExactMatrix.from_array(all_permuted_copies(generator, threads=threads), domain)
        R, r = rcf(current.vstack(copies))
        current = R.take_rows(range(r))
        ranks.append(r)
    return ClosureResult(ranks, domain, rows=current)
