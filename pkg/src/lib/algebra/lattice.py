"""Integer lattice bases: LLL reduction, the log-size measure and exact Gram-Schmidt checks."""
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.matrices.exceptions import DMError

from src.lib.algebra.exact_linalg import CoefficientDomain, ExactMatrix, hnf_transform, rank
from src.lib.exception.exception_algebra import LatticeException
from src.lib.log.api_logger import ApiLogger
from src.lib.metrics.algebra_metrics import LLL_TIME

Rows = List[List[int]]


def parse_delta(value: Union[str, Fraction, int]) -> Fraction:
    """Reduction parameter as an exact rational with 1/4 < delta <= 1."""
    try:
        delta = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise LatticeException(f"reduction parameter {value!r} is not a rational number")
    if not Fraction(1, 4) < delta <= 1:
        raise LatticeException(f"reduction parameter {delta} must satisfy 1/4 < delta <= 1")
    return delta


def _rows_of(B) -> Rows:
    if isinstance(B, LatticeBasis):
        return [list(row) for row in B.rows]
    if isinstance(B, ExactMatrix):
        return [[int(x) for x in row] for row in B.to_array().tolist()]
    return [[int(x) for x in row] for row in B]


def squared_length(row: Sequence[int]) -> int:
    return sum(int(x) * int(x) for x in row)


def squared_lengths(B) -> Counter:
    return Counter(squared_length(row) for row in _rows_of(B))


def format_multiset(multiset: Counter) -> str:
    """Ascending values with exponents above one, as in 14^13, 16^14, 18."""
    return ", ".join(f"{value}^{count}" if count > 1 else f"{value}" for value, count in sorted(multiset.items()))


def measure(B) -> float:
    """Sum of log10 of the squared row lengths."""
    total = 0.0
    for position, row in enumerate(_rows_of(B)):
        length = squared_length(row)
        if length == 0:
            raise LatticeException(f"row {position} is zero; the measure is undefined")
        total += math.log10(length)
    return total


def gram_schmidt(B) -> Tuple[List[List[Fraction]], List[List[Fraction]]]:
    """Orthogonalized rows b*_i and coefficients mu[i][j] = <b_i, b*_j> / <b*_j, b*_j>, exactly."""
    rows = _rows_of(B)
    ortho: List[List[Fraction]] = []
    norms: List[Fraction] = []
    mu = [[Fraction(0)] * len(rows) for _ in rows]
    for i, row in enumerate(rows):
        vector = [Fraction(x) for x in row]
        for j in range(i):
            if norms[j] == 0:
                continue
            mu[i][j] = sum((Fraction(a) * b for a, b in zip(row, ortho[j])), Fraction(0)) / norms[j]
            vector = [v - mu[i][j] * b for v, b in zip(vector, ortho[j])]
        ortho.append(vector)
        norms.append(sum((v * v for v in vector), Fraction(0)))
        mu[i][i] = Fraction(1)
    return ortho, mu


def is_lll_reduced(B, delta: Union[str, Fraction] = Fraction(3, 4)) -> bool:
    """Size reduction |mu_ij| <= 1/2 and the Lovasz condition, checked in rational arithmetic."""
    delta = Fraction(delta)
    ortho, mu = gram_schmidt(B)
    norms = [sum((v * v for v in vector), Fraction(0)) for vector in ortho]
    for i in range(len(ortho)):
        if any(abs(mu[i][j]) > Fraction(1, 2) for j in range(i)):
            return False
        if i and norms[i] < (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            return False
    return True


def _hermite_rows(rows: Rows, width: int) -> Rows:
    if not rows:
        return []
    H, _ = hnf_transform(ExactMatrix.from_rows(rows, CoefficientDomain.integers(), ncols=width))
    return [row for row in H.to_rows() if any(row)]


def same_lattice(A, B) -> bool:
    rows_a, rows_b = _rows_of(A), _rows_of(B)
    width_a = len(rows_a[0]) if rows_a else 0
    width_b = len(rows_b[0]) if rows_b else 0
    if rows_a and rows_b and width_a != width_b:
        return False
    width = width_a or width_b
    return _hermite_rows(rows_a, width) == _hermite_rows(rows_b, width)


@dataclass(frozen=True)
class LatticeBasis:
    """Independent integer rows and the reduction parameter used on them."""
    rows: Tuple[Tuple[int, ...], ...]
    delta: Fraction = Fraction(3, 4)

    @classmethod
    def of(cls, B, delta: Union[str, Fraction] = Fraction(3, 4)) -> "LatticeBasis":
        rows = tuple(tuple(row) for row in _rows_of(B))
        if len({len(row) for row in rows}) > 1:
            raise LatticeException("lattice rows must have equal width")
        return cls(rows, parse_delta(delta))

    @property
    def width(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __len__(self):
        return len(self.rows)

    def to_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_rows(self.rows, CoefficientDomain.integers(), ncols=self.width)

    def measure(self) -> float:
        return measure(self)

    def squared_lengths(self) -> Counter:
        return squared_lengths(self)

    def shortest(self) -> Tuple[int, Tuple[int, ...]]:
        """Index and row of the shortest vector; ties go to the earliest row."""
        index = min(range(len(self.rows)), key=lambda i: (squared_length(self.rows[i]), i))
        return index, self.rows[index]

    def reduced(self, delta: Union[str, Fraction, None] = None) -> "LatticeBasis":
        delta = self.delta if delta is None else parse_delta(delta)
        return LatticeBasis(tuple(tuple(row) for row in lll(self, delta)), delta)


def exact_lll(B, delta: Union[str, Fraction] = Fraction(1)) -> Rows:
    """LLL in rational arithmetic with incremental Gram-Schmidt updates.

    Accepts delta = 1: on integer rows every swap strictly lowers a positive integer Gram determinant.
    Rows must be linearly independent.
    """
    delta = parse_delta(delta)
    b = _rows_of(B)
    n = len(b)
    ortho, mu = gram_schmidt(b)
    norms = [sum((v * v for v in vector), Fraction(0)) for vector in ortho]
    if any(norm == 0 for norm in norms):
        raise LatticeException("lattice rows are linearly dependent")

    def size_reduce(k: int, l: int):
        if abs(mu[k][l]) > Fraction(1, 2):
            q = round(mu[k][l])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            mu[k][l] -= q
            for i in range(l):
                mu[k][i] -= q * mu[l][i]

    def swap(k: int):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m = mu[k][k - 1]
        combined = norms[k] + m * m * norms[k - 1]
        mu[k][k - 1] = m * norms[k - 1] / combined
        norms[k] = norms[k - 1] * norms[k] / combined
        norms[k - 1] = combined
        for i in range(k + 1, n):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if norms[k] < (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            swap(k)
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
    return b


def lll(B, delta: Union[str, Fraction] = Fraction(3, 4)) -> Rows:
    """delta-LLL-reduced basis of the lattice spanned by the rows of B."""
    delta = parse_delta(delta)
    rows = _rows_of(B)
    if not rows:
        return []
    width = len(rows[0])
    if len(rows) > width:
        raise LatticeException(f"{len(rows)} rows in dimension {width} cannot be independent")
    if rank(ExactMatrix.from_rows(rows, CoefficientDomain.rationals(), ncols=width)) < len(rows):
        raise LatticeException("lattice rows are linearly dependent")
    api_logger = ApiLogger(f"[LATTICE] [LLL] [DELTA {delta}] : {len(rows)}x{width}")
    if delta == 1:
        with LLL_TIME.time():
            result = exact_lll(rows, delta)
        api_logger.print_log(f"measure {measure(rows):.3f} -> {measure(result):.3f}")
        return result
    matrix = ExactMatrix.from_rows(rows, CoefficientDomain.integers(), ncols=width).domain_matrix
    try:
        with LLL_TIME.time():
            reduced = matrix.lll(delta=QQ(delta.numerator, delta.denominator))
    except DMError as error:
        api_logger.print_error(str(error))
        raise LatticeException(f"LLL failed: {error}")
    result = [[int(x) for x in row] for row in reduced.to_list()]
    api_logger.print_log(f"measure {measure(rows):.3f} -> {measure(result):.3f}")
    return result
