"""Representations of the symmetric group: partitions, characters, Specht modules and stacked ranks.

The group algebra element attached to a monomial is its filling read as a permutation; relabelling
by sigma multiplies on the left. For an irreducible [lambda] with representation R, the left
submodule generated by elements x_1, ..., x_m of the free module (F S_n)^k contains [lambda] with
multiplicity equal to the rank of the block matrix whose i-th block row is [R(x_i1) ... R(x_ik)].
"""
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import groupby
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import partitions as sympy_partitions

from src.lib.algebra.exact_linalg import CoefficientDomain, ExactMatrix, rank
from src.lib.algebra.modular_echelon import rref_block
from src.lib.algebra.skew_ternary import SkewElement, skew_basis, symmetry_generators
from src.lib.algebra.zinbiel_core import Permutation, permutation_table
from src.lib.exception.exception_algebra import (DimensionMismatchException, MalformedInputException, UnsafeException,
                                                 UnsupportedArityException)
from src.lib.log.api_logger import ApiLogger
from src.lib.metrics.algebra_metrics import STACKED_RANK_TIME

Tableau = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p <= 0 for p in self.parts) or list(self.parts) != sorted(self.parts, reverse=True):
            raise MalformedInputException(f"{self.parts} is not a partition")

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Comma separated parts such as 4,2,1, or 421 when every part is a single digit."""
        text = text.strip()
        try:
            parts = [int(x) for x in text.split(",")] if "," in text else [int(x) for x in text]
        except ValueError:
            raise MalformedInputException(f"cannot read a partition from {text!r}")
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def conjugate(self) -> "Partition":
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def hooks(self) -> List[List[int]]:
        columns = self.conjugate.parts
        return [[self.parts[i] - j + columns[j] - i - 1 for j in range(self.parts[i])] for i in range(len(self.parts))]

    @property
    def dimension(self) -> int:
        """Hook length formula."""
        return math.factorial(self.n) // math.prod(h for row in self.hooks() for h in row)

    @property
    def label(self) -> str:
        """Parts with repeats as exponents: 7, 51^2, 3^21, 2^21^3."""
        out = []
        for value, run in groupby(self.parts):
            count = len(list(run))
            out.append(f"{value}^{count}" if count > 1 else f"{value}")
        return "".join(out)

    def __str__(self):
        return "[" + "".join(str(p) for p in self.parts) + "]" if max(self.parts) < 10 else str(list(self.parts))


@lru_cache(maxsize=None)
def partitions(n: int) -> Tuple[Partition, ...]:
    """Partitions of n in decreasing lex order: 7, 61, 52, 511, 43, ..., 1^7."""
    if n < 1:
        raise UnsupportedArityException(f"partitions of {n} are not defined here")
    found = []
    for multiplicities in sympy_partitions(n):
        parts = []
        for part, count in sorted(multiplicities.items(), reverse=True):
            parts += [part] * count
        found.append(tuple(parts))
    return tuple(Partition(parts) for parts in sorted(found, reverse=True))


def class_types(n: int) -> Tuple[Partition, ...]:
    """Cycle types in increasing lex order, identity first: 1^5, 21^3, 2^21, 31^2, 32, 41, 5."""
    return tuple(reversed(partitions(n)))


def partition_by_label(label: str, n: int) -> Partition:
    for lam in partitions(n):
        if lam.label == label:
            return lam
    raise MalformedInputException(f"{label!r} is not the label of a partition of {n}")


def conjugate_labels(multiplicities: Dict[str, int], n: int) -> Dict[str, int]:
    """The same multiplicities with every partition replaced by its conjugate (tensoring with the sign)."""
    return {partition_by_label(label, n).conjugate.label: m for label, m in multiplicities.items()}


def class_size(mu: Partition) -> int:
    centralizer = 1
    for part, count in Counter(mu.parts).items():
        centralizer *= part ** count * math.factorial(count)
    return math.factorial(mu.n) // centralizer


def class_representative(mu: Partition) -> Permutation:
    """Cycles on consecutive letters, longest first."""
    cycles, start = [], 0
    for part in mu.parts:
        cycles.append(list(range(start, start + part)))
        start += part
    return Permutation.from_cycles(mu.n, *[c for c in cycles if len(c) > 1])


def _beta_set(parts: Tuple[int, ...]) -> frozenset:
    length = len(parts)
    return frozenset(p + length - 1 - i for i, p in enumerate(parts))


@lru_cache(maxsize=None)
def _murnaghan_nakayama(beta: frozenset, cycle_type: Tuple[int, ...]) -> int:
    if not cycle_type:
        return 1
    r, rest = cycle_type[0], cycle_type[1:]
    total = 0
    for b in beta:
        if b - r < 0 or (b - r) in beta:
            continue
        height = sum(1 for c in beta if b - r < c < b)
        total += (-1) ** height * _murnaghan_nakayama((beta - {b}) | {b - r}, rest)
    return total


def character_value(lam: Partition, mu: Partition) -> int:
    if lam.n != mu.n:
        raise DimensionMismatchException(f"{lam} and {mu} partition different integers")
    return _murnaghan_nakayama(_beta_set(lam.parts), mu.parts)


def character(lam: Partition) -> List[int]:
    """chi_lambda on class_types(n)."""
    return [character_value(lam, mu) for mu in class_types(lam.n)]


@dataclass
class CharacterTable:
    n: int
    irreducibles: Tuple[Partition, ...]
    classes: Tuple[Partition, ...]
    sizes: List[int]
    values: Dict[Partition, List[int]]

    @classmethod
    def of(cls, n: int) -> "CharacterTable":
        irreducibles = partitions(n)
        classes = class_types(n)
        return cls(n, irreducibles, classes, [class_size(mu) for mu in classes], {lam: character(lam) for lam in irreducibles})

    def inner_product(self, left: Sequence[int], right: Sequence[int]) -> Fraction:
        return Fraction(sum(s * a * b for s, a, b in zip(self.sizes, left, right)), math.factorial(self.n))

    def orthogonality_holds(self) -> bool:
        return all(self.inner_product(self.values[a], self.values[b]) == (1 if a == b else 0)
                   for a in self.irreducibles for b in self.irreducibles)

    def decompose(self, chi: Sequence[int]) -> Dict[Partition, int]:
        """Multiplicities of the irreducibles in a character given on class_types(n)."""
        if len(chi) != len(self.classes):
            raise DimensionMismatchException(f"character of length {len(chi)} for {len(self.classes)} classes")
        multiplicities = {}
        for lam in self.irreducibles:
            m = self.inner_product(chi, self.values[lam])
            if m.denominator != 1 or m < 0:
                raise MalformedInputException(f"{list(chi)} is not a character: <chi, chi_{lam.label}> = {m}")
            if m:
                multiplicities[lam] = int(m)
        return multiplicities


@lru_cache(maxsize=None)
def character_table(n: int) -> CharacterTable:
    return CharacterTable.of(n)


def decompose(chi: Sequence[int], n: int) -> Dict[Partition, int]:
    return character_table(n).decompose(chi)


def standard_tableaux(lam: Partition) -> List[Tableau]:
    """Standard Young tableaux of shape lam, letters 0..n-1, built by placing letters in increasing order."""
    found: List[Tableau] = []

    def place(rows: List[List[int]], k: int):
        if k == lam.n:
            found.append(tuple(tuple(row) for row in rows))
            return
        for i in range(len(lam.parts)):
            if len(rows[i]) < lam.parts[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                place(rows, k + 1)
                rows[i].pop()

    place([[] for _ in lam.parts], 0)
    return found


def _columns(tableau: Tableau) -> List[Tuple[int, ...]]:
    return [tuple(row[j] for row in tableau if len(row) > j) for j in range(len(tableau[0]))]


def _parity(sequence: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(sequence)) for j in range(i + 1, len(sequence)) if sequence[i] > sequence[j])
    return -1 if inversions % 2 else 1


def polytabloid_coefficient(tableau: Tableau, target: Tableau) -> int:
    """Coefficient of the tabloid {target} in the polytabloid e_tableau."""
    row_of = {x: i for i, row in enumerate(target) for x in row}
    sign = 1
    for column in _columns(tableau):
        rows = [row_of[x] for x in column]
        if sorted(rows) != list(range(len(column))):
            return 0
        sign *= _parity(rows)
    return sign


def _relabel(tableau: Tableau, sigma: Sequence[int]) -> Tableau:
    return tuple(tuple(int(sigma[x]) for x in row) for row in tableau)


class SpechtModule:
    """[lambda] in the basis of standard polytabloids; dual=True gives the realization sigma -> R(sigma^-1)^T."""

    def __init__(self, lam: Partition, dual: bool = False):
        self.partition = lam
        self.dual = dual
        self.tableaux = standard_tableaux(lam)
        self.dimension = len(self.tableaux)
        if self.dimension != lam.dimension:
            raise UnsafeException(f"{self.dimension} standard tableaux of shape {lam}, hook formula gives {lam.dimension}")
        self._inverse_gram = self._integer_inverse(self._coefficients(self.tableaux))

    def _coefficients(self, tableaux: Sequence[Tableau]) -> List[List[int]]:
        return [[polytabloid_coefficient(t, s) for t in tableaux] for s in self.tableaux]

    @staticmethod
    def _integer_inverse(rows: List[List[int]]) -> np.ndarray:
        size = len(rows)
        inverse = DomainMatrix([[QQ(x) for x in row] for row in rows], (size, size), QQ).inv()
        values = [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in inverse.to_list()]
        if any(x.denominator != 1 for row in values for x in row):
            raise UnsafeException("standard polytabloid coordinates are not unimodular")
        return np.array([[int(x) for x in row] for row in values], dtype=np.int64)

    def _direct(self, sigma: Sequence[int]) -> np.ndarray:
        moved = [_relabel(t, sigma) for t in self.tableaux]
        return self._inverse_gram @ np.array(self._coefficients(moved), dtype=np.int64)

    def rep_matrix(self, sigma: Permutation) -> np.ndarray:
        if sigma.arity != self.partition.n:
            raise DimensionMismatchException(f"permutation of arity {sigma.arity} acting on {self.partition}")
        if self.dual:
            return np.ascontiguousarray(self._direct(sigma.inverse().letters).T)
        return self._direct(sigma.letters)

    def all_matrices(self) -> np.ndarray:
        """R(p) for every permutation in lex order, by R(p) = R(s_i) R(s_i p) along inversion counts."""
        n, d = self.partition.n, self.dimension
        table = permutation_table(n)
        perms = table.perms
        out = np.zeros((len(perms), d, d), dtype=np.int64)
        if n == 1:
            out[0] = np.eye(1, dtype=np.int64)
            return out
        adjacent = np.stack([self.rep_matrix(Permutation.from_cycles(n, [i, i + 1])) for i in range(n - 1)])
        positions = np.argsort(perms, axis=1)
        descents = positions[:, 1:] < positions[:, :-1]
        inversions = np.triu(perms[:, :, None] > perms[:, None, :], 1).sum(axis=(1, 2))
        out[inversions == 0] = np.eye(d, dtype=np.int64)
        for level in range(1, int(inversions.max()) + 1):
            members = np.flatnonzero(inversions == level)
            steps = descents[members].argmax(axis=1)
            swapped = perms[members].copy()
            rows = np.arange(len(members))
            low, high = positions[members, steps], positions[members, steps + 1]
            swapped[rows, low], swapped[rows, high] = steps + 1, steps
            out[members] = np.matmul(adjacent[steps], out[table.index_of(swapped)])
        return out


@lru_cache(maxsize=None)
def specht_module(lam: Partition, dual: bool = False) -> SpechtModule:
    return SpechtModule(lam, dual)


def skew_components(x: SkewElement) -> List[np.ndarray]:
    """x as k group algebra elements, one per association type, each indexed by lex rank."""
    basis = x.basis
    table = basis.table
    components = []
    for t, offset in enumerate(basis.type_offsets):
        vector = np.zeros(len(table), dtype=np.int64)
        columns = np.arange(offset, offset + basis.type_sizes[t])
        vector[table.index_of(basis.fillings[columns])] = x.coefficients[columns]
        components.append(vector)
    return components


def symmetry_components(n: int) -> List[List[np.ndarray]]:
    """One row per skew symmetry: identity + swap in the component of its type, zero elsewhere."""
    basis = skew_basis(n)
    table = basis.table
    identity = np.arange(n)
    rows = []
    for t, shape in enumerate(basis.type_shapes):
        for block_a, block_b in symmetry_generators(shape):
            swap = identity.copy()
            swap[list(block_a)], swap[list(block_b)] = list(block_b), list(block_a)
            vector = np.zeros(len(table), dtype=np.int64)
            vector[table.index_of(identity[None, :])[0]] += 1
            vector[table.index_of(swap[None, :])[0]] += 1
            row = [np.zeros(len(table), dtype=np.int64) for _ in basis.type_shapes]
            row[t] = vector
            rows.append(row)
    return rows


def _matrix_rank(matrix: np.ndarray, domain: CoefficientDomain) -> int:
    if domain.is_prime_field:
        return len(rref_block(np.mod(matrix, domain.modulus), domain.modulus)[1])
    return rank(ExactMatrix.from_array(matrix, domain))


class WedderburnBlock:
    """The image of the group algebra in End([lambda]): every R(p) precomputed."""

    def __init__(self, lam: Partition, dual: bool = False):
        self.partition = lam
        self.module = specht_module(lam, dual)
        self.dimension = self.module.dimension
        self.matrices = self.module.all_matrices()

    def image(self, coefficients: np.ndarray) -> np.ndarray:
        """R(sum_p c_p p) with integer coefficients over lex rank."""
        coefficients = np.asarray(coefficients, dtype=np.int64)
        if coefficients.shape != (len(self.matrices),):
            raise DimensionMismatchException(f"group algebra element of length {coefficients.shape} for S_{self.partition.n}")
        support = np.flatnonzero(coefficients)
        if len(support) == 0:
            return np.zeros((self.dimension, self.dimension), dtype=np.int64)
        return np.tensordot(coefficients[support], self.matrices[support], axes=1)

    def block_row(self, components: Sequence[np.ndarray], transpose: bool = False) -> np.ndarray:
        blocks = [self.image(c) for c in components]
        return np.concatenate([b.T if transpose else b for b in blocks], axis=1)

    def stacked_matrix(self, rows: Sequence[Sequence[np.ndarray]]) -> np.ndarray:
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise DimensionMismatchException(f"block rows with different numbers of association types: {sorted(widths)}")
        return np.concatenate([self.block_row(row) for row in rows], axis=0)

    def stacked_rank(self, rows: Sequence[Sequence[np.ndarray]], domain: CoefficientDomain) -> int:
        """Multiplicity of [lambda] in the module generated by the rows."""
        if not rows:
            return 0
        with STACKED_RANK_TIME.time():
            return _matrix_rank(self.stacked_matrix(rows), domain)

    def expansion_rank(self, bases: Sequence[np.ndarray], domain: CoefficientDomain) -> int:
        """Rank of [R(b_1)^T ... R(b_k)^T] for the expansions b_t of the association types."""
        with STACKED_RANK_TIME.time():
            return _matrix_rank(self.block_row(bases, transpose=True), domain)

    def isotypic_nullity(self, bases: Sequence[np.ndarray], domain: CoefficientDomain) -> int:
        """Multiplicity of [lambda] in the kernel of the expansion map on (F S_n)^k."""
        return len(bases) * self.dimension - self.expansion_rank(bases, domain)


@dataclass
class PartitionRanks:
    partition: Partition
    dimension: int
    sym: int
    sym_con: int
    sym_con_new: Optional[int]
    expansion: int
    nullity: int


def partition_ranks(lam: Partition, sym_rows, con_rows, new_rows, bases, domain: CoefficientDomain,
                    dual: bool = False) -> PartitionRanks:
    api_logger = ApiLogger(f"[SYMREP] [RANKS] [{lam.label}] : dimension {lam.dimension}")
    block = WedderburnBlock(lam, dual)
    sym = block.stacked_rank(sym_rows, domain)
    sym_con = block.stacked_rank(list(sym_rows) + list(con_rows), domain)
    sym_con_new = block.stacked_rank(list(sym_rows) + list(con_rows) + list(new_rows), domain) if new_rows else None
    expansion = block.expansion_rank(bases, domain)
    nullity = len(bases) * block.dimension - expansion
    api_logger.print_log(f"sym {sym} con {sym_con} new {sym_con_new} exp {expansion} nul {nullity}")
    return PartitionRanks(lam, block.dimension, sym, sym_con, sym_con_new, expansion, nullity)


def all_partition_ranks(n: int, sym_rows, con_rows, new_rows, bases, domain: CoefficientDomain,
                        threads: int = 1, only: Optional[Sequence[Partition]] = None, dual: bool = False) -> List[PartitionRanks]:
    """partition_ranks for every partition of n (or the given ones), in partitions(n) order."""
    targets = list(only) if only is not None else list(partitions(n))

    def job(lam):
        return partition_ranks(lam, sym_rows, con_rows, new_rows, bases, domain, dual)

    if threads <= 1:
        return [job(lam) for lam in targets]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(job, targets))
