"""Row canonical form over GF(p), maintained incrementally for large dense matrices.

Rows are kept in float64: entries are below p, so every product of a row block with the echelon
rows stays an exact integer as long as inner_dim * (p - 1)^2 < 2^53. Larger inner dimensions are
split into slabs and reduced mod p between slabs.
"""
from typing import List, Tuple

import numpy as np

from src.lib.exception.exception_algebra import DimensionMismatchException, DomainMismatchException
from src.lib.metrics.algebra_metrics import MODULAR_REDUCTION_TIME

_EXACT_LIMIT = 2 ** 52
MAX_MODULUS = 2 ** 26


def storage_dtype(modulus: int):
    if modulus <= 128:
        return np.int8
    if modulus <= 2 ** 15:
        return np.int16
    return np.int64


def reduce_mod(array: np.ndarray, modulus: int, chunk_rows: int = 1024) -> np.ndarray:
    """array mod p in the smallest integer dtype holding 0..p-1."""
    array = np.asarray(array)
    result = np.empty(array.shape, dtype=storage_dtype(modulus))
    if array.ndim == 1:
        result[:] = np.mod(array.astype(np.int64), modulus)
        return result
    for start in range(0, array.shape[0], chunk_rows):
        result[start:start + chunk_rows] = np.mod(array[start:start + chunk_rows].astype(np.int64), modulus)
    return result


def modular_matmul(left: np.ndarray, right: np.ndarray, modulus: int) -> np.ndarray:
    """(left @ right) mod p, exact, returned as float64 with entries in 0..p-1."""
    slab = max(1, _EXACT_LIMIT // ((modulus - 1) ** 2))
    inner = left.shape[1]
    out = np.zeros((left.shape[0], right.shape[1]), dtype=np.float64)
    for start in range(0, inner, slab):
        out += left[:, start:start + slab].astype(np.float64) @ right[start:start + slab].astype(np.float64)
        np.fmod(out, modulus, out=out)
    return out


def rref_block(block: np.ndarray, modulus: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form of a small block; pivots chosen by column-major scan."""
    work = np.mod(np.asarray(block, dtype=np.int64), modulus)
    work = work[work.any(axis=1)]
    pivots: List[int] = []
    if len(work) == 0:
        return work, pivots
    done = 0
    for column in np.flatnonzero(work.any(axis=0)):
        nonzero = np.flatnonzero(work[done:, column])
        if len(nonzero) == 0:
            continue
        row = done + int(nonzero[0])
        if row != done:
            work[[done, row]] = work[[row, done]]
        inverse = pow(int(work[done, column]), -1, modulus)
        work[done] = (work[done] * inverse) % modulus
        factors = work[:, column].copy()
        factors[done] = 0
        targets = np.flatnonzero(factors)
        if len(targets):
            work[targets] = (work[targets] - np.outer(factors[targets], work[done])) % modulus
        pivots.append(int(column))
        done += 1
        if done == len(work):
            break
    return work[:done], pivots


class ModularEchelon:
    """The row canonical form of every row added so far."""

    def __init__(self, width: int, modulus: int, chunk_rows: int = 256):
        if modulus >= MAX_MODULUS:
            raise DomainMismatchException(f"modulus {modulus} too large for the float64 elimination kernel")
        self.width = width
        self.modulus = modulus
        self.chunk_rows = chunk_rows
        self._rows = np.zeros((0, width), dtype=np.float64)
        self._pivots = np.zeros(0, dtype=np.int64)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def pivots(self) -> np.ndarray:
        return self._pivots.copy()

    def copy(self) -> "ModularEchelon":
        twin = ModularEchelon(self.width, self.modulus, self.chunk_rows)
        twin._rows = self._rows.copy()
        twin._pivots = self._pivots.copy()
        return twin

    def _check_width(self, block: np.ndarray):
        if block.ndim != 2 or block.shape[1] != self.width:
            raise DimensionMismatchException(f"expected rows of width {self.width}, got shape {block.shape}")

    def reduce(self, block: np.ndarray) -> np.ndarray:
        """Residues of the rows of block modulo the row space (zero exactly on members)."""
        block = np.atleast_2d(np.asarray(block))
        self._check_width(block)
        with MODULAR_REDUCTION_TIME.time():
            residual = np.mod(block.astype(np.float64), self.modulus)
            if self.rank:
                residual -= modular_matmul(residual[:, self._pivots], self._rows, self.modulus)
                np.mod(residual, self.modulus, out=residual)
        return residual.astype(np.int64)

    def contains(self, vector: np.ndarray) -> bool:
        return not self.reduce(np.asarray(vector)[None, :]).any()

    def add_rows(self, block: np.ndarray) -> int:
        """Adjoin the rows of block; returns the rank increase."""
        block = np.atleast_2d(np.asarray(block))
        self._check_width(block)
        before = self.rank
        for start in range(0, len(block), self.chunk_rows):
            residual = self.reduce(block[start:start + self.chunk_rows])
            new_rows, new_pivots = rref_block(residual, self.modulus)
            if not new_pivots:
                continue
            new_rows = new_rows.astype(np.float64)
            if self.rank:
                self._rows -= modular_matmul(self._rows[:, new_pivots], new_rows, self.modulus)
                np.mod(self._rows, self.modulus, out=self._rows)
            rows = np.concatenate([self._rows, new_rows])
            pivots = np.concatenate([self._pivots, np.array(new_pivots, dtype=np.int64)])
            order = np.argsort(pivots, kind="stable")
            self._rows = rows[order]
            self._pivots = pivots[order]
        return self.rank - before

    def matrix(self) -> np.ndarray:
        return self._rows.astype(np.int64)

    def rows(self, indices) -> np.ndarray:
        return self._rows[np.asarray(indices, dtype=np.int64)].astype(np.int64)

    def row_weights(self) -> np.ndarray:
        """Nonzero entries per echelon row."""
        return np.count_nonzero(self._rows, axis=1)

    def nullspace(self) -> np.ndarray:
        """Right nullspace basis by free-column back-substitution, one row per free column."""
        free = np.setdiff1d(np.arange(self.width), self._pivots)
        basis = np.zeros((len(free), self.width), dtype=storage_dtype(self.modulus))
        basis[np.arange(len(free)), free] = 1
        if self.rank:
            for start in range(0, len(free), 1024):
                chunk = free[start:start + 1024]
                values = np.mod(-self._rows[:, chunk], self.modulus).astype(basis.dtype)
                basis[start:start + len(chunk)][:, self._pivots] = values.T
        return basis
