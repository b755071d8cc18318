"""Skew-ternary monomials, straightening, ordered bases and the S_n action.

A monomial of a standard association type is stored as (type index, filling) where slot i of the
shape holds letter filling[i]. Straightening orders the first two children of every node: a
composite child precedes a leaf, two children of the same kind compare by their leaf sequences,
and every swap flips the sign.
"""
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.lib.algebra.zinbiel_core import (ALPHABET, Permutation, check_multilinear, fill_shape, leaves, letter,
                                          letter_index, permutation_table)
from src.lib.exception.exception_algebra import MalformedInputException, UnsupportedArityException

TernaryTree = Union[int, Tuple["TernaryTree", "TernaryTree", "TernaryTree"]]

_T3 = (None, None, None)
_A5 = (_T3, None, None)
_B5 = (None, None, _T3)

ASSOCIATION_TYPES = {
    1: (None,),
    3: (_T3,),
    5: (_A5, _B5),
    7: (
        (_A5, None, None),
        (_B5, None, None),
        (None, None, _A5),
        (None, None, _B5),
        (_T3, _T3, None),
        (_T3, None, _T3),
    ),
}


def ternary_association_types(n: int) -> Tuple:
    if n not in ASSOCIATION_TYPES or n == 1:
        raise UnsupportedArityException(f"skew-ternary monomials are supported in arity 3, 5 and 7, got {n}")
    return ASSOCIATION_TYPES[n]


def shape_of(tree: TernaryTree):
    if isinstance(tree, int):
        return None
    return tuple(shape_of(child) for child in tree)


def format_shape(shape) -> str:
    if shape is None:
        return "*"
    return "[" + "".join(format_shape(child) for child in shape) + "]"


def format_ternary(tree: TernaryTree, compact: bool = False) -> str:
    if isinstance(tree, int):
        return letter(tree)
    separator = "" if compact else ","
    return "[" + separator.join(format_ternary(child, compact) for child in tree) + "]"


def symmetry_generators(shape) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Slot ranges (A, B) swapped by each skew symmetry: one per node whose first two children share a shape."""
    generators = []

    def walk(node, offset: int) -> int:
        if node is None:
            return offset + 1
        starts = []
        position = offset
        for child in node:
            starts.append(position)
            position = walk(child, position)
        if node[0] == node[1]:
            width = starts[1] - starts[0]
            generators.append((tuple(range(starts[0], starts[0] + width)), tuple(range(starts[1], starts[1] + width))))
        return position

    walk(shape, 0)
    return generators


def symmetry_group(shape) -> List[Tuple[Tuple[int, ...], int]]:
    """All slot permutations generated by the skew symmetries of a shape, with their signs."""
    n = len(leaves(fill_shape(shape)))
    generators = []
    for block_a, block_b in symmetry_generators(shape):
        slots = list(range(n))
        for i, j in zip(block_a, block_b):
            slots[i], slots[j] = j, i
        generators.append(tuple(slots))

    identity = tuple(range(n))
    group = {identity: 1}
    frontier = [identity]
    while frontier:
        following = []
        for element in frontier:
            for generator in generators:
                product = tuple(element[i] for i in generator)
                sign = -group[element]
                if product in group:
                    assert group[product] == sign, f"inconsistent skew symmetries on {format_shape(shape)}"
                    continue
                group[product] = sign
                following.append(product)
        frontier = following
    return sorted(group.items())


def _order_key(tree: TernaryTree):
    if isinstance(tree, int):
        return (1, 0, (tree,))
    sequence = leaves(tree)
    return (0, -len(sequence), sequence)


def _straighten(tree: TernaryTree) -> Tuple[int, TernaryTree]:
    if isinstance(tree, int):
        return 1, tree
    sign = 1
    children = []
    for child in tree:
        child_sign, child = _straighten(child)
        sign *= child_sign
        children.append(child)
    first, second, third = children
    if _order_key(second) < _order_key(first):
        first, second = second, first
        sign = -sign
    return sign, (first, second, third)


@dataclass(frozen=True)
class TernaryMonomial:
    tree: TernaryTree

    @classmethod
    def parse(cls, text: str) -> "TernaryMonomial":
        return cls(parse_monomial(text))

    @property
    def arity(self) -> int:
        return len(leaves(self.tree))

    @property
    def shape(self):
        return shape_of(self.tree)

    @property
    def filling(self) -> Tuple[int, ...]:
        return leaves(self.tree)

    @property
    def canonical(self) -> bool:
        sign, tree = _straighten(self.tree)
        return sign == 1 and tree == self.tree

    def compact(self) -> str:
        return format_ternary(self.tree, compact=True)

    def __str__(self):
        return format_ternary(self.tree)


class _TernaryParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_space(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> Optional[str]:
        self._skip_space()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> TernaryTree:
        tree = self._item()
        if self._peek() is not None:
            raise MalformedInputException(f"unexpected '{self.text[self.pos]}'", self.pos)
        return tree

    def _item(self) -> TernaryTree:
        char = self._peek()
        if char == "[":
            return self._node()
        if char is not None and char in ALPHABET:
            self.pos += 1
            return letter_index(char)
        raise MalformedInputException(f"expected a variable or '[', found '{char or 'end of input'}'", self.pos)

    def _node(self) -> TernaryTree:
        start = self.pos
        self.pos += 1
        children = []
        while True:
            char = self._peek()
            if char is None:
                raise MalformedInputException("unbalanced brackets: missing ']'", start)
            if char == "]":
                self.pos += 1
                break
            if children and char == ",":
                self.pos += 1
            children.append(self._item())
        if len(children) != 3:
            raise MalformedInputException(f"node arity {len(children)}", start)
        return tuple(children)


def parse_monomial(text: str) -> TernaryTree:
    """Parse comma form "[[a,b,c],d,e]" or compact form "[[abd]g[efc]]"."""
    tree = _TernaryParser(text).parse()
    check_multilinear(tree, text)
    return tree


def straighten(m: Union[TernaryMonomial, TernaryTree]) -> Tuple[int, TernaryMonomial]:
    tree = m.tree if isinstance(m, TernaryMonomial) else m
    found = check_multilinear(tree)
    arity = len(found)
    sign, canonical = _straighten(tree)
    if arity not in ASSOCIATION_TYPES or shape_of(canonical) not in ASSOCIATION_TYPES[arity]:
        raise MalformedInputException(f"unsupported shape {format_shape(shape_of(tree))} in arity {arity}")
    return sign, TernaryMonomial(canonical)


class SkewBasis:
    """Canonical monomials of arity n ordered by association type, then lex on the filling."""

    def __init__(self, n: int):
        self.arity = n
        self.type_shapes = ternary_association_types(n)
        self.table = permutation_table(n)
        perms = self.table.perms

        types, fillings, self.type_offsets = [], [], []
        self.groups = []
        for t, shape in enumerate(self.type_shapes):
            mask = np.ones(len(perms), dtype=bool)
            for block_a, block_b in symmetry_generators(shape):
                # letters are distinct, so block order is decided by the first slots
                mask &= perms[:, block_a[0]] < perms[:, block_b[0]]
            self.type_offsets.append(sum(len(f) for f in fillings))
            fillings.append(perms[mask])
            types.append(np.full(int(mask.sum()), t, dtype=np.int64))
            self.groups.append(symmetry_group(shape))
        self.fillings = np.concatenate(fillings)
        self.types = np.concatenate(types)
        self.type_sizes = [len(f) for f in fillings]

        self.column_of_code = np.full((len(self.type_shapes), n ** n), -1, dtype=np.int32)
        self.sign_of_code = np.zeros((len(self.type_shapes), n ** n), dtype=np.int8)
        for t, block in enumerate(fillings):
            columns = np.arange(self.type_offsets[t], self.type_offsets[t] + len(block), dtype=np.int32)
            for slots, sign in self.groups[t]:
                codes = self.table.codes(block[:, list(slots)])
                assert (self.column_of_code[t, codes] == -1).all(), "skew symmetry orbits overlap"
                self.column_of_code[t, codes] = columns
                self.sign_of_code[t, codes] = sign

    def __len__(self):
        return len(self.fillings)

    def monomial(self, column: int) -> TernaryMonomial:
        shape = self.type_shapes[int(self.types[column])]
        return TernaryMonomial(fill_shape(shape, [int(x) for x in self.fillings[column]]))

    @property
    def monomials(self) -> List[TernaryMonomial]:
        return [self.monomial(j) for j in range(len(self))]

    def type_index(self, shape) -> int:
        try:
            return self.type_shapes.index(shape)
        except ValueError:
            raise MalformedInputException(f"shape {format_shape(shape)} is not a standard type in arity {self.arity}")

    def lookup(self, types: np.ndarray, words: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Column and sign of raw monomials given by association type and (possibly non-canonical) filling."""
        codes = self.table.codes(words)
        return self.column_of_code[types, codes], self.sign_of_code[types, codes]

    def column_of(self, m: Union[TernaryMonomial, TernaryTree]) -> Tuple[int, int]:
        """(column, sign) with m = sign * basis[column]."""
        sign, canonical = straighten(m)
        if canonical.arity != self.arity:
            raise UnsupportedArityException(f"monomial of arity {canonical.arity} in a basis of arity {self.arity}")
        t = self.type_index(canonical.shape)
        column, table_sign = self.lookup(np.array([t]), np.array([canonical.filling]))
        assert table_sign[0] == 1
        return int(column[0]), sign

    def permuted_copies(self, x: "SkewElement", permutations: Optional[np.ndarray] = None) -> np.ndarray:
        """Row r holds the coefficients of sigma_r . x, for sigma_r the r-th row of permutations."""
        if permutations is None:
            permutations = self.table.perms
        support = np.flatnonzero(x.coefficients)
        copies = np.zeros((len(permutations), len(self)), dtype=np.int64)
        if len(support) == 0:
            return copies
        words = permutations[:, self.fillings[support]]
        columns, signs = self.lookup(self.types[support][None, :], words)
        assert (columns >= 0).all(), "relabelled filling outside the symmetry orbits"
        rows = np.repeat(np.arange(len(permutations))[:, None], len(support), axis=1)
        copies[rows, columns] = signs * x.coefficients[support][None, :]
        if x.modulus:
            copies %= x.modulus
        return copies


@lru_cache(maxsize=None)
def skew_basis(n: int) -> SkewBasis:
    return SkewBasis(n)


class SkewElement:
    """Coefficient vector over skew_basis(arity); modulus 0 means integer coefficients."""

    __hash__ = None

    def __init__(self, arity: int, coefficients, modulus: int = 0):
        coefficients = np.asarray(coefficients, dtype=np.int64)
        size = len(skew_basis(arity))
        if coefficients.shape != (size,):
            raise UnsupportedArityException(f"expected {size} coefficients for arity {arity}, got {coefficients.shape}")
        self.arity = arity
        self.modulus = modulus
        self.coefficients = coefficients % modulus if modulus else coefficients

    @property
    def basis(self) -> SkewBasis:
        return skew_basis(self.arity)

    @classmethod
    def zero(cls, arity: int, modulus: int = 0) -> "SkewElement":
        return cls(arity, np.zeros(len(skew_basis(arity)), dtype=np.int64), modulus)

    @classmethod
    def from_terms(cls, arity: int, terms: Iterable[Tuple[int, Union[TernaryMonomial, TernaryTree]]], modulus: int = 0) -> "SkewElement":
        basis = skew_basis(arity)
        coefficients = np.zeros(len(basis), dtype=np.int64)
        for coefficient, monomial in terms:
            column, sign = basis.column_of(monomial)
            coefficients[column] += sign * coefficient
        return cls(arity, coefficients, modulus)

    @classmethod
    def from_monomial(cls, m: Union[TernaryMonomial, TernaryTree], modulus: int = 0) -> "SkewElement":
        tree = m.tree if isinstance(m, TernaryMonomial) else m
        return cls.from_terms(len(leaves(tree)), [(1, tree)], modulus)

    def _check(self, other: "SkewElement"):
        if other.arity != self.arity or other.modulus != self.modulus:
            raise UnsupportedArityException("elements of different arity or coefficient domain")

    def __add__(self, other: "SkewElement") -> "SkewElement":
        self._check(other)
        return SkewElement(self.arity, self.coefficients + other.coefficients, self.modulus)

    def __sub__(self, other: "SkewElement") -> "SkewElement":
        self._check(other)
        return SkewElement(self.arity, self.coefficients - other.coefficients, self.modulus)

    def __neg__(self) -> "SkewElement":
        return SkewElement(self.arity, -self.coefficients, self.modulus)

    def scale(self, factor: int) -> "SkewElement":
        return SkewElement(self.arity, self.coefficients * factor, self.modulus)

    def reduce(self, modulus: int) -> "SkewElement":
        return SkewElement(self.arity, self.coefficients, modulus)

    def __eq__(self, other):
        if not isinstance(other, SkewElement):
            return NotImplemented
        return self.arity == other.arity and self.modulus == other.modulus and np.array_equal(self.coefficients, other.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients.any()

    def term_count(self) -> int:
        return int(np.count_nonzero(self.coefficients))

    def terms(self) -> List[Tuple[int, TernaryMonomial]]:
        basis = self.basis
        return [(int(self.coefficients[j]), basis.monomial(int(j))) for j in np.flatnonzero(self.coefficients)]

    def coefficient_set(self) -> List[int]:
        return sorted({int(c) for c in self.coefficients[self.coefficients != 0]})

    def to_text(self, compact: bool = False) -> str:
        parts = []
        for coefficient, monomial in self.terms():
            sign = "-" if coefficient < 0 else "+"
            magnitude = "" if abs(coefficient) == 1 else str(abs(coefficient))
            body = monomial.compact() if compact else str(monomial)
            parts.append(f"{sign} {magnitude}{body}" if not magnitude else f"{sign} {magnitude} {body}")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text

    def __str__(self):
        return self.to_text()


_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*(\[)")


def parse_relation(text: str, arity: Optional[int] = None, modulus: int = 0) -> SkewElement:
    """Parse a signed sum such as "2 [dg[[efb]ca]] - [[abd]g[efc]]"; blank lines and '#' comments are ignored."""
    source = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    terms = []
    pos = 0
    while source[pos:].strip():
        match = _TERM.match(source, pos)
        if match is None:
            raise MalformedInputException("expected a signed monomial", pos)
        sign = -1 if match.group(1) == "-" else 1
        magnitude = int(match.group(2)) if match.group(2) else 1
        parser = _TernaryParser(source)
        parser.pos = match.start(3)
        tree = parser._node()
        check_multilinear(tree, source[match.start(3):parser.pos], offset=match.start(3))
        terms.append((sign * magnitude, tree))
        pos = parser.pos
    if not terms:
        raise MalformedInputException("relation has no terms", 0)
    found = {len(leaves(tree)) for _, tree in terms}
    if len(found) != 1 or (arity is not None and found != {arity}):
        raise MalformedInputException(f"relation mixes or mismatches arities: {sorted(found)}")
    return SkewElement.from_terms(found.pop(), terms, modulus)


def act(sigma: Permutation, x: SkewElement) -> SkewElement:
    if sigma.arity != x.arity:
        raise UnsupportedArityException(f"permutation of arity {sigma.arity} acting on arity {x.arity}")
    row = x.basis.permuted_copies(x, sigma.as_array()[None, :])[0]
    return SkewElement(x.arity, row, x.modulus)


def all_permuted_copies(x: SkewElement, threads: int = 1, chunk_rows: int = 720) -> np.ndarray:
    """The n! relabelled copies of x in lex order of the permutations."""
    basis = x.basis
    perms = basis.table.perms
    chunks = [perms[start:start + chunk_rows] for start in range(0, len(perms), chunk_rows)]
    if threads <= 1:
        blocks = [basis.permuted_copies(x, chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            blocks = list(executor.map(lambda chunk: basis.permuted_copies(x, chunk), chunks))
    return np.concatenate(blocks)


def _replace_leaf(tree: TernaryTree, target: int, replacement: TernaryTree) -> TernaryTree:
    if isinstance(tree, int):
        return replacement if tree == target else tree
    return tuple(_replace_leaf(child, target, replacement) for child in tree)


def _embed(tree: TernaryTree, position: int, outer: Sequence[int]) -> TernaryTree:
    children: List[TernaryTree] = list(outer)
    children.insert(position, tree)
    return tuple(children)


def substitute(rel: SkewElement, variable: int) -> SkewElement:
    """rel with the variable x replaced by [x, f, g], f and g the two next letters."""
    f, g = rel.arity, rel.arity + 1
    terms = [(c, _replace_leaf(m.tree, variable, (variable, f, g))) for c, m in rel.terms()]
    return SkewElement.from_terms(rel.arity + 2, terms, rel.modulus)


def embed(rel: SkewElement, position: int) -> SkewElement:
    """rel placed in argument `position` of an outer node whose other arguments are f, g."""
    f, g = rel.arity, rel.arity + 1
    terms = [(c, _embed(m.tree, position, (f, g))) for c, m in rel.terms()]
    return SkewElement.from_terms(rel.arity + 2, terms, rel.modulus)


def consequences(rel: SkewElement) -> List[SkewElement]:
    """The inner substitutions x -> [x,f,g] for every variable, then [rel,f,g], [f,rel,g], [f,g,rel]."""
    if rel.arity != 5:
        raise UnsupportedArityException(f"consequences are generated from arity 5 relations, got arity {rel.arity}")
    return [substitute(rel, x) for x in range(rel.arity)] + [embed(rel, position) for position in range(3)]


def module_span(generators: List[SkewElement], domain, threads: int = 1):
    from src.lib.algebra.exact_linalg import incremental_closure
    if not generators:
        raise UnsupportedArityException("module_span needs at least one generator to fix the arity; use incremental_closure")
    return incremental_closure(generators, generators[0].arity, domain, threads=threads)
