"""Expansion of tortkara monomials into the free Zinbiel algebra and the expansion matrices E_n.

A ternary node [x,y,z] = [[x,y],z] expands to x(yz) + x(zy) - y(xz) - y(zx) - z(xy) + z(yx),
which holds for arbitrary elements x, y, z of a Zinbiel algebra.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

import numpy as np

from src.lib.algebra.exact_linalg import CoefficientDomain, ExactMatrix
from src.lib.algebra.modular_echelon import reduce_mod
from src.lib.algebra.skew_ternary import SkewElement, TernaryMonomial, TernaryTree, skew_basis, ternary_association_types
from src.lib.algebra.zinbiel_core import BinaryMonomial, BinaryTree, ZinbielElement, fill_shape, leaves, permutation_table
from src.lib.exception.exception_algebra import DomainMismatchException, MalformedInputException, UnsupportedArityException
from src.lib.log.api_logger import ApiLogger
from src.lib.metrics.algebra_metrics import ZNF_EXPANSION_TIME

Terms = List[Tuple[int, BinaryTree]]


def _triple_terms(xs: Terms, ys: Terms, zs: Terms) -> Terms:
    out: Terms = []
    for cx, x in xs:
        for cy, y in ys:
            for cz, z in zs:
                c = cx * cy * cz
                out += [(c, (x, (y, z))), (c, (x, (z, y))), (-c, (y, (x, z))),
                        (-c, (y, (z, x))), (-c, (z, (x, y))), (c, (z, (y, x)))]
    return out


def raw_expansion_terms(tree: TernaryTree) -> Terms:
    """Signed binary monomials before normalization: 6, 36 and 216 terms in arity 3, 5 and 7."""
    if isinstance(tree, int):
        return [(1, tree)]
    return _triple_terms(*(raw_expansion_terms(child) for child in tree))


def expand_triple(x: int, y: int, z: int) -> ZinbielElement:
    """[x,y,z] in arity 3; distinct letters are relabelled a, b, c by increasing index, so [d,b,g] gives [c,a,b]."""
    letters = (x, y, z)
    if len(set(letters)) != 3 or min(letters) < 0:
        raise MalformedInputException(f"expand_triple takes three distinct letters, got {letters}")
    order = sorted(letters)
    return ZinbielElement.from_trees(3, raw_expansion_terms(tuple(order.index(v) for v in letters)))


def expand(m: Union[TernaryMonomial, TernaryTree]) -> ZinbielElement:
    monomial = m if isinstance(m, TernaryMonomial) else TernaryMonomial(m)
    if monomial.arity not in (3, 5, 7):
        raise UnsupportedArityException(f"expansions are defined in arity 3, 5 and 7, got {monomial.arity}")
    if not monomial.canonical:
        raise MalformedInputException(f"{monomial} is not canonical; straighten it first")
    with ZNF_EXPANSION_TIME.time():
        return ZinbielElement.from_trees(monomial.arity, raw_expansion_terms(monomial.tree))


def _commutator_terms(tree: BinaryTree, sign_of_swap: int) -> Terms:
    if isinstance(tree, int):
        return [(1, tree)]
    out: Terms = []
    for cl, left in _commutator_terms(tree[0], sign_of_swap):
        for cr, right in _commutator_terms(tree[1], sign_of_swap):
            out += [(cl * cr, (left, right)), (sign_of_swap * cl * cr, (right, left))]
    return out


def expand_commutator(t: Union[BinaryMonomial, BinaryTree], coefficient: int = 1) -> ZinbielElement:
    """Bracket tree with [x,y] -> xy - yx, normalized."""
    tree = t.tree if isinstance(t, BinaryMonomial) else t
    terms = [(coefficient * c, m) for c, m in _commutator_terms(tree, -1)]
    return ZinbielElement.from_trees(len(leaves(tree)), terms)


def expand_commutator_sum(terms: Sequence[Tuple[int, BinaryTree]]) -> ZinbielElement:
    arity = len(leaves(terms[0][1]))
    result = ZinbielElement.zero(arity)
    for coefficient, tree in terms:
        result = result + expand_commutator(tree, coefficient)
    return result


def tortkara_identity() -> ZinbielElement:
    """(ab)(cd) + (ad)(cb) - J(a,b,c)d - J(a,d,c)b with J(x,y,z) = (xy)z + (yz)x + (zx)y, all products brackets."""
    a, b, c, d = range(4)

    def jacobi_times(x, y, z, w):
        return [(-1, (((x, y), z), w)), (-1, (((y, z), x), w)), (-1, (((z, x), y), w))]

    terms = [(1, ((a, b), (c, d))), (1, ((a, d), (c, b)))] + jacobi_times(a, b, c, d) + jacobi_times(a, d, c, b)
    return expand_commutator_sum(terms)


def anticommutator_associator() -> ZinbielElement:
    """(a o b) o c - a o (b o c) with x o y = xy + yx."""
    a, b, c = range(3)
    left = _commutator_terms(((a, b), c), 1)
    right = [(-coefficient, tree) for coefficient, tree in _commutator_terms((a, (b, c)), 1)]
    return ZinbielElement.from_trees(3, left + right)


@dataclass(frozen=True)
class SignVector:
    """Expansion coefficients of one association type with the identity filling, all +1 or -1."""
    arity: int
    shape: tuple
    signs: str

    def rows(self, width: int = 0) -> List[str]:
        width = width or math.factorial(self.arity - 1)
        return [self.signs[i:i + width] for i in range(0, len(self.signs), width)]

    def to_array(self) -> np.ndarray:
        return np.array([1 if s == "+" else -1 for s in self.signs], dtype=np.int8)

    def to_element(self) -> ZinbielElement:
        return ZinbielElement(self.arity, self.to_array())


@lru_cache(maxsize=None)
def base_sign_vectors(n: int) -> Tuple[SignVector, ...]:
    vectors = []
    for shape in ternary_association_types(n):
        api_logger = ApiLogger(f"[EXPANSION] [BASE SIGNS] [ARITY {n}] : {TernaryMonomial(fill_shape(shape))}")
        element = expand(TernaryMonomial(fill_shape(shape)))
        vectors.append(SignVector(n, shape, element.sign_string()))
        api_logger.print_log()
    return tuple(vectors)


def expansion_columns(n: int, columns: np.ndarray) -> np.ndarray:
    """Integer columns of E_n: entry (rank(w o p), col(t, w)) = base_t[rank(p)]."""
    basis = skew_basis(n)
    table = permutation_table(n)
    bases = np.stack([v.to_array() for v in base_sign_vectors(n)])
    out = np.zeros((len(table), len(columns)), dtype=np.int8)
    for k, column in enumerate(columns):
        rows = table.index_of(basis.fillings[column][table.perms])
        out[rows, k] = bases[basis.types[column]]
    return out


@dataclass
class ExpansionMatrix:
    arity: int
    matrix: ExactMatrix

    @property
    def shape(self):
        return self.matrix.shape


def expansion_array(n: int) -> np.ndarray:
    """E_n as an int8 array, rows in lex order of permutations, columns in skew_basis(n) order."""
    basis = skew_basis(n)
    api_logger = ApiLogger(f"[EXPANSION] [MATRIX] [ARITY {n}] : {math.factorial(n)}x{len(basis)}")
    table = permutation_table(n)
    bases = np.stack([v.to_array() for v in base_sign_vectors(n)])
    out = np.zeros((len(table), len(basis)), dtype=np.int8)
    block = 128
    for start in range(0, len(basis), block):
        stop = min(start + block, len(basis))
        words = basis.fillings[start:stop][:, table.perms]
        rows = table.index_of(words)
        columns = np.arange(start, stop)
        out[rows, columns[:, None]] = bases[basis.types[start:stop]]
    api_logger.print_log()
    return out


def expansion_matrix(n: int, domain: CoefficientDomain) -> ExpansionMatrix:
    if n not in (3, 5, 7):
        raise UnsupportedArityException(f"expansion matrices exist in arity 3, 5 and 7, got {n}")
    if n == 7 and not domain.is_prime_field:
        raise DomainMismatchException("the arity 7 expansion matrix is built over a prime field")
    array = expansion_array(n)
    if domain.is_prime_field:
        return ExpansionMatrix(n, ExactMatrix(reduce_mod(array, domain.modulus), domain))
    return ExpansionMatrix(n, ExactMatrix.from_array(array, domain))


def expand_element(x: SkewElement) -> ZinbielElement:
    """E_n x, integer or mod the element's modulus."""
    support = np.flatnonzero(x.coefficients)
    columns = expansion_columns(x.arity, support).astype(np.int64)
    values = columns @ x.coefficients[support]
    return ZinbielElement(x.arity, values, x.modulus)
