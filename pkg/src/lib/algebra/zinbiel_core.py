"""Multilinear binary words over the alphabet a < b < c < ... and the Zinbiel normal form.

A right-normed word x1(x2(...(x{n-1}xn))) is stored as the tuple of its letters, so the
right-normed basis of the free Zinbiel algebra in arity n is indexed by permutations in
lexicographic order.
"""
import itertools
import math
import string
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy.combinatorics import Permutation as SymPermutation

from src.lib.exception.exception_algebra import MalformedInputException, UnsupportedArityException

ALPHABET = string.ascii_lowercase
MAX_TABLE_ARITY = 7

# leaf = letter index, node = (left, right)
BinaryTree = Union[int, Tuple["BinaryTree", "BinaryTree"]]


def letter(index: int) -> str:
    return ALPHABET[index]


def letter_index(char: str) -> int:
    return ALPHABET.index(char)


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0..n-1}; letters[i] is the image of i and also the i-th letter of a word."""
    letters: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if sorted(self.letters) != list(range(len(self.letters))):
            raise MalformedInputException(f"not a permutation of the first {len(self.letters)} letters: {self.letters}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_word(cls, word: str) -> "Permutation":
        return cls(tuple(letter_index(c) for c in word))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(n))
        for cycle in cycles:
            for position, source in enumerate(cycle):
                images[source] = cycle[(position + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def arity(self) -> int:
        return len(self.letters)

    def word(self) -> str:
        return "".join(letter(x) for x in self.letters)

    def __call__(self, x: int) -> int:
        return self.letters[x]

    def compose(self, other: "Permutation") -> "Permutation":
        """(self o other)(x) = self(other(x))."""
        if other.arity != self.arity:
            raise UnsupportedArityException(f"cannot compose permutations of arity {self.arity} and {other.arity}")
        return Permutation(tuple(self.letters[x] for x in other.letters))

    def inverse(self) -> "Permutation":
        images = [0] * self.arity
        for source, target in enumerate(self.letters):
            images[target] = source
        return Permutation(tuple(images))

    def sign(self) -> int:
        return SymPermutation(list(self.letters)).signature()

    def cycle_type(self) -> Tuple[int, ...]:
        structure = SymPermutation(list(self.letters), size=self.arity).cycle_structure
        return tuple(sorted((length for length, count in structure.items() for _ in range(count)), reverse=True))

    def rank(self) -> int:
        return lex_rank(self)

    def as_array(self) -> np.ndarray:
        return np.array(self.letters, dtype=np.int64)

    def __str__(self):
        return self.word()


def lex_rank(p: Permutation) -> int:
    """Rank of p in lexicographic order, 1..n!."""
    return SymPermutation(list(p.letters)).rank() + 1


def unrank(rank: int, n: int) -> Permutation:
    if not 1 <= rank <= math.factorial(n):
        raise MalformedInputException(f"rank {rank} outside 1..{math.factorial(n)}")
    return Permutation(tuple(SymPermutation.unrank_lex(n, rank - 1).array_form))


class PermutationTable:
    """All permutations of arity n in lex order, with a dense code -> index lookup."""

    def __init__(self, n: int):
        if not 1 <= n <= MAX_TABLE_ARITY:
            raise UnsupportedArityException(f"permutation tables are built for arity 1..{MAX_TABLE_ARITY}, got {n}")
        self.arity = n
        self.perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
        self.powers = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self.index_of_code = np.full(n ** n, -1, dtype=np.int32)
        self.index_of_code[self.perms @ self.powers] = np.arange(len(self.perms), dtype=np.int32)

    def __len__(self):
        return len(self.perms)

    def codes(self, words: np.ndarray) -> np.ndarray:
        return np.asarray(words, dtype=np.int64) @ self.powers

    def index_of(self, words: np.ndarray) -> np.ndarray:
        """0-based lex index of each row of words (rows must be permutations)."""
        return self.index_of_code[self.codes(words)]

    def relabel_indices(self, sigma: Permutation) -> np.ndarray:
        """Index of sigma o p for every p in lex order."""
        return self.index_of(sigma.as_array()[self.perms])


@lru_cache(maxsize=None)
def permutation_table(n: int) -> PermutationTable:
    return PermutationTable(n)


@dataclass(frozen=True)
class RightNormedMonomial:
    letters: Tuple[int, ...]

    @property
    def arity(self) -> int:
        return len(self.letters)

    @property
    def permutation(self) -> Permutation:
        return Permutation(self.letters)

    @property
    def tree(self) -> BinaryTree:
        return right_normed_tree(self.letters)

    def __str__(self):
        if len(self.letters) <= 2:
            return "".join(letter(x) for x in self.letters)
        return letter(self.letters[0]) + "(" + str(RightNormedMonomial(self.letters[1:])) + ")"


def right_normed_tree(letters: Sequence[int]) -> BinaryTree:
    tree: BinaryTree = letters[-1]
    for x in reversed(letters[:-1]):
        tree = (x, tree)
    return tree


def leaves(tree) -> Tuple[int, ...]:
    """Leaf letters of a binary or ternary tree, left to right."""
    if isinstance(tree, int):
        return (tree,)
    return tuple(x for child in tree for x in leaves(child))


def check_multilinear(tree, text: Optional[str] = None, offset: int = 0) -> Tuple[int, ...]:
    """Leaves of tree; a repeat is reported at its second occurrence in text, shifted by offset."""
    found = leaves(tree)
    repeated = [x for x, count in Counter(found).items() if count > 1]
    if repeated:
        name = letter(repeated[0])
        if text is None:
            raise MalformedInputException(f"repeated variable '{name}' in {tree}")
        second = text.find(name, text.find(name) + 1)
        raise MalformedInputException(f"repeated variable '{name}' in {text}", offset + second if second >= 0 else None)
    return found


@dataclass(frozen=True)
class BinaryMonomial:
    tree: BinaryTree

    @property
    def arity(self) -> int:
        return len(leaves(self.tree))

    @classmethod
    def parse(cls, text: str) -> "BinaryMonomial":
        tree = _BinaryParser(text).parse()
        check_multilinear(tree, text)
        return cls(tree)

    def __str__(self):
        return _format_binary(self.tree)

    def bracket_str(self) -> str:
        return _format_bracket(self.tree)


def _format_binary(tree: BinaryTree) -> str:
    if isinstance(tree, int):
        return letter(tree)
    return "".join(letter(child) if isinstance(child, int) else "(" + _format_binary(child) + ")" for child in tree)


def _format_bracket(tree: BinaryTree) -> str:
    if isinstance(tree, int):
        return letter(tree)
    return "[" + _format_bracket(tree[0]) + "," + _format_bracket(tree[1]) + "]"


class _BinaryParser:
    """Juxtaposition syntax "(ab)(cd)" for Zinbiel words, bracket syntax "[[a,b],c]" for commutators."""

    def __init__(self, text: str):
        self.text = "".join(text.split())
        self.pos = 0

    def parse(self) -> BinaryTree:
        if not self.text:
            raise MalformedInputException("empty monomial", 0)
        if self.text[0] == "[":
            tree = self._bracket_item()
        else:
            tree = self._product()
        if self.pos != len(self.text):
            raise MalformedInputException(f"unexpected '{self.text[self.pos]}'", self.pos)
        return tree

    def _peek(self) -> Optional[str]:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def _expect(self, char: str):
        if self._peek() != char:
            found = self._peek() or "end of input"
            raise MalformedInputException(f"expected '{char}', found '{found}'", self.pos)
        self.pos += 1

    def _letter(self) -> int:
        char = self._peek()
        if char is None or char not in ALPHABET:
            raise MalformedInputException(f"expected a variable, found '{char or 'end of input'}'", self.pos)
        self.pos += 1
        return letter_index(char)

    def _product(self) -> BinaryTree:
        left = self._factor()
        if self._peek() in (None, ")"):
            return left
        right = self._factor()
        if self._peek() not in (None, ")"):
            raise MalformedInputException("product of more than two factors needs parentheses", self.pos)
        return left, right

    def _factor(self) -> BinaryTree:
        if self._peek() == "(":
            self.pos += 1
            tree = self._product()
            self._expect(")")
            return tree
        return self._letter()

    def _bracket_item(self) -> BinaryTree:
        if self._peek() != "[":
            return self._letter()
        self.pos += 1
        left = self._bracket_item()
        self._expect(",")
        right = self._bracket_item()
        self._expect("]")
        return left, right


@lru_cache(maxsize=None)
def _znf(tree: BinaryTree) -> Tuple[Tuple[int, ...], ...]:
    if isinstance(tree, int):
        return ((tree,),)
    w, z = tree
    if isinstance(w, int):
        return tuple((w,) + t for t in _znf(z))
    x, y = w
    out: List[Tuple[int, ...]] = []
    for r in _znf(x):
        r_tree = right_normed_tree(r)
        for s in _znf(y):
            s_tree = right_normed_tree(s)
            for t in _znf(z):
                t_tree = right_normed_tree(t)
                out.extend(_znf((r_tree, (s_tree, t_tree))))
                out.extend(_znf((r_tree, (t_tree, s_tree))))
    return tuple(out)


def znf(m: Union[BinaryMonomial, BinaryTree]) -> List[RightNormedMonomial]:
    """Zinbiel normal form of m as a multiset of right-normed words (every coefficient +1)."""
    tree = m.tree if isinstance(m, BinaryMonomial) else m
    check_multilinear(tree)
    return [RightNormedMonomial(t) for t in _znf(tree)]


class ZinbielElement:
    """Coefficient vector over the lex-ordered right-normed basis of Zinb(n)."""

    __hash__ = None

    def __init__(self, arity: int, coefficients, modulus: int = 0):
        coefficients = np.asarray(coefficients, dtype=np.int64)
        if coefficients.shape != (math.factorial(arity),):
            raise UnsupportedArityException(f"expected {math.factorial(arity)} coefficients for arity {arity}, got {coefficients.shape}")
        self.arity = arity
        self.modulus = modulus
        self.coefficients = coefficients % modulus if modulus else coefficients

    @classmethod
    def zero(cls, arity: int, modulus: int = 0) -> "ZinbielElement":
        return cls(arity, np.zeros(math.factorial(arity), dtype=np.int64), modulus)

    @classmethod
    def from_trees(cls, arity: int, terms: Iterable[Tuple[int, BinaryTree]], modulus: int = 0) -> "ZinbielElement":
        """Normalize a signed sum of binary trees over the letters 0..arity-1."""
        table = permutation_table(arity)
        coefficients = np.zeros(len(table), dtype=np.int64)
        for coefficient, tree in terms:
            if sorted(check_multilinear(tree)) != list(range(arity)):
                raise UnsupportedArityException(f"term {_format_binary(tree)} is not a word in the first {arity} letters")
            words = _znf(tree)
            np.add.at(coefficients, table.index_of(np.array(words, dtype=np.int64)), coefficient)
        return cls(arity, coefficients, modulus)

    def _check(self, other: "ZinbielElement"):
        if other.arity != self.arity or other.modulus != self.modulus:
            raise UnsupportedArityException("elements of different arity or coefficient domain")

    def __add__(self, other: "ZinbielElement") -> "ZinbielElement":
        self._check(other)
        return ZinbielElement(self.arity, self.coefficients + other.coefficients, self.modulus)

    def __sub__(self, other: "ZinbielElement") -> "ZinbielElement":
        self._check(other)
        return ZinbielElement(self.arity, self.coefficients - other.coefficients, self.modulus)

    def __neg__(self) -> "ZinbielElement":
        return ZinbielElement(self.arity, -self.coefficients, self.modulus)

    def scale(self, factor: int) -> "ZinbielElement":
        return ZinbielElement(self.arity, self.coefficients * factor, self.modulus)

    def __eq__(self, other):
        if not isinstance(other, ZinbielElement):
            return NotImplemented
        return self.arity == other.arity and self.modulus == other.modulus and np.array_equal(self.coefficients, other.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients.any()

    def term_count(self) -> int:
        return int(np.count_nonzero(self.coefficients))

    def coefficient(self, word: str) -> int:
        return int(self.coefficients[lex_rank(Permutation.from_word(word)) - 1])

    def terms(self) -> List[Tuple[int, RightNormedMonomial]]:
        table = permutation_table(self.arity)
        return [(int(self.coefficients[i]), RightNormedMonomial(tuple(int(x) for x in table.perms[i])))
                for i in np.flatnonzero(self.coefficients)]

    def permuted(self, sigma: Permutation) -> "ZinbielElement":
        """Regular action: the word p is sent to sigma o p."""
        if sigma.arity != self.arity:
            raise UnsupportedArityException(f"permutation of arity {sigma.arity} acting on arity {self.arity}")
        images = permutation_table(self.arity).relabel_indices(sigma)
        coefficients = np.zeros_like(self.coefficients)
        coefficients[images] = self.coefficients
        return ZinbielElement(self.arity, coefficients, self.modulus)

    def sign_string(self) -> str:
        values = self.coefficients
        if self.modulus:
            values = np.where(values > self.modulus // 2, values - self.modulus, values)
        if not np.all(np.abs(values) == 1):
            raise MalformedInputException("element is not a sign vector")
        return "".join("+" if x > 0 else "-" for x in values)

    def __str__(self):
        parts = []
        for coefficient, word in self.terms():
            sign = "-" if coefficient < 0 else "+"
            magnitude = "" if abs(coefficient) == 1 else str(abs(coefficient))
            parts.append(f"{sign} {magnitude}{word}")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text


@lru_cache(maxsize=None)
def binary_association_types(n: int) -> Tuple[BinaryTree, ...]:
    """Shapes (leaves None) ordered by decreasing left-subtree size, then recursively."""
    if n == 1:
        return (None,)
    shapes = []
    for left_size in range(n - 1, 0, -1):
        for left in binary_association_types(left_size):
            for right in binary_association_types(n - left_size):
                shapes.append((left, right))
    return tuple(shapes)


def fill_shape(shape, word: Optional[Sequence[int]] = None):
    """Replace the None leaves of a binary or ternary shape by letters, left to right."""
    letters = iter(word if word is not None else itertools.count())
    def fill(node):
        if node is None:
            return next(letters)
        return tuple(fill(child) for child in node)
    return fill(shape)


def normal_form_table(n: int) -> List[Tuple[BinaryMonomial, ZinbielElement]]:
    if not 1 <= n <= MAX_TABLE_ARITY:
        raise UnsupportedArityException(f"normal form tables exist for arity 1..{MAX_TABLE_ARITY}, got {n}")
    table = []
    for shape in binary_association_types(n):
        tree = fill_shape(shape)
        table.append((BinaryMonomial(tree), ZinbielElement.from_trees(n, [(1, tree)])))
    return table
