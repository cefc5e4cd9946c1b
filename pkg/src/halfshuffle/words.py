"""Words, bar-words and exact-rational formal sums.

Basis combinatorics shared by the rest of the package: words over a finite
integer alphabet (basis of the tensor algebra), bar-words (sequences of
nonempty words, basis of the double tensor algebra), run decompositions of
position sets, and finite rational linear combinations over any hashable
basis.  Coefficients are ``fractions.Fraction`` throughout; floats are
rejected everywhere.

All values are immutable after construction and every function is pure, so
everything here is safe to share between threads.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping

__all__ = [
    "GuardError",
    "Word",
    "BarWord",
    "EMPTY_WORD",
    "UNIT_BAR",
    "FormalSum",
    "Alphabet",
    "rational",
    "concat",
    "subword",
    "connected_components",
    "bar_of_components",
    "bar_concat",
    "as_bar",
    "compositions",
    "words_of_degree",
    "bar_words_of_degree",
    "words_up_to",
    "bar_words_up_to",
    "bar_basis_count",
    "word_basis_count",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class GuardError(ValueError):
    """A size guard on an enumeration or transform was exceeded."""


def rational(value: int | Fraction) -> Fraction:
    """Coerce to an exact rational.  Floats are rejected, never converted."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class Word:
    """Immutable word over an integer alphabet; degree 0 is the empty word."""

    __slots__ = ("letters", "degree", "_hash")

    def __init__(self, letters: Iterable[int] = ()):
        letters = tuple(letters)
        for letter in letters:
            if not isinstance(letter, int) or isinstance(letter, bool) or letter < 0:
                raise ValueError(f"letters must be non-negative ints, got {letter!r}")
        self.letters = letters
        self.degree = len(letters)
        self._hash = hash(letters)

    def sort_key(self):
        """Graded order, then lexicographic on letters."""
        return (len(self.letters), self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Word{self.letters!r}"


class BarWord:
    """Sequence of nonempty words; the empty sequence is the unit bar-word.

    Kept normalized at construction: a component of degree 0 is rejected, so
    equal bar-words always compare and hash equal.
    """

    __slots__ = ("components", "degree", "_hash")

    def __init__(self, components: Iterable[Word] = ()):
        components = tuple(components)
        for comp in components:
            if not isinstance(comp, Word):
                raise TypeError(f"components must be Words, got {type(comp).__name__}")
            if comp.degree == 0:
                raise ValueError("bar-word components must be nonempty")
        self.components = components
        self.degree = sum(comp.degree for comp in components)
        self._hash = hash(components)

    def sort_key(self):
        """Graded, then lexicographic on the component degree sequence, then letters."""
        shape = tuple(comp.degree for comp in self.components)
        letters = tuple(itertools.chain.from_iterable(c.letters for c in self.components))
        return (self.degree, shape, letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, BarWord) and self.components == other.components

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"BarWord{tuple(c.letters for c in self.components)!r}"


EMPTY_WORD = Word()
UNIT_BAR = BarWord()


def concat(x: Word, y: Word) -> Word:
    """Concatenation product of words."""
    return Word(x.letters + y.letters)


def as_bar(word: Word) -> BarWord:
    """View a word as a one-component bar-word; the empty word maps to the unit."""
    if word.degree == 0:
        return UNIT_BAR
    return BarWord((word,))


def subword(word: Word, positions: Iterable[int]) -> Word:
    """Letters of ``word`` at the given 1-based positions, in increasing order."""
    pos = sorted(positions)
    if not pos:
        raise ValueError("position set must be nonempty")
    if len(set(pos)) != len(pos):
        raise ValueError(f"positions must be distinct, got {pos}")
    if pos[0] < 1 or pos[-1] > word.degree:
        raise ValueError(f"positions {pos} out of range for degree {word.degree}")
    return Word(word.letters[p - 1] for p in pos)


def connected_components(s: Iterable[int], u: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Connected components of ``u - s`` relative to ``u``.

    A component is a maximal run of elements of ``u - s`` with no element of
    ``s`` interleaved in the ordering of ``u``; gaps of the ambient integers
    that are missing from ``u`` never break a run.  Components are returned in
    increasing order of their minimal element and partition ``u - s``.
    """
    s_set = frozenset(s)
    u_sorted = sorted(set(u))
    for x in itertools.chain(s_set, u_sorted):
        if not isinstance(x, int) or isinstance(x, bool) or x < 1:
            raise ValueError(f"positions must be positive ints, got {x!r}")
    if not s_set <= set(u_sorted):
        raise ValueError(f"{sorted(s_set)} is not a subset of {u_sorted}")
    runs: list[tuple[int, ...]] = []
    current: list[int] = []
    for x in u_sorted:
        if x in s_set:
            if current:
                runs.append(tuple(current))
                current = []
        else:
            current.append(x)
    if current:
        runs.append(tuple(current))
    return tuple(runs)


def bar_of_components(word: Word, components: Iterable[Iterable[int]]) -> BarWord:
    """Bar-word whose parts are the subwords of ``word`` at each position set.

    An empty component list yields the unit bar-word.
    """
    comps = [tuple(c) for c in components]
    seen: set[int] = set()
    for comp in comps:
        if not comp:
            raise ValueError("components must be nonempty")
        if seen & set(comp):
            raise ValueError(f"components are not pairwise disjoint: {comps}")
        seen.update(comp)
    return BarWord(subword(word, comp) for comp in comps)


def bar_concat(x: BarWord, y: BarWord) -> BarWord:
    """Concatenation product of bar-words; the unit bar-word is neutral."""
    return BarWord(x.components + y.components)


class FormalSum:
    """Finite linear combination of hashable basis elements over the rationals.

    Zero coefficients are never stored, so equal sums compare equal as dicts.
    Instances are immutable; arithmetic returns new sums.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable[tuple[Hashable, int | Fraction]] = ()):
        data: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            coeff = rational(coeff)
            if coeff:
                prev = data.get(key)
                total = coeff if prev is None else prev + coeff
                if total:
                    data[key] = total
                elif prev is not None:
                    del data[key]
        self._terms = data

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    @classmethod
    def basis(cls, key: Hashable, coeff: int | Fraction = 1) -> "FormalSum":
        return cls(((key, coeff),))

    @classmethod
    def _wrap(cls, clean: dict) -> "FormalSum":
        """Adopt an already-normalized {key: nonzero Fraction} dict (internal)."""
        out = cls.__new__(cls)
        out._terms = clean
        return out

    def coefficient(self, key: Hashable) -> Fraction:
        return self._terms.get(key, ZERO)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __iter__(self) -> Iterator[tuple[Hashable, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        data = dict(self._terms)
        for key, coeff in other._terms.items():
            total = data.get(key, ZERO) + coeff
            if total:
                data[key] = total
            elif key in data:
                del data[key]
        return FormalSum._wrap(data)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self + (-1) * other

    def __neg__(self) -> "FormalSum":
        return (-1) * self

    def __rmul__(self, scale: int | Fraction) -> "FormalSum":
        scale = rational(scale)
        if not scale:
            return FormalSum()
        return FormalSum._wrap({k: scale * v for k, v in self._terms.items()})

    __mul__ = __rmul__

    def __repr__(self) -> str:
        if not self._terms:
            return "FormalSum(0)"
        parts = ", ".join(f"{k!r}: {v}" for k, v in self._terms.items())
        return f"FormalSum({{{parts}}})"


@dataclass(frozen=True)
class Alphabet:
    """Declared letter names; words parse and print by juxtaposition."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("alphabet must declare at least one letter")
        for name in self.names:
            if not (isinstance(name, str) and len(name) == 1 and name.isalpha()):
                raise ValueError(f"letter names must be single alphabetic characters, got {name!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"letter names must be distinct, got {self.names}")

    @staticmethod
    def default(size: int) -> "Alphabet":
        if not 1 <= size <= 26:
            raise ValueError(f"default alphabet size must be in 1..26, got {size}")
        return Alphabet(tuple("abcdefghijklmnopqrstuvwxyz"[:size]))

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown letter {name!r} for alphabet {self.names}") from None

    def word(self, text: str) -> Word:
        """Parse a juxtaposed word such as ``"aab"``; ``"1"`` is the empty word."""
        if text in ("", "1"):
            return EMPTY_WORD
        return Word(self.index(ch) for ch in text)

    def bar_word(self, text: str) -> BarWord:
        """Parse a ``"|"``-joined bar-word such as ``"aa|b"``; ``"1"`` is the unit."""
        if text in ("", "1"):
            return UNIT_BAR
        return BarWord(self.word(part) for part in text.split("|"))

    def format_word(self, word: Word) -> str:
        if word.degree == 0:
            return "1"
        return "".join(self.names[i] for i in word.letters)

    def format_bar_word(self, bar: BarWord) -> str:
        if bar.degree == 0:
            return "1"
        return "|".join(self.format_word(c) for c in bar.components)


@functools.cache
def compositions(total: int) -> tuple[tuple[int, ...], ...]:
    """Ordered sequences of positive integers summing to ``total``, lexicographic."""
    if total < 0:
        raise ValueError("total must be non-negative")
    if total == 0:
        return ((),)
    out = []
    for head in range(1, total + 1):
        for tail in compositions(total - head):
            out.append((head,) + tail)
    return tuple(out)


@functools.cache
def words_of_degree(degree: int, alphabet_size: int) -> tuple[Word, ...]:
    """All words of the given degree, lexicographic in the letters."""
    if degree < 0 or alphabet_size < 1:
        raise ValueError("need degree >= 0 and alphabet_size >= 1")
    return tuple(Word(p) for p in itertools.product(range(alphabet_size), repeat=degree))


@functools.cache
def bar_words_of_degree(degree: int, alphabet_size: int) -> tuple[BarWord, ...]:
    """All bar-words of the given total degree, ordered by shape then letters."""
    if degree == 0:
        return (UNIT_BAR,)
    out = []
    for shape in compositions(degree):
        pools = [words_of_degree(part, alphabet_size) for part in shape]
        for choice in itertools.product(*pools):
            out.append(BarWord(choice))
    return tuple(out)


def words_up_to(max_degree: int, alphabet_size: int) -> tuple[Word, ...]:
    """Words of degree 1..max_degree in graded order."""
    return tuple(
        w for d in range(1, max_degree + 1) for w in words_of_degree(d, alphabet_size)
    )


def bar_words_up_to(max_degree: int, alphabet_size: int) -> tuple[BarWord, ...]:
    """Bar-words of degree 1..max_degree in graded order."""
    return tuple(
        b for d in range(1, max_degree + 1) for b in bar_words_of_degree(d, alphabet_size)
    )


def word_basis_count(alphabet_size: int, max_degree: int) -> int:
    """Number of words of degree 1..max_degree (without enumerating them)."""
    return sum(alphabet_size**d for d in range(1, max_degree + 1))


def bar_basis_count(alphabet_size: int, max_degree: int) -> int:
    """Number of bar-words of degree 1..max_degree (without enumerating them)."""
    return sum(alphabet_size**d * 2 ** (d - 1) for d in range(1, max_degree + 1))
