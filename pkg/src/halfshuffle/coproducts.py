"""Unshuffle coproducts on words and bar-words, and exhaustive axiom checks.

Two coproduct families live here.  The non-cocommutative one splits a word
over all position subsets, sending ``S`` to ``(subword at S) (x) (run
decomposition of the complement)``, and extends multiplicatively to
bar-words with legs concatenating.  The cocommutative one splits a word over
all subsets with both legs plain subwords.  Each comes with left/right
half-coproducts (subsets containing, resp. avoiding, the first position).

Outputs are ``FormalSum``s over pairs ``(left, right)``; equal keys are
collected immediately, so repeated-letter words stay polynomial-sized.
Subsets are enumerated by an increasing binary counter over positions, which
makes every result deterministic.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Callable

from .words import (
    BarWord,
    EMPTY_WORD,
    FormalSum,
    UNIT_BAR,
    Word,
    as_bar,
    bar_concat,
    bar_words_up_to,
    concat,
    words_up_to,
)

__all__ = [
    "SplitTensor",
    "delta_word",
    "delta_prec_plus",
    "delta_succ_plus",
    "delta_bar",
    "delta_prec_plus_bar",
    "delta_succ_plus_bar",
    "delta_reduced_bar",
    "delta_prec_bar",
    "delta_succ_bar",
    "delta_classical",
    "delta_classical_prec",
    "delta_classical_succ",
    "swap_legs",
    "CheckReport",
    "check_coassociativity",
    "check_unshuffle_axioms",
]

# A split tensor is a formal sum over (left, right) pairs of basis elements.
SplitTensor = FormalSum


def _mask_split(word: Word, mask: int) -> tuple[Word, BarWord]:
    """Subword at the 1-bits of ``mask`` and the run decomposition of the rest."""
    picked: list[int] = []
    runs: list[Word] = []
    current: list[int] = []
    for i, letter in enumerate(word.letters):
        if (mask >> i) & 1:
            picked.append(letter)
            if current:
                runs.append(Word(current))
                current = []
        else:
            current.append(letter)
    if current:
        runs.append(Word(current))
    return Word(picked), BarWord(runs)


def _require_word(word: Word) -> None:
    if not isinstance(word, Word) or word.degree == 0:
        raise ValueError(f"expected a nonempty word, got {word!r}")


@functools.cache
def delta_word(word: Word) -> SplitTensor:
    """Full subset coproduct of a word; 2^n terms counted with multiplicity."""
    _require_word(word)
    acc: dict = {}
    for mask in range(1 << word.degree):
        left, right = _mask_split(word, mask)
        key = (as_bar(left), right)
        acc[key] = acc.get(key, 0) + 1
    return FormalSum(acc)


@functools.cache
def delta_prec_plus(word: Word) -> SplitTensor:
    """Left half-coproduct: subsets containing position 1 (includes w (x) 1)."""
    _require_word(word)
    acc: dict = {}
    for mask in range(1, 1 << word.degree, 2):
        left, right = _mask_split(word, mask)
        key = (as_bar(left), right)
        acc[key] = acc.get(key, 0) + 1
    return FormalSum(acc)


@functools.cache
def delta_succ_plus(word: Word) -> SplitTensor:
    """Right half-coproduct: subsets avoiding position 1 (includes 1 (x) w)."""
    _require_word(word)
    acc: dict = {}
    for mask in range(0, 1 << word.degree, 2):
        left, right = _mask_split(word, mask)
        key = (as_bar(left), right)
        acc[key] = acc.get(key, 0) + 1
    return FormalSum(acc)


def _leg_product_bar(x: SplitTensor, y: SplitTensor) -> SplitTensor:
    """Componentwise product: both legs concatenate as bar-words."""
    acc: dict = {}
    for (l1, r1), c1 in x:
        for (l2, r2), c2 in y:
            key = (bar_concat(l1, l2), bar_concat(r1, r2))
            acc[key] = acc.get(key, 0) + c1 * c2
    return FormalSum(acc)


def _leg_product_word(x: SplitTensor, y: SplitTensor) -> SplitTensor:
    """Componentwise product with plain word concatenation on both legs."""
    acc: dict = {}
    for (l1, r1), c1 in x:
        for (l2, r2), c2 in y:
            key = (concat(l1, l2), concat(r1, r2))
            acc[key] = acc.get(key, 0) + c1 * c2
    return FormalSum(acc)


_UNIT_PAIR_BAR = FormalSum.basis((UNIT_BAR, UNIT_BAR))
_UNIT_PAIR_WORD = FormalSum.basis((EMPTY_WORD, EMPTY_WORD))


@functools.cache
def delta_bar(bar: BarWord) -> SplitTensor:
    """Multiplicative extension of the word coproduct to bar-words."""
    acc = _UNIT_PAIR_BAR
    for comp in bar.components:
        acc = _leg_product_bar(acc, delta_word(comp))
    return acc


@functools.cache
def delta_prec_plus_bar(bar: BarWord) -> SplitTensor:
    """Left half-coproduct on bar-words: halve the first component only."""
    if bar.degree == 0:
        raise ValueError("half-coproducts are undefined on the unit bar-word")
    acc = delta_prec_plus(bar.components[0])
    for comp in bar.components[1:]:
        acc = _leg_product_bar(acc, delta_word(comp))
    return acc


@functools.cache
def delta_succ_plus_bar(bar: BarWord) -> SplitTensor:
    """Right half-coproduct on bar-words: halve the first component only."""
    if bar.degree == 0:
        raise ValueError("half-coproducts are undefined on the unit bar-word")
    acc = delta_succ_plus(bar.components[0])
    for comp in bar.components[1:]:
        acc = _leg_product_bar(acc, delta_word(comp))
    return acc


def delta_reduced_bar(bar: BarWord) -> SplitTensor:
    """Coproduct minus its primitive part: delta(x) - x (x) 1 - 1 (x) x."""
    return (
        delta_bar(bar)
        - FormalSum.basis((bar, UNIT_BAR))
        - FormalSum.basis((UNIT_BAR, bar))
    )


def delta_prec_bar(bar: BarWord) -> SplitTensor:
    """Reduced left half: the plus form minus x (x) 1."""
    return delta_prec_plus_bar(bar) - FormalSum.basis((bar, UNIT_BAR))


def delta_succ_bar(bar: BarWord) -> SplitTensor:
    """Reduced right half: the plus form minus 1 (x) x."""
    return delta_succ_plus_bar(bar) - FormalSum.basis((UNIT_BAR, bar))


@functools.cache
def delta_classical(word: Word) -> SplitTensor:
    """Cocommutative subset coproduct: both legs are plain subwords."""
    _require_word(word)
    acc: dict = {}
    full = (1 << word.degree) - 1
    for mask in range(1 << word.degree):
        left, _ = _mask_split(word, mask)
        right, _ = _mask_split(word, full ^ mask)
        key = (left, right)
        acc[key] = acc.get(key, 0) + 1
    return FormalSum(acc)


@functools.cache
def delta_classical_prec(word: Word) -> SplitTensor:
    """Cocommutative left half: subsets containing position 1 (includes w (x) 1)."""
    _require_word(word)
    acc: dict = {}
    full = (1 << word.degree) - 1
    for mask in range(1, 1 << word.degree, 2):
        left, _ = _mask_split(word, mask)
        right, _ = _mask_split(word, full ^ mask)
        key = (left, right)
        acc[key] = acc.get(key, 0) + 1
    return FormalSum(acc)


@functools.cache
def delta_classical_succ(word: Word) -> SplitTensor:
    """Cocommutative right half: subsets avoiding position 1 (includes 1 (x) w)."""
    _require_word(word)
    acc: dict = {}
    full = (1 << word.degree) - 1
    for mask in range(0, 1 << word.degree, 2):
        left, _ = _mask_split(word, mask)
        right, _ = _mask_split(word, full ^ mask)
        key = (left, right)
        acc[key] = acc.get(key, 0) + 1
    return FormalSum(acc)


def swap_legs(tensor: SplitTensor) -> SplitTensor:
    """Exchange the two tensor legs."""
    return FormalSum(((r, l), c) for (l, r), c in tensor)


# ---------------------------------------------------------------------------
# axiom checkers
# ---------------------------------------------------------------------------


@dataclass
class CheckReport:
    """Outcome of an exhaustive or randomized structural check."""

    name: str
    ok: bool
    checked: int
    failures: list[str] = field(default_factory=list)

    def summary(self) -> str:
        if self.ok:
            return f"PASS  {self.name} ({self.checked} cases)"
        first = self.failures[0] if self.failures else "?"
        return f"FAIL  {self.name} ({self.checked} cases): {first}"


def _memoized(fn):
    memo: dict = {}

    def wrapped(key):
        out = memo.get(key)
        if out is None:
            out = memo[key] = fn(key)
        return out

    return wrapped


@dataclass(frozen=True)
class _Structure:
    """The maps and element pools an axiom checker runs over."""

    elements: tuple
    unit: object
    full: Callable
    prec_plus: Callable
    succ_plus: Callable
    product: Callable  # concatenation on basis elements
    leg_product: Callable  # pairwise product of split tensors
    fmt: Callable


def _bar_structure(
    max_degree: int,
    alphabet_size: int,
    word_coproduct=None,
    word_prec_plus=None,
    word_succ_plus=None,
) -> _Structure:
    from .words import Alphabet

    alphabet = Alphabet.default(alphabet_size)
    wd = word_coproduct or delta_word
    wp = word_prec_plus or delta_prec_plus
    ws = word_succ_plus or delta_succ_plus
    if word_coproduct is None and word_prec_plus is None and word_succ_plus is None:
        full, prec_plus, succ_plus = delta_bar, delta_prec_plus_bar, delta_succ_plus_bar
    else:

        @_memoized
        def full(bar: BarWord) -> SplitTensor:
            acc = _UNIT_PAIR_BAR
            for comp in bar.components:
                acc = _leg_product_bar(acc, wd(comp))
            return acc

        @_memoized
        def prec_plus(bar: BarWord) -> SplitTensor:
            acc = wp(bar.components[0])
            for comp in bar.components[1:]:
                acc = _leg_product_bar(acc, wd(comp))
            return acc

        @_memoized
        def succ_plus(bar: BarWord) -> SplitTensor:
            acc = ws(bar.components[0])
            for comp in bar.components[1:]:
                acc = _leg_product_bar(acc, wd(comp))
            return acc

    return _Structure(
        elements=bar_words_up_to(max_degree, alphabet_size),
        unit=UNIT_BAR,
        full=full,
        prec_plus=prec_plus,
        succ_plus=succ_plus,
        product=bar_concat,
        leg_product=_leg_product_bar,
        fmt=alphabet.format_bar_word,
    )


def _classical_structure(
    max_degree: int,
    alphabet_size: int,
    word_coproduct=None,
    word_prec_plus=None,
    word_succ_plus=None,
) -> _Structure:
    from .words import Alphabet

    alphabet = Alphabet.default(alphabet_size)
    return _Structure(
        elements=words_up_to(max_degree, alphabet_size),
        unit=EMPTY_WORD,
        full=word_coproduct or delta_classical,
        prec_plus=word_prec_plus or delta_classical_prec,
        succ_plus=word_succ_plus or delta_classical_succ,
        product=concat,
        leg_product=_leg_product_word,
        fmt=alphabet.format_word,
    )


def _structure(kind: str, max_degree: int, alphabet_size: int, **overrides) -> _Structure:
    if kind == "bar":
        return _bar_structure(max_degree, alphabet_size, **overrides)
    if kind == "classical":
        return _classical_structure(max_degree, alphabet_size, **overrides)
    raise ValueError(f"kind must be 'bar' or 'classical', got {kind!r}")


def _apply_left(tensor: SplitTensor, fn) -> dict:
    """Triples from applying ``fn`` to the left leg: sum c*d over (a, b, r)."""
    acc: dict = {}
    for (l, r), c in tensor:
        for (a, b), d in fn(l):
            key = (a, b, r)
            acc[key] = acc.get(key, 0) + c * d
    return {k: v for k, v in acc.items() if v}


def _apply_right(tensor: SplitTensor, fn) -> dict:
    """Triples from applying ``fn`` to the right leg: sum c*d over (l, a, b)."""
    acc: dict = {}
    for (l, r), c in tensor:
        for (a, b), d in fn(r):
            key = (l, a, b)
            acc[key] = acc.get(key, 0) + c * d
    return {k: v for k, v in acc.items() if v}


def check_coassociativity(
    max_degree: int,
    alphabet_size: int,
    kind: str = "bar",
    word_coproduct=None,
) -> CheckReport:
    """Verify (delta (x) I) o delta = (I (x) delta) o delta exhaustively.

    Also checks the counit law on every element.  Stops at the first
    counterexample, reported with the offending element.
    """
    st = _structure(kind, max_degree, alphabet_size, word_coproduct=word_coproduct)
    report = CheckReport(name=f"coassociativity[{kind}]", ok=True, checked=0)
    unit = st.unit

    def full_or_unit(x):
        if x is unit or x == unit:
            return FormalSum.basis((unit, unit))
        return st.full(x)

    for x in st.elements:
        report.checked += 1
        tensor = st.full(x)
        # counit law: contracting either leg with the counit returns x
        left_contracted = FormalSum(
            ((r, c) for (l, r), c in tensor if l == unit)
        )
        right_contracted = FormalSum(
            ((l, c) for (l, r), c in tensor if r == unit)
        )
        expected = FormalSum.basis(x)
        if left_contracted != expected or right_contracted != expected:
            report.ok = False
            report.failures.append(f"counit law fails at {st.fmt(x)}")
            return report
        lhs = _apply_left(tensor, full_or_unit)
        rhs = _apply_right(tensor, full_or_unit)
        if lhs != rhs:
            report.ok = False
            report.failures.append(f"coassociativity fails at {st.fmt(x)} (degree {x.degree})")
            return report
    return report


def check_unshuffle_axioms(
    max_degree: int,
    alphabet_size: int,
    kind: str = "bar",
    pair_degree: int | None = None,
    word_coproduct=None,
    word_prec_plus=None,
    word_succ_plus=None,
) -> CheckReport:
    """Verify the half-coproduct axioms exhaustively up to ``max_degree``.

    Checks the three splitting axioms

        (prec (x) I) o prec = (I (x) reduced) o prec
        (succ (x) I) o prec = (I (x) prec)    o succ
        (reduced (x) I) o succ = (I (x) succ) o succ

    on every element, and the product compatibilities

        prec_plus(a . b) = prec_plus(a) . full(b)
        succ_plus(a . b) = succ_plus(a) . full(b)

    on pairs of total degree <= ``pair_degree`` (default ``max_degree + 1``).
    For the cocommutative kind it additionally verifies that the left half is
    the twist of the right half.  All failing cases are collected.
    """
    st = _structure(
        kind,
        max_degree,
        alphabet_size,
        word_coproduct=word_coproduct,
        word_prec_plus=word_prec_plus,
        word_succ_plus=word_succ_plus,
    )
    if pair_degree is None:
        pair_degree = max_degree + 1
    unit = st.unit
    report = CheckReport(name=f"unshuffle-axioms[{kind}]", ok=True, checked=0)

    # The reduced maps live on the augmentation ideal; extending them by zero
    # on the unit keeps compositions total when a mutated input leaks unit legs.
    def prec(x):
        if x == unit:
            return FormalSum.zero()
        return st.prec_plus(x) - FormalSum.basis((x, unit))

    def succ(x):
        if x == unit:
            return FormalSum.zero()
        return st.succ_plus(x) - FormalSum.basis((unit, x))

    def reduced(x):
        if x == unit:
            return FormalSum.zero()
        return st.full(x) - FormalSum.basis((x, unit)) - FormalSum.basis((unit, x))

    for x in st.elements:
        report.checked += 1
        dp = prec(x)
        ds = succ(x)
        cases = (
            ("C1", _apply_left(dp, prec), _apply_right(dp, reduced)),
            ("C2", _apply_left(dp, succ), _apply_right(ds, prec)),
            ("C3", _apply_left(ds, reduced), _apply_right(ds, succ)),
        )
        for label, lhs, rhs in cases:
            if lhs != rhs:
                report.ok = False
                report.failures.append(f"{label} fails at {st.fmt(x)}")
        if kind == "classical" and swap_legs(st.succ_plus(x)) != st.prec_plus(x):
            report.ok = False
            report.failures.append(f"half-twist fails at {st.fmt(x)}")

    for a, b in itertools.product(st.elements, repeat=2):
        if a.degree + b.degree > pair_degree:
            continue
        report.checked += 1
        ab = st.product(a, b)
        d1_lhs = st.prec_plus(ab)
        d1_rhs = st.leg_product(st.prec_plus(a), st.full(b))
        if d1_lhs != d1_rhs:
            report.ok = False
            report.failures.append(f"D1 fails at {st.fmt(a)} . {st.fmt(b)}")
        d2_lhs = st.succ_plus(ab)
        d2_rhs = st.leg_product(st.succ_plus(a), st.full(b))
        if d2_lhs != d2_rhs:
            report.ok = False
            report.failures.append(f"D2 fails at {st.fmt(a)} . {st.fmt(b)}")

    return report
