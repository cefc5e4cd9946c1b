"""Truncated linear forms and their (half-)shuffle convolution calculus.

A ``LinForm`` stores exact-rational values on all basis elements up to a
degree bound, plus its value on the empty basis element.  Two modes exist:
``"bar"`` forms live on bar-words and convolve through the non-cocommutative
subset coproduct; ``"classical"`` forms live on plain words and convolve
through the cocommutative one.  Since both coproducts are graded, every
product and series below is exact degree by degree: truncation loses nothing
under the bound.

The half-products follow the usual unital conventions

    f prec e = f = e succ f,      e prec f = 0 = f succ e,

and the products of two unital forms under ``prec``/``succ`` are rejected as
undefined (only the full convolution handles unit times unit).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Mapping

from . import coproducts
from .words import (
    BarWord,
    EMPTY_WORD,
    FormalSum,
    UNIT_BAR,
    Word,
    ZERO,
    ONE,
    as_bar,
    bar_words_of_degree,
    rational,
    words_of_degree,
)

__all__ = [
    "MODES",
    "UndefinedUnitProductError",
    "LinForm",
    "basis_of_degree",
    "basis_up_to",
    "convolve",
    "half_prec",
    "half_succ",
    "prelie",
    "exp_prec",
    "exp_succ",
    "exp_shuffle",
    "log_shuffle",
    "shuffle_inverse",
    "solve_left_fixed_point",
    "left_fixed_point_closed_form",
    "bernoulli_numbers",
    "magnus",
    "extend_character",
    "restrict_infinitesimal",
    "CharacterFlags",
    "classify",
    "random_linform",
]

MODES = ("bar", "classical")


class UndefinedUnitProductError(ValueError):
    """Raised for the half-products of two unital forms, which do not exist."""


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


@functools.cache
def basis_of_degree(mode: str, degree: int, alphabet_size: int):
    """Basis elements of one degree for the given mode, in canonical order."""
    _check_mode(mode)
    if mode == "bar":
        return bar_words_of_degree(degree, alphabet_size)
    return words_of_degree(degree, alphabet_size)


@functools.cache
def basis_up_to(mode: str, max_degree: int, alphabet_size: int):
    """Basis elements of degree 1..max_degree in graded order."""
    return tuple(
        key
        for d in range(1, max_degree + 1)
        for key in basis_of_degree(mode, d, alphabet_size)
    )


def _unit_key(mode: str):
    return UNIT_BAR if mode == "bar" else EMPTY_WORD


# Coproduct term tables, flattened once per basis element and cached.  Each
# entry is (left, right, coefficient).
@functools.cache
def _full_terms(mode: str, key) -> tuple:
    fn = coproducts.delta_bar if mode == "bar" else coproducts.delta_classical
    return tuple((l, r, c) for (l, r), c in fn(key))


@functools.cache
def _prec_plus_terms(mode: str, key) -> tuple:
    fn = coproducts.delta_prec_plus_bar if mode == "bar" else coproducts.delta_classical_prec
    return tuple((l, r, c) for (l, r), c in fn(key))


@functools.cache
def _succ_plus_terms(mode: str, key) -> tuple:
    fn = coproducts.delta_succ_plus_bar if mode == "bar" else coproducts.delta_classical_succ
    return tuple((l, r, c) for (l, r), c in fn(key))


_TERMS = {"full": _full_terms, "prec": _prec_plus_terms, "succ": _succ_plus_terms}


@functools.cache
def _flat_degree(mode: str, which: str, degree: int, alphabet_size: int) -> tuple:
    """Coproduct terms for all keys of one degree, flattened for tight loops.

    Entries are ``(key, left, right, coeff)`` with unit legs stored as None.
    """
    terms_fn = _TERMS[which]
    out = []
    for key in basis_of_degree(mode, degree, alphabet_size):
        for left, right, coeff in terms_fn(mode, key):
            out.append(
                (
                    key,
                    left if left.degree else None,
                    right if right.degree else None,
                    coeff,
                )
            )
    return tuple(out)


@functools.cache
def _flat_table(mode: str, which: str, truncation: int, alphabet_size: int) -> tuple:
    """Flattened coproduct terms for every key of degree 1..truncation."""
    return tuple(
        entry
        for degree in range(1, truncation + 1)
        for entry in _flat_degree(mode, which, degree, alphabet_size)
    )


@dataclass(frozen=True, eq=False)
class LinForm:
    """Exact-rational linear form truncated at ``truncation``.

    ``table`` holds values on basis keys of degree 1..truncation; missing
    keys mean zero.  ``unit_value`` is the value on the empty word/bar-word.
    """

    mode: str
    alphabet_size: int
    truncation: int
    unit_value: Fraction
    table: Mapping

    def __post_init__(self):
        _check_mode(self.mode)
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be >= 1")
        if self.truncation < 1:
            raise ValueError("truncation must be >= 1")
        object.__setattr__(self, "unit_value", rational(self.unit_value))
        key_type = BarWord if self.mode == "bar" else Word
        clean = {}
        for key, value in self.table.items():
            if not isinstance(key, key_type):
                raise TypeError(f"{self.mode} mode expects {key_type.__name__} keys, got {key!r}")
            if not 1 <= key.degree <= self.truncation:
                raise ValueError(f"key {key!r} outside degrees 1..{self.truncation}")
            if self._max_letter(key) >= self.alphabet_size:
                raise ValueError(f"key {key!r} uses letters outside alphabet of size {self.alphabet_size}")
            value = rational(value)
            if value:
                clean[key] = value
        object.__setattr__(self, "table", clean)

    @staticmethod
    def _max_letter(key) -> int:
        if isinstance(key, Word):
            return max(key.letters)
        return max(max(c.letters) for c in key.components)

    @classmethod
    def _trusted(cls, mode, alphabet_size, truncation, unit_value, table) -> "LinForm":
        """Adopt an internally-built table without re-validating it."""
        out = cls.__new__(cls)
        object.__setattr__(out, "mode", mode)
        object.__setattr__(out, "alphabet_size", alphabet_size)
        object.__setattr__(out, "truncation", truncation)
        object.__setattr__(out, "unit_value", unit_value)
        object.__setattr__(out, "table", table)
        return out

    @staticmethod
    def zero(mode: str, alphabet_size: int, truncation: int) -> "LinForm":
        _check_mode(mode)
        return LinForm._trusted(mode, alphabet_size, truncation, ZERO, {})

    @staticmethod
    def counit(mode: str, alphabet_size: int, truncation: int) -> "LinForm":
        """The convolution unit: 1 on the empty element, 0 elsewhere."""
        _check_mode(mode)
        return LinForm._trusted(mode, alphabet_size, truncation, ONE, {})

    def _like(self, unit_value: Fraction, table: dict) -> "LinForm":
        return LinForm._trusted(
            self.mode, self.alphabet_size, self.truncation, unit_value, table
        )

    def __call__(self, key) -> Fraction:
        if key.degree == 0:
            return self.unit_value
        if key.degree > self.truncation:
            raise ValueError(f"key {key!r} beyond truncation {self.truncation}")
        return self.table.get(key, ZERO)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinForm)
            and self.mode == other.mode
            and self.alphabet_size == other.alphabet_size
            and self.truncation == other.truncation
            and self.unit_value == other.unit_value
            and self.table == other.table
        )

    def __add__(self, other: "LinForm") -> "LinForm":
        _require_compatible(self, other)
        table = dict(self.table)
        for key, value in other.table.items():
            total = table.get(key, ZERO) + value
            if total:
                table[key] = total
            elif key in table:
                del table[key]
        return self._like(self.unit_value + other.unit_value, table)

    def __sub__(self, other: "LinForm") -> "LinForm":
        return self + (-1) * other

    def __neg__(self) -> "LinForm":
        return (-1) * self

    def __rmul__(self, scale) -> "LinForm":
        scale = rational(scale)
        if not scale:
            return self._like(ZERO, {})
        return self._like(scale * self.unit_value, {k: scale * v for k, v in self.table.items()})

    __mul__ = __rmul__

    def __repr__(self) -> str:
        return (
            f"LinForm(mode={self.mode!r}, alphabet_size={self.alphabet_size}, "
            f"truncation={self.truncation}, unit={self.unit_value}, terms={len(self.table)})"
        )


def _require_compatible(f: LinForm, g: LinForm) -> None:
    if (f.mode, f.alphabet_size, f.truncation) != (g.mode, g.alphabet_size, g.truncation):
        raise ValueError(
            "incompatible forms: "
            f"({f.mode}, alphabet {f.alphabet_size}, truncation {f.truncation}) vs "
            f"({g.mode}, alphabet {g.alphabet_size}, truncation {g.truncation})"
        )


def _bilinear(f: LinForm, g: LinForm, which: str) -> dict:
    """Table of sum c * f(left) * g(right) over the given coproduct terms."""
    fu, ft_get = f.unit_value, f.table.get
    gu, gt_get = g.unit_value, g.table.get
    out: dict = {}
    out_get = out.get
    for key, left, right, coeff in _flat_table(f.mode, which, f.truncation, f.alphabet_size):
        fv = fu if left is None else ft_get(left)
        if not fv:
            continue
        gv = gu if right is None else gt_get(right)
        if not gv:
            continue
        term = coeff * fv * gv
        prev = out_get(key)
        out[key] = term if prev is None else prev + term
    return {k: v for k, v in out.items() if v}


def convolve(f: LinForm, g: LinForm) -> LinForm:
    """Convolution product through the full coproduct."""
    _require_compatible(f, g)
    table = _bilinear(f, g, "full")
    return f._like(f.unit_value * g.unit_value, table)


def half_prec(f: LinForm, g: LinForm) -> LinForm:
    """Left half-convolution ``f prec g``; undefined when both are unital."""
    _require_compatible(f, g)
    if f.unit_value and g.unit_value:
        raise UndefinedUnitProductError("1 prec 1 cannot be defined consistently")
    return f._like(ZERO, _bilinear(f, g, "prec"))


def half_succ(f: LinForm, g: LinForm) -> LinForm:
    """Right half-convolution ``f succ g``; undefined when both are unital."""
    _require_compatible(f, g)
    if f.unit_value and g.unit_value:
        raise UndefinedUnitProductError("1 succ 1 cannot be defined consistently")
    return f._like(ZERO, _bilinear(f, g, "succ"))


def prelie(f: LinForm, g: LinForm) -> LinForm:
    """Left pre-Lie product ``f succ g - g prec f``; needs unit-vanishing inputs."""
    if f.unit_value or g.unit_value:
        raise ValueError("the pre-Lie product is only defined on unit-vanishing forms")
    return half_succ(f, g) - half_prec(g, f)


def exp_prec(x: LinForm) -> LinForm:
    """Sum of left-nested half-shuffle powers; solves X = e + x prec X."""
    if x.unit_value:
        raise ValueError("exp_prec needs a unit-vanishing argument")
    acc = LinForm.counit(x.mode, x.alphabet_size, x.truncation) + x
    power = x
    for _ in range(2, x.truncation + 1):
        power = half_prec(x, power)
        if not power.table:
            break
        acc = acc + power
    return acc


def exp_succ(x: LinForm) -> LinForm:
    """Sum of right-nested half-shuffle powers; solves Z = e + x succ Z."""
    if x.unit_value:
        raise ValueError("exp_succ needs a unit-vanishing argument")
    acc = LinForm.counit(x.mode, x.alphabet_size, x.truncation) + x
    power = x
    for _ in range(2, x.truncation + 1):
        power = half_succ(power, x)
        if not power.table:
            break
        acc = acc + power
    return acc


def exp_shuffle(x: LinForm) -> LinForm:
    """Exponential series for the full shuffle product."""
    if x.unit_value:
        raise ValueError("exp_shuffle needs a unit-vanishing argument")
    acc = LinForm.counit(x.mode, x.alphabet_size, x.truncation) + x
    power = x
    factorial = 1
    for n in range(2, x.truncation + 1):
        power = convolve(power, x)
        factorial *= n
        if not power.table:
            break
        acc = acc + Fraction(1, factorial) * power
    return acc


def log_shuffle(big_f: LinForm) -> LinForm:
    """Logarithm series for the shuffle product; needs unit value 1."""
    if big_f.unit_value != 1:
        raise ValueError("log_shuffle needs unit value 1")
    y = big_f - LinForm.counit(big_f.mode, big_f.alphabet_size, big_f.truncation)
    acc = y
    power = y
    for n in range(2, big_f.truncation + 1):
        power = convolve(power, y)
        if not power.table:
            break
        acc = acc + Fraction((-1) ** (n + 1), n) * power
    return acc


def shuffle_inverse(big_f: LinForm) -> LinForm:
    """Inverse for the shuffle product, solved degree by degree.

    Equals the geometric series sum (-1)^k (F - e)^(shuffle k).
    """
    if big_f.unit_value != 1:
        raise ValueError("shuffle_inverse needs unit value 1")
    mode, k, n_max = big_f.mode, big_f.alphabet_size, big_f.truncation
    ft_get = big_f.table.get
    inv: dict = {}
    inv_get = inv.get
    for degree in range(1, n_max + 1):
        totals: dict = {}
        for key, left, right, coeff in _flat_degree(mode, "full", degree, k):
            if left is None:
                continue  # that term is F(1) * G(key), isolated on the left
            fv = ft_get(left)
            if not fv:
                continue
            gv = ONE if right is None else inv_get(right, ZERO)
            if gv:
                totals[key] = totals.get(key, ZERO) + coeff * fv * gv
        for key, total in totals.items():
            if total:
                inv[key] = -total
    return big_f._like(ONE, inv)


def solve_left_fixed_point(phi: LinForm) -> LinForm:
    """The unique unit-vanishing ``kappa`` with ``phi = e + kappa prec phi``.

    Solved degree by degree: the value on a degree-n key is the value of
    ``phi`` there minus all lower-degree contributions of ``kappa prec phi``.
    """
    if phi.unit_value != 1:
        raise ValueError("the fixed point inversion needs unit value 1")
    mode, k, n_max = phi.mode, phi.alphabet_size, phi.truncation
    pu, pt = phi.unit_value, phi.table
    kappa: dict = {}
    for degree in range(1, n_max + 1):
        for key in basis_of_degree(mode, degree, k):
            lower = ZERO
            for left, right, coeff in _prec_plus_terms(mode, key):
                if left.degree == degree:
                    continue  # the kappa(key) * phi(1) term being solved for
                kv = kappa.get(left, ZERO)
                if not kv:
                    continue
                pv = pu if right.degree == 0 else pt.get(right, ZERO)
                if pv:
                    lower += coeff * kv * pv
            value = pt.get(key, ZERO) - lower
            if value:
                kappa[key] = value
    return phi._like(ZERO, kappa)


def left_fixed_point_closed_form(phi: LinForm) -> LinForm:
    """Closed form for the same fixed point: (phi - e) prec shuffle_inverse(phi)."""
    if phi.unit_value != 1:
        raise ValueError("the fixed point inversion needs unit value 1")
    y = phi - LinForm.counit(phi.mode, phi.alphabet_size, phi.truncation)
    return half_prec(y, shuffle_inverse(phi))


@functools.cache
def bernoulli_numbers(count: int) -> tuple[Fraction, ...]:
    """B_0..B_count with the B_1 = -1/2 convention."""
    out = [ONE]
    for m in range(1, count + 1):
        acc = ZERO
        for j in range(m):
            acc += math.comb(m + 1, j) * out[j]
        out.append(Fraction(-1, m + 1) * acc)
    return tuple(out)


def magnus(x: LinForm) -> LinForm:
    """Pre-Lie Magnus expansion: the element whose shuffle exponential equals
    the left time-ordered exponential of ``x``.

    Solved degree by degree from the Bernoulli-weighted recursion
    ``Omega = sum_m (B_m / m!) L_Omega^m(x)`` where ``L_Omega`` is left
    pre-Lie multiplication by the part of ``Omega`` already known.  In a
    commutative mode the pre-Lie product vanishes and the result is ``x``.
    """
    if x.unit_value:
        raise ValueError("magnus needs a unit-vanishing argument")
    mode, k, n_max = x.mode, x.alphabet_size, x.truncation
    bern = bernoulli_numbers(n_max)
    omega_table: dict = {}
    for degree in range(1, n_max + 1):
        omega = LinForm(mode, k, n_max, ZERO, omega_table)
        rhs = x
        term = x
        factorial = 1
        for m in range(1, n_max + 1):
            term = prelie(omega, term)
            if not term.table:
                break
            factorial *= m
            if bern[m]:
                rhs = rhs + (bern[m] / factorial) * term
        for key in basis_of_degree(mode, degree, k):
            value = rhs(key)
            if value:
                omega_table[key] = value
    return LinForm(mode, k, n_max, ZERO, omega_table)


def extend_character(
    word_values: Mapping[Word, Fraction], alphabet_size: int, truncation: int
) -> LinForm:
    """Multiplicative extension of word values to bar-words (bar mode).

    The result takes the product of the word values over the components and
    is 1 on the unit.  Missing words count as zero.
    """
    table: dict = {}
    for degree in range(1, truncation + 1):
        for key in bar_words_of_degree(degree, alphabet_size):
            value = ONE
            for comp in key.components:
                value *= word_values.get(comp, ZERO)
                if not value:
                    break
            if value:
                table[key] = value
    return LinForm("bar", alphabet_size, truncation, ONE, table)


def restrict_infinitesimal(big_f: LinForm) -> LinForm:
    """Keep only the one-component bar-word values; zero elsewhere and on the unit."""
    if big_f.mode != "bar":
        raise ValueError("restrict_infinitesimal is a bar-mode operation")
    table = {k: v for k, v in big_f.table.items() if len(k.components) == 1}
    return big_f._like(ZERO, table)


@dataclass(frozen=True)
class CharacterFlags:
    """Predicate results for a bar-mode form within its truncation."""

    is_unital: bool
    is_multiplicative: bool
    is_infinitesimal: bool


def classify(big_f: LinForm) -> CharacterFlags:
    """Test the character and infinitesimal-character predicates."""
    if big_f.mode != "bar":
        raise ValueError("classify is a bar-mode operation")
    is_unital = big_f.unit_value == 1
    is_multiplicative = is_unital
    if is_multiplicative:
        for key in basis_up_to("bar", big_f.truncation, big_f.alphabet_size):
            if len(key.components) < 2:
                continue
            head = as_bar(key.components[0])
            tail = BarWord(key.components[1:])
            if big_f(key) != big_f(head) * big_f(tail):
                is_multiplicative = False
                break
    is_infinitesimal = big_f.unit_value == 0 and all(
        len(key.components) == 1 for key in big_f.table
    )
    return CharacterFlags(is_unital, is_multiplicative, is_infinitesimal)


def random_linform(
    rng: Random,
    mode: str,
    alphabet_size: int,
    truncation: int,
    unit_value: int | Fraction = 0,
    infinitesimal: bool = False,
) -> LinForm:
    """Seeded random form: numerators in [-9, 9], denominators in {1, 2, 3}."""
    _check_mode(mode)
    if infinitesimal and mode != "bar":
        raise ValueError("infinitesimal sampling applies to bar mode")
    table: dict = {}
    for key in basis_up_to(mode, truncation, alphabet_size):
        if infinitesimal and len(key.components) != 1:
            continue
        value = Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))
        if value:
            table[key] = value
    return LinForm(mode, alphabet_size, truncation, rational(unit_value), table)
