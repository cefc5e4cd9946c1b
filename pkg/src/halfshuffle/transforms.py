"""Moment/cumulant transforms, free and classical, over exact rationals.

The free transforms run through bar-mode linear forms: moments extend
multiplicatively to bar-words, the left half-shuffle fixed point
``Phi = e + kappa prec Phi`` is inverted degree by degree, and the
unit-vanishing solution restricted to words gives the cumulants.  The
classical transforms are the same fixed point in the cocommutative
(classical) mode, which reduces to the binomial moment-cumulant recursion.
Univariate input is lifted to a one-letter table so both arities share one
code path.

Independent routes for cross-validation live alongside: formal exp/log of
exponential generating functions for the classical side, and the
generating-series residual ``C(z M(z)) - M(z)`` for the free side.  The
partition-sum oracles are in :mod:`halfshuffle.partitions`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .linforms import (
    LinForm,
    _prec_plus_terms,
    extend_character,
    solve_left_fixed_point,
)
from .words import (
    Alphabet,
    EMPTY_WORD,
    ONE,
    Word,
    ZERO,
    as_bar,
    rational,
    words_of_degree,
    words_up_to,
)

__all__ = [
    "MomentSpec",
    "CumulantSpec",
    "free_cumulants_from_moments",
    "moments_from_free_cumulants",
    "multivariate_free_cumulants",
    "classical_cumulants_from_moments",
    "classical_moments_from_cumulants",
    "classical_cumulants_by_series",
    "classical_moments_by_series",
    "free_series_residual",
    "product_moment_spec",
    "ClusterReport",
    "cluster_check",
]


class _WordTable:
    """Shared shape of moment and cumulant specifications.

    ``table`` must be total: a value for every word of degree 1..order over
    the declared alphabet.  Univariate specs use a one-letter alphabet.
    """

    __slots__ = ("alphabet", "order", "table")

    def __init__(self, alphabet: Alphabet, order: int, table: Mapping[Word, Fraction]):
        if not isinstance(alphabet, Alphabet):
            raise TypeError("alphabet must be an Alphabet")
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        clean: dict[Word, Fraction] = {}
        for key, value in table.items():
            if not isinstance(key, Word) or key.degree == 0:
                raise TypeError(f"table keys must be nonempty Words, got {key!r}")
            if key.degree > order or max(key.letters) >= alphabet.size:
                raise ValueError(f"table key {key!r} outside the declared range")
            clean[key] = rational(value)
        missing = [
            w for w in words_up_to(order, alphabet.size) if w not in clean
        ]
        if missing:
            shown = ", ".join(alphabet.format_word(w) for w in missing[:5])
            raise ValueError(
                f"table is incomplete: {len(missing)} words of degree <= {order} "
                f"missing, starting with {shown}"
            )
        self.alphabet = alphabet
        self.order = order
        self.table = clean

    @classmethod
    def univariate(cls, values: Sequence[int | Fraction]):
        """Build a one-letter spec from the sequence of values at degrees 1..N."""
        values = tuple(rational(v) for v in values)
        if not values:
            raise ValueError("need at least one value")
        table = {Word((0,) * (n + 1)): v for n, v in enumerate(values)}
        return cls(Alphabet.default(1), len(values), table)

    @classmethod
    def multivariate(cls, alphabet: Alphabet, order: int, table: Mapping):
        """Build a spec from a table keyed by Words or by juxtaposed names."""
        converted = {}
        for key, value in table.items():
            word = alphabet.word(key) if isinstance(key, str) else key
            converted[word] = value
        return cls(alphabet, order, converted)

    @property
    def kind(self) -> str:
        return "univariate-sequence" if self.alphabet.size == 1 else "multivariate-table"

    def value(self, word: Word) -> Fraction:
        """Value at a word; the empty word counts as 1 (unital convention)."""
        if word.degree == 0:
            return ONE
        return self.table[word]

    def sequence(self) -> tuple[Fraction, ...]:
        """Values at a, aa, aaa, ... (univariate specs only)."""
        if self.alphabet.size != 1:
            raise ValueError("sequence() applies to univariate specs only")
        return tuple(self.table[Word((0,) * n)] for n in range(1, self.order + 1))

    def __eq__(self, other) -> bool:
        return (
            type(self) is type(other)
            and self.alphabet == other.alphabet
            and self.order == other.order
            and self.table == other.table
        )

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(alphabet={self.alphabet.names}, "
            f"order={self.order}, entries={len(self.table)})"
        )


class MomentSpec(_WordTable):
    """Moments of one or several non-commutative variables, as a word table."""


class CumulantSpec(_WordTable):
    """Free or classical cumulants, same shape as a moment table."""


def _to_linform(spec: _WordTable, mode: str) -> LinForm:
    if mode == "bar":
        return extend_character(spec.table, spec.alphabet.size, spec.order)
    return LinForm("classical", spec.alphabet.size, spec.order, ONE, spec.table)


def free_cumulants_from_moments(moments: MomentSpec) -> CumulantSpec:
    """Free cumulants from moments via the bar-mode left fixed point.

    Extends the moments multiplicatively to bar-words, solves
    ``Phi = e + kappa prec Phi`` and restricts the solution to words.
    """
    phi = _to_linform(moments, "bar")
    kappa = solve_left_fixed_point(phi)
    table = {
        w: kappa(as_bar(w))
        for w in words_up_to(moments.order, moments.alphabet.size)
    }
    return CumulantSpec(moments.alphabet, moments.order, table)


def multivariate_free_cumulants(moments: MomentSpec) -> CumulantSpec:
    """Generalized non-crossing cumulants of a multivariate moment table."""
    return free_cumulants_from_moments(moments)


def _forward_moments(cumulants: _WordTable, mode: str) -> dict[Word, Fraction]:
    """Evaluate the fixed point forward: phi(w) = sum kappa(w_S) prod phi(parts)."""
    k = cumulants.alphabet.size
    phi: dict[Word, Fraction] = {}

    def phi_at(word: Word) -> Fraction:
        return ONE if word.degree == 0 else phi[word]

    for degree in range(1, cumulants.order + 1):
        for w in words_of_degree(degree, k):
            key = as_bar(w) if mode == "bar" else w
            total = ZERO
            for left, right, coeff in _prec_plus_terms(mode, key):
                if mode == "bar":
                    kv = cumulants.table[left.components[0]]
                    prod = coeff * kv
                    for comp in right.components:
                        prod *= phi_at(comp)
                        if not prod:
                            break
                else:
                    prod = coeff * cumulants.table[left] * phi_at(right)
                total += prod
            phi[w] = total
    return phi


def moments_from_free_cumulants(cumulants: CumulantSpec) -> MomentSpec:
    """Moments from free cumulants: the fixed point evaluated degreewise."""
    table = _forward_moments(cumulants, "bar")
    return MomentSpec(cumulants.alphabet, cumulants.order, table)


def _require_univariate(spec: _WordTable, what: str) -> None:
    if spec.alphabet.size != 1:
        raise ValueError(f"{what} is univariate; got an alphabet of size {spec.alphabet.size}")


def classical_cumulants_from_moments(moments: MomentSpec) -> CumulantSpec:
    """Classical cumulants via the cocommutative-mode left fixed point."""
    _require_univariate(moments, "the classical transform")
    c = solve_left_fixed_point(_to_linform(moments, "classical"))
    table = {w: c(w) for w in words_up_to(moments.order, 1)}
    return CumulantSpec(moments.alphabet, moments.order, table)


def classical_moments_from_cumulants(cumulants: CumulantSpec) -> MomentSpec:
    """Moments from classical cumulants: the same fixed point run forward.

    Degreewise this is the binomial recursion
    ``m_n = sum_j C(n-1, j) c_{j+1} m_{n-j-1}``.
    """
    _require_univariate(cumulants, "the classical transform")
    table = _forward_moments(cumulants, "classical")
    return MomentSpec(cumulants.alphabet, cumulants.order, table)


# ---------------------------------------------------------------------------
# independent series routes
# ---------------------------------------------------------------------------


def _poly_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [ZERO] * (order + 1)
    for i, ai in enumerate(a):
        if not ai or i > order:
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def classical_cumulants_by_series(moments: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
    """Classical cumulants as the formal log of the exponential generating
    function of the moments (independent of the fixed-point machinery)."""
    m = [rational(v) for v in moments]
    order = len(m)
    f = [ZERO] * (order + 1)  # f = EGF(moments) - 1
    for n, v in enumerate(m, start=1):
        f[n] = v / factorial(n)
    log = [ZERO] * (order + 1)
    power = f[:]
    for k in range(1, order + 1):
        if k > 1:
            power = _poly_mul(power, f, order)
        sign = Fraction((-1) ** (k + 1), k)
        for i in range(order + 1):
            log[i] += sign * power[i]
    return tuple(log[n] * factorial(n) for n in range(1, order + 1))


def classical_moments_by_series(cumulants: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
    """Moments as the formal exp of the cumulant exponential generating function."""
    c = [rational(v) for v in cumulants]
    order = len(c)
    f = [ZERO] * (order + 1)
    for n, v in enumerate(c, start=1):
        f[n] = v / factorial(n)
    exp = [ZERO] * (order + 1)
    exp[0] = ONE
    power = [ONE] + [ZERO] * order
    for k in range(1, order + 1):
        power = _poly_mul(power, f, order)
        inv_fact = Fraction(1, factorial(k))
        for i in range(order + 1):
            exp[i] += inv_fact * power[i]
    return tuple(exp[n] * factorial(n) for n in range(1, order + 1))


def free_series_residual(
    moments: Sequence[int | Fraction], cumulants: Sequence[int | Fraction]
) -> tuple[Fraction, ...]:
    """Coefficients of ``C(z M(z)) - M(z)`` through the common order.

    ``M`` and ``C`` are the ordinary generating functions with constant term
    one.  A matching moment/free-cumulant pair makes every coefficient zero.
    """
    m = [rational(v) for v in moments]
    c = [rational(v) for v in cumulants]
    if len(m) != len(c):
        raise ValueError("moment and cumulant sequences must share one order")
    order = len(m)
    big_m = [ONE] + m
    big_c = [ONE] + c
    zm = ([ZERO] + big_m)[: order + 1]  # z * M(z), truncated
    # Horner composition of C with zM
    comp = [big_c[order]] + [ZERO] * order
    for idx in range(order - 1, -1, -1):
        comp = _poly_mul(comp, zm, order)
        comp[0] += big_c[idx]
    return tuple(comp[i] - big_m[i] for i in range(order + 1))


# ---------------------------------------------------------------------------
# independence / cluster factorization
# ---------------------------------------------------------------------------


def product_moment_spec(left: MomentSpec, right: MomentSpec) -> MomentSpec:
    """Joint moments of two independent families on disjoint alphabets.

    The combined table factorizes through the projections: a word evaluates
    to the product of the left-letter subword under ``left`` and the
    right-letter subword under ``right``.
    """
    overlap = set(left.alphabet.names) & set(right.alphabet.names)
    if overlap:
        raise ValueError(f"alphabets overlap on {sorted(overlap)}")
    names = left.alphabet.names + right.alphabet.names
    combined = Alphabet(names)
    offset = left.alphabet.size
    order = min(left.order, right.order)
    table: dict[Word, Fraction] = {}
    for w in words_up_to(order, combined.size):
        lpart = Word(x for x in w.letters if x < offset)
        rpart = Word(x - offset for x in w.letters if x >= offset)
        table[w] = left.value(lpart) * right.value(rpart)
    return MomentSpec(combined, order, table)


@dataclass(frozen=True)
class ClusterReport:
    """Result of the cluster-factorization check and cumulant vanishing test.

    When the factorization precondition fails, no vanishing claim is made:
    ``max_violation`` stays ``None`` and only the failing words are listed.
    """

    factorization_ok: bool
    factorization_failures: tuple[str, ...]
    cumulant_violations: tuple[tuple[str, Fraction], ...]
    max_violation: Fraction | None
    checked: int
    ok: bool


def _block_words(letters: tuple[int, ...], degree: int) -> Iterable[Word]:
    return (Word(p) for p in itertools.product(letters, repeat=degree))


def cluster_check(
    moments: MomentSpec,
    left_letters: Iterable[str],
    right_letters: Iterable[str],
    order: int | None = None,
) -> ClusterReport:
    """Check block factorization and the vanishing of mixed free cumulants.

    First verifies ``phi(b...b c...c) = phi(b...b) phi(c...c)`` for all words
    with a block of left letters followed by a block of right letters, up to
    the given total degree.  Only when that holds does it solve for the free
    cumulants and test that every such mixed word has cumulant exactly zero.
    """
    alphabet = moments.alphabet
    left_idx = tuple(alphabet.index(name) for name in left_letters)
    right_idx = tuple(alphabet.index(name) for name in right_letters)
    if not left_idx or not right_idx:
        raise ValueError("both letter groups must be nonempty")
    if set(left_idx) & set(right_idx):
        raise ValueError("letter groups must be disjoint")
    if order is None:
        order = moments.order
    if not 2 <= order <= moments.order:
        raise ValueError(f"order must be in 2..{moments.order}, got {order}")

    fact_failures: list[str] = []
    checked = 0
    mixed: list[tuple[Word, Word, Word]] = []
    for n in range(1, order):
        for m in range(1, order - n + 1):
            for bw in _block_words(left_idx, n):
                for cw in _block_words(right_idx, m):
                    word = Word(bw.letters + cw.letters)
                    mixed.append((word, bw, cw))
                    checked += 1
                    if moments.value(word) != moments.value(bw) * moments.value(cw):
                        fact_failures.append(alphabet.format_word(word))
    if fact_failures:
        return ClusterReport(
            factorization_ok=False,
            factorization_failures=tuple(fact_failures),
            cumulant_violations=(),
            max_violation=None,
            checked=checked,
            ok=False,
        )

    kappa = free_cumulants_from_moments(moments)
    violations = []
    worst = ZERO
    for word, _, _ in mixed:
        value = kappa.table[word]
        if value:
            violations.append((alphabet.format_word(word), value))
            worst = max(worst, abs(value))
    return ClusterReport(
        factorization_ok=True,
        factorization_failures=(),
        cumulant_violations=tuple(violations),
        max_violation=worst,
        checked=checked,
        ok=not violations,
    )
