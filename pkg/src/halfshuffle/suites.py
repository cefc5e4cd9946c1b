"""Named verification suites: every structural identity the package relies
on, runnable at a chosen degree/truncation and seed.

Each suite returns a :class:`halfshuffle.coproducts.CheckReport`.  Exhaustive
bar-mode suites switch from a two-letter to a one-letter alphabet above a
per-suite degree cutoff to keep the run at desk scale; the classical-mode and
univariate suites honour the requested order directly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from random import Random

from . import partitions, transforms
from .coproducts import (
    CheckReport,
    check_coassociativity,
    check_unshuffle_axioms,
    delta_classical,
    delta_prec_plus,
    delta_succ_plus,
    delta_word,
    swap_legs,
)
from .linforms import (
    LinForm,
    classify,
    convolve,
    exp_prec,
    exp_shuffle,
    exp_succ,
    half_prec,
    half_succ,
    left_fixed_point_closed_form,
    log_shuffle,
    magnus,
    prelie,
    random_linform,
    shuffle_inverse,
    solve_left_fixed_point,
    basis_up_to,
)
from .transforms import (
    CumulantSpec,
    MomentSpec,
    classical_cumulants_by_series,
    classical_cumulants_from_moments,
    classical_moments_from_cumulants,
    cluster_check,
    free_cumulants_from_moments,
    free_series_residual,
    moments_from_free_cumulants,
    product_moment_spec,
)
from .words import (
    Alphabet,
    BarWord,
    FormalSum,
    UNIT_BAR,
    Word,
    bar_concat,
    bar_words_of_degree,
    bar_words_up_to,
    connected_components,
    words_up_to,
)

__all__ = ["SUITES", "run_suites"]


def _rand_q(rng: Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))


def _bar_alphabet(order: int, cutoff: int) -> int:
    return 2 if order <= cutoff else 1


def _random_moment_values(rng: Random, count: int) -> list[Fraction]:
    return [_rand_q(rng) for _ in range(count)]


def _merge(target: CheckReport, part: CheckReport) -> None:
    target.checked += part.checked
    if not part.ok:
        target.ok = False
        target.failures.extend(f"{part.name}: {msg}" for msg in part.failures)


def suite_core_words(order: int, seed: int) -> CheckReport:
    """Formal-sum arithmetic, the bar-word monoid, and run decompositions."""
    rng = Random(seed)
    report = CheckReport(name="core-words", ok=True, checked=0)

    keys = words_up_to(3, 2)
    for _ in range(100):
        def sample():
            return FormalSum((k, _rand_q(rng)) for k in rng.sample(keys, 4))

        x, y, z = sample(), sample(), sample()
        q = _rand_q(rng)
        report.checked += 1
        if (x + y) + z != x + (y + z):
            report.ok = False
            report.failures.append("formal-sum addition is not associative")
        if q * (x + y) != q * x + q * y:
            report.ok = False
            report.failures.append("formal-sum scaling does not distribute")
        if x + (-x) != FormalSum.zero():
            report.ok = False
            report.failures.append("formal sum has no additive inverse")

    bound = min(order + 1, 6)
    for x in bar_words_up_to(bound, 2):
        report.checked += 1
        if bar_concat(UNIT_BAR, x) != x or bar_concat(x, UNIT_BAR) != x:
            report.ok = False
            report.failures.append(f"unit law fails at {x!r}")
    for d1 in range(1, bound - 1):
        for d2 in range(1, bound - d1):
            for d3 in range(1, bound - d1 - d2 + 1):
                triples = itertools.product(
                    bar_words_of_degree(d1, 2),
                    bar_words_of_degree(d2, 2),
                    bar_words_of_degree(d3, 2),
                )
                for x, y, z in triples:
                    report.checked += 1
                    if bar_concat(bar_concat(x, y), z) != bar_concat(x, bar_concat(y, z)):
                        report.ok = False
                        report.failures.append(f"associativity fails at {x!r}, {y!r}, {z!r}")

    for n in range(1, min(order + 1, 7)):
        ground = tuple(range(1, n + 1))
        for u_mask in range(1 << n):
            u = [p for p in ground if (u_mask >> (p - 1)) & 1]
            if not u:
                continue
            for s_mask in range(1 << len(u)):
                s = [u[i] for i in range(len(u)) if (s_mask >> i) & 1]
                report.checked += 1
                comps = connected_components(s, u)
                flat = [p for comp in comps for p in comp]
                if sorted(flat) != sorted(set(u) - set(s)):
                    report.ok = False
                    report.failures.append(f"components do not partition {u} - {s}")
                if sorted(flat + list(s)) != u:
                    report.ok = False
                    report.failures.append(f"components plus {s} do not recover {u}")
                # definition-literal scan: a run breaks exactly where an
                # element of the ambient set falls strictly between
                expected, current = [], []
                u_set = set(u)
                for x in sorted(set(u) - set(s)):
                    if current and any(y in u_set for y in range(current[-1] + 1, x)):
                        expected.append(tuple(current))
                        current = []
                    current.append(x)
                if current:
                    expected.append(tuple(current))
                if list(comps) != expected:
                    report.ok = False
                    report.failures.append(f"components of {s} in {u}: {comps} != {expected}")
    return report


def suite_coassociativity(order: int, seed: int) -> CheckReport:
    """Counital coassociativity of both coproducts, plus grading and counting."""
    del seed
    report = CheckReport(name="coassociativity", ok=True, checked=0)
    _merge(report, check_coassociativity(order, _bar_alphabet(order, 6), kind="bar"))
    _merge(report, check_coassociativity(order, 1, kind="bar"))
    _merge(report, check_coassociativity(order, 2, kind="classical"))
    for w in words_up_to(min(order, 5), 2):
        report.checked += 1
        tensor = delta_word(w)
        if sum(c for _, c in tensor) != 2**w.degree:
            report.ok = False
            report.failures.append(f"term count of delta({w!r}) is not 2^n")
        if any(l.degree + r.degree != w.degree for (l, r), _ in tensor):
            report.ok = False
            report.failures.append(f"grading fails in delta({w!r})")
    return report


def suite_unshuffle_axioms(order: int, seed: int) -> CheckReport:
    """Half-coproduct splitting and product-compatibility axioms (bar mode)."""
    del seed
    report = CheckReport(name="unshuffle-axioms", ok=True, checked=0)
    alpha = _bar_alphabet(order, 5)
    _merge(report, check_unshuffle_axioms(order, alpha, kind="bar", pair_degree=order + 1))
    for w in words_up_to(min(order, 5), alpha):
        report.checked += 1
        if delta_prec_plus(w) + delta_succ_plus(w) != delta_word(w):
            report.ok = False
            report.failures.append(f"half-coproducts do not sum to delta at {w!r}")
    return report


def suite_classical_structure(order: int, seed: int) -> CheckReport:
    """Cocommutativity, the half-twist, and commutative convolution."""
    rng = Random(seed)
    report = CheckReport(name="classical-structure", ok=True, checked=0)
    _merge(report, check_unshuffle_axioms(min(order, 6), 2, kind="classical"))
    for w in words_up_to(min(order, 6), 2):
        report.checked += 1
        if swap_legs(delta_classical(w)) != delta_classical(w):
            report.ok = False
            report.failures.append(f"cocommutativity fails at {w!r}")
    for _ in range(5):
        f = random_linform(rng, "classical", 2, min(order, 6))
        g = random_linform(rng, "classical", 2, min(order, 6))
        report.checked += 1
        if half_prec(f, g) != half_succ(g, f):
            report.ok = False
            report.failures.append("classical f prec g != g succ f")
        if convolve(f, g) != convolve(g, f):
            report.ok = False
            report.failures.append("classical convolution is not commutative")
        if prelie(f, g).table:
            report.ok = False
            report.failures.append("classical pre-Lie product is not null")
    return report


def suite_shuffle_axioms(order: int, seed: int) -> CheckReport:
    """Half-shuffle axioms and the left pre-Lie identity on random triples."""
    rng = Random(seed)
    report = CheckReport(name="shuffle-axioms", ok=True, checked=0)
    for mode in ("bar", "classical"):
        alpha = _bar_alphabet(order, 5) if mode == "bar" else 2
        for _ in range(25):
            f = random_linform(rng, mode, alpha, order)
            g = random_linform(rng, mode, alpha, order)
            h = random_linform(rng, mode, alpha, order)
            report.checked += 1
            if half_prec(half_prec(f, g), h) != half_prec(f, convolve(g, h)):
                report.ok = False
                report.failures.append(f"axiom A1 fails in {mode} mode")
            if half_prec(half_succ(f, g), h) != half_succ(f, half_prec(g, h)):
                report.ok = False
                report.failures.append(f"axiom A2 fails in {mode} mode")
            if half_succ(f, half_succ(g, h)) != half_succ(convolve(f, g), h):
                report.ok = False
                report.failures.append(f"axiom A3 fails in {mode} mode")
            lhs = prelie(f, prelie(g, h)) - prelie(prelie(f, g), h)
            rhs = prelie(g, prelie(f, h)) - prelie(prelie(g, f), h)
            if lhs != rhs:
                report.ok = False
                report.failures.append(f"pre-Lie identity fails in {mode} mode")
    return report


def suite_exp_log(order: int, seed: int) -> CheckReport:
    """Exponential inverses: group inverse, composition inverse, log round trip."""
    rng = Random(seed)
    report = CheckReport(name="exp-log", ok=True, checked=0)
    for mode in ("bar", "classical"):
        alpha = _bar_alphabet(order, 5) if mode == "bar" else 1
        e = LinForm.counit(mode, alpha, order)
        for _ in range(3):
            x = random_linform(rng, mode, alpha, order)
            report.checked += 1
            if convolve(exp_succ(-x), exp_prec(x)) != e:
                report.ok = False
                report.failures.append(f"exp_succ(-x) * exp_prec(x) != e in {mode} mode")
            big = exp_prec(x)
            y = big - e
            # composition inverse: x == y prec (sum (-1)^n y^n)
            if half_prec(y, shuffle_inverse(big)) != x:
                report.ok = False
                report.failures.append(f"composition inverse fails in {mode} mode")
            if log_shuffle(exp_shuffle(x)) != x:
                report.ok = False
                report.failures.append(f"log(exp(x)) != x in {mode} mode")
            inv = shuffle_inverse(big)
            series = e
            power = e
            sign = 1
            for _ in range(order):
                power = convolve(power, y)
                sign = -sign
                series = series + sign * power
            if inv != series:
                report.ok = False
                report.failures.append(f"inverse differs from geometric series in {mode} mode")
            if convolve(big, inv) != e:
                report.ok = False
                report.failures.append(f"F * F^-1 != e in {mode} mode")
    return report


def suite_fixed_point(order: int, seed: int) -> CheckReport:
    """The character / unit-vanishing-form bijection through exp_prec."""
    rng = Random(seed)
    report = CheckReport(name="fixed-point", ok=True, checked=0)
    alpha = _bar_alphabet(order, 5)
    e = LinForm.counit("bar", alpha, order)
    for _ in range(3):
        kappa = random_linform(rng, "bar", alpha, order, infinitesimal=True)
        phi = exp_prec(kappa)
        report.checked += 1
        if not classify(phi).is_multiplicative:
            report.ok = False
            report.failures.append("exp_prec of an infinitesimal form is not a character")
        if phi != e + half_prec(kappa, phi):
            report.ok = False
            report.failures.append("exp_prec does not solve the left fixed point")
        if solve_left_fixed_point(phi) != kappa:
            report.ok = False
            report.failures.append("fixed-point inversion does not recover the input")
        if left_fixed_point_closed_form(phi) != kappa:
            report.ok = False
            report.failures.append("closed form disagrees with the recursion")
    for _ in range(2):
        x = random_linform(rng, "bar", alpha, order)
        report.checked += 1
        if solve_left_fixed_point(exp_prec(x)) != x:
            report.ok = False
            report.failures.append("round trip fails on a general unit-vanishing form")
    # degreewise well-definedness: perturbing top-degree values leaves the
    # lower-degree part of the solution untouched
    phi = exp_prec(random_linform(rng, "bar", alpha, order))
    bumped_table = dict(phi.table)
    for key in basis_up_to("bar", order, alpha):
        if key.degree == order:
            bumped_table[key] = bumped_table.get(key, Fraction(0)) + _rand_q(rng)
    bumped = LinForm("bar", alpha, order, Fraction(1), bumped_table)
    k1 = solve_left_fixed_point(phi)
    k2 = solve_left_fixed_point(bumped)
    report.checked += 1
    if any(
        k1(key) != k2(key)
        for key in basis_up_to("bar", order - 1, alpha)
    ):
        report.ok = False
        report.failures.append("low-degree solution depends on high-degree input")
    return report


def suite_magnus(order: int, seed: int) -> CheckReport:
    """Magnus element consistency and its commutative collapse."""
    rng = Random(seed)
    report = CheckReport(name="magnus", ok=True, checked=0)
    alpha = _bar_alphabet(order, 5)
    for _ in range(3):
        kappa = random_linform(rng, "bar", alpha, order)
        report.checked += 1
        if exp_shuffle(magnus(kappa)) != exp_prec(kappa):
            report.ok = False
            report.failures.append("shuffle exp of the Magnus element != time-ordered exp")
    for _ in range(3):
        c = random_linform(rng, "classical", 1, order)
        report.checked += 1
        if magnus(c) != c:
            report.ok = False
            report.failures.append("Magnus expansion is not the identity in classical mode")
    return report


def suite_free_oracle(order: int, seed: int) -> CheckReport:
    """Fixed-point free cumulants against non-crossing partition inversion."""
    rng = Random(seed)
    report = CheckReport(name="free-oracle", ok=True, checked=0)
    for _ in range(5):
        moments = MomentSpec.univariate(_random_moment_values(rng, order))
        kappa = free_cumulants_from_moments(moments)
        report.checked += 1
        for w in words_up_to(order, 1):
            if kappa.table[w] != partitions.partition_cumulant_inversion(
                moments.table, w, "nc"
            ):
                report.ok = False
                report.failures.append(f"univariate mismatch at degree {w.degree}")
        if moments_from_free_cumulants(kappa) != moments:
            report.ok = False
            report.failures.append("free transform round trip failed")
    depth = min(order, 5)
    alphabet = Alphabet.default(2)
    for _ in range(2):
        table = {w: _rand_q(rng) for w in words_up_to(depth, 2)}
        moments = MomentSpec(alphabet, depth, table)
        kappa = free_cumulants_from_moments(moments)
        report.checked += 1
        for w in words_up_to(depth, 2):
            if kappa.table[w] != partitions.partition_cumulant_inversion(table, w, "nc"):
                report.ok = False
                report.failures.append(f"multivariate mismatch at {alphabet.format_word(w)}")
    return report


def suite_classical_oracle(order: int, seed: int) -> CheckReport:
    """Classical cumulants: fixed point vs set partitions vs series log."""
    rng = Random(seed)
    report = CheckReport(name="classical-oracle", ok=True, checked=0)
    for _ in range(5):
        values = _random_moment_values(rng, order)
        moments = MomentSpec.univariate(values)
        c = classical_cumulants_from_moments(moments)
        report.checked += 1
        for w in words_up_to(order, 1):
            if c.table[w] != partitions.partition_cumulant_inversion(
                moments.table, w, "all"
            ):
                report.ok = False
                report.failures.append(f"partition mismatch at degree {w.degree}")
        if c.sequence() != classical_cumulants_by_series(values):
            report.ok = False
            report.failures.append("series log route disagrees")
        if classical_moments_from_cumulants(c) != moments:
            report.ok = False
            report.failures.append("classical transform round trip failed")
    return report


def suite_distinguished(order: int, seed: int) -> CheckReport:
    """Catalan, semicircle, Bell and Gaussian sequences against the oracles."""
    del seed
    n = min(order + 3, 8)
    report = CheckReport(name="distinguished", ok=True, checked=0)
    ones = CumulantSpec.univariate([1] * n)
    catalan_moments = moments_from_free_cumulants(ones).sequence()
    report.checked += 1
    if list(catalan_moments) != [partitions.catalan(i) for i in range(1, n + 1)]:
        report.ok = False
        report.failures.append("free all-ones cumulants do not give Catalan moments")
    oracle = [
        partitions.partition_moment(ones.table, Word((0,) * i), "nc")
        for i in range(1, n + 1)
    ]
    report.checked += 1
    if list(catalan_moments) != oracle:
        report.ok = False
        report.failures.append("Catalan moments disagree with the partition sums")
    bells = classical_moments_from_cumulants(CumulantSpec.univariate([1] * n)).sequence()
    report.checked += 1
    if list(bells) != [partitions.bell(i) for i in range(1, n + 1)]:
        report.ok = False
        report.failures.append("classical all-ones cumulants do not give Bell moments")
    semicircle = CumulantSpec.univariate([0, 1] + [0] * (n - 2))
    semi_moments = moments_from_free_cumulants(semicircle).sequence()
    expected = [
        0 if i % 2 else partitions.catalan(i // 2) for i in range(1, n + 1)
    ]
    report.checked += 1
    if [int(v) for v in semi_moments] != expected:
        report.ok = False
        report.failures.append("semicircle moments are not aerated Catalan numbers")
    gauss = CumulantSpec.univariate([0, 1] + [0] * (n - 2))
    gauss_moments = classical_moments_from_cumulants(gauss).sequence()
    double_fact = [0 if i % 2 else _double_factorial(i - 1) for i in range(1, n + 1)]
    report.checked += 1
    if [int(v) for v in gauss_moments] != double_fact:
        report.ok = False
        report.failures.append("Gaussian moments are not (2n-1)!!")
    return report


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def suite_cluster(order: int, seed: int) -> CheckReport:
    """Mixed free cumulants vanish for block-factorizing moment tables."""
    rng = Random(seed)
    n = max(2, min(order, 6))
    report = CheckReport(name="cluster", ok=True, checked=0)
    left = MomentSpec(
        Alphabet(("b",)), n, {Word((0,) * i): _rand_q(rng) for i in range(1, n + 1)}
    )
    right = MomentSpec(
        Alphabet(("c",)), n, {Word((0,) * i): _rand_q(rng) for i in range(1, n + 1)}
    )
    joint = product_moment_spec(left, right)
    result = cluster_check(joint, ("b",), ("c",), n)
    report.checked += result.checked
    if not (result.ok and result.factorization_ok and result.max_violation == 0):
        report.ok = False
        report.failures.append("mixed cumulants do not vanish under factorization")
    return report


def suite_series(order: int, seed: int) -> CheckReport:
    """Generating-series consistency: C(z M(z)) - M(z) vanishes identically."""
    rng = Random(seed)
    report = CheckReport(name="series", ok=True, checked=0)
    for _ in range(10):
        cumulants = CumulantSpec.univariate(_random_moment_values(rng, order))
        moments = moments_from_free_cumulants(cumulants)
        residual = free_series_residual(moments.sequence(), cumulants.sequence())
        report.checked += 1
        if any(residual):
            report.ok = False
            report.failures.append("series residual is not identically zero")
    return report


SUITES = {
    "core-words": suite_core_words,
    "coassociativity": suite_coassociativity,
    "unshuffle-axioms": suite_unshuffle_axioms,
    "classical-structure": suite_classical_structure,
    "shuffle-axioms": suite_shuffle_axioms,
    "exp-log": suite_exp_log,
    "fixed-point": suite_fixed_point,
    "magnus": suite_magnus,
    "free-oracle": suite_free_oracle,
    "classical-oracle": suite_classical_oracle,
    "distinguished": suite_distinguished,
    "cluster": suite_cluster,
    "series": suite_series,
}


def run_suites(names, order: int, seed: int) -> list[CheckReport]:
    """Run the named suites in registry order and return their reports."""
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; available: {', '.join(SUITES)}")
    return [SUITES[name](order, seed) for name in names if name in SUITES]
