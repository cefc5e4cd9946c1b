"""Exact-rational shuffle/unshuffle calculus for moment-cumulant transforms.

Free cumulants arise here as the unit-vanishing solution of the left
half-shuffle fixed point ``Phi = e + kappa prec Phi`` over bar-words;
classical cumulants are the same equation in the cocommutative mode.  The
package keeps two independent routes to every answer: the fixed-point side
(coproducts, convolution forms, exponentials, the pre-Lie Magnus expansion)
and a brute-force partition side (non-crossing and full set partitions), and
ships a CLI plus verification suites that hold them against each other.
"""

from .words import (
    Alphabet,
    BarWord,
    EMPTY_WORD,
    FormalSum,
    GuardError,
    UNIT_BAR,
    Word,
    as_bar,
    bar_concat,
    bar_of_components,
    concat,
    connected_components,
    subword,
)
from .coproducts import (
    CheckReport,
    check_coassociativity,
    check_unshuffle_axioms,
    delta_bar,
    delta_classical,
    delta_classical_prec,
    delta_classical_succ,
    delta_prec_plus,
    delta_prec_plus_bar,
    delta_succ_plus,
    delta_succ_plus_bar,
    delta_word,
    swap_legs,
)
from .linforms import (
    CharacterFlags,
    LinForm,
    UndefinedUnitProductError,
    bernoulli_numbers,
    classify,
    convolve,
    exp_prec,
    exp_shuffle,
    exp_succ,
    extend_character,
    half_prec,
    half_succ,
    left_fixed_point_closed_form,
    log_shuffle,
    magnus,
    prelie,
    random_linform,
    restrict_infinitesimal,
    shuffle_inverse,
    solve_left_fixed_point,
)
from .partitions import (
    Partition,
    bell,
    catalan,
    enumerate_nc,
    enumerate_partitions,
    partition_cumulant_inversion,
    partition_moment,
)
from .transforms import (
    ClusterReport,
    CumulantSpec,
    MomentSpec,
    classical_cumulants_by_series,
    classical_cumulants_from_moments,
    classical_moments_by_series,
    classical_moments_from_cumulants,
    cluster_check,
    free_cumulants_from_moments,
    free_series_residual,
    moments_from_free_cumulants,
    multivariate_free_cumulants,
    product_moment_spec,
)

__version__ = "0.1.0"
