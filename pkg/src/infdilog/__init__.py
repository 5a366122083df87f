"""Exact-arithmetic verification of dilogarithm and cluster mutation identities.

The package computes over two exact coefficient fields (arbitrary-precision
rationals and odd prime fields), models power series at fixed finite precision,
and checks, to exact zero, the identities tying the infinitesimal dilogarithms
and the char-p 1 1/2 logarithm to periodic mutation sequences in cluster
patterns: the five-term relation, the weighted cluster sums, and the wedge-sum
vanishing behind them.
"""

from .bloch import WedgeLedger, apply_functional_pair, delta, ell, pentagon_terms, zero_test_rational
from .cluster import (
    BUILTIN_PATTERNS,
    ExchangeMatrix,
    MutationSchedule,
    Trajectory,
    YSeed,
    builtin_pattern,
    check_periodicity,
    run_schedule,
    skew_symmetrizer,
)
from .dilog import (
    li2p,
    li2p_via_lift,
    li_closed_form,
    li_direct,
    li_via_lift,
    pounds1,
)
from .fields import GF, QQ, FieldElement, FieldMismatchError, PrimeField, RationalField
from .series import TruncatedSeries, exp_t, log_circ, random_series
from .verify import CheckReport, SuiteReport, run_suite

__version__ = "0.1.0"
