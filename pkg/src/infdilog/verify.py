"""Exact pass/fail checkers for the dilogarithm, cluster, and wedge identities.

Every check asserts exact equality with zero; there are no tolerances.  Random
trials draw their randomness as a pure function of (master seed, check id,
trial index), so reports are deterministic and independent of execution order.
Samples that violate a validity filter (a failed inversion, a non-flat value)
are rejected and resampled, up to 100 attempts per requested trial; checks
that cannot gather enough valid samples report that instead of passing
vacuously.  Prime-field point spaces are enumerated exhaustively whenever
p^dimension stays within EXHAUSTIVE_LIMIT and a trial count is not forced.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from dataclasses import dataclass, field as dataclass_field

from . import bloch, cluster, dilog
from .fields import GF, QQ, Field
from .series import TruncatedSeries, random_series

__all__ = [
    "CheckReport",
    "EXHAUSTIVE_LIMIT",
    "NAMED_IDENTITIES",
    "RESAMPLE_FACTOR",
    "SuiteReport",
    "check_cluster_char0",
    "check_cluster_charp",
    "check_lemma_wedge",
    "check_li2p_lift",
    "check_mutation_involution",
    "check_named_identity",
    "check_oracle_agreement",
    "check_pentagon",
    "check_periodicity_report",
    "check_scale_weight",
    "check_theta_invariance",
    "check_vanish_constants",
    "check_welldef",
    "run_suite",
]

RESAMPLE_FACTOR = 100
EXHAUSTIVE_LIMIT = 10**6

PENTAGON_PARAMS = ((2, 3), (3, 4), (3, 5), (4, 5), (4, 6), (4, 7))

VERDICT_PASS = "pass"
VERDICT_FAIL = "fail"
VERDICT_INSUFFICIENT = "insufficient-valid-samples"
VERDICT_INCONCLUSIVE = "inconclusive"


def _derive_rng(master_seed: int, check_id: str, trial: int) -> random.Random:
    material = f"{master_seed}:{check_id}:{trial}".encode()
    digest = hashlib.sha256(material).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))


@dataclass
class CheckReport:
    """Counts and witnesses for one identity check."""

    name: str
    params: dict
    attempted: int = 0
    valid: int = 0
    rejected: int = 0
    failed: int = 0
    inconclusive: int = 0
    witnesses: list = dataclass_field(default_factory=list)
    verdict: str = VERDICT_PASS

    MAX_WITNESSES = 5

    @property
    def passed(self) -> bool:
        return self.verdict == VERDICT_PASS

    def record_failure(self, witness: dict) -> None:
        self.failed += 1
        if len(self.witnesses) < self.MAX_WITNESSES:
            self.witnesses.append(witness)

    def finish(self, min_valid: int) -> "CheckReport":
        if self.failed:
            self.verdict = VERDICT_FAIL
        elif self.inconclusive:
            self.verdict = VERDICT_INCONCLUSIVE
        elif self.valid < min_valid:
            self.verdict = VERDICT_INSUFFICIENT
        else:
            self.verdict = VERDICT_PASS
        return self

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "attempted": self.attempted,
            "valid": self.valid,
            "rejected": self.rejected,
            "failed": self.failed,
            "inconclusive": self.inconclusive,
            "witnesses": self.witnesses,
            "verdict": self.verdict,
        }


def _run_random_trials(report: CheckReport, trials: int, seed: int, evaluate) -> CheckReport:
    """Shared rejection-resampling loop.

    evaluate(rng) returns None for an invalid sample or a witness dict with a
    "value" key; a witness whose value is nonzero (key "ok" False) is a
    failure.  Samples are drawn until `trials` valid ones are seen, capped at
    RESAMPLE_FACTOR attempts per trial.
    """
    for trial in range(trials):
        rng = _derive_rng(seed, report.name, trial)
        for _ in range(RESAMPLE_FACTOR):
            report.attempted += 1
            outcome = evaluate(rng)
            if outcome is None:
                report.rejected += 1
                continue
            report.valid += 1
            if not outcome.pop("ok"):
                report.record_failure(outcome)
            break
        else:
            return report.finish(min_valid=trials)
    return report.finish(min_valid=trials)


def _resolve_pattern(pattern, pattern_name: str | None = None):
    if isinstance(pattern, str):
        matrix, schedule = cluster.builtin_pattern(pattern)
        return matrix, schedule, pattern_name or pattern
    matrix, schedule = pattern
    return matrix, schedule, pattern_name or "custom"


def _sample_flat(field: Field, precision: int, rng: random.Random, height: int) -> TruncatedSeries | None:
    s = random_series(field, precision, rng, height)
    return s if s.is_flat else None


# -- dilogarithm-level checks -------------------------------------------------


def check_oracle_agreement(m: int, w: int, trials: int = 200, height: int = 10, seed: int = 0) -> CheckReport:
    """li_direct against the displayed closed form, over random flat points."""
    dilog.validate_modulus_weight(m, w)
    if (m, w) not in dilog.CLOSED_FORM_PARAMS:
        raise ValueError(f"no closed-form oracle for (m, w) = ({m}, {w})")
    report = CheckReport(
        name=f"oracle-agreement[m={m},w={w}]",
        params={"m": m, "w": w, "trials": trials, "height": height, "seed": seed},
    )

    def evaluate(rng: random.Random):
        a = _sample_flat(QQ, m, rng, height)
        if a is None:
            return None
        direct = dilog.li_direct(m, w, a)
        closed = dilog.li_closed_form(m, w, a.coeff(0), *a.coeffs[1:])
        return {
            "ok": direct == closed,
            "inputs": {"a": str(a)},
            "value": f"direct {direct} vs closed {closed}",
        }

    return _run_random_trials(report, trials, seed, evaluate)


def check_pentagon(
    m: int | None = None,
    w: int | None = None,
    p: int | None = None,
    trials: int = 100,
    height: int = 10,
    seed: int = 0,
) -> CheckReport:
    """The five-term relation, for li_{m,w} over the rationals or li2p over GF(p).

    Pairs (a, b) are valid when a(1-a)b(1-b)(b-a) is a unit, which makes every
    pentagon argument flat.
    """
    if (p is None) == (m is None and w is None):
        raise ValueError("give either (m, w) for characteristic 0 or p for characteristic p")
    if p is None:
        dilog.validate_modulus_weight(m, w)
        field: Field = QQ
        precision = m
        name = f"pentagon[q,m={m},w={w}]"
        value_of = lambda arg: dilog.li_direct(m, w, arg)
        params = {"field": "q", "m": m, "w": w}
    else:
        field = GF(p)
        precision = 2
        name = f"pentagon[p={p}]"
        value_of = dilog.li2p
        params = {"field": "fp", "p": p}
    params.update({"trials": trials, "height": height, "seed": seed})
    report = CheckReport(name=name, params=params)

    def evaluate(rng: random.Random):
        a = random_series(field, precision, rng, height)
        b = random_series(field, precision, rng, height)
        if not (a.is_flat and b.is_flat) or a.constant_term() == b.constant_term():
            return None
        total = field.zero
        for sign, arg in bloch.pentagon_terms(a, b):
            total = total + field.element(sign) * value_of(arg)
        return {
            "ok": not total,
            "inputs": {"a": str(a), "b": str(b)},
            "value": str(total),
        }

    return _run_random_trials(report, trials, seed, evaluate)


def check_welldef(
    m: int,
    w: int,
    trials: int = 100,
    perturbations: int = 10,
    height: int = 10,
    seed: int = 0,
) -> CheckReport:
    """Lift independence of the differential formula, and its direct agreement.

    Per point: (a) li_via_lift is constant under random perturbation of the
    lift coefficients in degrees [m, w); (b) the single-term pairing on
    (1 + lift) ^ lift reproduces li_direct of the negated truncation.
    """
    dilog.validate_modulus_weight(m, w)
    report = CheckReport(
        name=f"welldef[m={m},w={w}]",
        params={"m": m, "w": w, "trials": trials, "perturbations": perturbations,
                "height": height, "seed": seed},
    )

    def evaluate(rng: random.Random):
        base = _sample_flat(QQ, m, rng, height)
        if base is None:
            return None
        lift = base.with_precision(w)
        reference = dilog.li_via_lift(m, w, lift)
        if reference != dilog.li_direct(m, w, base):
            return {"ok": False, "inputs": {"lift": str(lift)},
                    "value": f"lift {reference} vs direct {dilog.li_direct(m, w, base)}"}
        for _ in range(perturbations):
            tail = [QQ.random_element(rng, height) for _ in range(w - m)]
            perturbed = TruncatedSeries.from_coeffs(QQ, list(base.coeffs) + tail)
            got = dilog.li_via_lift(m, w, perturbed)
            if got != reference:
                return {"ok": False, "inputs": {"lift": str(perturbed)},
                        "value": f"{got} != {reference}"}
        # (b): the pairing on (1 + beta) ^ beta equals li_direct(-beta mod t^m)
        beta = -lift
        pairing = bloch.WedgeLedger([(1, 1 + beta, beta)])
        total = QQ.zero
        for i in range(1, w - m + 1):
            total = total + QQ.element(i) * bloch.apply_functional_pair(w - i, i, pairing)
        if total != reference:
            return {"ok": False, "inputs": {"beta": str(beta)},
                    "value": f"pairing {total} vs {reference}"}
        return {"ok": True, "inputs": {"lift": str(lift)}, "value": "0"}

    return _run_random_trials(report, trials, seed, evaluate)


def check_scale_weight(m: int, w: int, trials: int = 100, height: int = 10, seed: int = 0) -> CheckReport:
    """Homogeneity under the scaling action: li(lam x a) = lam^w li(a)."""
    dilog.validate_modulus_weight(m, w)
    report = CheckReport(
        name=f"scale-weight[m={m},w={w}]",
        params={"m": m, "w": w, "trials": trials, "height": height, "seed": seed},
    )

    def evaluate(rng: random.Random):
        a = _sample_flat(QQ, m, rng, height)
        lam = QQ.random_element(rng, height)
        if a is None or not lam:
            return None
        lhs = dilog.li_direct(m, w, a.scale(lam))
        rhs = lam ** w * dilog.li_direct(m, w, a)
        return {"ok": lhs == rhs, "inputs": {"a": str(a), "lam": str(lam)},
                "value": f"{lhs} vs {rhs}"}

    return _run_random_trials(report, trials, seed, evaluate)


def check_vanish_constants(
    m: int | None = None,
    w: int | None = None,
    p: int | None = None,
    trials: int = 100,
    height: int = 10,
    seed: int = 0,
) -> CheckReport:
    """Dilogarithms vanish on constant flat inputs, in both characteristics."""
    if p is not None:
        field = GF(p)
        report = CheckReport(name=f"vanish-constants[p={p}]", params={"p": p})
        for s in range(p):
            report.attempted += 1
            if s in (0, 1):
                report.rejected += 1
                continue
            report.valid += 1
            value = dilog.li2p(TruncatedSeries.from_coeffs(field, [s, 0]))
            if value:
                report.record_failure({"inputs": {"s": str(s)}, "value": str(value)})
        return report.finish(min_valid=1)

    dilog.validate_modulus_weight(m, w)
    report = CheckReport(
        name=f"vanish-constants[m={m},w={w}]",
        params={"m": m, "w": w, "trials": trials, "height": height, "seed": seed},
    )

    def evaluate(rng: random.Random):
        c = QQ.random_element(rng, height)
        if not c or c == QQ.one:
            return None
        value = dilog.li_direct(m, w, TruncatedSeries.constant(QQ, c, m))
        return {"ok": not value, "inputs": {"c": str(c)}, "value": str(value)}

    return _run_random_trials(report, trials, seed, evaluate)


def check_li2p_lift(p: int, perturbations: int = 3, seed: int = 0) -> CheckReport:
    """The char-p differential expression equals li2p, exhaustively over duals.

    Each dual number is also lifted with random tail coefficients to witness
    lift independence of the expression.
    """
    field = GF(p)
    report = CheckReport(
        name=f"li2p-lift[p={p}]",
        params={"p": p, "perturbations": perturbations, "seed": seed, "mode": "exhaustive"},
    )
    for index, (s, a) in enumerate(itertools.product(range(p), repeat=2)):
        report.attempted += 1
        if s in (0, 1):
            report.rejected += 1
            continue
        report.valid += 1
        dual = TruncatedSeries.from_coeffs(field, [s, a])
        expected = dilog.li2p(dual)
        rng = _derive_rng(seed, report.name, index)
        lifts = [dual.with_precision(p)]
        for _ in range(perturbations):
            tail = [rng.randrange(p) for _ in range(p - 2)]
            lifts.append(TruncatedSeries.from_coeffs(field, [s, a] + tail))
        for lift in lifts:
            got = dilog.li2p_via_lift(lift)
            if got != expected:
                report.record_failure(
                    {"inputs": {"lift": str(lift)}, "value": f"{got} != {expected}"}
                )
                break
    return report.finish(min_valid=1)


# -- cluster identity checks --------------------------------------------------


def _require_matrix_periodic(matrix, schedule, name: str) -> None:
    mat = matrix
    for r in schedule.directions:
        mat = mat.mutate(r)
    if mat != matrix.permuted(schedule.nu):
        raise ValueError(f"pattern {name} is not nu-periodic at the matrix level")


def _trajectory_flat_values(matrix, schedule, point):
    """Recorded values whose negatives must be flat; None when the point is invalid."""
    try:
        trajectory = cluster.run_schedule(matrix, point, schedule)
    except cluster.InvalidPointError:
        return None
    values = []
    for step in trajectory.steps:
        value = -step.value
        if not value.is_flat:
            return None
        values.append((step.direction, value))
    return values


def check_cluster_char0(
    pattern,
    m: int,
    w: int,
    trials: int = 100,
    height: int = 10,
    seed: int = 0,
    theta: tuple[int, ...] | None = None,
    pattern_name: str | None = None,
) -> CheckReport:
    """The weighted cluster sum of li_{m,w} along a periodic mutation sequence."""
    dilog.validate_modulus_weight(m, w)
    matrix, schedule, name = _resolve_pattern(pattern, pattern_name)
    _require_matrix_periodic(matrix, schedule, name)
    weights = theta if theta is not None else schedule.resolved_theta(matrix)
    report = CheckReport(
        name=f"cluster0[{name},m={m},w={w}]",
        params={"pattern": name, "m": m, "w": w, "theta": list(weights),
                "trials": trials, "height": height, "seed": seed},
    )

    def evaluate(rng: random.Random):
        point = tuple(random_series(QQ, m, rng, height) for _ in range(matrix.n))
        values = _trajectory_flat_values(matrix, schedule, point)
        if values is None:
            return None
        total = QQ.zero
        for direction, value in values:
            total = total + QQ.element(weights[direction]) * dilog.li_direct(m, w, value)
        return {
            "ok": not total,
            "inputs": {f"alpha_{i + 1}": str(s) for i, s in enumerate(point)},
            "value": str(total),
        }

    return _run_random_trials(report, trials, seed, evaluate)


def _charp_cluster_point(field, weights, values):
    """Both phrasings of the char-p cluster sum; they must agree and vanish."""
    total_li = field.zero
    total_pounds = field.zero
    p = field.characteristic
    for direction, beta in values:
        weight = field.element(weights[direction])
        total_li = total_li + weight * dilog.li2p(beta)
        s, alpha = beta.coeff(0), beta.coeff(1)
        bbar = alpha / (s * (1 - s))
        total_pounds = total_pounds + weight * bbar ** p * dilog.pounds1(s)
    return total_li, total_pounds


def check_cluster_charp(
    pattern,
    p: int,
    trials: int | None = None,
    seed: int = 0,
    pattern_name: str | None = None,
) -> CheckReport:
    """The char-p cluster sum over dual numbers, in both phrasings.

    Enumerates GF(p)^(2n) exhaustively when that stays within
    EXHAUSTIVE_LIMIT and no trial count is forced; otherwise samples.
    """
    field = GF(p)
    matrix, schedule, name = _resolve_pattern(pattern, pattern_name)
    _require_matrix_periodic(matrix, schedule, name)
    weights = schedule.resolved_theta(matrix)
    exhaustive = trials is None and p ** (2 * matrix.n) <= EXHAUSTIVE_LIMIT
    mode = "exhaustive" if exhaustive else f"random[{trials}]"
    report = CheckReport(
        name=f"clusterp[{name},p={p},{mode}]",
        params={"pattern": name, "p": p, "theta": list(weights), "mode": mode, "seed": seed},
    )

    def judge(point):
        values = _trajectory_flat_values(matrix, schedule, point)
        if values is None:
            return None
        total_li, total_pounds = _charp_cluster_point(field, weights, values)
        return {
            "ok": not total_li and total_li == total_pounds,
            "inputs": {f"alpha_{i + 1}": str(s) for i, s in enumerate(point)},
            "value": f"li2p sum {total_li}, pounds sum {total_pounds}",
        }

    if exhaustive:
        for coords in itertools.product(range(p), repeat=2 * matrix.n):
            report.attempted += 1
            point = tuple(
                TruncatedSeries.from_coeffs(field, coords[2 * i: 2 * i + 2])
                for i in range(matrix.n)
            )
            outcome = judge(point)
            if outcome is None:
                report.rejected += 1
                continue
            report.valid += 1
            if not outcome.pop("ok"):
                report.record_failure(outcome)
        return report.finish(min_valid=0)

    def evaluate(rng: random.Random):
        point = tuple(random_series(field, 2, rng) for _ in range(matrix.n))
        return judge(point)

    return _run_random_trials(report, trials, seed, evaluate)


# -- named char-p identities --------------------------------------------------


def _four_term(field, coords):
    p = field.characteristic
    r_, s_ = coords
    if r_ in (0, 1) or s_ in (0, 1) or r_ == s_:
        return None
    r, s = field.element(r_), field.element(s_)
    value = (
        dilog.pounds1(r)
        - dilog.pounds1(s)
        + r ** p * dilog.pounds1(s / r)
        + (s - 1) ** p * dilog.pounds1((1 - r) / (1 - s))
    )
    return {"ok": not value, "inputs": {"r": str(r_), "s": str(s_)}, "value": str(value)}


def _elementary(field, coords):
    s_, a_ = coords
    if s_ in (0, 1):
        return None
    z = TruncatedSeries.from_coeffs(field, [s_, a_])
    value = dilog.li2p(1 - z) + dilog.li2p(z)
    return {"ok": not value, "inputs": {"z": str(z)}, "value": str(value)}


def _involution(field, coords):
    s_, a_ = coords
    if s_ in (0, 1):
        return None
    y = TruncatedSeries.from_coeffs(field, [s_, a_])
    value = dilog.li2p(y.invert()) + dilog.li2p(y)
    return {"ok": not value, "inputs": {"y": str(y)}, "value": str(value)}


def _a2_five_term_charp(field, coords):
    s1, a1, s2, a2 = coords
    if s1 == 0 or s2 == 0:
        return None
    y1 = TruncatedSeries.from_coeffs(field, [s1, a1])
    y2 = TruncatedSeries.from_coeffs(field, [s2, a2])
    args = [
        y1,
        y2 * (1 - y1),
        y1.invert() * (1 - y2 + y1 * y2),
        y1.invert() * (1 - y2.invert()),
        y2.invert(),
    ]
    if not all(arg.is_flat for arg in args):
        return None
    total = field.zero
    for arg in args:
        total = total + dilog.li2p(arg)
    return {"ok": not total, "inputs": {"y1": str(y1), "y2": str(y2)}, "value": str(total)}


def _a2_pentagon_substitution(field, coords):
    r_, s_ = coords
    if r_ in (0, 1) or s_ in (0, 1) or r_ == s_:
        return None
    r, s = field.element(r_), field.element(s_)
    x = TruncatedSeries.from_coeffs(field, [r, r * (1 - r)])
    y = TruncatedSeries.from_coeffs(field, [s, s * (1 - s)])
    total = field.zero
    for sign, arg in bloch.pentagon_terms(x, y):
        total = total + field.element(sign) * dilog.li2p(arg)
    return {"ok": not total, "inputs": {"r": str(r_), "s": str(s_)}, "value": str(total)}


NAMED_IDENTITIES = {
    "four_term": (_four_term, 2),
    "elementary": (_elementary, 2),
    "involution": (_involution, 2),
    "a2_five_term_charp": (_a2_five_term_charp, 4),
    "a2_pentagon_substitution": (_a2_pentagon_substitution, 2),
}


def check_named_identity(name: str, p: int, trials: int | None = None, seed: int = 0) -> CheckReport:
    """One of the named char-p functional equations, exhaustive when affordable."""
    if name not in NAMED_IDENTITIES:
        known = ", ".join(sorted(NAMED_IDENTITIES))
        raise ValueError(f"unknown identity {name!r}; known: {known}")
    judge, dimension = NAMED_IDENTITIES[name]
    field = GF(p)
    exhaustive = trials is None and p ** dimension <= EXHAUSTIVE_LIMIT
    mode = "exhaustive" if exhaustive else f"random[{trials}]"
    report = CheckReport(
        name=f"named[{name},p={p},{mode}]",
        params={"identity": name, "p": p, "mode": mode, "seed": seed},
    )

    if exhaustive:
        for coords in itertools.product(range(p), repeat=dimension):
            report.attempted += 1
            outcome = judge(field, coords)
            if outcome is None:
                report.rejected += 1
                continue
            report.valid += 1
            if not outcome.pop("ok"):
                report.record_failure(outcome)
        return report.finish(min_valid=0)

    def evaluate(rng: random.Random):
        coords = tuple(rng.randrange(p) for _ in range(dimension))
        return judge(field, coords)

    return _run_random_trials(report, trials, seed, evaluate)


# -- wedge lemma ---------------------------------------------------------------


def check_lemma_wedge(
    pattern,
    field: Field = QQ,
    precision: int = 6,
    trials: int = 25,
    height: int = 10,
    seed: int = 0,
    factor_bound: int = 10**6,
    exhaustive_constants: bool = False,
    pattern_name: str | None = None,
) -> CheckReport:
    """The weighted wedge sum along a trajectory rationally zero-tests to zero.

    Also evaluates every functional pair (ell_a ^ ell_b) with a + b < N on the
    ledger.  Over a prime field, exhaustive_constants enumerates all constant
    terms and randomizes the higher coefficients.
    """
    matrix, schedule, name = _resolve_pattern(pattern, pattern_name)
    _require_matrix_periodic(matrix, schedule, name)
    weights = schedule.resolved_theta(matrix)
    field_tag = "q" if field.characteristic == 0 else f"fp{field.characteristic}"
    mode = "exhaustive-constants" if exhaustive_constants else f"random[{trials}]"
    report = CheckReport(
        name=f"lemma[{name},{field_tag},N={precision},{mode}]",
        params={"pattern": name, "field": field_tag, "precision": precision,
                "trials": trials, "height": height, "seed": seed,
                "factor_bound": factor_bound, "mode": mode},
    )

    def judge(point):
        try:
            trajectory = cluster.run_schedule(matrix, point, schedule)
        except cluster.InvalidPointError:
            return None
        entries = []
        for step in trajectory.steps:
            value = step.value
            one_plus = 1 + value
            if not (value.is_unit and one_plus.is_unit):
                return None
            entries.append((weights[step.direction], value, one_plus))
        ledger = bloch.WedgeLedger(entries)
        result = bloch.zero_test_rational(ledger, factor_bound)
        inputs = {f"alpha_{i + 1}": str(s) for i, s in enumerate(point)}
        if result.verdict == "inconclusive":
            return {"ok": True, "inconclusive": True, "inputs": inputs, "value": result.detail}
        if not result.is_zero:
            return {"ok": False, "inputs": inputs,
                    "value": f"{result.failing_component}: {result.detail}"}
        for a in range(1, precision):
            for b in range(a + 1, precision):
                if a + b > precision - 1:
                    continue
                pair = bloch.apply_functional_pair(a, b, ledger)
                if pair:
                    return {"ok": False, "inputs": inputs,
                            "value": f"(ell_{a} ^ ell_{b}) = {pair}"}
        return {"ok": True, "inputs": inputs, "value": "0"}

    def tally(outcome):
        report.valid += 1
        if outcome.pop("inconclusive", False):
            report.inconclusive += 1
        elif not outcome.pop("ok"):
            report.record_failure(outcome)

    if exhaustive_constants:
        if field.characteristic == 0:
            raise ValueError("exhaustive constants require a prime field")
        p = field.characteristic
        for index, constants in enumerate(itertools.product(range(p), repeat=matrix.n)):
            report.attempted += 1
            rng = _derive_rng(seed, report.name, index)
            point = tuple(
                TruncatedSeries.from_coeffs(
                    field, [c] + [rng.randrange(p) for _ in range(precision - 1)]
                )
                for c in constants
            )
            outcome = judge(point)
            if outcome is None:
                report.rejected += 1
                continue
            tally(outcome)
        return report.finish(min_valid=0)

    for trial in range(trials):
        rng = _derive_rng(seed, report.name, trial)
        for _ in range(RESAMPLE_FACTOR):
            report.attempted += 1
            point = tuple(
                random_series(field, precision, rng, height) for _ in range(matrix.n)
            )
            outcome = judge(point)
            if outcome is None:
                report.rejected += 1
                continue
            tally(outcome)
            break
        else:
            return report.finish(min_valid=trials)
    return report.finish(min_valid=trials)


# -- structural cluster checks --------------------------------------------------


def check_theta_invariance(pattern, pattern_name: str | None = None) -> CheckReport:
    """The skew-symmetrizer is unchanged by every mutation along the schedule."""
    matrix, schedule, name = _resolve_pattern(pattern, pattern_name)
    theta = cluster.skew_symmetrizer(matrix)
    report = CheckReport(
        name=f"theta-invariance[{name}]",
        params={"pattern": name, "theta": list(theta)},
    )
    mat = matrix
    for step, r in enumerate(schedule.directions):
        mat = mat.mutate(r)
        report.attempted += 1
        report.valid += 1
        got = cluster.skew_symmetrizer(mat)
        if got != theta:
            report.record_failure(
                {"inputs": {"step": str(step)}, "value": f"theta became {got}"}
            )
    return report.finish(min_valid=1)


def check_mutation_involution(
    pattern,
    trials: int = 1000,
    height: int = 10,
    seed: int = 0,
    precision: int = 2,
    pattern_name: str | None = None,
) -> CheckReport:
    """Mutating twice in the same direction restores the seed exactly."""
    matrix, schedule, name = _resolve_pattern(pattern, pattern_name)
    report = CheckReport(
        name=f"involution[{name}]",
        params={"pattern": name, "trials": trials, "height": height,
                "seed": seed, "precision": precision},
    )

    def evaluate(rng: random.Random):
        point = tuple(random_series(QQ, precision, rng, height) for _ in range(matrix.n))
        direction = rng.randrange(matrix.n)
        seed0 = cluster.YSeed(matrix, point)
        try:
            back = seed0.mutate(direction).mutate(direction)
        except cluster.InvalidPointError:
            return None
        return {
            "ok": back.ys == seed0.ys and back.matrix == seed0.matrix,
            "inputs": {"direction": str(direction + 1),
                       **{f"y_{i + 1}": str(s) for i, s in enumerate(point)}},
            "value": "seed not restored",
        }

    return _run_random_trials(report, trials, seed, evaluate)


def check_periodicity_report(
    pattern,
    trials: int = 50,
    height: int = 10,
    seed: int = 0,
    field: Field = QQ,
    precision: int = 2,
    pattern_name: str | None = None,
) -> CheckReport:
    """Wrap the periodicity certificate as a report for suite aggregation."""
    matrix, schedule, name = _resolve_pattern(pattern, pattern_name)
    verdict = cluster.check_periodicity(
        matrix, schedule, field=field, trials=trials, height_bound=height,
        seed=seed, precision=precision,
    )
    report = CheckReport(
        name=f"periodicity[{name}]",
        params={"pattern": name, "trials": trials, "height": height, "seed": seed,
                "nu": list(schedule.nu)},
        attempted=verdict.points_checked,
        valid=verdict.points_checked,
    )
    if not verdict.periodic:
        report.record_failure({"inputs": {}, "value": verdict.failure or "not periodic"})
    return report.finish(min_valid=0)


# -- suite ----------------------------------------------------------------------


@dataclass
class SuiteReport:
    config: dict
    checks: list

    @property
    def all_pass(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "checks": [check.to_dict() for check in self.checks],
            "summary": {
                "total": len(self.checks),
                "passed": sum(1 for c in self.checks if c.passed),
                "all_pass": self.all_pass,
            },
        }

    def to_json_bytes(self) -> bytes:
        return (json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n").encode()

    def to_text(self) -> str:
        lines = []
        for check in self.checks:
            status = "PASS" if check.passed else check.verdict.upper()
            lines.append(
                f"[{status}] {check.name}: valid={check.valid}"
                f" rejected={check.rejected} failed={check.failed}"
                + (f" inconclusive={check.inconclusive}" if check.inconclusive else "")
            )
            for witness in check.witnesses:
                lines.append(f"    witness: {witness}")
        passed = sum(1 for c in self.checks if c.passed)
        lines.append(f"{passed}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def _battery(seed: int) -> list:
    """The full acceptance battery, in a fixed order."""
    entries: list[tuple] = []
    for m, w in dilog.CLOSED_FORM_PARAMS:
        entries.append((check_oracle_agreement, {"m": m, "w": w, "trials": 200, "seed": seed}))
    for m, w in PENTAGON_PARAMS:
        entries.append((check_pentagon, {"m": m, "w": w, "trials": 100, "seed": seed}))
    entries.append((check_pentagon, {"p": 5, "trials": 100, "seed": seed}))
    entries.append((check_cluster_char0, {"pattern": "A1", "m": 2, "w": 3, "trials": 100, "seed": seed}))
    for pattern in ("A2", "B2"):
        for m, w in ((2, 3), (3, 4), (3, 5)):
            entries.append((check_cluster_char0,
                            {"pattern": pattern, "m": m, "w": w, "trials": 100, "seed": seed}))
    for pattern in ("A2", "B2"):
        for p in (3, 5):
            entries.append((check_cluster_charp, {"pattern": pattern, "p": p, "seed": seed}))
        for p in (7, 11, 13):
            entries.append((check_cluster_charp,
                            {"pattern": pattern, "p": p, "trials": 500, "seed": seed}))
    for identity in ("four_term", "elementary", "involution", "a2_pentagon_substitution"):
        for p in (3, 5, 7, 11, 13):
            entries.append((check_named_identity, {"name": identity, "p": p, "seed": seed}))
    for p in (3, 5):
        entries.append((check_named_identity, {"name": "a2_five_term_charp", "p": p, "seed": seed}))
    for pattern in ("A2", "B2"):
        entries.append((check_lemma_wedge,
                        {"pattern": pattern, "field": QQ, "precision": 6, "trials": 25, "seed": seed}))
        entries.append((check_lemma_wedge,
                        {"pattern": pattern, "field": GF(7), "precision": 6,
                         "exhaustive_constants": True, "seed": seed}))
    for m, w in PENTAGON_PARAMS:
        entries.append((check_welldef, {"m": m, "w": w, "trials": 100, "perturbations": 10, "seed": seed}))
    for p in (3, 5, 7):
        entries.append((check_li2p_lift, {"p": p, "seed": seed}))
    for m, w in PENTAGON_PARAMS:
        entries.append((check_scale_weight, {"m": m, "w": w, "trials": 100, "seed": seed}))
    for m, w in PENTAGON_PARAMS:
        entries.append((check_vanish_constants, {"m": m, "w": w, "trials": 100, "seed": seed}))
    for p in (3, 5, 7, 11, 13):
        entries.append((check_vanish_constants, {"p": p, "seed": seed}))
    for pattern in ("A1", "A2", "B2"):
        entries.append((check_theta_invariance, {"pattern": pattern}))
        entries.append((check_mutation_involution, {"pattern": pattern, "trials": 350, "seed": seed}))
        entries.append((check_periodicity_report, {"pattern": pattern, "trials": 50, "seed": seed}))
    return entries


def run_suite(seed: int = 0, select: str | None = None) -> SuiteReport:
    """Run the acceptance battery; `select` filters checks by descriptor substring."""
    checks = []
    for fn, kwargs in _battery(seed):
        descriptor = fn.__name__ + ":" + ",".join(f"{k}={v!r}" for k, v in kwargs.items())
        if select is not None and select not in descriptor:
            continue
        checks.append(fn(**kwargs))
    config = {"seed": seed, "select": select or "all"}
    return SuiteReport(config=config, checks=checks)
