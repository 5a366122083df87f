"""Acceptance battery: every criterion is exact (no tolerances), desk scale.

One test per criterion; each prints a PASS line when its assertions hold, so
`pytest -v` (or -s) reads as the acceptance report.
"""

import itertools
import time
from fractions import Fraction

from infdilog import cli, cluster, dilog, verify
from infdilog.bloch import pentagon_terms
from infdilog.fields import GF, QQ
from infdilog.series import TruncatedSeries

SIX_PARAMS = ((2, 3), (3, 4), (3, 5), (4, 5), (4, 6), (4, 7))


def _announce(number, slug):
    print(f"ACCEPTANCE {number} ({slug}): PASS")


def test_criterion_01_closed_form_oracle_agreement():
    start = time.monotonic()
    for m, w in dilog.CLOSED_FORM_PARAMS:
        report = verify.check_oracle_agreement(m, w, trials=200, height=10, seed=0)
        assert report.passed and report.valid >= 200, report.name
    elapsed = time.monotonic() - start
    assert elapsed < 10.0, f"oracle agreement took {elapsed:.1f}s"
    _announce(1, "closed-form oracle agreement, 3 x 200 points")


def test_criterion_02_pentagon_suite():
    for m, w in SIX_PARAMS:
        report = verify.check_pentagon(m=m, w=w, trials=100, height=10, seed=0)
        assert report.passed and report.valid >= 100, report.name
    # hand witness a = 2 + t, b = 3 + t at (m, w) = (2, 3)
    a = TruncatedSeries.from_coeffs(QQ, [2, 1])
    b = TruncatedSeries.from_coeffs(QQ, [3, 1])
    values = [dilog.li_direct(2, 3, arg).value for _, arg in pentagon_terms(a, b)]
    assert values == [Fraction(-1, 8), Fraction(-1, 72), Fraction(1, 72),
                      Fraction(-2, 9), Fraction(-1, 8)]
    total = QQ.zero
    for (sign, arg) in pentagon_terms(a, b):
        total = total + sign * dilog.li_direct(2, 3, arg)
    assert total == QQ.zero
    _announce(2, "pentagon, 6 parameter pairs x 100 points + hand witness")


def test_criterion_03_cluster_sums_char0():
    for pattern, theta in (("A2", (1, 1)), ("B2", (1, 2))):
        for m, w in ((2, 3), (3, 4), (3, 5)):
            report = verify.check_cluster_char0(pattern, m, w, trials=100, seed=0,
                                                theta=theta)
            assert report.passed and report.valid >= 100, report.name
    rank1 = verify.check_cluster_char0("A1", 2, 3, trials=100, seed=0)
    assert rank1.passed and rank1.valid >= 100
    _announce(3, "cluster sums over QQ: A2/B2 for m in {2,3}, rank-1 involution")


def test_criterion_04_cluster_sums_charp():
    for pattern in ("A2", "B2"):
        for p in (3, 5):
            report = verify.check_cluster_charp(pattern, p, seed=0)
            assert report.passed, report.name
            assert report.attempted == p ** 4  # exhaustive enumeration
            if p == 5:
                assert report.valid > 0
        for p in (7, 11, 13):
            report = verify.check_cluster_charp(pattern, p, trials=500, seed=0)
            assert report.passed and report.valid >= 500, report.name
    _announce(4, "char-p cluster sums: exhaustive p in {3,5}, 500 points p in {7,11,13}")


def test_criterion_05_four_term_relation():
    for p in (3, 5, 7, 11, 13):
        report = verify.check_named_identity("four_term", p, seed=0)
        assert report.passed, report.name
        assert report.attempted == p ** 2
    # hand trace p = 5, (r, s) = (2, 3): parts 4, 3, 2*4, 2*3 with signs
    f5 = GF(5)
    r, s = f5.element(2), f5.element(3)
    total = (dilog.pounds1(r) - dilog.pounds1(s)
             + r ** 5 * dilog.pounds1(s / r)
             + (s - 1) ** 5 * dilog.pounds1((1 - r) / (1 - s)))
    assert total == f5.zero
    _announce(5, "4-term relation exhaustive for p <= 13 + hand trace")


def test_criterion_06_well_definedness():
    for m, w in SIX_PARAMS:
        report = verify.check_welldef(m, w, trials=100, perturbations=10, seed=0)
        assert report.passed and report.valid >= 100, report.name
    low = dilog.li_via_lift(2, 3, TruncatedSeries.from_coeffs(QQ, [2, 1, 0]))
    high = dilog.li_via_lift(2, 3, TruncatedSeries.from_coeffs(QQ, [2, 1, 7]))
    assert low == high == QQ.element(Fraction(-1, 8))
    _announce(6, "lift independence, 6 parameter pairs x 100 points x 10 lifts")


def test_criterion_07_charp_lift_consistency():
    for p in (3, 5, 7):
        report = verify.check_li2p_lift(p, seed=0)
        assert report.passed, report.name
        assert report.attempted == p ** 2
    _announce(7, "char-p differential expression equals li2p, exhaustive p in {3,5,7}")


def test_criterion_08_structural_invariants():
    for m, w in SIX_PARAMS:
        assert verify.check_scale_weight(m, w, trials=100, seed=0).passed
        assert verify.check_vanish_constants(m=m, w=w, trials=100, seed=0).passed
    for p in (3, 5, 7, 11, 13):
        assert verify.check_named_identity("elementary", p, seed=0).passed
        assert verify.check_vanish_constants(p=p).passed
    for pattern in ("A1", "A2", "B2"):
        assert verify.check_theta_invariance(pattern).passed
        involution = verify.check_mutation_involution(pattern, trials=350, seed=0)
        assert involution.passed and involution.valid >= 350
    _announce(8, "scaling weight, constants vanish, elementary relation,"
                 " involution, theta invariance")


def test_criterion_09_lemma_wedge_vanishing():
    for pattern in ("A2", "B2"):
        rational = verify.check_lemma_wedge(pattern, field=QQ, precision=6,
                                            trials=25, height=10, seed=0)
        assert rational.passed and rational.valid >= 25, rational.name
        assert rational.inconclusive == 0
        modular = verify.check_lemma_wedge(pattern, field=GF(7), precision=6,
                                           exhaustive_constants=True, seed=0)
        assert modular.passed and modular.valid > 0, modular.name
        assert modular.inconclusive == 0
    _announce(9, "wedge sums zero-test to zero: A2/B2 over QQ and GF(7), N=6")


def test_criterion_10_periodicity_certificates():
    a2_matrix, a2_schedule = cluster.builtin_pattern("A2")
    assert a2_schedule.nu == (1, 0)  # closing permutation is the transposition
    assert len(a2_schedule.directions) == 5
    verdict = cluster.check_periodicity(a2_matrix, a2_schedule, trials=50, seed=0)
    assert verdict.periodic and verdict.matrix_ok and verdict.points_checked >= 50

    b2_matrix, b2_schedule = cluster.builtin_pattern("B2")
    assert len(b2_schedule.directions) == 6
    verdict = cluster.check_periodicity(b2_matrix, b2_schedule, trials=50, seed=0)
    assert verdict.periodic and verdict.matrix_ok and verdict.points_checked >= 50
    _announce(10, "periodicity: A2 (P=5, nu = swap) and B2 (P=6), 50-point agreement")


def test_criterion_11_suite_determinism_and_wallclock(tmp_path):
    first = tmp_path / "suite1.json"
    second = tmp_path / "suite2.json"
    for out in (first, second):
        start = time.monotonic()
        code = cli.main(["suite", "--seed", "0", "--format", "json", "--out", str(out)])
        elapsed = time.monotonic() - start
        assert code == 0
        assert elapsed < 300.0, f"suite took {elapsed:.0f}s"
    assert first.read_bytes() == second.read_bytes()
    _announce(11, "suite --seed 0 twice: byte-identical reports, wall-clock in budget")
