import itertools
import random
from fractions import Fraction

import pytest

from infdilog.bloch import pentagon_terms
from infdilog.dilog import (
    CLOSED_FORM_PARAMS,
    li2p,
    li2p_via_lift,
    li_closed_form,
    li_direct,
    li_via_lift,
    pounds1,
)
from infdilog.fields import GF, QQ
from infdilog.series import NotFlatError, PrecisionError, TruncatedSeries, random_series

ALL_PARAMS = ((2, 3), (3, 4), (3, 5), (4, 5), (4, 6), (4, 7))


def q_series(*coeffs, precision=None):
    return TruncatedSeries.from_coeffs(QQ, [Fraction(c) for c in coeffs], precision)


def qq(x):
    return QQ.element(Fraction(x))


def test_li_direct_hand_values():
    assert li_direct(2, 3, q_series(2, 1)) == qq(Fraction(-1, 8))
    assert li_direct(2, 3, q_series(Fraction(3, 2), Fraction(-1, 4))) == qq(Fraction(1, 72))
    assert li_direct(3, 4, q_series(5, 0, 3)) == QQ.zero  # u1 = 0 kills every monomial
    for m, w in ALL_PARAMS:
        assert li_direct(m, w, TruncatedSeries.constant(QQ, qq(7), m)) == QQ.zero


def test_li_closed_form_hand_values():
    assert li_closed_form(2, 3, qq(2), 1) == qq(Fraction(-1, 8))
    assert li_closed_form(2, 3, qq(Fraction(3, 4)), Fraction(1, 4)) == qq(Fraction(-2, 9))
    assert li_closed_form(3, 4, qq(5), 0, 3) == QQ.zero
    with pytest.raises(NotFlatError):
        li_closed_form(2, 3, qq(1), 1)
    with pytest.raises(ValueError):
        li_closed_form(4, 5, qq(2), 1)


def test_li_direct_validation():
    with pytest.raises(ValueError):
        li_direct(2, 4, q_series(2, 1))  # w < 2m fails
    with pytest.raises(ValueError):
        li_direct(1, 2, q_series(2, 1))
    with pytest.raises(NotFlatError):
        li_direct(2, 3, q_series(1, 1))
    with pytest.raises(ValueError):
        li_direct(2, 3, TruncatedSeries.from_coeffs(GF(5), [2, 1]))
    with pytest.raises(PrecisionError):
        li_direct(3, 4, q_series(2))


def test_oracle_agreement_200_points_each():
    rng = random.Random(2024)
    for m, w in CLOSED_FORM_PARAMS:
        count = 0
        while count < 200:
            a = random_series(QQ, m, rng)
            if not a.is_flat:
                continue
            direct = li_direct(m, w, a)
            closed = li_closed_form(m, w, a.coeff(0), *a.coeffs[1:])
            assert direct == closed, (m, w, str(a))
            count += 1


def test_li_direct_reads_argument_mod_tm():
    base = q_series(2, 5, 7)
    padded = q_series(2, 5, 7, 9, 11)
    for w in (4, 5):
        assert li_direct(3, w, base) == li_direct(3, w, padded)


def test_li_via_lift_hand_values():
    assert li_via_lift(2, 3, q_series(2, 1, 0)) == qq(Fraction(-1, 8))
    assert li_via_lift(2, 3, q_series(2, 1, 7)) == qq(Fraction(-1, 8))
    assert li_via_lift(2, 3, q_series(5, 0, 0)) == QQ.zero
    with pytest.raises(PrecisionError):
        li_via_lift(2, 3, q_series(2, 1))


def test_lift_independence_all_params():
    rng = random.Random(77)
    for m, w in ALL_PARAMS:
        for _ in range(12):
            base = random_series(QQ, m, rng)
            if not base.is_flat:
                continue
            reference = li_via_lift(m, w, base.with_precision(w))
            assert reference == li_direct(m, w, base)
            for _ in range(10):
                tail = [QQ.random_element(rng) for _ in range(w - m)]
                lift = TruncatedSeries.from_coeffs(QQ, list(base.coeffs) + tail)
                assert li_via_lift(m, w, lift) == reference


def test_pentagon_hand_witness():
    a, b = q_series(2, 1), q_series(3, 1)
    values = [li_direct(2, 3, arg) for _, arg in pentagon_terms(a, b)]
    expected = [Fraction(-1, 8), Fraction(-1, 72), Fraction(1, 72),
                Fraction(-2, 9), Fraction(-1, 8)]
    assert values == [qq(e) for e in expected]
    total = QQ.zero
    for (sign, _), value in zip(pentagon_terms(a, b), values):
        total = total + sign * value
    assert total == QQ.zero


def test_pentagon_randomized():
    rng = random.Random(6)
    for m, w in ALL_PARAMS:
        hits = 0
        while hits < 20:
            a = random_series(QQ, m, rng)
            b = random_series(QQ, m, rng)
            if not (a.is_flat and b.is_flat) or a.constant_term() == b.constant_term():
                continue
            total = QQ.zero
            for sign, arg in pentagon_terms(a, b):
                total = total + sign * li_direct(m, w, arg)
            assert total == QQ.zero, (m, w, str(a), str(b))
            hits += 1


def test_scale_weight_homogeneity():
    rng = random.Random(13)
    for m, w in ALL_PARAMS:
        hits = 0
        while hits < 25:
            a = random_series(QQ, m, rng)
            lam = QQ.random_element(rng)
            if not a.is_flat or not lam:
                continue
            assert li_direct(m, w, a.scale(lam)) == lam ** w * li_direct(m, w, a)
            hits += 1


def test_pounds1_values():
    f5 = GF(5)
    assert pounds1(f5.zero) == f5.zero
    assert pounds1(f5.element(2)) == f5.element(4)
    assert pounds1(f5.element(3)) == f5.element(3)
    assert pounds1(f5.element(4)) == f5.element(4)
    with pytest.raises(ValueError):
        pounds1(QQ.element(2))


def test_li2p_hand_values():
    f5 = GF(5)
    assert li2p(TruncatedSeries.from_coeffs(f5, [2, 1])) == f5.element(3)
    assert li2p(TruncatedSeries.from_coeffs(f5, [3, 1])) == f5.element(2)
    assert li2p(TruncatedSeries.from_coeffs(f5, [2, 0])) == f5.zero
    with pytest.raises(NotFlatError):
        li2p(TruncatedSeries.from_coeffs(f5, [1, 1]))
    with pytest.raises(ValueError):
        li2p(q_series(2, 1))


def test_li2p_involution_witness():
    f5 = GF(5)
    y = TruncatedSeries.from_coeffs(f5, [2, 1])
    assert y.invert() == TruncatedSeries.from_coeffs(f5, [3, 1])
    assert li2p(y) + li2p(y.invert()) == f5.zero


def test_li2p_via_lift_exhaustive_small_primes():
    for p in (3, 5, 7):
        field = GF(p)
        for s, a in itertools.product(range(p), repeat=2):
            if s in (0, 1):
                continue
            dual = TruncatedSeries.from_coeffs(field, [s, a])
            lift = dual.with_precision(p)
            assert li2p_via_lift(lift) == li2p(dual)
        assert li2p_via_lift(TruncatedSeries.from_coeffs(field, [2], p)) == field.zero


def test_li2p_via_lift_precision_gate():
    f5 = GF(5)
    with pytest.raises(PrecisionError):
        li2p_via_lift(TruncatedSeries.from_coeffs(f5, [2, 1], 4))
    with pytest.raises(PrecisionError):
        li2p_via_lift(TruncatedSeries.from_coeffs(f5, [2, 1], 6))


def test_elementary_relation_exhaustive():
    for p in (3, 5, 7, 11, 13):
        field = GF(p)
        for s, a in itertools.product(range(p), repeat=2):
            if s in (0, 1):
                continue
            z = TruncatedSeries.from_coeffs(field, [s, a])
            assert li2p(1 - z) + li2p(z) == field.zero


def test_involution_relation_exhaustive():
    for p in (3, 5, 7, 11, 13):
        field = GF(p)
        for s, a in itertools.product(range(p), repeat=2):
            if s in (0, 1):
                continue
            y = TruncatedSeries.from_coeffs(field, [s, a])
            assert li2p(y.invert()) + li2p(y) == field.zero
