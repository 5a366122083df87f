"""Infinitesimal dilogarithms of modulus m and weight w, and the char-p pair.

Characteristic 0.  For 1 < m < w < 2m the dilogarithm li_{m,w} acts on flat
elements of k[t]/(t^m).  Writing a = s e^u with s = a(0) and u = log_circ(a),

    li_{m,w}(s e^u) = t_{w-1}( log_circ(1 - s e^(u|_m)) * (du/dt)|_(w-m) )

where q|_a truncates to degrees below a and t_a extracts a coefficient.  The
value depends only on a mod t^m.  The same number is computed from any lift
to precision N >= w through the Bloch differential:

    lift value = sum_{1 <= i <= w-m} i * (ell_{w-i} ^ ell_i)(delta(lift)).

Closed forms are available for (m, w) in {(2,3), (3,4), (3,5)} and serve as
independent oracles for the direct formula.

Characteristic p (odd).  The 1 1/2 logarithm pounds1(s) = sum_{1<=i<p} s^i / i
and the weight-two map on dual numbers li2p(s + at) = (a / (s(1-s)))^p *
pounds1(s), with the lift expression
(1/2) * sum_{1<=i<p} i * (ell_{p-i} ^ ell_i) applied to delta of a lift at
precision exactly p.
"""

from __future__ import annotations

from .bloch import apply_functional_pair, delta
from .fields import FieldElement
from .series import (
    NotFlatError,
    PrecisionError,
    TruncatedSeries,
    exp_t,
    log_circ,
)

__all__ = [
    "CLOSED_FORM_PARAMS",
    "li2p",
    "li2p_via_lift",
    "li_closed_form",
    "li_direct",
    "li_via_lift",
    "pounds1",
    "validate_modulus_weight",
]

CLOSED_FORM_PARAMS = ((2, 3), (3, 4), (3, 5))


def validate_modulus_weight(m: int, w: int) -> None:
    """Enforce 1 < m < w < 2m."""
    if not (isinstance(m, int) and isinstance(w, int)):
        raise TypeError("modulus and weight must be integers")
    if not 1 < m < w < 2 * m:
        raise ValueError(f"modulus/weight must satisfy 1 < m < w < 2m, got m={m}, w={w}")


def _require_char0(field, what: str) -> None:
    if field.characteristic != 0:
        raise ValueError(f"{what} is defined over characteristic 0 only")


def _require_flat(a: TruncatedSeries, what: str) -> None:
    if not a.is_flat:
        raise NotFlatError(f"{what} requires a flat argument, got constant term {a.constant_term()}")


def li_direct(m: int, w: int, a: TruncatedSeries) -> FieldElement:
    """Evaluate li_{m,w} by the defining formula at internal precision w.

    The argument is read modulo t^m (it must carry at least m coefficients),
    then zero-padded to precision w, matching the fact that the function
    factors through the projection onto k[t]/(t^m).
    """
    validate_modulus_weight(m, w)
    _require_char0(a.field, "li_direct")
    if a.precision < m:
        raise PrecisionError(f"argument needs at least {m} coefficients, has {a.precision}")
    _require_flat(a, "li_direct")

    rep = TruncatedSeries.from_coeffs(a.field, a.coeffs[:m], w)
    s = rep.constant_term()
    u = log_circ(rep)
    inner = 1 - s * exp_t(u.truncate_below(m))
    du = u.derivative().truncate_below(w - m).with_precision(w)
    return (log_circ(inner) * du).coeff(w - 1)


def li_via_lift(m: int, w: int, lift: TruncatedSeries) -> FieldElement:
    """Evaluate li_{m,w} of (lift mod t^m) through the Bloch differential.

    The value does not depend on the lift coefficients in degrees m and above.
    """
    validate_modulus_weight(m, w)
    _require_char0(lift.field, "li_via_lift")
    if lift.precision < w:
        raise PrecisionError(f"lift needs precision >= {w}, has {lift.precision}")
    _require_flat(lift, "li_via_lift")
    led = delta(lift)
    total = lift.field.zero
    for i in range(1, w - m + 1):
        total = total + lift.field.element(i) * apply_functional_pair(w - i, i, led)
    return total


def li_closed_form(m: int, w: int, s: FieldElement, u1, u2=None) -> FieldElement:
    """The displayed rational closed forms for (2,3), (3,4) and (3,5).

    Arguments are the polynomial coefficients of s + u1*t (+ u2*t^2).
    """
    if (m, w) not in CLOSED_FORM_PARAMS:
        raise ValueError(f"no closed form for (m, w) = ({m}, {w})")
    field = s.field
    u1 = field.element(u1)
    if not s or s == field.one:
        raise NotFlatError("closed forms require s outside {0, 1}")
    if m == 2:
        return -(u1 ** 3) / (2 * s ** 2 * (s - 1) ** 2)
    if u2 is None:
        raise ValueError("modulus 3 closed forms need the t^2 coefficient u2")
    u2 = field.element(u2)
    sm1 = s - 1
    if w == 4:
        return (
            u1 ** 4 * (2 * s - 1) / (3 * sm1 ** 3 * s ** 3)
            - u1 ** 2 * u2 / (sm1 ** 2 * s ** 2)
        )
    return (
        u1 ** 5 * (sm1 ** 3 - s ** 3) / (4 * sm1 ** 4 * s ** 4)
        - u1 ** 5 / (3 * sm1 ** 3 * s ** 3)
        + u1 ** 3 * u2 * 5 * (2 * s - 1) / (3 * sm1 ** 3 * s ** 3)
        - u1 * u2 ** 2 * 5 / (2 * sm1 ** 2 * s ** 2)
    )


def pounds1(s: FieldElement) -> FieldElement:
    """The 1 1/2 logarithm over GF(p): sum of s^i / i for 1 <= i < p."""
    p = s.field.characteristic
    if p == 0:
        raise ValueError("pounds1 is defined over prime fields only")
    total = s.field.zero
    power = s.field.one
    for i in range(1, p):
        power = power * s
        total = total + power / i
    return total


def li2p(y: TruncatedSeries) -> FieldElement:
    """The char-p weight-two dilogarithm on dual numbers s + a*t.

    li2p(y) = ybar^p * pounds1(s) with ybar = a / (s(1 - s)).  The argument is
    read modulo t^2.
    """
    p = y.field.characteristic
    if p == 0:
        raise ValueError("li2p is defined over prime fields only")
    if y.precision < 2:
        raise PrecisionError("li2p needs the t coefficient; provide precision >= 2")
    _require_flat(y, "li2p")
    s = y.coeff(0)
    alpha = y.coeff(1)
    ybar = alpha / (s * (1 - s))
    return ybar ** p * pounds1(s)


def li2p_via_lift(lift: TruncatedSeries) -> FieldElement:
    """Evaluate li2p of (lift mod t^2) through the Bloch differential.

    Requires precision exactly p: the functionals reach index p - 1 and the
    underlying log series is only p-integral through that degree.
    """
    p = lift.field.characteristic
    if p == 0:
        raise ValueError("li2p_via_lift is defined over prime fields only")
    if lift.precision != p:
        raise PrecisionError(f"lift precision must equal the characteristic {p}, got {lift.precision}")
    _require_flat(lift, "li2p_via_lift")
    led = delta(lift)
    total = lift.field.zero
    for i in range(1, p):
        total = total + lift.field.element(i) * apply_functional_pair(p - i, i, led)
    return total / 2
