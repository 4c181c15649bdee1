"""Kummer functions: M by ascending series, U by integral plus monodromy.

M(a,b,x) is entire in x, so it takes a plain complex argument.  U lives on
the Riemann surface: the angle is reduced by whole turns to a base angle in
(-pi, pi], the base value is computed from the real-axis integral
representation (or, left of the imaginary axis, from the two-term connection
to M), and the turns are restored with the exact monodromy relation, which
couples U back to M at the base point.
"""

from __future__ import annotations

import cmath
import math

from ..errors import DomainError, PoleError, PrecisionExhaustedError
from .gammafn import log_gamma_ctx
from .quad import peak_integral
from .types import (LogComplex, NumericContext, Precision, RiemannPoint,
                    ScaledValue, full_turn_reduce)

_MAX_TERMS = 20000
_GUARD_THRESHOLD = 1e-6
# beyond this fraction of pi the base integral loses its damping and the
# connection formula takes over
_QUAD_ANGLE_LIMIT = 0.45 * math.pi


def _check_b_pole(b: complex):
    b = complex(b)
    if b.imag == 0.0 and b.real <= 0.5 and abs(b.real - round(b.real)) < 1e-12:
        raise PoleError(f"parameter b = {b.real:g} is a pole of the M series")


def _m_series(a_c, b_c, x_c, ctx: NumericContext, tol: float) -> ScaledValue:
    """Compensated ascending series for M(a,b,x); mantissa with zero shift."""
    abs_ax = ctx.to_float(ctx.abs(a_c)) * ctx.to_float(ctx.abs(x_c))
    min_terms = int(2.0 * math.sqrt(abs_ax)) + 10
    term = ctx.make_complex(1.0)
    total = term
    comp = ctx.make_complex(0.0)
    max_mag = 1.0
    quiet = 0
    for n in range(_MAX_TERMS):
        term = term * (a_c + ctx.rational(n)) * x_c / (
            (b_c + ctx.rational(n)) * ctx.rational(n + 1))
        if term == 0:
            break
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        t_mag = ctx.to_float(ctx.abs(term))
        max_mag = max(max_mag, t_mag)
        if t_mag <= tol * ctx.to_float(ctx.abs(total)):
            quiet += 1
            if quiet >= 2 and n >= min_terms:
                break
        else:
            quiet = 0
    else:
        raise PrecisionExhaustedError("M series did not converge")
    s_mag = ctx.to_float(ctx.abs(total))
    if s_mag == 0.0 or not ctx.is_finite(total):
        raise PrecisionExhaustedError("M series overflowed its mode")
    if ctx.eps * max_mag / s_mag > _GUARD_THRESHOLD:
        raise PrecisionExhaustedError(
            "M series cancellation exceeds precision headroom")
    return ScaledValue(total, ctx.make_complex(0.0))


def kummer_m(a: complex, b: complex, x: complex,
             prec: Precision = None) -> LogComplex:
    """M(a,b,x) by series; b must stay off 0 and the negative integers."""
    if prec is None:
        prec = Precision.double()
    _check_b_pole(b)
    ctx = prec.ctx
    a_c = ctx.make_complex(complex(a).real, complex(a).imag)
    b_c = ctx.make_complex(complex(b).real, complex(b).imag)
    x_c = ctx.make_complex(complex(x).real, complex(x).imag)
    return _m_series(a_c, b_c, x_c, ctx, prec.series_tol).to_logcomplex(ctx)


def _u_base_integral(a_c, b_c, x0, ctx: NumericContext,
                     prec: Precision) -> ScaledValue:
    """Gamma(a) U(a,b,x0) by the real-axis integral, then the Gamma division.

    Integrand exp(a w + (b-a-1) ln(1+e^w) - x0 e^w) over w in R.
    """
    bma = b_c - a_c - ctx.rational(1)

    def logf(w):
        if ctx.to_float(w) > 33.0:
            log1p = w + ctx.log1p_real(ctx.exp(-w))
        else:
            log1p = ctx.log1p_real(ctx.exp(w))
        return a_c * w + bma * log1p - x0 * ctx.exp(w)

    # saddle of the t-space integrand: x t^2 + (x+2-b) t - (a-1) = 0
    ad, bd, xd = ctx.to_complex(a_c), ctx.to_complex(b_c), ctx.to_complex(x0)
    disc = cmath.sqrt((xd + 2 - bd) ** 2 + 4 * xd * (ad - 1))
    candidates = [(-(xd + 2 - bd) + disc) / (2 * xd),
                  (-(xd + 2 - bd) - disc) / (2 * xd)]
    t_peak = max(c.real for c in candidates)
    w_start = math.log(t_peak) if t_peak > 1e-8 else math.log(1e-8)
    integral = peak_integral(logf, w_start, ctx, prec.quadrature_tol)
    return ScaledValue(integral.mantissa,
                       integral.shift - log_gamma_ctx(a_c, ctx))


def _u_base_connection(a_c, b_c, b: complex, x0, theta0, ctx: NumericContext,
                       prec: Precision) -> ScaledValue:
    """Two-term M connection for base points left of the imaginary axis.

    Fails for integer b, where the pair of M solutions degenerates.
    """
    if complex(b).imag == 0.0 and abs(complex(b).real - round(complex(b).real)) < 1e-9:
        raise DomainError(
            "U base point left of the imaginary axis needs non-integer b")
    one = ctx.rational(1)
    m1 = _m_series(a_c, b_c, x0, ctx, prec.series_tol)
    g1 = log_gamma_ctx(one - b_c, ctx) - log_gamma_ctx(a_c - b_c + one, ctx)
    first = ScaledValue(m1.mantissa, m1.shift + g1)
    m2 = _m_series(a_c - b_c + one, ctx.rational(2) - b_c, x0, ctx,
                   prec.series_tol)
    # x0^(1-b) with the surface angle theta0, kept in the shift
    log_x0 = ctx.log(ctx.abs(x0)) + ctx.make_complex(0.0, 1.0) * theta0
    g2 = (log_gamma_ctx(b_c - one, ctx) - log_gamma_ctx(a_c, ctx)
          + (one - b_c) * log_x0)
    second = ScaledValue(m2.mantissa, m2.shift + g2)
    return first.add(second, ctx)


def kummer_m_scaled(a: complex, b: complex, x: complex,
                    prec: Precision) -> ScaledValue:
    """M(a,b,x) as a ScaledValue in prec's context; a, b, x may already be
    context numbers, in which case no precision is shed on the way in."""
    _check_b_pole(complex(b))
    ctx = prec.ctx
    conv = lambda w: w if not isinstance(w, (int, float, complex)) else \
        ctx.make_complex(complex(w).real, complex(w).imag)
    return _m_series(conv(a), conv(b), conv(x), ctx, prec.series_tol)


def kummer_u_scaled(a: complex, b: complex, x: RiemannPoint,
                    prec: Precision) -> ScaledValue:
    """U(a,b,x) on the surface as a ScaledValue; requires Re a > 0.

    a and b may be native complex or numbers of prec's context; the latter
    lets callers that derive a = u^2/4 + b/2 keep full working precision.
    """
    ctx = prec.ctx
    b_key = complex(b)
    if not complex(a).real > 0:
        raise DomainError(f"U oracle requires Re a > 0, got {complex(a).real:g}")
    conv = lambda w: w if not isinstance(w, (int, float, complex)) else \
        ctx.make_complex(complex(w).real, complex(w).imag)
    a_c, b_c = conv(a), conv(b)
    _, m = full_turn_reduce(x.theta)
    theta0 = ctx.real(x.theta) - (2 * m) * ctx.pi
    r = ctx.real(x.r)
    x0 = r * ctx.exp(ctx.make_complex(0.0, 1.0) * theta0)
    if abs(ctx.to_float(theta0)) <= _QUAD_ANGLE_LIMIT:
        base = _u_base_integral(a_c, b_c, x0, ctx, prec)
    else:
        base = _u_base_connection(a_c, b_c, b_key, x0, theta0, ctx, prec)
    if m == 0:
        return base
    # monodromy constant: 2 pi i e^(-i pi b) / (Gamma(b) Gamma(1+a-b))
    i_unit = ctx.make_complex(0.0, 1.0)
    one = ctx.rational(1)
    m_base = _m_series(a_c, b_c, x0, ctx, prec.series_tol)
    c_shift = (-i_unit * ctx.pi * b_c - log_gamma_ctx(b_c, ctx)
               - log_gamma_ctx(one + a_c - b_c, ctx))
    cm = ScaledValue(m_base.mantissa * 2 * ctx.pi * i_unit,
                     m_base.shift + c_shift)
    turn = -2 * ctx.pi * i_unit * b_c
    value = base
    if m > 0:
        for _ in range(m):
            value = ScaledValue(value.mantissa, value.shift + turn).add(cm, ctx)
    else:
        for _ in range(-m):
            value = value.add(cm.neg(), ctx)
            value = ScaledValue(value.mantissa, value.shift - turn)
    return value


def kummer_u(a: complex, b: complex, x: RiemannPoint,
             prec: Precision = None) -> LogComplex:
    """U(a,b,x) on the surface of the logarithm; see kummer_u_scaled."""
    if prec is None:
        prec = Precision.double()
    return kummer_u_scaled(a, b, x, prec).to_logcomplex(prec.ctx)
