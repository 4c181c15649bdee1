"""Adaptive trapezoid integration of exp(logf(w)) over the real line.

Built for Laplace-type integrands with a single interior peak: the caller
supplies the log of the integrand (already transformed so the domain is all
of R and the tails decay at least exponentially).  Nodes are spaced evenly,
the step is halved until the sum stabilizes, and everything is summed
relative to the peak so no overflow can occur.  The trapezoid rule converges
spectrally fast for these integrands, so a handful of halvings suffice.
"""

from __future__ import annotations

import math

from ..errors import QuadratureError
from .types import NumericContext, ScaledValue

_MAX_HALVINGS = 12
_MAX_TAIL_STEPS = 600


def _locate_peak(logf, w_start, ctx: NumericContext):
    """Walk then golden-section to the maximum of Re logf."""
    re = lambda w: ctx.to_float(ctx.re(logf(w)))
    w0 = ctx.to_float(w_start)
    step = 0.5
    f0 = re(ctx.real(w0))
    # walk uphill until the value drops on both sides
    while True:
        fl = re(ctx.real(w0 - step))
        fr = re(ctx.real(w0 + step))
        if fl <= f0 and fr <= f0:
            break
        if fr > f0:
            w0, f0 = w0 + step, fr
        else:
            w0, f0 = w0 - step, fl
        if abs(w0) > 1e4:
            raise QuadratureError("peak search diverged")
    lo, hi = w0 - step, w0 + step
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = hi - phi * (hi - lo), lo + phi * (hi - lo)
    fa, fb = re(ctx.real(a)), re(ctx.real(b))
    for _ in range(80):
        if hi - lo < 1e-14 * max(1.0, abs(w0)):
            break
        if fa >= fb:
            hi, b, fb = b, a, fa
            a = hi - phi * (hi - lo)
            fa = re(ctx.real(a))
        else:
            lo, a, fa = a, b, fb
            b = lo + phi * (hi - lo)
            fb = re(ctx.real(b))
    w_peak = 0.5 * (lo + hi)
    return ctx.real(w_peak)


def _find_cutoff(logf, w_peak, peak_re, direction, drop, ctx: NumericContext):
    """First point in `direction` where Re logf falls `drop` below the peak."""
    re = lambda w: ctx.to_float(ctx.re(logf(w)))
    w = ctx.to_float(w_peak)
    step = 1.0
    for _ in range(_MAX_TAIL_STEPS):
        w += direction * step
        if re(ctx.real(w)) < peak_re - drop:
            return w
    raise QuadratureError("integrand tail does not decay")


def peak_integral(logf, w_start, ctx: NumericContext, tol: float) -> ScaledValue:
    """Integrate exp(logf(w)) dw over R; logf maps ctx real -> ctx complex.

    Returns a ScaledValue; raises QuadratureError if the step-halving fails
    to stabilize within the level cap.
    """
    w_peak = _locate_peak(logf, w_start, ctx)
    g_peak = logf(w_peak)
    peak_re = ctx.to_float(ctx.re(g_peak))
    drop = -math.log(tol) + 15.0
    w_left = _find_cutoff(logf, w_peak, peak_re, -1.0, drop, ctx)
    w_right = _find_cutoff(logf, w_peak, peak_re, +1.0, drop, ctx)

    def sample(w_float):
        return ctx.exp(logf(ctx.real(w_float)) - g_peak)

    n = 16
    h = (w_right - w_left) / n
    total = 0.5 * (sample(w_left) + sample(w_right))
    for i in range(1, n):
        total = total + sample(w_left + i * h)
    previous = None
    stable = 0
    for _ in range(_MAX_HALVINGS):
        mid = 0
        for i in range(n):
            mid = mid + sample(w_left + (i + 0.5) * h)
        total = total + mid
        n *= 2
        h *= 0.5
        current = total * ctx.real(h)
        if previous is not None:
            change = ctx.to_float(ctx.abs(current - previous))
            scale = ctx.to_float(ctx.abs(current))
            if scale == 0.0 or change <= tol * scale:
                stable += 1
                if stable >= 2:
                    return ScaledValue(current, g_peak)
            else:
                stable = 0
        previous = current
    raise QuadratureError(
        f"quadrature failed to stabilize to {tol:g} within {_MAX_HALVINGS} halvings")
