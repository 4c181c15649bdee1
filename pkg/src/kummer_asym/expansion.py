"""Side-by-side evaluation of the large-parameter expansions.

The left side of each identity is an oracle value (Kummer M or U with its
exponential prefactors); the right side combines modified Bessel functions
with the exact coefficient polynomials, truncated at a requested order.
Everything is assembled as ScaledValue in the working precision, and the
relative discrepancy |lhs/rhs - 1| is measured before any rounding to the
LogComplex boundary type.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from .errors import DomainError, OrderStarvationError, PoleError
from .olver import (CoefficientTable, DEFAULT_ORDER, compute_coefficient_table,
                    lower_coefficients)
from .ratpoly import CoeffPoly
from .special.bessel import bessel_i_scaled, bessel_k_scaled
from .special.gammafn import log_gamma_ctx
from .special.kummer import kummer_m_scaled, kummer_u_scaled
from .special.types import (LogComplex, NumericContext, Precision,
                            RiemannPoint, ScaledValue)
from .temme import gamma_ratio_coefficients

VARIANTS = ("m", "u-capital", "u-lower")

# Default grid pinned by the acceptance preset; R is implicitly 2.
GRID_B = (0.7, 1.5, 2.5)
GRID_Z_R = (0.5, 1.0, 2.0)
GRID_Z_THETA = (0.0, math.pi, 2.0 * math.pi, 2.5 * math.pi)
GRID_T = (10.0, 20.0, 40.0)
GRID_U_THETA = (0.0, 0.3)
GRID_ORDER = (1, 2, 3)


@lru_cache(maxsize=4)
def expansion_tables(order: int = DEFAULT_ORDER):
    """Coefficient table for f = z^2 plus its lowered families (immutable)."""
    table = compute_coefficient_table(CoeffPoly.monomial("mu", 2), order=order)
    low_even, low_odd = lower_coefficients(table)
    return table, low_even, low_odd


@dataclass(frozen=True)
class ExpansionConfig:
    """One evaluation point: variant, parameters, surface point, order."""

    variant: str
    b: complex
    z: RiemannPoint
    t: float
    u_theta: float = 0.0
    order: int = 3
    prec: Precision = field(default_factory=Precision.dd)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise DomainError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.order < 1:
            raise DomainError("truncation order must be at least 1")
        if not (math.isfinite(self.t) and self.t > 0):
            raise DomainError("u magnitude t must be positive and finite")
        if not math.isfinite(self.u_theta):
            raise DomainError("u angle must be finite")
        b = complex(self.b)
        if self.variant == "m":
            if b.imag == 0.0 and b.real <= 0.5 and abs(b.real - round(b.real)) < 1e-12:
                raise PoleError(f"b = {b.real:g} is a pole of the M kernel")
        else:
            if abs(self.u_theta) >= math.pi / 2:
                raise DomainError("second-kind variants need |arg u| < pi/2")

    @property
    def u(self) -> complex:
        return self.t * complex(math.cos(self.u_theta), math.sin(self.u_theta))

    @property
    def a(self) -> complex:
        return self.u ** 2 / 4 + complex(self.b) / 2


@dataclass(frozen=True)
class SideBySide:
    """Oracle value, expansion value, and their relative discrepancy."""

    lhs: LogComplex
    rhs: LogComplex
    rel_discrepancy: float

    def __post_init__(self):
        if math.isnan(self.rel_discrepancy):
            raise DomainError("discrepancy is NaN")


class _Workspace:
    """Context-precision scalars shared by the assembly routines."""

    def __init__(self, cfg: ExpansionConfig):
        self.cfg = cfg
        ctx = cfg.prec.ctx
        self.ctx = ctx
        i_unit = ctx.make_complex(0.0, 1.0)
        b = complex(cfg.b)
        self.b_c = ctx.make_complex(b.real, b.imag)
        self.mu_c = self.b_c - ctx.rational(1)
        t_c = ctx.real(cfg.t)
        th_u = ctx.real(cfg.u_theta)
        self.log_u = ctx.log(t_c) + i_unit * th_u
        self.u_c = t_c * ctx.exp(i_unit * th_u)
        self.a_c = self.u_c * self.u_c / ctx.rational(4) + self.b_c / ctx.rational(2)
        r_c = ctx.real(cfg.z.r)
        th_z = ctx.real(cfg.z.theta)
        self.log_z = ctx.log(r_c) + i_unit * th_z
        self.z_red = r_c * ctx.exp(i_unit * th_z)
        self.x_red = self.z_red * self.z_red
        self.log2 = ctx.log(ctx.rational(2))
        self.uz_point = cfg.z.scaled(cfg.t, cfg.u_theta)

    def coefficient_sums(self, even_family, odd_family):
        """Sum_{s<N} family_s(mu, z) / u^(2s) for both families, in ctx."""
        cfg, ctx = self.cfg, self.ctx
        if cfg.order > len(even_family):
            raise OrderStarvationError(
                f"tables hold {len(even_family)} orders, need {cfg.order}")
        inv_u2 = ctx.rational(1) / (self.u_c * self.u_c)
        power = ctx.make_complex(1.0)
        total_even = ctx.make_complex(0.0)
        total_odd = ctx.make_complex(0.0)
        for s in range(cfg.order):
            total_even = total_even + power * even_family[s].evaluate(
                self.mu_c, self.z_red, ctx.rational)
            total_odd = total_odd + power * odd_family[s].evaluate(
                self.mu_c, self.z_red, ctx.rational)
            power = power * inv_u2
        return total_even, total_odd


def _finish(lhs: ScaledValue, rhs: ScaledValue, ctx: NumericContext) -> SideBySide:
    ratio = lhs.div(rhs, ctx)
    gap = ctx.to_float(ctx.re(ratio.shift)) + math.log(
        max(ctx.to_float(ctx.abs(ratio.mantissa)), 1e-300))
    if gap > 690.0:
        disc = math.inf
    else:
        w = ratio.mantissa * ctx.exp(ratio.shift)
        disc = ctx.to_float(ctx.abs(w - ctx.rational(1)))
    return SideBySide(lhs.to_logcomplex(ctx), rhs.to_logcomplex(ctx), disc)


def eval_m_sides(cfg: ExpansionConfig) -> SideBySide:
    """First-kind expansion: scaled M against the I-Bessel combination."""
    if cfg.variant != "m":
        raise DomainError(f"eval_m_sides needs variant 'm', got {cfg.variant!r}")
    ws = _Workspace(cfg)
    ctx = ws.ctx
    one = ctx.rational(1)
    m_val = kummer_m_scaled(ws.a_c, ws.b_c, ws.x_red, cfg.prec)
    pref = ((one - ws.b_c) * ws.log2 + (ws.b_c - one) * ws.log_u
            - log_gamma_ctx(ws.b_c, ctx) - ws.x_red / ctx.rational(2)
            + ws.b_c * ws.log_z)
    lhs = ScaledValue(m_val.mantissa, m_val.shift + pref)

    table, _, _ = expansion_tables()
    sum_even, sum_odd = ws.coefficient_sums(table.even, table.odd)
    i_low = bessel_i_scaled(complex(cfg.b) - 1, ws.uz_point, cfg.prec)
    i_high = bessel_i_scaled(complex(cfg.b), ws.uz_point, cfg.prec)
    term1 = ScaledValue(i_low.mantissa * sum_even, i_low.shift + ws.log_z)
    term2 = ScaledValue(i_high.mantissa * sum_odd,
                        i_high.shift + ws.log_z - ws.log_u)
    rhs = term1.add(term2, ctx)
    return _finish(lhs, rhs, ctx)


def eval_u_sides(cfg: ExpansionConfig) -> SideBySide:
    """Second-kind expansion: scaled U against the K-Bessel combination."""
    if cfg.variant not in ("u-capital", "u-lower"):
        raise DomainError(
            f"eval_u_sides needs a second-kind variant, got {cfg.variant!r}")
    ws = _Workspace(cfg)
    ctx = ws.ctx
    one = ctx.rational(1)
    u_val = kummer_u_scaled(ws.a_c, complex(cfg.b), cfg.z.squared(), cfg.prec)
    table, low_even, low_odd = expansion_tables()
    if cfg.variant == "u-capital":
        gamma_shift = log_gamma_ctx(one + ws.a_c - ws.b_c, ctx)
        power_shift = -ws.b_c * ws.log2 + (ws.b_c - one) * ws.log_u
        families = (table.even, table.odd)
    else:
        gamma_shift = log_gamma_ctx(ws.a_c, ctx)
        power_shift = (ws.b_c - ctx.rational(2)) * ws.log2 + (one - ws.b_c) * ws.log_u
        families = (low_even, low_odd)
    pref = (gamma_shift + power_shift - ws.x_red / ctx.rational(2)
            + ws.b_c * ws.log_z)
    lhs = ScaledValue(u_val.mantissa, u_val.shift + pref)

    sum_even, sum_odd = ws.coefficient_sums(*families)
    k_low = bessel_k_scaled(complex(cfg.b) - 1, ws.uz_point, cfg.prec)
    k_high = bessel_k_scaled(complex(cfg.b), ws.uz_point, cfg.prec)
    term1 = ScaledValue(k_low.mantissa * sum_even, k_low.shift + ws.log_z)
    term2 = ScaledValue(-k_high.mantissa * sum_odd,
                        k_high.shift + ws.log_z - ws.log_u)
    rhs = term1.add(term2, ctx)
    return _finish(lhs, rhs, ctx)


def evaluate_sides(cfg: ExpansionConfig) -> SideBySide:
    """Dispatch on the variant."""
    return eval_m_sides(cfg) if cfg.variant == "m" else eval_u_sides(cfg)


def gamma_ratio_check(b: complex, u: float, order: int,
                      prec: Precision = None) -> SideBySide:
    """Gamma-quotient asymptotics against the exact d_n coefficients.

    lhs = Gamma(1+a-b)/Gamma(a) * 2^(2-2b) * u^(2b-2) with a = u^2/4 + b/2;
    rhs = sum_{n<=order} d_n(b) * u^(-2n)  (odd entries vanish identically).
    """
    if prec is None:
        prec = Precision.dd()
    if not (u > 0 and math.isfinite(u)):
        raise DomainError("u must be positive real")
    if order < 0:
        raise DomainError("order must be non-negative")
    ctx = prec.ctx
    b = complex(b)
    b_c = ctx.make_complex(b.real, b.imag)
    u_c = ctx.real(u)
    one = ctx.rational(1)
    two = ctx.rational(2)
    a_c = u_c * u_c / ctx.rational(4) + b_c / two
    shift = (log_gamma_ctx(one + a_c - b_c, ctx) - log_gamma_ctx(a_c, ctx)
             + (two - two * b_c) * ctx.log(two) + (two * b_c - two) * ctx.log(u_c))
    lhs = ScaledValue(ctx.make_complex(1.0), shift)
    d_coeffs, _ = gamma_ratio_coefficients(order)
    inv_u2 = one / (u_c * u_c)
    power = ctx.make_complex(1.0)
    total = ctx.make_complex(0.0)
    for n in range(order + 1):
        total = total + power * d_coeffs[n].evaluate(b_c, ctx.rational)
        power = power * inv_u2
    rhs = ScaledValue(total, ctx.make_complex(0.0))
    return _finish(lhs, rhs, ctx)


@dataclass(frozen=True)
class SweepRow:
    """One sweep point; result is None when status records a failure."""

    config: ExpansionConfig
    result: Optional[SideBySide]
    status: str


@dataclass(frozen=True)
class SweepResult:
    rows: Tuple[SweepRow, ...]
    slopes: dict


def sweep_group_key(cfg: ExpansionConfig):
    """Rows sharing everything but t form one decay-fit group."""
    return (cfg.variant, complex(cfg.b), cfg.z.r, cfg.z.theta,
            cfg.u_theta, cfg.order)


def decay_sweep(grid: Sequence[ExpansionConfig]) -> SweepResult:
    """Evaluate every config; fit log-log discrepancy decay per group.

    Failures are recorded per row and never abort the sweep.  Fits need at
    least two distinct t values with finite nonzero discrepancy.
    """
    grid = tuple(grid)
    if not grid:
        raise DomainError("sweep grid is empty")
    rows = []
    for cfg in grid:
        try:
            result = evaluate_sides(cfg)
            rows.append(SweepRow(cfg, result, "ok"))
        except (DomainError, ArithmeticError) as exc:
            rows.append(SweepRow(cfg, None, f"error:{type(exc).__name__}"))
    groups = {}
    for row in rows:
        if row.status != "ok":
            continue
        disc = row.result.rel_discrepancy
        if not (disc > 0 and math.isfinite(disc)):
            continue
        groups.setdefault(sweep_group_key(row.config), []).append(
            (row.config.t, disc))
    slopes = {}
    for key, points in groups.items():
        ts = sorted({t for t, _ in points})
        if len(ts) < 2:
            continue
        xs = [math.log(t) for t, _ in points]
        ys = [math.log(d) for _, d in points]
        fit = statistics.linear_regression(xs, ys)
        slopes[key] = fit.slope
    return SweepResult(tuple(rows), slopes)


def acceptance_grid(variant: str, prec: Precision = None) -> Tuple[ExpansionConfig, ...]:
    """The pinned default grid for one variant, in deterministic order."""
    if prec is None:
        prec = Precision.dd()
    if variant not in VARIANTS:
        raise DomainError(f"variant must be one of {VARIANTS}, got {variant!r}")
    configs = []
    for b in GRID_B:
        for z_r in GRID_Z_R:
            for z_theta in GRID_Z_THETA:
                for u_theta in GRID_U_THETA:
                    for order in GRID_ORDER:
                        for t in GRID_T:
                            configs.append(ExpansionConfig(
                                variant=variant, b=b,
                                z=RiemannPoint(z_r, z_theta),
                                t=t, u_theta=u_theta, order=order, prec=prec))
    return tuple(configs)
