"""Independent generating-function route to the lowered expansion coefficients.

Everything here works with exact rationals and the parameter b (the
second argument of the confluent functions; the Bessel order is b-1).

The route: expand

    g(s, z) = exp(z^2 * m(s)) * ((s/2) / sinh(s/2))^b = sum_k c_k(z) s^k,

where m(s) = 1/s - 1/(e^s - 1) - 1/2, then iterate

    c_k^(n+1) = 4 * (z^2 * c_{k+2}^(n) + (1 - b + k) * c_{k+1}^(n)).

The diagonal entries c_0^(n) and -2z * c_1^(n) reproduce the lowered
recursion families, which is the cross-check the verify suite runs.
Generalized Bernoulli polynomials and the gamma-ratio coefficient
sequences d_n, dtilde_n come from the same series toolkit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence, Tuple, Union

from .errors import OrderStarvationError
from .ratpoly import CoeffPoly, ParamPoly, TruncSeries

DEFAULT_N_MAX = 8
DEFAULT_K_MAX = 2
# diagonal extraction to n_max needs k_max + 2*n_max + 1 base coefficients
DEFAULT_BASE_ORDER = DEFAULT_K_MAX + 2 * DEFAULT_N_MAX


@dataclass(frozen=True)
class TemmeTable:
    """Base series, iterated rows, and the extracted diagonal families."""

    n_max: int
    k_max: int
    base: Tuple[CoeffPoly, ...]
    iterated: Tuple[Tuple[CoeffPoly, ...], ...]
    even_out: Tuple[CoeffPoly, ...]
    odd_out: Tuple[CoeffPoly, ...]


def _exp_minus_one_over_var(var: str, order: int, param: str) -> TruncSeries:
    # (e^t - 1)/t = sum_k t^k / (k+1)!
    vals = [Fraction(1, factorial(k + 1)) for k in range(order + 1)]
    return TruncSeries.from_rationals(var, order, vals, param=param)


def mu_series(order: int, param: str = "b") -> TruncSeries:
    """Maclaurin series of 1/s - 1/(e^s - 1) - 1/2 (odd, no constant term)."""
    e = _exp_minus_one_over_var("s", order + 1, param)
    numer = TruncSeries.one("s", order + 1, param) - e.inverse()
    return numer.divide_by_var() - Fraction(1, 2)


def temme_base_series(order: int = DEFAULT_BASE_ORDER) -> Tuple[CoeffPoly, ...]:
    """Coefficients c_k(z), k <= order, of the base generating function.

    Each c_k is an even z-polynomial with coefficients polynomial in b;
    c_0 = 1.
    """
    param = "b"
    z2 = CoeffPoly.monomial(param, 2)
    exp_part = (mu_series(order, param) * z2).exp()

    # sinh(s/2)/(s/2) = sum_k (s/2)^(2k) / (2k+1)!
    vals = []
    for k in range(order + 1):
        if k % 2 == 0:
            vals.append(Fraction(1, 4 ** (k // 2) * factorial(k + 1)))
        else:
            vals.append(Fraction(0))
    sinh_ratio = TruncSeries.from_rationals("s", order, vals, param=param)
    power_part = sinh_ratio.inverse().pow_param(ParamPoly.variable(param))

    return (exp_part * power_part).coeffs


def temme_iterate(base: Sequence[CoeffPoly], n_max: int = DEFAULT_N_MAX,
                  k_max: int = DEFAULT_K_MAX) -> TemmeTable:
    """Run the lowering iteration and extract the diagonal families."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1 (both diagonal families need it)")
    need = k_max + 2 * n_max + 1
    if len(base) < need:
        raise OrderStarvationError(
            f"base series has {len(base)} coefficients, need {need} "
            f"for n_max={n_max}, k_max={k_max}")
    param = base[0].param
    for c in base:
        if not c.is_param_neutral():
            param = c.param
            break
    z2 = CoeffPoly.monomial(param, 2)
    rows = [list(base)]
    for n in range(n_max):
        prev = rows[-1]
        row = []
        for k in range(len(prev) - 2):
            shift = ParamPoly(param, (1 + k, -1))  # 1 - b + k
            row.append((z2 * prev[k + 2] + shift * prev[k + 1]) * 4)
        rows.append(row)

    even_out = tuple(rows[n][0] for n in range(n_max + 1))
    odd_out = tuple(rows[n][1].mul_by_z() * (-2) for n in range(n_max + 1))
    iterated = tuple(tuple(row[: k_max + 1]) for row in rows)
    return TemmeTable(n_max=n_max, k_max=k_max, base=tuple(base),
                      iterated=iterated, even_out=even_out, odd_out=odd_out)


def binomial_poly(p: ParamPoly, n: int) -> ParamPoly:
    """binom(p, n) as a polynomial: falling factorial over n!."""
    result = ParamPoly.one(p.param)
    for j in range(n):
        result = result * (p - j)
    return result * Fraction(1, factorial(n))


def generalized_bernoulli(n_max: int,
                          ell: Union[ParamPoly, Fraction, int],
                          x: Union[ParamPoly, Fraction, int],
                          param: str = "b") -> Tuple[ParamPoly, ...]:
    """B_n at polynomial arguments from (t/(e^t-1))^ell * e^(x*t).

    Returns B_0..B_n_max; entries are polynomials in the parameter when
    ell or x is one.
    """
    if isinstance(ell, ParamPoly):
        param = ell.param
    elif isinstance(x, ParamPoly):
        param = x.param
    e = _exp_minus_one_over_var("t", n_max, param)
    core = e.inverse()  # t/(e^t - 1)
    powered = core.pow_param(ell if isinstance(ell, ParamPoly)
                             else ParamPoly.constant(param, ell))
    x_poly = x if isinstance(x, ParamPoly) else ParamPoly.constant(param, x)
    linear = TruncSeries("t", n_max,
                         [CoeffPoly.zero(param), CoeffPoly.from_param(x_poly)],
                         param=param)
    series = powered * linear.exp()
    return tuple(series.coeffs[n].value_at_zero() * factorial(n)
                 for n in range(n_max + 1))


def gamma_ratio_coefficients(n_max: int) -> Tuple[Tuple[ParamPoly, ...],
                                                  Tuple[ParamPoly, ...]]:
    """Sequences d_n and dtilde_n of the two gamma-ratio expansions.

    d_n      = 4^n * binom(1-b, n) * B_n at (ell=2-b, x=1-b/2),
    dtilde_n = 4^n * binom(b-1, n) * B_n at (ell=b,   x=b/2).

    Every odd-index d_n vanishes identically.
    """
    b = ParamPoly.variable("b")
    one = ParamPoly.one("b")
    half = Fraction(1, 2)
    bern_d = generalized_bernoulli(n_max, one * 2 - b, one - b * half)
    bern_t = generalized_bernoulli(n_max, b, b * half)
    d = []
    dtilde = []
    for n in range(n_max + 1):
        scale = Fraction(4) ** n
        d.append(binomial_poly(one - b, n) * bern_d[n] * scale)
        dtilde.append(binomial_poly(b - one, n) * bern_t[n] * scale)
    return tuple(d), tuple(dtilde)
