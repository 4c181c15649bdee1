"""Coefficient polynomials for the two-term Bessel-basis asymptotic expansion.

Given an even perturbation polynomial f(z), the expansion carries two
families of z-polynomials, indexed by stage s: an even family (multiplying
the order-mu basis function) and an odd family (multiplying the order-mu+1
one). They are generated by an integrate/differentiate recursion that this
module runs in exact rational arithmetic:

    2*odd[s]    = -even[s]' + int_0^z (f*even[s] - (2*mu+1)*even[s]'/t) dt
    2*even[s+1] = (2*mu+1)*odd[s]/z - odd[s]' + int f*odd[s] dz,

with even[0] = 1 and the free constant in the second line fixed by
even[s+1](0) = 0.  Also provided: the lowered variant used by the
second-kind expansions, the normalizer series built from odd-family slopes
at the origin, and the seeded basis shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

from .errors import InvalidSeedError
from .ratpoly import CoeffPoly, ParamPoly, TruncSeries

DEFAULT_ORDER = 10


@dataclass(frozen=True)
class CoefficientTable:
    """Even/odd coefficient families for one perturbation polynomial."""

    f: CoeffPoly
    order: int
    param: str
    even: Tuple[CoeffPoly, ...]
    odd: Tuple[CoeffPoly, ...]


@dataclass(frozen=True)
class NormalizerSeries:
    """Series in u^-2 normalizing the second-kind prefactor; unit constant term."""

    param: str
    sign: int
    series: TruncSeries


def _weight(param: str) -> ParamPoly:
    # 2*mu + 1
    return ParamPoly(param, (1, 2))


def compute_coefficient_table(f: CoeffPoly, order: int = DEFAULT_ORDER,
                              param: str = "mu") -> CoefficientTable:
    """Run the recursion up to stage `order` in exact arithmetic.

    f must be even with f(0) = 0; every stage is parity-checked by
    construction (even family even, odd family odd, even[s>0](0) = 0).
    """
    if f.parity != "even":
        raise ValueError("perturbation polynomial must be declared even")
    if not f.value_at_zero().is_zero():
        raise ValueError("perturbation polynomial must vanish at z=0")
    f = f.substitute_param(ParamPoly.variable(param)) if f.param != param else f
    w = _weight(param)
    half = Fraction(1, 2)

    even = [CoeffPoly.one(param)]
    odd = []
    for _ in range(order):
        a = even[-1]
        da = a.differentiate()
        integrand = f * a - w * da.divide_by_z()
        b = (-da + integrand.integrate_from_zero()) * half
        odd.append(b)

        db = b.differentiate()
        term = w * b.divide_by_z() - db + (f * b).integrate_from_zero()
        # fix the antiderivative constant so the next stage vanishes at 0
        term = term - CoeffPoly.from_param(term.value_at_zero())
        even.append(term * half)
    # final odd companion for the last even stage
    a = even[-1]
    da = a.differentiate()
    integrand = f * a - w * da.divide_by_z()
    odd.append((-da + integrand.integrate_from_zero()) * half)

    return CoefficientTable(f=f, order=order, param=param,
                            even=tuple(even), odd=tuple(odd))


def satisfies_recursion(f: CoeffPoly, even: Sequence[CoeffPoly],
                        odd: Sequence[CoeffPoly], param: str = None) -> bool:
    """Exact re-substitution check.

    The odd-family equation is checked verbatim; the even-family one only up
    to its free additive constant (the lowered variant uses a different
    normalization at z=0).
    """
    if not even:
        return True
    param = param or even[0].param
    w = _weight(param)
    half = Fraction(1, 2)
    for s, b in enumerate(odd):
        if s >= len(even):
            break
        a = even[s]
        da = a.differentiate()
        rhs = (-da + (f * a - w * da.divide_by_z()).integrate_from_zero()) * half
        if b != rhs:
            return False
    for s in range(len(odd)):
        if s + 1 >= len(even):
            break
        b = odd[s]
        lhs = even[s + 1].differentiate() * 2
        rhs = (w * b.divide_by_z() - b.differentiate()).differentiate() + f * b
        if lhs != rhs:
            return False
    return True


def lower_coefficients(table: CoefficientTable) -> Tuple[Tuple[CoeffPoly, ...],
                                                         Tuple[CoeffPoly, ...]]:
    """Lowered coefficient pair for the alternative second-kind prefactor.

    lowered_even[0] = 1,
    lowered_even[s+1] = even[s+1](-mu, z) + (2*mu/z) * odd[s](-mu, z),
    lowered_odd[s]   = odd[s](-mu, z).
    """
    param = table.param
    flip = ParamPoly(param, (0, -1))
    two_mu = ParamPoly(param, (0, 2))
    lowered_even = [CoeffPoly.one(param)]
    lowered_odd = []
    for s in range(table.order + 1):
        b_flip = table.odd[s].substitute_param(flip)
        lowered_odd.append(b_flip)
        if s + 1 <= table.order:
            a_flip = table.even[s + 1].substitute_param(flip)
            lowered_even.append(a_flip + two_mu * b_flip.divide_by_z())
    return tuple(lowered_even), tuple(lowered_odd)


def normalizer_series(table: CoefficientTable, sign: int = 1) -> NormalizerSeries:
    """Series 1 - 2*mu' * sum_s odd[s]'(mu', 0) * u^(-2s-2) with mu' = sign*mu."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    param = table.param
    image = ParamPoly(param, (0, sign))
    mu_prime = image
    coeffs = [CoeffPoly.one(param)]
    for k in range(1, table.order + 2):
        slope = table.odd[k - 1].derivative_at_zero().compose(image)
        coeffs.append(CoeffPoly.from_param(mu_prime * slope * Fraction(-2)))
    series = TruncSeries("u^-2", table.order + 1, coeffs, param=param)
    return NormalizerSeries(param=param, sign=sign, series=series)


def shift_basis(table: CoefficientTable,
                seeds: Sequence[Union[ParamPoly, Fraction, int]]) -> CoefficientTable:
    """Re-seed the recursion: shifted[s] = sum_r family[r] * seeds[s-r].

    seeds[0] must be exactly 1; seeds beyond the table order are ignored.
    The shifted families satisfy the same recursion with shifted-even
    origin values equal to the seeds.
    """
    param = table.param
    norm = []
    for s in seeds:
        if isinstance(s, ParamPoly):
            norm.append(s)
        else:
            norm.append(ParamPoly.constant(param, s))
    if not norm or norm[0] != ParamPoly.one(param):
        raise InvalidSeedError("seed sequence must start with 1")
    shifted_even = []
    shifted_odd = []
    for s in range(table.order + 1):
        acc_e = CoeffPoly.zero(param)
        acc_o = CoeffPoly.zero(param, parity="odd")
        for r in range(s + 1):
            if s - r < len(norm):
                acc_e = acc_e + table.even[r] * norm[s - r]
                acc_o = acc_o + table.odd[r] * norm[s - r]
        shifted_even.append(acc_e)
        shifted_odd.append(acc_o)
    return CoefficientTable(f=table.f, order=table.order, param=param,
                            even=tuple(shifted_even), odd=tuple(shifted_odd))
