"""Exact polynomial and truncated-series arithmetic over big rationals.

Three immutable layers, all with fractions.Fraction coefficients:

  ParamPoly    univariate polynomial in one named formal parameter
               (e.g. 'mu' or 'b'), degree-indexed coefficients.
  CoeffPoly    polynomial in z whose coefficients are ParamPoly values,
               carrying a declared parity ('even', 'odd', 'none') that is
               validated on construction, never inferred.
  TruncSeries  truncated power series in a named variable with CoeffPoly
               coefficients; supports the exp/log/inverse recurrences
               needed for generating-function work.

JSON serialization writes rationals as "p/q" strings and polynomials as
degree-indexed arrays (zero polynomial = empty array).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import (
    ExactDivisionError,
    OrderStarvationError,
    ParameterMixError,
    ParityError,
)

RationalLike = Union[Fraction, int]


def _frac(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _trim(coeffs: Sequence[Fraction]) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class ParamPoly:
    """Polynomial in one formal parameter with exact rational coefficients."""

    __slots__ = ("coeffs", "param")

    def __init__(self, param: str, coeffs: Iterable[RationalLike] = ()):
        object.__setattr__(self, "param", param)
        object.__setattr__(self, "coeffs", _trim([_frac(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("ParamPoly is immutable")

    @classmethod
    def zero(cls, param: str) -> "ParamPoly":
        return cls(param, ())

    @classmethod
    def one(cls, param: str) -> "ParamPoly":
        return cls(param, (1,))

    @classmethod
    def constant(cls, param: str, value: RationalLike) -> "ParamPoly":
        return cls(param, (value,))

    @classmethod
    def variable(cls, param: str) -> "ParamPoly":
        return cls(param, (0, 1))

    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ExactDivisionError(f"not a constant: {self}")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _merged_param(self, other: "ParamPoly") -> str:
        if self.param == other.param:
            return self.param
        # constants are parameter-neutral
        if self.is_constant():
            return other.param
        if other.is_constant():
            return self.param
        raise ParameterMixError(f"cannot mix parameters {self.param!r} and {other.param!r}")

    def _coerce(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            return other
        return ParamPoly.constant(self.param, _frac(other))

    def __add__(self, other) -> "ParamPoly":
        if not isinstance(other, (ParamPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        param = self._merged_param(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ParamPoly(param, [self.coefficient(k) + other.coefficient(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly(self.param, [-c for c in self.coeffs])

    def __sub__(self, other) -> "ParamPoly":
        if not isinstance(other, (ParamPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ParamPoly":
        return (-self) + self._coerce(other)

    def __mul__(self, other) -> "ParamPoly":
        if not isinstance(other, (ParamPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        param = self._merged_param(other)
        if self.is_zero() or other.is_zero():
            return ParamPoly.zero(param)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, c in enumerate(other.coeffs):
                out[i + j] += a * c
        return ParamPoly(param, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ParamPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ParamPoly.one(self.param)
        for _ in range(n):
            result = result * self
        return result

    def derivative(self) -> "ParamPoly":
        return ParamPoly(self.param, [k * c for k, c in enumerate(self.coeffs)][1:])

    def compose(self, image: "ParamPoly") -> "ParamPoly":
        """Substitute the parameter by another polynomial (Horner)."""
        result = ParamPoly.zero(image.param)
        for c in reversed(self.coeffs):
            result = result * image + ParamPoly.constant(image.param, c)
        return result

    def divexact(self, divisor: "ParamPoly") -> "ParamPoly":
        """Exact polynomial division; raises if a remainder is left."""
        divisor = self._coerce(divisor)
        param = self._merged_param(divisor)
        if divisor.is_zero():
            raise ExactDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ParamPoly.zero(param)
        rem = list(self.coeffs)
        dc = divisor.coeffs
        dd = len(dc) - 1
        if len(rem) - 1 < dd:
            raise ExactDivisionError(f"{self} is not divisible by {divisor}")
        qu = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(qu) - 1, -1, -1):
            q = rem[k + dd] / dc[dd]
            qu[k] = q
            for j in range(dd + 1):
                rem[k + j] -= q * dc[j]
        if any(rem):
            raise ExactDivisionError(f"{self} is not divisible by {divisor}")
        return ParamPoly(param, qu)

    def evaluate(self, value, convert: Callable[[Fraction], object] = None):
        """Horner evaluation; `convert` maps Fraction into the target arithmetic."""
        conv = convert if convert is not None else (lambda f: complex(f))
        result = conv(Fraction(0))
        for c in reversed(self.coeffs):
            result = result * value + conv(c)
        return result

    def to_json(self) -> list:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, param: str, data: Sequence[str]) -> "ParamPoly":
        return cls(param, [Fraction(s) for s in data])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamPoly):
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        # constants compare equal across parameter names
        return self.is_constant() or other.is_constant() or self.param == other.param

    def __hash__(self):
        return hash((self.coeffs, None if self.is_constant() else self.param))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                exp = self.param if k == 1 else f"{self.param}^{k}"
                parts.append(f"{head}{exp}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"ParamPoly({self.param!r}, {[str(c) for c in self.coeffs]})"


PARITIES = ("even", "odd", "none")


def _add_parity(a: "CoeffPoly", b: "CoeffPoly") -> str:
    if a.is_zero():
        return b.parity
    if b.is_zero():
        return a.parity
    return a.parity if a.parity == b.parity else "none"


def _mul_parity(a: str, b: str) -> str:
    if a == "none" or b == "none":
        return "none"
    return "even" if a == b else "odd"


def _flip(parity: str) -> str:
    return {"even": "odd", "odd": "even", "none": "none"}[parity]


class CoeffPoly:
    """Polynomial in z over ParamPoly coefficients, with declared parity."""

    __slots__ = ("coeffs", "parity", "param")

    def __init__(self, coeffs: Iterable[ParamPoly], parity: str = "none", param: str = None):
        coeffs = list(coeffs)
        n = len(coeffs)
        while n and coeffs[n - 1].is_zero():
            n -= 1
        coeffs = coeffs[:n]
        name = param
        for c in coeffs:
            if not c.is_constant():
                if name is None:
                    name = c.param
                elif c.param != name:
                    raise ParameterMixError(
                        f"coefficients mix parameters {name!r} and {c.param!r}")
        if name is None:
            name = "mu"
        coeffs = [c if c.param == name else ParamPoly(name, c.coeffs) for c in coeffs]
        if parity not in PARITIES:
            raise ValueError(f"unknown parity {parity!r}")
        bad = "odd" if parity == "even" else "even" if parity == "odd" else None
        if bad is not None:
            offset = 1 if parity == "even" else 0
            for k in range(offset, len(coeffs), 2):
                if not coeffs[k].is_zero():
                    raise ParityError(
                        f"declared {parity} but z^{k} coefficient is {coeffs[k]}")
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "parity", parity)
        object.__setattr__(self, "param", name)

    def __setattr__(self, name, value):
        raise AttributeError("CoeffPoly is immutable")

    @classmethod
    def zero(cls, param: str, parity: str = "even") -> "CoeffPoly":
        return cls((), parity=parity, param=param)

    @classmethod
    def one(cls, param: str) -> "CoeffPoly":
        return cls((ParamPoly.one(param),), parity="even", param=param)

    @classmethod
    def from_param(cls, p: ParamPoly) -> "CoeffPoly":
        """Embed a parameter polynomial as a z-degree-0 (even) polynomial."""
        return cls((p,), parity="even", param=p.param)

    @classmethod
    def monomial(cls, param: str, k: int, coeff: RationalLike = 1) -> "CoeffPoly":
        c = [ParamPoly.zero(param)] * k + [ParamPoly.constant(param, coeff)]
        return cls(c, parity="even" if k % 2 == 0 else "odd", param=param)

    def z_degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_param_neutral(self) -> bool:
        """True when no coefficient actually mentions the parameter."""
        return all(c.is_constant() for c in self.coeffs)

    def _merged_name(self, other: "CoeffPoly") -> str:
        if not self.is_param_neutral():
            return self.param
        if not other.is_param_neutral():
            return other.param
        return self.param

    def coefficient(self, k: int) -> ParamPoly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ParamPoly.zero(self.param)

    def value_at_zero(self) -> ParamPoly:
        return self.coefficient(0)

    def derivative_at_zero(self) -> ParamPoly:
        """d/dz at z=0, i.e. the z^1 coefficient."""
        return self.coefficient(1)

    def _coerce(self, other) -> "CoeffPoly":
        if isinstance(other, CoeffPoly):
            return other
        if isinstance(other, ParamPoly):
            return CoeffPoly.from_param(other)
        return CoeffPoly.from_param(ParamPoly.constant(self.param, _frac(other)))

    def __add__(self, other) -> "CoeffPoly":
        if not isinstance(other, (CoeffPoly, ParamPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        parity = _add_parity(self, other)
        return CoeffPoly(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)],
            parity=parity, param=self._merged_name(other))

    __radd__ = __add__

    def __neg__(self) -> "CoeffPoly":
        return CoeffPoly([-c for c in self.coeffs], parity=self.parity, param=self.param)

    def __sub__(self, other) -> "CoeffPoly":
        if not isinstance(other, (CoeffPoly, ParamPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CoeffPoly":
        return (-self) + self._coerce(other)

    def __mul__(self, other) -> "CoeffPoly":
        if not isinstance(other, (CoeffPoly, ParamPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        param = self._merged_name(other)
        if self.is_zero() or other.is_zero():
            return CoeffPoly.zero(param)
        parity = _mul_parity(self.parity, other.parity)
        zero = ParamPoly.zero(param)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, c in enumerate(other.coeffs):
                if not c.is_zero():
                    out[i + j] = out[i + j] + a * c
        return CoeffPoly(out, parity=parity, param=param)

    __rmul__ = __mul__

    def differentiate(self) -> "CoeffPoly":
        return CoeffPoly(
            [k * c for k, c in enumerate(self.coeffs)][1:],
            parity=_flip(self.parity), param=self.param)

    def integrate_from_zero(self) -> "CoeffPoly":
        """Antiderivative vanishing at z=0; parity flips."""
        out = [ParamPoly.zero(self.param)]
        for k, c in enumerate(self.coeffs):
            out.append(c * Fraction(1, k + 1))
        return CoeffPoly(out, parity=_flip(self.parity), param=self.param)

    def divide_by_z(self, power: int = 1) -> "CoeffPoly":
        """Exact division by z**power; raises if any low coefficient is nonzero."""
        for k in range(min(power, len(self.coeffs))):
            if not self.coeffs[k].is_zero():
                raise ExactDivisionError(
                    f"z^{k} coefficient {self.coeffs[k]} blocks division by z^{power}")
        parity = self.parity if power % 2 == 0 else _flip(self.parity)
        return CoeffPoly(self.coeffs[power:], parity=parity, param=self.param)

    def mul_by_z(self, power: int = 1) -> "CoeffPoly":
        if self.is_zero():
            return self
        parity = self.parity if power % 2 == 0 else _flip(self.parity)
        pad = [ParamPoly.zero(self.param)] * power
        return CoeffPoly(pad + list(self.coeffs), parity=parity, param=self.param)

    def substitute_param(self, image: ParamPoly) -> "CoeffPoly":
        """Replace the formal parameter by `image` in every coefficient."""
        return CoeffPoly(
            [c.compose(image) for c in self.coeffs], parity=self.parity, param=image.param)

    def evaluate(self, param_value, z_value, convert: Callable[[Fraction], object] = None):
        conv = convert if convert is not None else (lambda f: complex(f))
        result = conv(Fraction(0))
        for c in reversed(self.coeffs):
            result = result * z_value + c.evaluate(param_value, conv)
        return result

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, param: str, data: Sequence[Sequence[str]], parity: str = "none"):
        return cls([ParamPoly.from_json(param, row) for row in data],
                   parity=parity, param=param)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        # parity is a declaration; equality is about values
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c)
            if "+" in cs or "-" in cs[1:]:
                cs = f"({cs})"
            if k == 0:
                parts.append(cs)
            else:
                zk = "z" if k == 1 else f"z^{k}"
                parts.append(zk if cs == "1" else f"{cs}*{zk}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"CoeffPoly({self.param!r}, parity={self.parity!r}, {self.to_json()})"


class TruncSeries:
    """Power series in a named variable, truncated at a fixed order.

    Coefficients are CoeffPoly values; index k holds the var**k coefficient
    and everything beyond `order` is dropped by every operation.
    """

    __slots__ = ("var", "order", "coeffs", "param")

    def __init__(self, var: str, order: int, coeffs: Iterable[CoeffPoly], param: str = None):
        if order < 0:
            raise ValueError("series order must be >= 0")
        coeffs = list(coeffs)[: order + 1]
        name = param
        if name is None:
            for c in coeffs:
                if not c.is_param_neutral():
                    name = c.param
                    break
            if name is None and coeffs:
                name = coeffs[0].param
        name = name or "mu"
        zero = CoeffPoly.zero(name)
        while len(coeffs) < order + 1:
            coeffs.append(zero)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "param", name)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def from_rationals(cls, var: str, order: int,
                       values: Sequence[RationalLike], param: str = "mu") -> "TruncSeries":
        cs = [CoeffPoly.from_param(ParamPoly.constant(param, v)) for v in values]
        return cls(var, order, cs, param=param)

    @classmethod
    def zero(cls, var: str, order: int, param: str) -> "TruncSeries":
        return cls(var, order, (), param=param)

    @classmethod
    def one(cls, var: str, order: int, param: str) -> "TruncSeries":
        return cls(var, order, (CoeffPoly.one(param),), param=param)

    def coefficient(self, k: int) -> CoeffPoly:
        if not 0 <= k <= self.order:
            raise OrderStarvationError(
                f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise OrderStarvationError(
                f"cannot extend order {self.order} series to {order}")
        return TruncSeries(self.var, order, self.coeffs[: order + 1], param=self.param)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def _check(self, other: "TruncSeries"):
        if self.var != other.var:
            raise ValueError(f"series variables differ: {self.var!r} vs {other.var!r}")

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, (CoeffPoly, ParamPoly, int, Fraction)):
            c = other if isinstance(other, CoeffPoly) else CoeffPoly.zero(self.param)._coerce(other)
            return TruncSeries(self.var, self.order, (c,), param=self.param)
        raise TypeError(f"cannot combine TruncSeries with {type(other).__name__}")

    def __add__(self, other) -> "TruncSeries":
        other = self._coerce(other)
        self._check(other)
        order = min(self.order, other.order)
        return TruncSeries(self.var, order,
                           [self.coeffs[k] + other.coeffs[k] for k in range(order + 1)])

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.var, self.order, [-c for c in self.coeffs], param=self.param)

    def __sub__(self, other) -> "TruncSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TruncSeries":
        return (-self) + self._coerce(other)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (CoeffPoly, ParamPoly, int, Fraction)):
            return TruncSeries(self.var, self.order,
                               [c * other for c in self.coeffs], param=self.param)
        self._check(other)
        order = min(self.order, other.order)
        zero = CoeffPoly.zero(self.param)
        out = [zero] * (order + 1)
        for i in range(order + 1):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(order + 1 - i):
                c = other.coeffs[j]
                if not c.is_zero():
                    out[i + j] = out[i + j] + a * c
        return TruncSeries(self.var, order, out)

    __rmul__ = __mul__

    def mul_by_var(self, power: int = 1) -> "TruncSeries":
        zero = CoeffPoly.zero(self.param)
        out = [zero] * power + list(self.coeffs)
        return TruncSeries(self.var, self.order, out[: self.order + 1], param=self.param)

    def divide_by_var(self, power: int = 1) -> "TruncSeries":
        """Exact division by var**power; low coefficients must vanish.

        The result keeps the same truncation order, so its top `power`
        coefficients are genuinely unknown; they are dropped (order shrinks).
        """
        if power > self.order:
            raise OrderStarvationError("series too short to divide by that power")
        for k in range(power):
            if not self.coeffs[k].is_zero():
                raise ExactDivisionError(
                    f"{self.var}^{k} coefficient nonzero; cannot divide by {self.var}^{power}")
        return TruncSeries(self.var, self.order - power, self.coeffs[power:], param=self.param)

    def exp(self) -> "TruncSeries":
        """exp of a series with zero constant term."""
        if not self.coeffs[0].is_zero():
            raise ExactDivisionError("exp needs a zero constant term")
        out = [CoeffPoly.one(self.param)]
        for n in range(1, self.order + 1):
            acc = CoeffPoly.zero(self.param)
            for k in range(1, n + 1):
                if not self.coeffs[k].is_zero():
                    acc = acc + (self.coeffs[k] * k) * out[n - k]
            out.append(acc * Fraction(1, n))
        return TruncSeries(self.var, self.order, out)

    def log(self) -> "TruncSeries":
        """log of a series with constant term exactly 1."""
        if self.coeffs[0] != CoeffPoly.one(self.param):
            raise ExactDivisionError("log needs constant term 1")
        out = [CoeffPoly.zero(self.param)]
        for n in range(1, self.order + 1):
            acc = self.coeffs[n] * n
            for k in range(1, n):
                if not out[k].is_zero() and not self.coeffs[n - k].is_zero():
                    acc = acc - (out[k] * k) * self.coeffs[n - k]
            out.append(acc * Fraction(1, n))
        return TruncSeries(self.var, self.order, out)

    def inverse(self) -> "TruncSeries":
        """Reciprocal series; constant term must be a nonzero rational constant."""
        c0 = self.coeffs[0].value_at_zero()
        if self.coeffs[0].z_degree() > 0 or not c0.is_constant() or c0.is_zero():
            raise ExactDivisionError("inverse needs a nonzero constant leading term")
        inv0 = Fraction(1) / c0.constant_value()
        out = [CoeffPoly.from_param(ParamPoly.constant(self.param, inv0))]
        for n in range(1, self.order + 1):
            acc = CoeffPoly.zero(self.param)
            for k in range(1, n + 1):
                if not self.coeffs[k].is_zero():
                    acc = acc + self.coeffs[k] * out[n - k]
            out.append(acc * (-inv0))
        return TruncSeries(self.var, self.order, out)

    def pow_int(self, n: int) -> "TruncSeries":
        if n < 0:
            return self.inverse().pow_int(-n)
        result = TruncSeries.one(self.var, self.order, self.param)
        for _ in range(n):
            result = result * self
        return result

    def pow_param(self, exponent) -> "TruncSeries":
        """Series**p for a polynomial exponent, as exp(p*log(series))."""
        if isinstance(exponent, (int, Fraction)):
            exponent = ParamPoly.constant(self.param, exponent)
        return (self.log() * exponent).exp()

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.var == other.var and self.order == other.order
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.var, self.order, self.coeffs))

    def __str__(self) -> str:
        parts = [f"({c})*{self.var}^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({self.var}^{self.order + 1})"

    __repr__ = __str__


# spec-level operation aliases

def integrate_from_zero(p: CoeffPoly) -> CoeffPoly:
    return p.integrate_from_zero()


def divide_by_z(p: CoeffPoly, power: int = 1) -> CoeffPoly:
    return p.divide_by_z(power)


def substitute_param(p: CoeffPoly, image: ParamPoly) -> CoeffPoly:
    return p.substitute_param(image)


def evaluate(p: CoeffPoly, param_value: complex, z_value: complex) -> complex:
    """Evaluate with exact rationals converted to floats at the last step."""
    return p.evaluate(param_value, z_value)
