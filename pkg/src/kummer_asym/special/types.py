"""Numeric domain types: surface points, log-scaled values, precision modes.

Kernels compute internally in a NumericContext (plain double via math/cmath,
or extended precision via mpmath pinned at 34 significant digits) and hand
results around as ScaledValue pairs value = mantissa * exp(shift), so
magnitudes like e^2000 never materialize.  The public boundary type is
LogComplex, which stores log-magnitude and unrestricted phase as doubles.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DomainError


class NumericContext:
    """Arithmetic backend shared by every kernel; see _Double and _ExtendedMP."""

    name = "abstract"
    eps = 0.0

    def real(self, x):
        raise NotImplementedError

    def rational(self, fr):
        raise NotImplementedError

    def make_complex(self, re, im=0.0):
        raise NotImplementedError

    def to_float(self, x) -> float:
        raise NotImplementedError

    def to_complex(self, x) -> complex:
        raise NotImplementedError


class _Double(NumericContext):
    name = "double"
    eps = 2.2e-16

    def real(self, x):
        return float(x)

    def rational(self, fr):
        if isinstance(fr, Fraction):
            return fr.numerator / fr.denominator
        return complex(fr) if isinstance(fr, complex) else float(fr)

    def make_complex(self, re, im=0.0):
        return complex(re, im)

    def to_float(self, x):
        return float(x.real) if isinstance(x, complex) else float(x)

    def to_complex(self, x):
        return complex(x)

    def exp(self, x):
        return cmath.exp(x) if isinstance(x, complex) else math.exp(x)

    def log(self, x):
        if isinstance(x, complex):
            return cmath.log(x)
        return math.log(x) if x > 0 else cmath.log(complex(x, 0.0))

    def log1p_real(self, x):
        return math.log1p(x)

    def sqrt(self, x):
        return cmath.sqrt(x) if isinstance(x, complex) else math.sqrt(abs(x)) if x >= 0 else cmath.sqrt(complex(x))

    def sin(self, x):
        return cmath.sin(x) if isinstance(x, complex) else math.sin(x)

    def cos(self, x):
        return cmath.cos(x) if isinstance(x, complex) else math.cos(x)

    def atan2(self, y, x):
        return math.atan2(y, x)

    def re(self, x):
        return x.real if isinstance(x, complex) else x

    def im(self, x):
        return x.imag if isinstance(x, complex) else 0.0

    def abs(self, x):
        return abs(x)

    def is_finite(self, x):
        if isinstance(x, complex):
            return math.isfinite(x.real) and math.isfinite(x.imag)
        return math.isfinite(x)

    @property
    def pi(self):
        return math.pi

    @property
    def euler(self):
        return 0.5772156649015328606


class _ExtendedMP(NumericContext):
    """mpmath-backed mode pinned at 34 significant digits (~double-double)."""

    name = "dd"
    eps = 1e-33

    def __init__(self, dps: int = 34):
        import mpmath

        self._mp = mpmath
        if mpmath.mp.dps < dps:
            mpmath.mp.dps = dps
        self.dps = dps

    def real(self, x):
        return self._mp.mpf(x)

    def rational(self, fr):
        if isinstance(fr, Fraction):
            return self._mp.mpf(fr.numerator) / self._mp.mpf(fr.denominator)
        if isinstance(fr, complex):
            return self._mp.mpc(fr.real, fr.imag)
        return self._mp.mpf(fr)

    def make_complex(self, re, im=0.0):
        return self._mp.mpc(re, im)

    def to_float(self, x):
        return float(self._mp.re(x)) if isinstance(x, self._mp.mpc) else float(x)

    def to_complex(self, x):
        return complex(x)

    def exp(self, x):
        return self._mp.exp(x)

    def log(self, x):
        return self._mp.log(x)

    def log1p_real(self, x):
        return self._mp.log1p(x)

    def sqrt(self, x):
        return self._mp.sqrt(x)

    def sin(self, x):
        return self._mp.sin(x)

    def cos(self, x):
        return self._mp.cos(x)

    def atan2(self, y, x):
        return self._mp.atan2(y, x)

    def re(self, x):
        return self._mp.re(x)

    def im(self, x):
        return self._mp.im(x)

    def abs(self, x):
        return self._mp.fabs(x)

    def is_finite(self, x):
        return self._mp.isfinite(x)

    @property
    def pi(self):
        return self._mp.pi

    @property
    def euler(self):
        return self._mp.euler


_CTX_DOUBLE = _Double()
_CTX_DD = None


def _dd_context() -> _ExtendedMP:
    global _CTX_DD
    if _CTX_DD is None:
        _CTX_DD = _ExtendedMP()
    return _CTX_DD


PRECISION_ENV_VAR = "KUMMER_ASYM_PRECISION"


@dataclass(frozen=True)
class Precision:
    """Precision mode plus the tolerances kernels aim for.

    series_tol is the relative term threshold for stopping ascending series;
    quadrature_tol bounds the relative quadrature error.
    """

    mode: str = "double"
    series_tol: float = 1e-17
    quadrature_tol: float = 1e-13

    def __post_init__(self):
        if self.mode not in ("double", "dd"):
            raise DomainError(f"unknown precision mode {self.mode!r}")
        for tol in (self.series_tol, self.quadrature_tol):
            if not (0.0 < tol < 1.0):
                raise DomainError(f"tolerance {tol} outside (0, 1)")

    @classmethod
    def double(cls) -> "Precision":
        return cls()

    @classmethod
    def dd(cls) -> "Precision":
        return cls(mode="dd", series_tol=1e-36, quadrature_tol=1e-18)

    @classmethod
    def from_mode(cls, mode: str) -> "Precision":
        return cls.dd() if mode == "dd" else cls.double()

    @classmethod
    def from_env(cls, default: str = "double") -> "Precision":
        mode = os.environ.get(PRECISION_ENV_VAR, default)
        if mode not in ("double", "dd"):
            raise DomainError(
                f"{PRECISION_ENV_VAR} must be 'double' or 'dd', got {mode!r}")
        return cls.from_mode(mode)

    @property
    def ctx(self) -> NumericContext:
        return _dd_context() if self.mode == "dd" else _CTX_DOUBLE


@dataclass(frozen=True)
class RiemannPoint:
    """Point r * e^(i*theta) on the Riemann surface of the logarithm.

    theta is unrestricted; r must be positive.  Winding is meaningful:
    (r, 0) and (r, 2*pi) are different points.
    """

    r: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0):
            raise DomainError(f"modulus must be positive and finite, got {self.r}")
        if not math.isfinite(self.theta):
            raise DomainError("angle must be finite")

    def value(self) -> complex:
        """Reduced complex value (winding forgotten)."""
        return self.r * complex(math.cos(self.theta), math.sin(self.theta))

    def squared(self) -> "RiemannPoint":
        return RiemannPoint(self.r * self.r, 2.0 * self.theta)

    def scaled(self, factor: float, dtheta: float = 0.0) -> "RiemannPoint":
        return RiemannPoint(self.r * factor, self.theta + dtheta)


def half_turn_reduce(theta: float) -> tuple:
    """Split theta = theta0 + pi*m with theta0 in (-pi/2, pi/2]."""
    raw = theta / math.pi - 0.5
    nearest = round(raw)
    m = nearest if abs(raw - nearest) < 1e-9 else math.ceil(raw)
    return theta - math.pi * m, int(m)


def full_turn_reduce(theta: float) -> tuple:
    """Split theta = theta0 + 2*pi*m with theta0 in (-pi, pi]."""
    raw = theta / (2.0 * math.pi) - 0.5
    nearest = round(raw)
    m = nearest if abs(raw - nearest) < 1e-9 else math.ceil(raw)
    return theta - 2.0 * math.pi * m, int(m)


@dataclass(frozen=True)
class LogComplex:
    """Nonzero complex value as (log-magnitude, unrestricted phase).

    Zero is the distinct sentinel LogComplex.zero(); it never arises from
    a plain construction.
    """

    logmag: float
    phase: float

    def __post_init__(self):
        regular = math.isfinite(self.logmag) and math.isfinite(self.phase)
        sentinel = self.logmag == -math.inf and self.phase == 0.0
        if not (regular or sentinel):
            raise DomainError("LogComplex fields must be finite")

    @classmethod
    def zero(cls) -> "LogComplex":
        return cls(-math.inf, 0.0)

    @property
    def is_zero(self) -> bool:
        return self.logmag == -math.inf

    @classmethod
    def from_complex(cls, w: complex) -> "LogComplex":
        w = complex(w)
        if w == 0:
            return cls.zero()
        return cls(math.log(abs(w)), math.atan2(w.imag, w.real))

    def to_complex(self) -> complex:
        """Native complex; requires |logmag| < 700 (or the zero sentinel)."""
        if self.is_zero:
            return 0j
        if abs(self.logmag) >= 700.0:
            raise DomainError(
                f"log-magnitude {self.logmag:.3g} not representable as double")
        return cmath.exp(complex(self.logmag, self.phase))

    def __mul__(self, other) -> "LogComplex":
        if isinstance(other, (int, float, complex)):
            other = LogComplex.from_complex(other)
        if not isinstance(other, LogComplex):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        return LogComplex(self.logmag + other.logmag, self.phase + other.phase)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogComplex":
        if isinstance(other, (int, float, complex)):
            other = LogComplex.from_complex(other)
        if not isinstance(other, LogComplex):
            return NotImplemented
        if other.is_zero:
            raise DomainError("division by the zero sentinel")
        if self.is_zero:
            return LogComplex.zero()
        return LogComplex(self.logmag - other.logmag, self.phase - other.phase)

    def __pow__(self, exponent) -> "LogComplex":
        if self.is_zero:
            raise DomainError("power of the zero sentinel")
        w = complex(exponent)
        return LogComplex(w.real * self.logmag - w.imag * self.phase,
                          w.imag * self.logmag + w.real * self.phase)

    def __neg__(self) -> "LogComplex":
        if self.is_zero:
            return self
        return LogComplex(self.logmag, self.phase + math.pi)

    def __add__(self, other) -> "LogComplex":
        if not isinstance(other, LogComplex):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        hi, lo = (self, other) if self.logmag >= other.logmag else (other, self)
        w = cmath.exp(complex(lo.logmag - hi.logmag, lo.phase - hi.phase))
        s = 1.0 + w
        if s == 0:
            return LogComplex.zero()
        return LogComplex(hi.logmag + math.log(abs(s)),
                          hi.phase + math.atan2(s.imag, s.real))

    def __sub__(self, other) -> "LogComplex":
        if not isinstance(other, LogComplex):
            return NotImplemented
        return self + (-other)

    def ratio_deviation(self, other: "LogComplex") -> float:
        """|self/other - 1|, insensitive to 2*pi bookkeeping differences."""
        if other.is_zero:
            raise DomainError("reference value is zero")
        if self.is_zero:
            return 1.0
        dl = self.logmag - other.logmag
        if dl > 700.0:
            return math.inf
        return abs(cmath.exp(complex(dl, self.phase - other.phase)) - 1.0)


class ScaledValue:
    """Internal kernel currency: value = mantissa * exp(shift), ctx numbers.

    shift is a ctx complex whose imaginary part carries unrestricted phase.
    mantissa == 0 encodes zero.
    """

    __slots__ = ("mantissa", "shift")

    def __init__(self, mantissa, shift):
        self.mantissa = mantissa
        self.shift = shift

    @classmethod
    def zero(cls, ctx: NumericContext) -> "ScaledValue":
        return cls(ctx.make_complex(0.0), ctx.make_complex(0.0))

    @classmethod
    def one(cls, ctx: NumericContext) -> "ScaledValue":
        return cls(ctx.make_complex(1.0), ctx.make_complex(0.0))

    @classmethod
    def from_shift(cls, shift, ctx: NumericContext) -> "ScaledValue":
        return cls(ctx.make_complex(1.0), shift)

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def mul(self, other: "ScaledValue") -> "ScaledValue":
        return ScaledValue(self.mantissa * other.mantissa, self.shift + other.shift)

    def mul_complex(self, w) -> "ScaledValue":
        return ScaledValue(self.mantissa * w, self.shift)

    def div(self, other: "ScaledValue", ctx: NumericContext) -> "ScaledValue":
        if other.is_zero():
            raise DomainError("division by zero scaled value")
        if self.is_zero():
            return ScaledValue.zero(ctx)
        return ScaledValue(self.mantissa / other.mantissa, self.shift - other.shift)

    def add(self, other: "ScaledValue", ctx: NumericContext) -> "ScaledValue":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if ctx.re(self.shift) >= ctx.re(other.shift):
            hi, lo = self, other
        else:
            hi, lo = other, self
        m = hi.mantissa + lo.mantissa * ctx.exp(lo.shift - hi.shift)
        return ScaledValue(m, hi.shift)

    def neg(self) -> "ScaledValue":
        return ScaledValue(-self.mantissa, self.shift)

    def to_logcomplex(self, ctx: NumericContext) -> LogComplex:
        if self.is_zero():
            return LogComplex.zero()
        mag = ctx.abs(self.mantissa)
        logmag = ctx.to_float(ctx.log(mag) + ctx.re(self.shift))
        phase = ctx.to_float(ctx.atan2(ctx.im(self.mantissa), ctx.re(self.mantissa))
                             + ctx.im(self.shift))
        if math.isnan(logmag) or math.isnan(phase):
            raise DomainError("scaled value produced NaN")
        return LogComplex(logmag, phase)
