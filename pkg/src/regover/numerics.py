"""Rigorous numerics: outward-rounded interval arithmetic, Bessel I1
enclosures, the printed I1 bound polynomials, Dedekind sums, and the
Bessel argument mu_k(n).

Every transcendental quantity in the asymptotic machinery travels through
:class:`Interval`, a thin immutable wrapper over mpmath's interval context.
Precision is a per-value property, never ambient mutable state: each
precision gets its own frozen context, and binary operations are carried
out at the larger of the two operand precisions.  Exactly representable
inputs (integers, rationals) enter through directed rounding, so every
enclosure is sound by construction.

Dedekind sums are exact rationals and never touch intervals.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import from_rational, to_rational


class NumericsError(ValueError):
    """Raised on domain violations in rigorous numeric operations."""


class PrecisionExhausted(ArithmeticError):
    """An interval comparison stayed inconclusive at the maximum precision."""


DEFAULT_PRECISION = 192
MIN_PRECISION = 64
# guard against exp() of absurd arguments producing numbers with millions
# of exponent bits; nothing in scope needs exp beyond e^(10^6)
_MAX_EXP_ARG = 10**6


def default_precision() -> int:
    """Working precision in bits; REGOVER_PRECISION overrides the default."""
    raw = os.environ.get("REGOVER_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        bits = int(raw)
    except ValueError as exc:
        raise NumericsError(f"REGOVER_PRECISION must be an integer, got {raw!r}") from exc
    if bits < MIN_PRECISION:
        raise NumericsError(f"REGOVER_PRECISION must be >= {MIN_PRECISION}, got {bits}")
    return bits


_CONTEXTS: dict[int, MPIntervalContext] = {}
_CONTEXT_LOCK = threading.Lock()


def _context(precision: int) -> MPIntervalContext:
    if precision < MIN_PRECISION:
        raise NumericsError(f"precision must be >= {MIN_PRECISION}, got {precision}")
    with _CONTEXT_LOCK:
        ctx = _CONTEXTS.get(precision)
        if ctx is None:
            ctx = MPIntervalContext()
            ctx.prec = precision
            _CONTEXTS[precision] = ctx
    return ctx


Exactable = Union[int, Fraction]


def _raw_from_fraction(value: Fraction, precision: int):
    p, q = value.numerator, value.denominator
    return (
        from_rational(p, q, precision, "f"),
        from_rational(p, q, precision, "c"),
    )


@dataclass(frozen=True)
class Interval:
    """Directed-rounded enclosure [lo, hi] at a fixed working precision."""

    precision: int
    _val: object  # ivmpf from the context for ``precision``

    # -- construction -------------------------------------------------

    @classmethod
    def from_exact(cls, value: Exactable, precision: Optional[int] = None) -> "Interval":
        precision = default_precision() if precision is None else precision
        frac = Fraction(value)
        ctx = _context(precision)
        return cls(precision, ctx.make_mpf(_raw_from_fraction(frac, precision)))

    @classmethod
    def from_endpoints(
        cls, lo: Exactable, hi: Exactable, precision: Optional[int] = None
    ) -> "Interval":
        precision = default_precision() if precision is None else precision
        flo, fhi = Fraction(lo), Fraction(hi)
        if flo > fhi:
            raise NumericsError(f"lo {flo} > hi {fhi}")
        ctx = _context(precision)
        raw = (
            _raw_from_fraction(flo, precision)[0],
            _raw_from_fraction(fhi, precision)[1],
        )
        return cls(precision, ctx.make_mpf(raw))

    # -- exact endpoint access ----------------------------------------

    @property
    def lo(self) -> Fraction:
        p, q = to_rational(self._val._mpi_[0])
        return Fraction(int(p), int(q))

    @property
    def hi(self) -> Fraction:
        p, q = to_rational(self._val._mpi_[1])
        return Fraction(int(p), int(q))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self) -> float:
        return (float(self.lo) + float(self.hi)) / 2

    def __repr__(self) -> str:
        return f"Interval[{float(self.lo)!r}, {float(self.hi)!r}]@{self.precision}"

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other, precision: int):
        ctx = _context(precision)
        if isinstance(other, Interval):
            return ctx.convert(other._val)
        if isinstance(other, (int, Fraction)):
            return ctx.make_mpf(_raw_from_fraction(Fraction(other), precision))
        raise NumericsError(f"cannot mix Interval with {type(other).__name__}")

    def _binary(self, other, op):
        precision = max(
            self.precision, other.precision if isinstance(other, Interval) else 0
        )
        ctx = _context(precision)
        a = ctx.convert(self._val)
        b = self._coerce(other, precision)
        return Interval(precision, op(a, b))

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        divisor = other if isinstance(other, Interval) else Interval.from_exact(
            other, self.precision
        )
        if divisor.lo <= 0 <= divisor.hi:
            raise NumericsError(f"division by interval containing 0: {divisor!r}")
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        if self.lo <= 0 <= self.hi:
            raise NumericsError(f"division by interval containing 0: {self!r}")
        return self._binary(other, lambda a, b: b / a)

    def __neg__(self):
        return Interval(self.precision, -self._val)

    def pow_int(self, exponent: int) -> "Interval":
        if not isinstance(exponent, int):
            raise NumericsError(f"pow_int needs an integer exponent, got {exponent!r}")
        if exponent < 0:
            return 1 / self.pow_int(-exponent)
        ctx = _context(self.precision)
        return Interval(self.precision, ctx.convert(self._val) ** exponent)

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise NumericsError(f"sqrt of interval with negative lo: {self!r}")
        ctx = _context(self.precision)
        return Interval(self.precision, ctx.sqrt(ctx.convert(self._val)))

    def exp(self) -> "Interval":
        if self.hi > _MAX_EXP_ARG:
            raise NumericsError(f"exp argument out of guarded range: {self!r}")
        ctx = _context(self.precision)
        return Interval(self.precision, ctx.exp(ctx.convert(self._val)))

    def cos(self) -> "Interval":
        ctx = _context(self.precision)
        return Interval(self.precision, ctx.cos(ctx.convert(self._val)))

    def sin(self) -> "Interval":
        ctx = _context(self.precision)
        return Interval(self.precision, ctx.sin(ctx.convert(self._val)))

    def with_precision(self, precision: int) -> "Interval":
        """Same enclosure re-homed (endpoints re-rounded outward if needed)."""
        ctx = _context(precision)
        return Interval(precision, ctx.convert(self._val))

    # -- predicates ---------------------------------------------------

    def contains(self, value: Exactable) -> bool:
        frac = Fraction(value)
        return self.lo <= frac <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    # -- serialization ------------------------------------------------

    def to_string(self, digits: int = 20) -> str:
        """Decimal "[lo,hi]" with outward rounding of the printed digits."""
        import decimal

        with decimal.localcontext() as dctx:
            dctx.prec = digits
            dctx.rounding = decimal.ROUND_FLOOR
            lo = decimal.Decimal(self.lo.numerator) / decimal.Decimal(
                self.lo.denominator
            )
            dctx.rounding = decimal.ROUND_CEILING
            hi = decimal.Decimal(self.hi.numerator) / decimal.Decimal(
                self.hi.denominator
            )
        return f"[{lo},{hi}]"


def pi(precision: Optional[int] = None) -> Interval:
    """Enclosure of pi."""
    precision = default_precision() if precision is None else precision
    ctx = _context(precision)
    return Interval(precision, +ctx.pi)


def compare(a: Interval, b: Interval) -> Optional[bool]:
    """True if a < b definitely, False if a > b definitely, None on overlap.

    Touching endpoints count as overlap: a definite answer requires strict
    separation of the enclosures.
    """
    if a.hi < b.lo:
        return True
    if b.hi < a.lo:
        return False
    return None


# -- mu_k(n) ----------------------------------------------------------

# mu_k(n) = coeff * pi * sqrt(radicand * n), table-driven
_MU_TABLE: dict[int, tuple[Fraction, int]] = {
    2: (Fraction(1, 2), 2),
    3: (Fraction(1, 3), 6),
    4: (Fraction(1, 2), 3),
    5: (Fraction(2, 5), 5),
    6: (Fraction(1, 6), 30),
    7: (Fraction(1, 7), 42),
    8: (Fraction(1, 4), 14),
    9: (Fraction(2, 3), 2),
}


@dataclass(frozen=True)
class MuValue:
    """Enclosure of the Bessel argument mu_k(n)."""

    k: int
    n: int
    value: Interval


def mu(k: int, n: int, precision: Optional[int] = None) -> MuValue:
    """mu_k(n) = c_k * pi * sqrt(r_k * n) from the eight-entry table."""
    if k not in _MU_TABLE:
        raise NumericsError(f"mu is defined for k in 2..9, got {k}")
    if n < 0:
        raise NumericsError(f"n must be >= 0, got {n}")
    precision = default_precision() if precision is None else precision
    coeff, radicand = _MU_TABLE[k]
    root = Interval.from_exact(radicand * n, precision).sqrt()
    return MuValue(k, n, pi(precision) * coeff * root)


# -- Bessel I1 --------------------------------------------------------


def bessel_i1(s: Interval) -> Interval:
    """Enclosure of the modified Bessel function I1.

    Ascending series sum_{m>=0} (s/2)^(2m+1) / (m! (m+1)!), truncated when
    the next term drops below 2^(-precision-8) of the partial sum, plus a
    geometric tail majorant with proven ratio < 1/2.
    """
    if s.lo < 0:
        raise NumericsError(f"bessel_i1 needs s >= 0, got {s!r}")
    precision = s.precision
    if s.hi == 0:
        return Interval.from_exact(0, precision)
    half = s / 2
    half_sq = half * half
    term = half  # m = 0 term
    total = term
    cutoff = Fraction(1, 2 ** (precision + 8))
    m = 0
    while True:
        m += 1
        term = term * half_sq / (m * (m + 1))
        ratio_hi = half_sq.hi / (Fraction((m + 1) * (m + 2)))
        scale = max(total.lo, Fraction(1))
        if term.hi <= cutoff * scale and ratio_hi < Fraction(1, 2):
            # unused tail: term * (1 + q + q^2 + ...) with q = ratio_hi < 1/2
            tail_hi = term.hi / (1 - ratio_hi)
            tail = Interval.from_endpoints(0, tail_hi, precision)
            return total + tail
        total = total + term
        if m > 10 * precision + 100000:
            raise NumericsError("bessel_i1 series failed to converge")


# E_I(s) = 1 - 3/(8s) - 15/(128 s^2) - 105/(1024 s^3)
#            - 4725/(32768 s^4) - 72765/(262144 s^5)
_EI_COEFFS = (
    Fraction(3, 8),
    Fraction(15, 128),
    Fraction(105, 1024),
    Fraction(4725, 32768),
    Fraction(72765, 262144),
)


def e_i(s: Interval) -> Interval:
    """The printed six-term asymptotic correction polynomial in 1/s."""
    if s.lo <= 0:
        raise NumericsError(f"e_i needs s > 0, got {s!r}")
    inv = 1 / s
    total = Interval.from_exact(1, s.precision)
    power = Interval.from_exact(1, s.precision)
    for c in _EI_COEFFS:
        power = power * inv
        total = total - power * c
    return total


def bessel_i1_upper_simple(s: Interval) -> Interval:
    """The elementary bound sqrt(2/(pi*s)) * e^s, valid for s >= 1."""
    if s.lo < 1:
        raise NumericsError(f"simple I1 bound needs s >= 1, got {s!r}")
    p = pi(s.precision)
    return (2 / (p * s)).sqrt() * s.exp()


def bessel_i1_bracket(s: Interval) -> tuple[Interval, Interval]:
    """Two-sided bound e^s/sqrt(2 pi s) * (E_I(s) -/+ 31/s^6), valid s >= 26."""
    if s.lo < 26:
        raise NumericsError(f"two-sided I1 bound needs s >= 26, got {s!r}")
    p = pi(s.precision)
    front = s.exp() / (2 * p * s).sqrt()
    wiggle = 31 / s.pow_int(6)
    core = e_i(s)
    return front * (core - wiggle), front * (core + wiggle)


# -- Dedekind sums ----------------------------------------------------


def dedekind_sum(h: int, j: int) -> Fraction:
    """Exact s(h, j) by the printed O(j) sawtooth-product sum.

    Since gcd(h, j) = 1, h*r/j is never an integer for 0 < r < j, so the
    printed form (x - floor(x) - 1/2) agrees with the sawtooth ((x)).
    """
    if j < 1:
        raise NumericsError(f"j must be >= 1, got {j}")
    if math.gcd(h, j) != 1:
        raise NumericsError(f"gcd({h}, {j}) != 1")
    total = Fraction(0)
    for r in range(1, j):
        left = Fraction(r, j) - Fraction(1, 2)
        hr = h * r
        right = Fraction(hr, j) - (hr // j) - Fraction(1, 2)
        total += left * right
    return total
