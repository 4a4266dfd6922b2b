"""Extended-precision arithmetic substrate.

Everything in the library computes with mpmath arbitrary-precision values
under an explicit :class:`PrecisionContext`.  Real values are ``mpmath.mpf``
(aliased ``BigReal``), complex values ``mpmath.mpc`` (``BigComplex``).
Inputs that must be classified exactly (integer multiples of pi, dyadic
fractions of pi) enter as :class:`ExactArgument`, a pair of rationals
``rational_part + pi_multiple*pi``; floating inputs can never be classified
reliably, so classification never looks at an mpf.

All functions here are pure: the result depends only on the arguments and
the context, and repeated calls give identical values.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath
from mpmath import mpf, mpc

from .errors import DomainError

BigReal = mpf
BigComplex = mpc

_RationalLike = "int | str | Fraction"


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(
        f"exact rational expected (int, str or Fraction), got {type(value).__name__}; "
        "floats are refused because they carry binary rounding noise"
    )


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision and truncation policy for every evaluation.

    digits          decimal digits of working precision (>= 10)
    tail_tolerance  acceptable truncation remainder; default 10**-(digits-10)
    max_terms       hard cap on product/sum length
    guard_digits    extra digits carried internally, grown further for
                    argument reduction of q**j * a
    rel_tolerance   relative tolerance used in pass/fail verdicts;
                    default 10**-(digits-10)
    """

    digits: int = 50
    tail_tolerance: object = None
    max_terms: int = 256
    guard_digits: int = 10
    rel_tolerance: object = None

    def __post_init__(self):
        if self.digits < 10:
            raise ValueError("digits must be >= 10")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.guard_digits < 0:
            raise ValueError("guard_digits must be >= 0")
        if self.tail_tolerance is not None and not float(self.tail_tolerance) > 0:
            raise ValueError("tail_tolerance must be > 0")
        if self.rel_tolerance is not None and not float(self.rel_tolerance) > 0:
            raise ValueError("rel_tolerance must be > 0")

    @property
    def working_dps(self) -> int:
        return self.digits + self.guard_digits

    def workprec(self, extra: int = 0):
        """Context manager raising mpmath to at least the working precision.

        Never downgrades: a helper called from a block that already runs at
        elevated precision inherits that precision, so composite evaluations
        keep their accuracy budget.
        """
        return mpmath.workdps(max(mpmath.mp.dps, self.working_dps + extra))

    def tail_eps(self) -> mpf:
        """Truncation tolerance as an mpf (evaluate under workprec)."""
        if self.tail_tolerance is None:
            return mpf(10) ** (-(self.digits - 10))
        return mpf(str(self.tail_tolerance))

    def rel_eps(self) -> mpf:
        if self.rel_tolerance is None:
            return mpf(10) ** (-(self.digits - 10))
        return mpf(str(self.rel_tolerance))

    def cancellation_guard(self) -> int:
        """Extra digits for series whose terms carry exponentially growing
        weights: factor-level rounding noise is amplified by up to
        1/tail_tolerance at the truncation point."""
        if self.tail_tolerance is None:
            tol_digits = self.digits - 10
        else:
            tol_digits = max(0, math.ceil(-math.log10(float(self.tail_tolerance))))
        return tol_digits + 8

    def with_digits(self, digits: int) -> "PrecisionContext":
        return PrecisionContext(
            digits=digits,
            tail_tolerance=self.tail_tolerance,
            max_terms=self.max_terms,
            guard_digits=self.guard_digits,
            rel_tolerance=self.rel_tolerance,
        )


_PI_TERM = re.compile(r"^(?P<coef>[^*]*?)\*?\s*pi\s*(?:/\s*(?P<den>\d+)\s*)?$", re.IGNORECASE)


@dataclass(frozen=True)
class ExactArgument:
    """Exact input point ``rational_part + pi_multiple * pi``.

    Both components are stored in lowest terms (``Fraction`` does this), so
    the decomposition a = 2**m * (2n-1) * pi of an integer pi-multiple is
    decidable exactly, as is membership in the dyadic exclusion set
    (2n+1) * pi / 2**k.
    """

    rational_part: Fraction = Fraction(0)
    pi_multiple: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "rational_part", _as_fraction(self.rational_part))
        object.__setattr__(self, "pi_multiple", _as_fraction(self.pi_multiple))

    # --- construction -----------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "ExactArgument":
        """Parse the textual form ``p/q + r/s*pi``.

        Accepted terms: plain rationals ("3", "-1/2", "0.25" taken as the
        exact decimal fraction), and pi terms ("pi", "-pi", "3/8*pi",
        "pi/4", "2*pi").
        """
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty argument")
        # split into signed terms; +/- inside an exponent does not split
        terms = [t for t in re.split(r"(?<![eE])(?=[+-])", s) if t]
        if "".join(terms) != s:
            raise ValueError(f"cannot parse argument {text!r}")
        rat = Fraction(0)
        pim = Fraction(0)
        for term in terms:
            sign = 1
            body = term
            if body[0] in "+-":
                sign = -1 if body[0] == "-" else 1
                body = body[1:]
            m = _PI_TERM.match(body)
            if m:
                coef_text = m.group("coef")
                coef = Fraction(1) if coef_text in ("", "1") else Fraction(coef_text)
                if m.group("den"):
                    coef /= int(m.group("den"))
                pim += sign * coef
            else:
                rat += sign * Fraction(body)
        return cls(rat, pim)

    @classmethod
    def from_rational(cls, value) -> "ExactArgument":
        return cls(_as_fraction(value), Fraction(0))

    @classmethod
    def pi_fraction(cls, value) -> "ExactArgument":
        return cls(Fraction(0), _as_fraction(value))

    # --- presentation -----------------------------------------------------

    def __str__(self) -> str:
        if not self.pi_multiple:
            return str(self.rational_part)
        mag = abs(self.pi_multiple)
        pi_term = "pi" if mag == 1 else f"{mag}*pi"
        if not self.rational_part:
            return pi_term if self.pi_multiple > 0 else f"-{pi_term}"
        sign = "+" if self.pi_multiple > 0 else "-"
        return f"{self.rational_part} {sign} {pi_term}"

    # --- algebra ----------------------------------------------------------

    def scaled(self, factor) -> "ExactArgument":
        f = _as_fraction(factor)
        return ExactArgument(self.rational_part * f, self.pi_multiple * f)

    def is_zero(self) -> bool:
        return self.rational_part == 0 and self.pi_multiple == 0

    def is_pi_integer_multiple(self) -> bool:
        """True when a = k*pi for a nonzero integer k."""
        return (
            self.rational_part == 0
            and self.pi_multiple != 0
            and self.pi_multiple.denominator == 1
        )

    def is_sin_zero(self) -> bool:
        """sin(a) == 0 exactly (a = k*pi, including a = 0)."""
        return self.rational_part == 0 and self.pi_multiple.denominator == 1

    def is_tan_pole(self) -> bool:
        """tan(a) has a pole exactly (a = pi/2 + k*pi)."""
        return self.rational_part == 0 and (self.pi_multiple - Fraction(1, 2)).denominator == 1

    def is_cos_zero(self) -> bool:
        return self.is_tan_pole()

    # --- realization ------------------------------------------------------

    def realize(self, ctx: PrecisionContext, extra: int = 0) -> mpf:
        """Round the exact point to an mpf at the context precision."""
        with ctx.workprec(extra):
            value = _fraction_to_mpf(self.rational_part)
            if self.pi_multiple:
                value += _fraction_to_mpf(self.pi_multiple) * (+mpmath.pi)
            return +value

    def signum(self) -> int:
        """Exact sign of the realized value."""
        if self.is_zero():
            return 0
        # pi > 3 > any interference only matters when the two terms have
        # opposite signs; decide with an interval argument using 3 < pi < 22/7
        lo = self.rational_part + self.pi_multiple * (3 if self.pi_multiple > 0 else Fraction(22, 7))
        hi = self.rational_part + self.pi_multiple * (Fraction(22, 7) if self.pi_multiple > 0 else 3)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        # fall back to a numeric check at modest precision
        with mpmath.workdps(40):
            v = _fraction_to_mpf(self.rational_part) + _fraction_to_mpf(self.pi_multiple) * (+mpmath.pi)
            return 0 if v == 0 else (1 if v > 0 else -1)


def _fraction_to_mpf(frac: Fraction) -> mpf:
    return mpf(frac.numerator) / mpf(frac.denominator)


def fraction_to_mpf(frac, ctx: PrecisionContext, extra: int = 0) -> mpf:
    with ctx.workprec(extra):
        return _fraction_to_mpf(_as_fraction(frac))


def realize(arg: ExactArgument, ctx: PrecisionContext) -> mpf:
    """Module-level spelling of :meth:`ExactArgument.realize`."""
    return arg.realize(ctx)


# --- elementary functions ---------------------------------------------------

_ELEMENTARY = {
    "sin": mpmath.sin,
    "cos": mpmath.cos,
    "tan": mpmath.tan,
    "cot": mpmath.cot,
    "sinh": mpmath.sinh,
    "tanh": mpmath.tanh,
    "exp": mpmath.exp,
    "ln": mpmath.log,
}


def elementary(fn: str, x, ctx: PrecisionContext) -> mpf:
    """Evaluate one of sin, cos, tan, cot, sinh, tanh, exp, ln.

    ``x`` may be an mpf or an :class:`ExactArgument`; exact arguments are
    checked against poles before realization (tan at pi/2 + k*pi, cot at
    k*pi), which is the only reliable pole test.
    """
    if fn not in _ELEMENTARY:
        raise ValueError(f"unsupported elementary function {fn!r}")
    if isinstance(x, ExactArgument):
        if fn == "tan" and x.is_tan_pole():
            raise DomainError(f"tan pole at {x}")
        if fn == "cot" and x.is_sin_zero():
            raise DomainError(f"cot pole at {x}")
        xv = x.realize(ctx)
    else:
        with ctx.workprec():
            xv = mpf(x) if not isinstance(x, mpf) else x
    with ctx.workprec():
        if fn == "ln" and not xv > 0:
            raise DomainError("ln requires a positive argument")
        if fn == "cot" and xv == 0:
            raise DomainError("cot pole at 0")
        return +_ELEMENTARY[fn](xv)


def reduce_scaled(arg: ExactArgument, q: int, j: int, ctx: PrecisionContext) -> mpf:
    """(q**j * a) mod 2*pi in [0, 2*pi).

    cos(q**j * a) loses about j*log10(q) digits to cancellation, so the
    reduction runs at digits + ceil(j*log10(q)) + guard_digits and the
    pi-part of the argument is reduced exactly in rational arithmetic first.
    """
    if j < 0:
        raise ValueError("scale exponent j must be >= 0")
    if q < 2:
        raise ValueError("base q must be an integer >= 2")
    scale = Fraction(q) ** j
    rat = arg.rational_part * scale
    pim = arg.pi_multiple * scale
    # exact reduction of the pi multiple modulo 2
    pim -= 2 * (pim / 2).__floor__()
    extra = math.ceil(j * math.log10(q)) if j else 0
    with ctx.workprec(extra):
        x = _fraction_to_mpf(rat) + _fraction_to_mpf(pim) * (+mpmath.pi)
        twopi = 2 * (+mpmath.pi)
        k = mpmath.floor(x / twopi)
        r = x - k * twopi
        if r < 0:
            r += twopi
        if r >= twopi:
            r -= twopi
        return +r


def pow_principal(z, w, ctx: PrecisionContext) -> mpc:
    """Principal-branch power exp(w*(ln|z| + i*Arg z)) with Arg in (-pi, pi].

    For positive real z the real code path is taken, so the result agrees
    exactly with exp(w*ln z).  z == 0 is admitted only for w > 0.
    """
    with ctx.workprec():
        w = mpf(w) if not isinstance(w, mpf) else w
        if isinstance(z, (int, float, Fraction)):
            z = mpf(z)
        if isinstance(z, mpf):
            if z > 0:
                return mpc(mpmath.exp(w * mpmath.log(z)), 0)
            z = mpc(z, 0)
        if z == 0:
            if w > 0:
                return mpc(0, 0)
            raise DomainError("0 cannot be raised to a non-positive power")
        if z.imag == 0 and z.real > 0:
            return mpc(mpmath.exp(w * mpmath.log(z.real)), 0)
        r = abs(z)
        theta = mpmath.atan2(z.imag, z.real)
        if theta <= -mpmath.pi:
            theta = +mpmath.pi
        mag = mpmath.exp(w * mpmath.log(r))
        ang = w * theta
        return mpc(mag * mpmath.cos(ang), mag * mpmath.sin(ang))


# --- decimal serialization ---------------------------------------------------

def to_decimal(x: mpf, ctx: PrecisionContext) -> str:
    """Serialize at the context's digit count; round-trips through
    :func:`from_decimal` reproduce the same string."""
    with ctx.workprec():
        return mpmath.nstr(x, ctx.digits, strip_zeros=False)


def from_decimal(text: str, ctx: PrecisionContext) -> mpf:
    with ctx.workprec():
        return mpf(text)


def complex_to_decimal(z: mpc, ctx: PrecisionContext) -> str:
    return f"{to_decimal(z.real, ctx)} {'+' if z.imag >= 0 else '-'} {to_decimal(abs(z.imag), ctx)}j"
