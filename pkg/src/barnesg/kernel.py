"""The Barnes G kernel f, its derivative, Taylor data at zero and moments.

f(x) = e^(-x) x^(-3) [ (1/2) coth(x/2) - 1/x - x/12 ] for x > 0.  Small x
is served by the even Bernoulli series of the bracket (the closed form
cancels catastrophically there, the bracket being O(x^3)); large x by the
closed form.  Derivatives at zero are evaluated in exact rational
arithmetic and rounded once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp, mpf

from .constants import bernoulli, constant_cache
from .errors import DomainError
from .precision import PrecisionContext

# Below this x the bracket's Bernoulli series is used instead of the closed
# form; the series term ratio there is at most (1/2)^2/(2 pi)^2.
SERIES_SWITCH = 0.5

# x^2 f(x) < 1e-90 beyond here; audits never need to look further out.
TAIL_CUTOFF = 250.0

# Per-precision coefficients B_{2k+4}/(2k+4)! of g(x) = e^x f(x).
_series_cache: dict[int, list[mpf]] = {}


def _series_coeffs(ctx: PrecisionContext, count: int) -> list[mpf]:
    coeffs = _series_cache.setdefault(ctx.digits, [])
    with ctx.workdps():
        while len(coeffs) < count:
            k = len(coeffs)
            b = bernoulli(2 * k + 4)
            coeffs.append(mpf(b.numerator) / b.denominator / mp.factorial(2 * k + 4))
    return coeffs


def derivative_at_zero_fraction(n: int) -> Fraction:
    """n-th derivative of f at 0 as an exact rational."""
    if n < 0:
        raise ValueError(f"derivative order must be >= 0, got {n}")
    acc = Fraction(0)
    for k in range(n // 2 + 1):
        acc += Fraction(bernoulli(2 * k + 4), factorial(n - 2 * k) * factorial(2 * k + 4))
    return (-1) ** n * factorial(n) * acc


def derivative_at_zero(n: int, ctx: PrecisionContext) -> mpf:
    """n-th derivative of f at 0, rounded once to context precision."""
    q = derivative_at_zero_fraction(n)
    with ctx.workdps():
        return mpf(q.numerator) / q.denominator


def _series_pair(x: mpf, ctx: PrecisionContext, want_deriv: bool):
    """g(x) and optionally g'(x) for g(x) = sum B_{2k+4}/(2k+4)! x^(2k)."""
    with ctx.workdps():
        tol = mpf(10) ** (-ctx.digits - 10)
        x2 = x * x
        total = mpf(0)
        dtotal = mpf(0)
        power = mpf(1)  # x^(2k)
        k = 0
        while True:
            c = _series_coeffs(ctx, k + 1)[k]
            term = c * power
            total += term
            if want_deriv and k > 0:
                dtotal += 2 * k * c * power / x if x != 0 else mpf(0)
            if abs(term) < tol:
                break
            power *= x2
            k += 1
        return total, dtotal


def _closed_pair(x: mpf, ctx: PrecisionContext, want_deriv: bool):
    """f and optionally f' from the closed form, for x >= SERIES_SWITCH."""
    with ctx.workdps():
        em1 = mp.expm1(x)
        bracket = 1 / em1 - 1 / x + mpf(1) / 2 - x / 12
        pref = mp.exp(-x) / x**3
        val = pref * bracket
        if not want_deriv:
            return val, None
        dbracket = -mp.exp(x) / em1**2 + 1 / x**2 - mpf(1) / 12
        dval = pref * (dbracket - bracket * (1 + 3 / x))
        return val, dval


def _eval(x, ctx: PrecisionContext, want_deriv: bool):
    with ctx.workdps():
        xv = mpf(x)
        if xv < 0:
            raise DomainError(f"kernel is defined for x >= 0, got {x}")
        if xv < SERIES_SWITCH:
            g, dg = _series_pair(xv, ctx, want_deriv)
            e = mp.exp(-xv)
            return e * g, e * (dg - g) if want_deriv else None
        return _closed_pair(xv, ctx, want_deriv)


def kernel_value(x, ctx: PrecisionContext) -> mpf:
    """f(x) to within a few ulps at context precision; x >= 0."""
    return _eval(x, ctx, False)[0]


def kernel_derivative(x, ctx: PrecisionContext) -> mpf:
    """f'(x) with the same series/closed-form switching as kernel_value."""
    return _eval(x, ctx, True)[1]


def kernel_pair(x, ctx: PrecisionContext) -> tuple[mpf, mpf]:
    """(f(x), f'(x)) sharing one branch evaluation (audit hot path)."""
    val, dval = _eval(x, ctx, True)
    return val, dval


def moment(n: int, ctx: PrecisionContext) -> mpf:
    """Integral of x^n f(x) over (0, inf), from the closed forms."""
    if n < 0:
        raise ValueError(f"moment order must be >= 0, got {n}")
    cache = constant_cache(ctx)
    with ctx.workdps():
        if n == 0:
            return -cache.zeta(3) / (8 * mp.pi**2) + mpf(1) / 72
        if n == 1:
            return cache.ln_glaisher - mpf(1) / 4
        if n == 2:
            return -cache.ln_two_pi / 2 + mpf(11) / 12
        if n == 3:
            return cache.euler_gamma - mpf(7) / 12
        return mp.factorial(n - 3) * (
            cache.zeta(n - 2) - mpf(1) / (n - 3) - mpf(1) / 2 - mpf(n - 2) / 12
        )


@dataclass(frozen=True)
class KernelTables:
    """Precomputed f^(n)(0) and moment sequences at one precision."""

    digits: int
    derivs: tuple[mpf, ...]
    moments: tuple[mpf, ...]

    @classmethod
    def build(cls, n_derivs: int, n_moments: int, ctx: PrecisionContext) -> "KernelTables":
        derivs = tuple(derivative_at_zero(n, ctx) for n in range(n_derivs))
        moments = tuple(moment(n, ctx) for n in range(n_moments))
        return cls(digits=ctx.digits, derivs=derivs, moments=moments)
