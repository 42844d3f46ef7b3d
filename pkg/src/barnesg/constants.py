"""Number-theoretic constants: Bernoulli numbers, zeta values, gamma, ln A.

Bernoulli numbers are kept as exact rationals so that the tiny alternating
sums built from them downstream stay cancellation-free.  Zeta at even
integers comes from the Bernoulli closed form; odd integers, gamma and
zeta'(2) are computed by Euler-Maclaurin summation with the truncation point
chosen so the first omitted term is below 10**(-digits-10).
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import comb

from mpmath import mp, mpf

from .precision import PrecisionContext

_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention)."""
    if n < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {n}")
    while len(_bernoulli_cache) <= n:
        m = len(_bernoulli_cache)
        if m > 2 and m % 2 == 1:
            _bernoulli_cache.append(Fraction(0))
            continue
        acc = sum(comb(m + 1, j) * _bernoulli_cache[j] for j in range(m))
        _bernoulli_cache.append(Fraction(-acc, m + 1))
    return _bernoulli_cache[n]


def _mpf_fraction(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def zeta_even(n: int, ctx: PrecisionContext) -> mpf:
    """zeta(n) for even n >= 2 via |B_n| (2 pi)^n / (2 n!)."""
    if n < 2 or n % 2:
        raise ValueError(f"even integer >= 2 required, got {n}")
    with ctx.workdps():
        b = abs(bernoulli(n))
        return _mpf_fraction(b) * (2 * mp.pi) ** n / (2 * mp.factorial(n))


def _em_zeta(s, ctx: PrecisionContext, derivative: bool = False) -> mpf:
    """Euler-Maclaurin zeta(s) (or zeta'(s)) for real s != 1.

    Valid as the analytic continuation for s > -2K+1; the correction loop
    stops once the next term falls below 10**(-digits-10).
    """
    digits = ctx.digits
    with mp.workdps(digits + 15):
        s = mpf(s)
        if s == 1:
            raise ValueError("zeta pole at s = 1")
        n_cut = digits + 10
        tol = mpf(10) ** (-digits - 10)
        log_k = [None] + [mp.log(k) for k in range(1, n_cut + 1)] if derivative else None

        power_sum = mpf(0)
        for k in range(1, n_cut + 1):
            term = mpf(k) ** (-s)
            power_sum += -log_k[k] * term if derivative else term

        n = mpf(n_cut)
        ln_n = mp.log(n)
        if derivative:
            acc = power_sum
            acc += -ln_n * n ** (1 - s) / (s - 1) - n ** (1 - s) / (s - 1) ** 2
            acc += ln_n * n ** (-s) / 2
        else:
            acc = power_sum + n ** (1 - s) / (s - 1) - n ** (-s) / 2

        # Correction terms B_2r/(2r)! * (s)_(2r-1) * n^(1-s-2r), differentiated
        # in s when the derivative is requested.
        poch = s                                      # (s)_(2r-1) for r = 1
        poch_log_deriv = 1 / s if derivative else None
        r = 1
        while True:
            b = bernoulli(2 * r)
            base = _mpf_fraction(b) / mp.factorial(2 * r) * poch * n ** (1 - s - 2 * r)
            term = base * (poch_log_deriv - ln_n) if derivative else base
            acc += term
            if abs(term) < tol and (derivative or abs(base) < tol):
                break
            r += 1
            if r > 4 * digits:
                raise ArithmeticError(
                    f"Euler-Maclaurin did not reach tolerance for s={s}"
                )
            f1, f2 = s + 2 * r - 3, s + 2 * r - 2
            poch = poch * f1 * f2
            if derivative:
                if f1 == 0 or f2 == 0:
                    raise ValueError(
                        "zeta_prime at nonpositive integers: evaluate at s +/- h"
                    )
                poch_log_deriv = poch_log_deriv + 1 / f1 + 1 / f2
    with ctx.workdps():
        return +acc


def zeta_int(n: int, ctx: PrecisionContext) -> mpf:
    """zeta(n) for integer n >= 2 at context precision."""
    if n < 2:
        raise ValueError(f"zeta_int requires n >= 2, got {n}")
    if n % 2 == 0:
        return zeta_even(n, ctx)
    return _em_zeta(n, ctx)


def zeta_prime(s, ctx: PrecisionContext) -> mpf:
    """zeta'(s) for real s != 1 by the differentiated Euler-Maclaurin sum."""
    return _em_zeta(s, ctx, derivative=True)


def euler_gamma(ctx: PrecisionContext) -> mpf:
    """Euler-Mascheroni constant via Euler-Maclaurin on H_N - ln N."""
    digits = ctx.digits
    with mp.workdps(digits + 15):
        n_cut = digits + 10
        tol = mpf(10) ** (-digits - 10)
        n = mpf(n_cut)
        harmonic = sum(mpf(1) / k for k in range(1, n_cut + 1))
        acc = harmonic - mp.log(n) - 1 / (2 * n)
        r = 1
        while True:
            term = _mpf_fraction(bernoulli(2 * r)) / (2 * r) * n ** (-2 * r)
            acc += term
            if abs(term) < tol:
                break
            r += 1
            if r > 4 * digits:
                raise ArithmeticError("Euler-Maclaurin for gamma did not converge")
    with ctx.workdps():
        return +acc


def ln_two_pi(ctx: PrecisionContext) -> mpf:
    with ctx.workdps():
        return mp.log(2 * mp.pi)


def ln_glaisher(ctx: PrecisionContext) -> mpf:
    """ln A = 1/12 - zeta'(-1), with zeta'(-1) from the functional equation.

    Differentiating zeta(1-s) = 2 (2 pi)^(-s) cos(pi s/2) Gamma(s) zeta(s)
    at s = 2 gives zeta'(-1) = (1/12) [1 - euler_gamma - ln(2 pi)
    + zeta'(2)/zeta(2)].
    """
    guard = PrecisionContext(ctx.digits + 10)
    with mp.workdps(ctx.digits + 10):
        ratio = zeta_prime(2, guard) / zeta_even(2, guard)
        zp_m1 = (1 - euler_gamma(guard) - mp.log(2 * mp.pi) + ratio) / 12
        val = mpf(1) / 12 - zp_m1
    with ctx.workdps():
        return +val


class ConstantCache:
    """Computed-once constants at a fixed precision; reads are thread-safe."""

    def __init__(self, ctx: PrecisionContext):
        self.ctx = ctx
        self.digits = ctx.digits
        self.zeta_int: dict[int, mpf] = {}

    def zeta(self, n: int) -> mpf:
        if n not in self.zeta_int:
            self.zeta_int[n] = zeta_int(n, self.ctx)
        return self.zeta_int[n]

    @functools.cached_property
    def euler_gamma(self) -> mpf:
        return euler_gamma(self.ctx)

    @functools.cached_property
    def ln_two_pi(self) -> mpf:
        return ln_two_pi(self.ctx)

    @functools.cached_property
    def ln_glaisher(self) -> mpf:
        return ln_glaisher(self.ctx)

    def bernoulli(self, n: int) -> Fraction:
        return bernoulli(n)


_cache_by_digits: dict[int, ConstantCache] = {}


def constant_cache(ctx: PrecisionContext) -> ConstantCache:
    """Shared per-precision constant cache."""
    if ctx.digits not in _cache_by_digits:
        _cache_by_digits[ctx.digits] = ConstantCache(ctx)
    return _cache_by_digits[ctx.digits]
