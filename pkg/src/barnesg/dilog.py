"""Dilogarithm on the closed unit disk via the Debye function.

Li2(z) = D(-ln(1-z)) with D(w) = integral of u/(e^u - 1) over [0, w].  The
Debye Taylor series converges for |w| < 2 pi; for |z| <= 1 with
Re(z) <= 1/2 the argument satisfies |ln(1-z)| <= pi/3, so terms decay like
6^(-2n).  Points with Re(z) > 1/2 are mapped back by
Li2(z) = -Li2(1-z) + pi^2/6 - ln(1-z) ln(z).

This is the arbitrary-precision implementation; the machine-precision
tier uses the same algorithm inside the evaluation kernels.
"""

from __future__ import annotations

from mpmath import mp, mpc, mpf

from .constants import bernoulli
from .errors import DomainError
from .precision import PrecisionContext

# Series order caps per tier: the Omega_1 bound |w| <= pi/3 makes 40 terms
# ample for double precision and 80 for extended.
DEBYE_ORDER_DOUBLE = 40
DEBYE_ORDER_EXTENDED = 80

_debye_cache: dict[int, list[mpf]] = {}


def debye_coefficients(order: int, ctx: PrecisionContext) -> list[mpf]:
    """Coefficients B_{2n}/(2n+1)! of w^(2n+1) for n = 1..order."""
    coeffs = _debye_cache.setdefault(ctx.digits, [])
    with ctx.workdps():
        while len(coeffs) < order:
            n = len(coeffs) + 1
            b = bernoulli(2 * n)
            coeffs.append(mpf(b.numerator) / b.denominator / mp.factorial(2 * n + 1))
    return coeffs[:order]


def debye_D(w, ctx: PrecisionContext) -> mpc:
    """Taylor sum of the Debye function; requires |w| < 2 pi."""
    with ctx.workdps():
        wv = mpc(w)
        if abs(wv) >= 2 * mp.pi:
            raise DomainError(f"Debye series needs |w| < 2*pi, got |w| = {abs(wv)}")
        acc = wv - wv * wv / 4
        w2 = wv * wv
        power = wv * w2  # w^(2n+1) for n = 1
        tol = mpf(10) ** (-ctx.digits - 5)
        n = 1
        while True:
            debye_coefficients(n, ctx)
            term = _debye_cache[ctx.digits][n - 1] * power
            acc += term
            if abs(term) <= tol * max(abs(acc), mpf(1)):
                break
            power *= w2
            n += 1
            if n > 40 * ctx.digits:
                raise ArithmeticError("Debye series failed to converge")
        return acc


def li2(z, ctx: PrecisionContext, region: int = 0) -> mpc:
    """Dilogarithm for |z| <= 1 (small boundary slack for round-off).

    region: 0 picks the half-plane rule automatically; 1 or 2 force the
    Re(z) <= 1/2 or Re(z) > 1/2 path (seam diagnostics).
    """
    with ctx.workdps():
        zv = mpc(z)
        eps = mpf(10) ** (-ctx.digits)
        if abs(zv) > 1 + 10 * eps:
            raise DomainError(f"li2 domain is |z| <= 1, got |z| = {abs(zv)}")
        if zv == 1:
            return mpc(mp.pi**2 / 6)
        if zv == 0:
            return mpc(0)
        if region == 0:
            region = 1 if zv.real <= mpf(1) / 2 else 2
        if region == 1:
            w = -mp.log(1 - zv)
            if abs(w) > mp.pi / 3 + mpf("0.1"):
                raise DomainError(
                    f"Debye argument |ln(1-z)| = {abs(w)} out of the unit-disk range"
                )
            return debye_D(w, ctx)
        return -li2(1 - zv, ctx, region=1) + mp.pi**2 / 6 - mp.log(1 - zv) * mp.log(zv)
