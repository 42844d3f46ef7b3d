"""Exponential-sum evaluation and sup-norm error audits.

The audit measures eta1(x) = x^2 (f - phi) and eta2(x) = 3x (f - phi)
+ x^2 (f' - phi') on a dense log grid over [1e-6, 250] with golden-section
refinement around every local extremum, and reports the doubled suprema
(the weighted error bounds of the log-gamma / log-G approximations).
Bounds are numerical, not rigorous; arithmetic runs at >= 50 digits so the
audit noise floor sits far below the measured quantities.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

from mpmath import mp, mpc, mpf

from .errors import DomainError
from .generator import ExpSum
from .kernel import TAIL_CUTOFF, kernel_pair, kernel_value
from .precision import PrecisionContext

AUDIT_MIN_DIGITS = 50
GRID_LO = 1e-6
GRID_POINTS = 4000
_GOLDEN = (5 ** 0.5 - 1) / 2


def expsum_value(e: ExpSum, x, ctx: PrecisionContext) -> mpf:
    """phi(x) = sum c_j exp(-lambda_j x); imaginary parts must cancel."""
    with ctx.workdps():
        xv = mpf(x)
        if xv < 0:
            raise DomainError(f"phi is evaluated on x >= 0, got {x}")
        acc = mpc(0)
        scale = mpf(0)
        for lam, c in e.terms:
            t = c * mp.exp(-lam * xv)
            acc += t
            scale += abs(t)
        _check_imag(acc, scale, ctx)
        return acc.real


def expsum_derivative(e: ExpSum, x, ctx: PrecisionContext) -> mpf:
    """phi'(x) = -sum c_j lambda_j exp(-lambda_j x)."""
    with ctx.workdps():
        xv = mpf(x)
        if xv < 0:
            raise DomainError(f"phi' is evaluated on x >= 0, got {x}")
        acc = mpc(0)
        scale = mpf(0)
        for lam, c in e.terms:
            t = -c * lam * mp.exp(-lam * xv)
            acc += t
            scale += abs(t)
        _check_imag(acc, scale, ctx)
        return acc.real


def _check_imag(acc: mpc, scale: mpf, ctx: PrecisionContext) -> None:
    if abs(acc.imag) > mpf(10) ** (-ctx.digits + 10) * max(scale, mpf(10) ** (-ctx.digits)):
        raise ArithmeticError(
            "imaginary parts failed to cancel; table is not conjugate-closed"
        )


def _expsum_pair(e: ExpSum, x: mpf) -> tuple[mpf, mpf]:
    """(phi(x), phi'(x)) sharing one exponential per term (audit hot path)."""
    acc = mpc(0)
    dacc = mpc(0)
    for lam, c in e.terms:
        t = c * mp.exp(-lam * x)
        acc += t
        dacc -= lam * t
    return acc.real, dacc.real


def transform_value(e: ExpSum, z, ctx: PrecisionContext | None = None) -> mpc:
    """Phi(z) = sum c_j / (z + lambda_j)^2."""
    with mp.workdps(ctx.digits) if ctx else mp.extraprec(0):
        zv = mpc(z)
        acc = mpc(0)
        for lam, c in e.terms:
            d = zv + lam
            if d == 0:
                raise DomainError(f"pole of Phi at z = {z}")
            acc += c / d**2
        return acc


def transform_derivative(e: ExpSum, z, ctx: PrecisionContext | None = None) -> mpc:
    """Phi'(z) = -2 sum c_j / (z + lambda_j)^3."""
    with mp.workdps(ctx.digits) if ctx else mp.extraprec(0):
        zv = mpc(z)
        acc = mpc(0)
        for lam, c in e.terms:
            d = zv + lam
            if d == 0:
                raise DomainError(f"pole of Phi' at z = {z}")
            acc += c / d**3
        return -2 * acc


@dataclass
class AuditReport:
    """Doubled weighted suprema and the sampled error curves."""

    eps1: float
    eps2: float
    argmax1: float
    argmax2: float
    sup_plain: float
    argmax_plain: float
    grid_points: int
    digits: int
    samples: list[tuple[float, float, float]] = field(repr=False, default_factory=list)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "eta1", "eta2"])
            for x, e1, e2 in self.samples:
                writer.writerow([repr(x), repr(e1), repr(e2)])


def _log_grid(points: int):
    lo, hi = mp.log(mpf(GRID_LO)), mp.log(mpf(TAIL_CUTOFF))
    step = (hi - lo) / (points - 1)
    return [mp.exp(lo + k * step) for k in range(points)]


def _refine_peak(fun, xa, xb, xc, iters: int = 48):
    """Golden-section maximisation of |fun| on [xa, xc] containing xb."""
    a, c = xa, xc
    b = a + _GOLDEN * (c - a)
    d = c - _GOLDEN * (c - a)
    fb, fd = abs(fun(b)), abs(fun(d))
    for _ in range(iters):
        if fb > fd:
            a, d, fd = d, b, fb
            b = a + _GOLDEN * (c - a)
            fb = abs(fun(b))
        else:
            c, b, fb = b, d, fd
            d = c - _GOLDEN * (c - a)
            fd = abs(fun(d))
    return (b, fb) if fb > fd else (d, fd)


def _scan(values, xs, fun):
    """Best value over the grid plus golden refinement of each local max."""
    best_x, best = xs[0], abs(values[0])
    if abs(values[-1]) > best:
        best_x, best = xs[-1], abs(values[-1])
    for i in range(1, len(values) - 1):
        v = abs(values[i])
        if v >= abs(values[i - 1]) and v >= abs(values[i + 1]):
            x_ref, v_ref = _refine_peak(fun, xs[i - 1], xs[i], xs[i + 1])
            if v_ref > best:
                best_x, best = x_ref, v_ref
            if v > best:
                best_x, best = xs[i], v
    return best_x, best


def audit(e: ExpSum, digits: int = AUDIT_MIN_DIGITS, points: int = GRID_POINTS) -> AuditReport:
    """Weighted sup-norm audit of an exponential-sum table."""
    digits = max(digits, AUDIT_MIN_DIGITS)
    ctx = PrecisionContext(digits)
    with ctx.workdps():
        xs = _log_grid(points)
        eta1_vals, eta2_vals, diff_vals = [], [], []
        for x in xs:
            fv, fd = kernel_pair(x, ctx)
            pv, pd = _expsum_pair(e, x)
            diff = fv - pv
            eta1_vals.append(x * x * diff)
            eta2_vals.append(3 * x * diff + x * x * (fd - pd))
            diff_vals.append(diff)

        def eta1_of(x):
            fv, _ = kernel_pair(x, ctx)
            pv, _ = _expsum_pair(e, x)
            return x * x * (fv - pv)

        def eta2_of(x):
            fv, fd = kernel_pair(x, ctx)
            pv, pd = _expsum_pair(e, x)
            return 3 * x * (fv - pv) + x * x * (fd - pd)

        def diff_of(x):
            fv, _ = kernel_pair(x, ctx)
            pv, _ = _expsum_pair(e, x)
            return fv - pv

        x1, m1 = _scan(eta1_vals, xs, eta1_of)
        x2, m2 = _scan(eta2_vals, xs, eta2_of)
        xp, m_plain = _scan(diff_vals, xs, diff_of)
        samples = [
            (float(x), float(v1), float(v2))
            for x, v1, v2 in zip(xs, eta1_vals, eta2_vals)
        ]
        return AuditReport(
            eps1=float(2 * m1),
            eps2=float(2 * m2),
            argmax1=float(x1),
            argmax2=float(x2),
            sup_plain=float(m_plain),
            argmax_plain=float(xp),
            grid_points=points,
            digits=digits,
            samples=samples,
        )


def sup_abs_diff(e: ExpSum, digits: int = AUDIT_MIN_DIGITS, points: int = GRID_POINTS) -> float:
    """sup over x >= 0 of |f(x) - phi(x)| (unweighted, for table comparisons)."""
    digits = max(digits, AUDIT_MIN_DIGITS)
    ctx = PrecisionContext(digits)
    with ctx.workdps():
        xs = _log_grid(points)

        def diff_of(x):
            fv, _ = kernel_pair(x, ctx)
            pv, _ = _expsum_pair(e, x)
            return fv - pv

        vals = [diff_of(x) for x in xs]
        _, best = _scan(vals, xs, diff_of)
        # The weightless sup can sit at the left edge; probe down to 0.
        edge = abs(kernel_value(0, ctx) - expsum_value(e, 0, ctx))
        _, v_ref = _refine_peak(diff_of, mpf(0), mpf(GRID_LO), xs[1])
        return float(max(best, edge, v_ref))
