"""ln Gamma and ln G on the cut plane, at two fixed evaluation tiers.

The half-plane Re(z) >= 3/2 is served directly by the rational-transform
formulas; 1/2 <= Re(z) < 3/2 goes through one functional-equation shift;
Re(z) < 1/2 uses the reflection formulas for Im(z) > 0 (and for real z in
(0, 1/2)), with Im(z) < 0 defined by conjugation.  Real z <= 0 is the
branch cut and is rejected.

Tiers: "double" evaluates with 80-bit extended intermediates over the
15-term table (absolute accuracy ~1e-16); "extended" runs mpmath at 36
digits over the 45-term table (~1e-31).  Both are fed by pre-rounded
coefficient tables, never by generator-precision arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from mpmath import mp, mpc, mpf

from . import _backend, store
from ._constants_str import LN_GLAISHER_STR, LN_TWO_PI_STR, PI_STR
from .dilog import DEBYE_ORDER_DOUBLE, DEBYE_ORDER_EXTENDED, debye_coefficients
from .dilog import li2 as li2_mp
from .errors import DomainError, EvalOverflowError
from .generator import ExpSum
from .precision import PrecisionContext, to_decimal_sci

EXTENDED_DPS = 36

# log of the largest finite double / x87 extended value: exp() beyond this
# leaves the tier's exponent range.
_DOUBLE_EXP_LIMIT = math.log(np.finfo(np.float64).max)
_EXTENDED_EXP_LIMIT = 11355.8

# Audited weighted-sup bounds of the builtin tables.
_BUILTIN_BOUNDS = {"double": (1.0e-16, 3.0e-16), "extended": (1.0e-31, 3.0e-31)}

_LD = np.longdouble


def _ld_from_mpf(x) -> np.longdouble:
    return _LD(to_decimal_sci(x, 25))


@dataclass
class EvalProfile:
    """A tier plus the coefficient table it evaluates with."""

    tier: str
    table: ExpSum
    eps1: float | None = None
    eps2: float | None = None

    @classmethod
    def double(cls, table: ExpSum | None = None) -> "EvalProfile":
        bounds = _BUILTIN_BOUNDS["double"] if table is None else (None, None)
        return cls("double", table or store.builtin_p15(), *bounds)

    @classmethod
    def extended(cls, table: ExpSum | None = None) -> "EvalProfile":
        bounds = _BUILTIN_BOUNDS["extended"] if table is None else (None, None)
        return cls("extended", table or store.load_p45(), *bounds)

    @cached_property
    def _ops(self):
        if self.tier == "double":
            return _DoubleOps(self.table)
        if self.tier == "extended":
            return _MpOps(self.table)
        raise ValueError(f"unknown tier {self.tier!r}")

    @property
    def print_digits(self) -> int:
        return 17 if self.tier == "double" else EXTENDED_DPS


class _DoubleOps:
    """Machine-tier scalar ops: numpy extended floats + kernel backend."""

    def __init__(self, table: ExpSum):
        self.lam_re = np.array([_ld_from_mpf(l.real) for l, _ in table.terms])
        self.lam_im = np.array([_ld_from_mpf(l.imag) for l, _ in table.terms])
        self.c_re = np.array([_ld_from_mpf(c.real) for _, c in table.terms])
        self.c_im = np.array([_ld_from_mpf(c.imag) for _, c in table.terms])
        ctx = PrecisionContext(30)
        self.debye = np.array(
            [_ld_from_mpf(c) for c in debye_coefficients(DEBYE_ORDER_DOUBLE, ctx)]
        )
        self.pi = _LD(PI_STR)
        self.ln2pi = _LD(LN_TWO_PI_STR)
        self.one = np.clongdouble(1)
        self.i_pi = np.clongdouble(1j) * self.pi
        self.i_pi_half = self.i_pi / 2
        self.five_sixth = _LD(5) / 6
        # -1/(2 pi i) = i/(2 pi)
        self.li2_coef = np.clongdouble(1j) / (2 * self.pi)

    def convert(self, z) -> np.clongdouble:
        return np.clongdouble(complex(z))

    @staticmethod
    def re(z) -> float:
        return float(z.real)

    @staticmethod
    def im(z) -> float:
        return float(z.imag)

    @staticmethod
    def conj(z):
        return np.conj(z)

    @staticmethod
    def log(z):
        return np.log(z)

    def exp2pii(self, z):
        # exp(2 pi i z) via exp(-2 pi Im z) * (cos + i sin)(2 pi Re z):
        # overflow-free for Im z > 0 and |result| <= 1 there.
        x = _LD(float(z.real))
        y = _LD(float(z.imag))
        mag = np.exp(-2 * self.pi * y)
        ang = 2 * self.pi * x
        return mag * (np.cos(ang) + 1j * np.sin(ang))

    def lngamma_hp(self, z):
        return _backend.lngamma_halfplane(
            float(z.real), float(z.imag), self.lam_re, self.lam_im, self.c_re, self.c_im
        )

    def lng_hp(self, z):
        return _backend.lng_halfplane(
            float(z.real), float(z.imag), self.lam_re, self.lam_im, self.c_re, self.c_im
        )

    def li2(self, q, region: int = 0):
        return _backend.li2(float(q.real), float(q.imag), self.debye, region)

    def transform(self, z):
        return _backend.transform(
            float(z.real), float(z.imag), self.lam_re, self.lam_im, self.c_re, self.c_im
        )

    def transform_deriv(self, z):
        return _backend.transform_deriv(
            float(z.real), float(z.imag), self.lam_re, self.lam_im, self.c_re, self.c_im
        )

    exp_limit = _DOUBLE_EXP_LIMIT

    @staticmethod
    def exp(z):
        return np.exp(z)


class _MpOps:
    """Extended-tier scalar ops: mpmath at EXTENDED_DPS digits."""

    exp_limit = _EXTENDED_EXP_LIMIT

    def __init__(self, table: ExpSum):
        self.ctx = PrecisionContext(EXTENDED_DPS)
        with self.ctx.workdps():
            self.terms = tuple((+lam, +c) for lam, c in table.terms)
            self.pi = +mp.pi
            self.ln2pi = mpf(LN_TWO_PI_STR)
            self.lna = mpf(LN_GLAISHER_STR)
            self.one = mpf(1)
            self.i_pi = mpc(0, 1) * self.pi
            self.i_pi_half = self.i_pi / 2
            self.five_sixth = mpf(5) / 6
            self.li2_coef = mpc(0, 1) / (2 * self.pi)

    def convert(self, z) -> mpc:
        return mpc(z)

    @staticmethod
    def re(z):
        return z.real

    @staticmethod
    def im(z):
        return z.imag

    @staticmethod
    def conj(z):
        return mp.conj(z)

    @staticmethod
    def log(z):
        return mp.log(z)

    @staticmethod
    def exp(z):
        return mp.exp(z)

    def exp2pii(self, z):
        mag = mp.exp(-2 * self.pi * z.imag)
        ang = 2 * self.pi * z.real
        return mag * mpc(mp.cos(ang), mp.sin(ang))

    def transform(self, z):
        acc = mpc(0)
        for lam, c in self.terms:
            d = z + lam
            if d == 0:
                raise DomainError("Phi pole hit")
            acc += c / (d * d)
        return acc

    def transform_deriv(self, z):
        acc = mpc(0)
        for lam, c in self.terms:
            d = z + lam
            if d == 0:
                raise DomainError("Phi' pole hit")
            acc += c / (d * d * d)
        return -2 * acc

    def lngamma_hp(self, z):
        w = z - 1
        return (
            (z - mpf(1) / 2) * mp.log(z)
            - z
            + self.ln2pi / 2
            + mpf(1) / (12 * z)
            - self.transform_deriv(w)
        )

    def lng_hp(self, z):
        w = z - 1
        return (
            (z * z / 2 - z + mpf(5) / 12) * mp.log(z)
            - 3 * z * z / 4
            + self.ln2pi / 2 * w
            + z
            + mpf(1) / 12
            - self.lna
            - mpf(1) / (12 * z)
            + self.transform(w)
            - w * self.transform_deriv(w)
        )

    def li2(self, q, region: int = 0):
        return li2_mp(q, self.ctx, region=region)


def _reject_cut(x, y) -> None:
    if y == 0 and x <= 0:
        raise DomainError(
            f"z = {x} lies on the branch cut (-inf, 0]; the log functions "
            "are defined on the cut plane only"
        )


def _route_ln_gamma(z, ops):
    x, y = ops.re(z), ops.im(z)
    _reject_cut(x, y)
    if x >= 1.5:
        return ops.lngamma_hp(z)
    if x >= 0.5:
        # ln Gamma(z) = ln Gamma(z+1) - ln z
        return ops.lngamma_hp(z + ops.one) - ops.log(z)
    if y < 0:
        return ops.conj(_route_ln_gamma(ops.conj(z), ops))
    q = ops.exp2pii(z)
    return (
        -_route_ln_gamma(ops.one - z, ops)
        + ops.ln2pi
        - ops.i_pi_half
        + ops.i_pi * z
        - ops.log(ops.one - q)
    )


def _route_ln_g(z, ops):
    x, y = ops.re(z), ops.im(z)
    _reject_cut(x, y)
    if x >= 1.5:
        return ops.lng_hp(z)
    if x >= 0.5:
        # ln G(z) = ln G(z+1) - ln Gamma(z)
        return ops.lng_hp(z + ops.one) - _route_ln_gamma(z, ops)
    if y < 0:
        return ops.conj(_route_ln_g(ops.conj(z), ops))
    q = ops.exp2pii(z)
    w = z - ops.one
    return (
        _route_ln_g(2 * ops.one - z, ops)
        + w * ops.ln2pi
        + ops.i_pi_half * (z * z - 2 * z + ops.five_sixth)
        - w * ops.log(ops.one - q)
        + ops.li2_coef * ops.li2(q)
    )


def ln_gamma(z, prof: EvalProfile):
    """log Gamma(z), analytic on the cut plane, real on (0, inf)."""
    ops = prof._ops
    if prof.tier == "double":
        return _route_ln_gamma(ops.convert(z), ops)
    with mp.workdps(EXTENDED_DPS):
        return _route_ln_gamma(ops.convert(z), ops)


def ln_g(z, prof: EvalProfile):
    """log G(z) for the Barnes G-function, analytic on the cut plane."""
    ops = prof._ops
    if prof.tier == "double":
        return _route_ln_g(ops.convert(z), ops)
    with mp.workdps(EXTENDED_DPS):
        return _route_ln_g(ops.convert(z), ops)


def ln_gamma_halfplane(z, prof: EvalProfile):
    """Half-plane rule only; requires Re(z) >= 3/2."""
    ops = prof._ops
    zz = ops.convert(z)
    if not ops.re(zz) >= 1.5:
        raise DomainError(f"half-plane formula needs Re(z) >= 3/2, got {z}")
    if prof.tier == "double":
        return ops.lngamma_hp(zz)
    with mp.workdps(EXTENDED_DPS):
        return ops.lngamma_hp(zz)


def ln_g_halfplane(z, prof: EvalProfile):
    """Half-plane rule only; requires Re(z) >= 3/2."""
    ops = prof._ops
    zz = ops.convert(z)
    if not ops.re(zz) >= 1.5:
        raise DomainError(f"half-plane formula needs Re(z) >= 3/2, got {z}")
    if prof.tier == "double":
        return ops.lng_hp(zz)
    with mp.workdps(EXTENDED_DPS):
        return ops.lng_hp(zz)


def ln_gamma_reflection(z, prof: EvalProfile):
    """Reflection rule regardless of region; needs Im(z) > 0 or 0 < z < 1/2.

    Exposed for seam diagnostics; the router applies it only for Re(z) < 1/2.
    """
    ops = prof._ops

    def compute():
        zz = ops.convert(z)
        x, y = ops.re(zz), ops.im(zz)
        if y < 0 or (y == 0 and not 0 < x < 1.5):
            raise DomainError("reflection rule needs Im(z) > 0 or real 0 < z < 3/2")
        q = ops.exp2pii(zz)
        return (
            -_route_ln_gamma(ops.one - zz, ops)
            + ops.ln2pi
            - ops.i_pi_half
            + ops.i_pi * zz
            - ops.log(ops.one - q)
        )

    if prof.tier == "double":
        return compute()
    with mp.workdps(EXTENDED_DPS):
        return compute()


def ln_g_reflection(z, prof: EvalProfile):
    """Reflection rule for ln G regardless of region (seam diagnostics)."""
    ops = prof._ops

    def compute():
        zz = ops.convert(z)
        x, y = ops.re(zz), ops.im(zz)
        if y < 0 or (y == 0 and not 0 < x < 1.5):
            raise DomainError("reflection rule needs Im(z) > 0 or real 0 < z < 3/2")
        q = ops.exp2pii(zz)
        w = zz - ops.one
        return (
            _route_ln_g(2 * ops.one - zz, ops)
            + w * ops.ln2pi
            + ops.i_pi_half * (zz * zz - 2 * zz + ops.five_sixth)
            - w * ops.log(ops.one - q)
            + ops.li2_coef * ops.li2(q)
        )

    if prof.tier == "double":
        return compute()
    with mp.workdps(EXTENDED_DPS):
        return compute()


def _exp_checked(logval, prof: EvalProfile):
    r = float(logval.real)
    if abs(r) > prof._ops.exp_limit:
        raise EvalOverflowError(
            f"|Re log| = {abs(r):.6g} exceeds the {prof.tier} tier exponent "
            f"range ({prof._ops.exp_limit:.6g})"
        )
    return prof._ops.exp(logval)


def gamma(z, prof: EvalProfile):
    """Gamma(z) = exp(ln_gamma(z)); overflow reported distinctly."""
    return _exp_checked(ln_gamma(z, prof), prof)


def barnes_g(z, prof: EvalProfile):
    """G(z) = exp(ln_g(z)); overflow reported distinctly."""
    return _exp_checked(ln_g(z, prof), prof)


def li2(z, prof: EvalProfile):
    """Dilogarithm at the profile's tier (|z| <= 1)."""
    ops = prof._ops
    if prof.tier == "double":
        return ops.li2(ops.convert(z))
    with mp.workdps(EXTENDED_DPS):
        return ops.li2(ops.convert(z))
