"""Pure-Python fallback for the machine-precision evaluation kernels.

Mirrors the compiled extension exactly: all intermediates are 80-bit
extended floats (numpy longdouble), so large-|z| evaluations keep absolute
errors near the table's audit bounds instead of the plain-double epsilon.
Inputs arrive as plain floats plus longdouble coefficient arrays; outputs
are numpy clongdouble scalars.
"""

from __future__ import annotations

import numpy as np

from ._constants_str import LN_GLAISHER_STR, LN_TWO_PI_STR, PI_STR
from .errors import DomainError

COMPILED = False

_LD = np.longdouble
_ONE = _LD(1)
_HALF = _LD(1) / 2
_PI = _LD(PI_STR)
_LN2PI = _LD(LN_TWO_PI_STR)
_LNA = _LD(LN_GLAISHER_STR)
_PI2_6 = _PI * _PI / 6
_FIVE_TWELFTHS = _LD(5) / 12
_TWELFTH = _LD(1) / 12
_LD_EPS = np.finfo(np.longdouble).eps


def transform(zre: float, zim: float, lam_re, lam_im, c_re, c_im):
    """Phi(z) = sum c_j / (z + lambda_j)^2."""
    z = _LD(zre) + 1j * _LD(zim)
    acc = np.clongdouble(0)
    for k in range(lam_re.shape[0]):
        d = z + (lam_re[k] + 1j * lam_im[k])
        if d == 0:
            raise DomainError("Phi pole hit")
        acc += (c_re[k] + 1j * c_im[k]) / (d * d)
    return acc


def transform_deriv(zre: float, zim: float, lam_re, lam_im, c_re, c_im):
    """Phi'(z) = -2 sum c_j / (z + lambda_j)^3."""
    z = _LD(zre) + 1j * _LD(zim)
    acc = np.clongdouble(0)
    for k in range(lam_re.shape[0]):
        d = z + (lam_re[k] + 1j * lam_im[k])
        if d == 0:
            raise DomainError("Phi' pole hit")
        acc += (c_re[k] + 1j * c_im[k]) / (d * d * d)
    return -2 * acc


def lngamma_halfplane(zre: float, zim: float, lam_re, lam_im, c_re, c_im):
    """(z - 1/2) ln z - z + ln(2 pi)/2 + 1/(12 z) - Phi'(z - 1)."""
    z = _LD(zre) + 1j * _LD(zim)
    phid = transform_deriv(zre - 1.0, zim, lam_re, lam_im, c_re, c_im)
    return (z - _HALF) * np.log(z) - z + _HALF * _LN2PI + _TWELFTH / z - phid


def lng_halfplane(zre: float, zim: float, lam_re, lam_im, c_re, c_im):
    """Half-plane log-Barnes-G formula with Phi(z-1) and Phi'(z-1)."""
    z = _LD(zre) + 1j * _LD(zim)
    w = z - _ONE
    phi = transform(zre - 1.0, zim, lam_re, lam_im, c_re, c_im)
    phid = transform_deriv(zre - 1.0, zim, lam_re, lam_im, c_re, c_im)
    return (
        (_HALF * z * z - z + _FIVE_TWELFTHS) * np.log(z)
        - 3 * z * z / 4
        + _HALF * _LN2PI * w
        + z
        + _TWELFTH
        - _LNA
        - _TWELFTH / z
        + phi
        - w * phid
    )


def _debye(w, debye_coeffs):
    acc = w - w * w / 4
    w2 = w * w
    power = w * w2
    for k in range(debye_coeffs.shape[0]):
        term = debye_coeffs[k] * power
        acc += term
        if abs(term) <= _LD_EPS * abs(acc):
            break
        power *= w2
    return acc


def li2(zre: float, zim: float, debye_coeffs, region: int = 0):
    """Dilogarithm on |z| <= 1 via the Debye series / half-plane split."""
    z = _LD(zre) + 1j * _LD(zim)
    if abs(z) > 1 + 1e-14:
        raise DomainError(f"li2 domain is |z| <= 1, got |z| = {abs(z)!r}")
    if z == 1:
        return np.clongdouble(_PI2_6)
    if z == 0:
        return np.clongdouble(0)
    if region == 0:
        region = 1 if zre <= 0.5 else 2
    if region == 1:
        w = -np.log(1 - z)
        if abs(w) > _PI / 3 + 0.1:
            raise DomainError("Debye argument out of the unit-disk range")
        return _debye(w, debye_coeffs)
    u = 1 - z
    return -li2(float(u.real), float(u.imag), debye_coeffs, region=1) + _PI2_6 - np.log(u) * np.log(z)
