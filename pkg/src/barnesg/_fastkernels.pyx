# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernels (80-bit extended intermediates).

Twin of _purekernels; selected at import by _backend when available.
"""

import numpy as np

cimport numpy as cnp

from .errors import DomainError

cnp.import_array()

COMPILED = True

cdef extern from "complex.h" nogil:
    long double complex clogl(long double complex)
    long double cabsl(long double complex)
    long double creall(long double complex)
    long double cimagl(long double complex)

cdef extern from "_fastconsts.h":
    const long double BG_PI
    const long double BG_LN2PI
    const long double BG_LNA
    const long double BG_LD_EPS

cdef long double PI = BG_PI
cdef long double LN2PI = BG_LN2PI
cdef long double LNA = BG_LNA
cdef long double PI2_6 = BG_PI * BG_PI / 6
cdef long double LD_EPS = BG_LD_EPS


cdef object _to_scalar(long double complex v):
    out = np.empty(1, dtype=np.clongdouble)
    (<long double complex*> cnp.PyArray_DATA(<cnp.ndarray> out))[0] = v
    return out[0]


cdef int _transform_pair(long double complex z,
                         const long double[:] lam_re, const long double[:] lam_im,
                         const long double[:] c_re, const long double[:] c_im,
                         bint want_phi, bint want_phid,
                         long double complex* phi, long double complex* phid) except -1:
    cdef Py_ssize_t k
    cdef long double complex d, c, d2
    cdef long double complex acc = 0, dacc = 0
    for k in range(lam_re.shape[0]):
        d = z + (lam_re[k] + 1j * lam_im[k])
        if creall(d) == 0 and cimagl(d) == 0:
            raise DomainError("Phi pole hit")
        c = c_re[k] + 1j * c_im[k]
        d2 = d * d
        if want_phi:
            acc = acc + c / d2
        if want_phid:
            dacc = dacc + c / (d2 * d)
    phi[0] = acc
    phid[0] = -2 * dacc
    return 0


def transform(double zre, double zim,
              const long double[:] lam_re, const long double[:] lam_im,
              const long double[:] c_re, const long double[:] c_im):
    """Phi(z) = sum c_j / (z + lambda_j)^2."""
    cdef long double complex phi, phid
    cdef long double complex z = <long double> zre + 1j * <long double> zim
    _transform_pair(z, lam_re, lam_im, c_re, c_im, True, False, &phi, &phid)
    return _to_scalar(phi)


def transform_deriv(double zre, double zim,
                    const long double[:] lam_re, const long double[:] lam_im,
                    const long double[:] c_re, const long double[:] c_im):
    """Phi'(z) = -2 sum c_j / (z + lambda_j)^3."""
    cdef long double complex phi, phid
    cdef long double complex z = <long double> zre + 1j * <long double> zim
    _transform_pair(z, lam_re, lam_im, c_re, c_im, False, True, &phi, &phid)
    return _to_scalar(phid)


def lngamma_halfplane(double zre, double zim,
                      const long double[:] lam_re, const long double[:] lam_im,
                      const long double[:] c_re, const long double[:] c_im):
    """(z - 1/2) ln z - z + ln(2 pi)/2 + 1/(12 z) - Phi'(z - 1)."""
    cdef long double complex z = <long double> zre + 1j * <long double> zim
    cdef long double complex w = z - 1
    cdef long double complex phi, phid
    _transform_pair(w, lam_re, lam_im, c_re, c_im, False, True, &phi, &phid)
    cdef long double complex val = (z - <long double>0.5) * clogl(z) - z \
        + <long double>0.5 * LN2PI + (<long double>1 / 12) / z - phid
    return _to_scalar(val)


def lng_halfplane(double zre, double zim,
                  const long double[:] lam_re, const long double[:] lam_im,
                  const long double[:] c_re, const long double[:] c_im):
    """Half-plane log-Barnes-G formula with Phi(z-1) and Phi'(z-1)."""
    cdef long double complex z = <long double> zre + 1j * <long double> zim
    cdef long double complex w = z - 1
    cdef long double complex phi, phid
    _transform_pair(w, lam_re, lam_im, c_re, c_im, True, True, &phi, &phid)
    cdef long double complex val = \
        (<long double>0.5 * z * z - z + <long double>5 / 12) * clogl(z) \
        - <long double>0.75 * z * z + <long double>0.5 * LN2PI * w + z \
        + <long double>1 / 12 - LNA - (<long double>1 / 12) / z + phi - w * phid
    return _to_scalar(val)


cdef long double complex _debye(long double complex w,
                                const long double[:] coeffs):
    cdef long double complex acc = w - w * w / 4
    cdef long double complex w2 = w * w
    cdef long double complex power = w * w2
    cdef long double complex term
    cdef Py_ssize_t k
    for k in range(coeffs.shape[0]):
        term = coeffs[k] * power
        acc = acc + term
        if cabsl(term) <= LD_EPS * cabsl(acc):
            break
        power = power * w2
    return acc


cdef long double complex _li2_region1(long double complex z,
                                      const long double[:] coeffs) except *:
    cdef long double complex w = -clogl(1 - z)
    if cabsl(w) > PI / 3 + <long double>0.1:
        raise DomainError("Debye argument out of the unit-disk range")
    return _debye(w, coeffs)


def li2(double zre, double zim, const long double[:] debye_coeffs, int region=0):
    """Dilogarithm on |z| <= 1 via the Debye series / half-plane split."""
    cdef long double complex z = <long double> zre + 1j * <long double> zim
    cdef long double complex u, val
    if cabsl(z) > 1 + 1e-14:
        raise DomainError(f"li2 domain is |z| <= 1, got |z| = {cabsl(z)!r}")
    if creall(z) == 1 and cimagl(z) == 0:
        return _to_scalar(PI2_6)
    if creall(z) == 0 and cimagl(z) == 0:
        return _to_scalar(0)
    if region == 0:
        region = 1 if zre <= 0.5 else 2
    if region == 1:
        val = _li2_region1(z, debye_coeffs)
    else:
        u = 1 - z
        val = -_li2_region1(u, debye_coeffs) + PI2_6 - clogl(u) * clogl(z)
    return _to_scalar(val)
