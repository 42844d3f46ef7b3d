"""Configurable-precision scalars and the principal-branch complex logarithm.

All high-precision arithmetic in this package runs on mpmath's ``mpf``/``mpc``
types (gmpy-backed when available).  A :class:`PrecisionContext` fixes the
decimal working precision; values are immutable once created, so contexts and
scalars can be shared freely between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .errors import DomainError, ParseError

# Working precision used by the coefficient generator unless overridden.
DEFAULT_DIGITS = 500

# Decimal literal with optional sign, fraction and exponent ("1", "-.5e-3", ...).
_DECIMAL_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal working precision for generator-side arithmetic.

    Equality of two values "at context precision" always means agreement
    within ``10**(-digits + guard)`` for a small per-operation guard.
    """

    digits: int = DEFAULT_DIGITS

    def __post_init__(self) -> None:
        if self.digits < 1:
            raise ValueError(f"digits must be positive, got {self.digits}")

    def workdps(self):
        """Context manager switching mpmath to this precision."""
        return mp.workdps(self.digits)

    def tolerance(self, guard: int = 10) -> mpf:
        """10**(-digits + guard), the equality tolerance with a guard band."""
        with self.workdps():
            return mpf(10) ** (-self.digits + guard)

    def mpf(self, x) -> mpf:
        with self.workdps():
            if isinstance(x, str):
                return parse_decimal(x, self)
            return +mpf(x)

    def mpc(self, re_part=0, im_part=0) -> mpc:
        with self.workdps():
            return mpc(self.mpf(re_part), self.mpf(im_part))


def principal_log(z, ctx: PrecisionContext | None = None) -> mpc:
    """Principal-branch log with Im in (-pi, pi]; rejects z = 0."""
    with mp.workdps(ctx.digits) if ctx is not None else mp.extraprec(0):
        w = mpc(z)
        if w == 0:
            raise DomainError("principal_log is undefined at z = 0")
        return mp.log(w)


def parse_decimal(s: str, ctx: PrecisionContext) -> mpf:
    """Parse a signed decimal literal to an mpf at context precision."""
    text = s.strip()
    if not _DECIMAL_RE.match(text):
        raise ParseError(f"not a decimal literal: {s!r}")
    with ctx.workdps():
        return mpf(text)


def _as_mpf(x) -> mpf:
    # Do not re-round values that are already mpf (nstr must see full digits).
    return x if isinstance(x, mpf) else mpf(x)


def to_decimal(x, digits: int) -> str:
    """Round-to-nearest decimal string with `digits` significant digits."""
    if digits < 1:
        raise ValueError("digits must be positive")
    return mp.nstr(_as_mpf(x), digits, strip_zeros=False)


def to_decimal_sci(x, digits: int) -> str:
    """Like :func:`to_decimal` but always in scientific notation (file format)."""
    if digits < 1:
        raise ValueError("digits must be positive")
    return mp.nstr(_as_mpf(x), digits, strip_zeros=False, min_fixed=1, max_fixed=0)
