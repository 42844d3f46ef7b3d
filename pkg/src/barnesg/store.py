"""Embedded and on-disk exponential-sum coefficient tables.

File format (plain text, diff-able):
  line 1:  p n1 n2 digits
  then p lines with four space-separated decimals: re(lambda) im(lambda)
  re(c) im(c).  Lines starting with '#' are comments.
"""

from __future__ import annotations

import hashlib
from importlib import resources

from mpmath import mp, mpf

from .errors import CoeffFileError, GeneratorError
from .generator import ExpSum
from .precision import PrecisionContext, parse_decimal, to_decimal_sci

# 15-term double-precision table (19 significant digits).  Entries 9, 11, 13
# and 15 are the conjugates of entries 8, 10, 12 and 14 and are reconstructed
# on load; the printed entries are stored exactly as published.
_P15_N1, _P15_N2, _P15_DIGITS = 22, 8, 19
_P15_REAL = (
    ("1.015816941860969308", "-3.361986110456561101e-5"),
    ("1.053963061918305102", "-1.894144561517152089e-4"),
    ("1.116651540074509609", "-5.010483210821698243e-4"),
    ("1.207738507792217625", "-8.578556468220969250e-4"),
    ("1.332888622825204091", "-8.943696088058549902e-4"),
    ("1.719941572880692604", "1.854241163038972664e-3"),
    ("2.930503690937967271", "-1.918606889602829249e-5"),
)
_P15_COMPLEX = (
    ("2.231464874614817990", "-0.280912039207008020",
     "-3.849191533344471619e-4", "2.988868248105834482e-4"),
    ("2.639898812086004465", "-0.873853916915943961",
     "1.121264751590328248e-5", "-4.979727219667585924e-6"),
    ("2.941124258312725471", "-1.605727317761697042",
     "-1.113878636296735895e-7", "-9.472403853117676266e-8"),
    ("3.229198135526167105", "2.596457178929701727",
     "-1.508505417972961883e-10", "-3.899201018438800852e-10"),
)

# Extended-precision table regenerated by `barnesg gen 45 55 35` and pinned
# after validation against the audit bounds.
P45_FILENAME = "p45_n55_n35.txt"
P45_SHA256 = "ce2da72a41316c103e75e61c04934e6c524e001c12c608fda13ead72747c9595"

_PARSE_GUARD = 15


def builtin_p15() -> ExpSum:
    """The embedded 15-term table (n1=22, n2=8), conjugates reconstructed."""
    ctx = PrecisionContext(_P15_DIGITS + _PARSE_GUARD)
    terms = []
    with ctx.workdps():
        for lam_s, c_s in _P15_REAL:
            terms.append((mp.mpc(parse_decimal(lam_s, ctx), 0),
                          mp.mpc(parse_decimal(c_s, ctx), 0)))
        for lr, li, cr, ci in _P15_COMPLEX:
            lam = mp.mpc(parse_decimal(lr, ctx), parse_decimal(li, ctx))
            c = mp.mpc(parse_decimal(cr, ctx), parse_decimal(ci, ctx))
            terms.append((lam, c))
            terms.append((mp.conj(lam), mp.conj(c)))
    e = ExpSum(p=15, n1=_P15_N1, n2=_P15_N2, terms=tuple(terms), digits=_P15_DIGITS)
    e.validate()
    return e


def save(e: ExpSum, path, digits: int | None = None) -> None:
    """Write a table; lossless at the stored digit count."""
    if digits is None:
        digits = min(e.digits, 40)
    with mp.workdps(max(e.digits, digits) + _PARSE_GUARD):
        lines = [f"# exponential-sum table: {e.p} terms", f"{e.p} {e.n1} {e.n2} {digits}"]
        for lam, c in e.terms:
            lines.append(" ".join(
                to_decimal_sci(v, digits)
                for v in (lam.real, lam.imag, c.real, c.imag)
            ))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_table(text: str, source: str) -> ExpSum:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise CoeffFileError(f"{source}: empty coefficient file")
    head = rows[0].split()
    if len(head) != 4:
        raise CoeffFileError(f"{source}: header must be 'p n1 n2 digits'")
    try:
        p, n1, n2, digits = (int(v) for v in head)
    except ValueError as exc:
        raise CoeffFileError(f"{source}: non-integer header field") from exc
    if p < 1 or digits < 1 or n1 < 0 or n2 < 0:
        raise CoeffFileError(f"{source}: nonsensical header {head}")
    if n1 + n2 != 2 * p:
        raise CoeffFileError(f"{source}: n1 + n2 = {n1 + n2} but 2p = {2 * p}")
    if len(rows) - 1 != p:
        raise CoeffFileError(f"{source}: expected {p} term lines, found {len(rows) - 1}")
    ctx = PrecisionContext(digits + _PARSE_GUARD)
    terms = []
    with ctx.workdps():
        for idx, ln in enumerate(rows[1:], start=1):
            fields = ln.split()
            if len(fields) != 4:
                raise CoeffFileError(f"{source}: term {idx} needs 4 fields")
            try:
                lr, li, cr, ci = (parse_decimal(v, ctx) for v in fields)
            except Exception as exc:
                raise CoeffFileError(f"{source}: term {idx}: {exc}") from exc
            terms.append((mp.mpc(lr, li), mp.mpc(cr, ci)))
    e = ExpSum(p=p, n1=n1, n2=n2, terms=tuple(terms), digits=digits)
    try:
        with ctx.workdps():
            e.validate(rel_tol=mpf(10) ** (-digits + 2))
    except GeneratorError as exc:
        raise CoeffFileError(f"{source}: {exc}") from exc
    return e


def load(path) -> ExpSum:
    """Read a table and re-validate all invariants."""
    with open(path) as fh:
        text = fh.read()
    return _parse_table(text, str(path))


def _p45_resource():
    return resources.files("barnesg").joinpath("data").joinpath(P45_FILENAME)


def load_p45() -> ExpSum:
    """The cached 45-term extended-precision table, checksum-verified."""
    res = _p45_resource()
    try:
        raw = res.read_bytes()
    except FileNotFoundError as exc:
        raise CoeffFileError(
            f"{P45_FILENAME} missing; regenerate with 'barnesg gen 45 55 35'"
        ) from exc
    digest = hashlib.sha256(raw).hexdigest()
    if digest != P45_SHA256:
        raise CoeffFileError(
            f"{P45_FILENAME} checksum mismatch: {digest} != {P45_SHA256}"
        )
    return _parse_table(raw.decode(), P45_FILENAME)
