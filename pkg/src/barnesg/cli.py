"""Command-line front end: gen / audit / eval / grid / selftest.

Exit codes: 0 ok, 2 domain or input error, 3 generator failure, 4 I/O or
coefficient-file error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass

from mpmath import mp

from . import evaluate, generator, store
from .auditing import audit as run_audit
from .errors import (
    BarnesgError,
    CoeffFileError,
    DomainError,
    EvalOverflowError,
    GeneratorError,
    ParseError,
)
from .kernel import KernelTables
from .precision import PrecisionContext

_DECIMAL = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"


def parse_complex_parts(s: str) -> tuple[str, str]:
    """Split 'a+bi' / 'a-bi' / 'a' / 'bi' into decimal strings (re, im)."""
    import re as _re

    t = s.strip().replace(" ", "")
    if not t:
        raise ParseError("empty complex literal")
    if t.endswith(("i", "j")):
        body = t[:-1]
        split = None
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "eE":
                split = k
                break
        if split is None:
            re_s, im_s = "0", body or "1"
        else:
            re_s, im_s = body[:split], body[split:]
        if im_s in ("+", "-"):
            im_s += "1"
    else:
        re_s, im_s = t, "0"
    pat = _re.compile(rf"^[+-]?{_DECIMAL}$")
    for part in (re_s, im_s):
        if not pat.match(part):
            raise ParseError(f"not a complex literal: {s!r}")
    return re_s, im_s


@dataclass(frozen=True)
class GridRequest:
    """Rectangular evaluation grid for CSV emission."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    steps: int
    function: str
    part: str = "both"

    def __post_init__(self) -> None:
        if self.steps < 2:
            raise ParseError("grid needs steps >= 2")
        if self.function not in _FUNCTIONS:
            raise ParseError(f"unknown function {self.function!r}")
        if self.part not in ("re", "im", "both"):
            raise ParseError(f"part must be re, im or both, got {self.part!r}")

    def axis(self, lo: float, hi: float) -> list[float]:
        return [lo + (hi - lo) * k / (self.steps - 1) for k in range(self.steps)]


_FUNCTIONS = {
    "ln_gamma": evaluate.ln_gamma,
    "ln_g": evaluate.ln_g,
    "gamma": evaluate.gamma,
    "g": evaluate.barnes_g,
    "li2": evaluate.li2,
}


def _profile(args) -> evaluate.EvalProfile:
    table = store.load(args.coeffs) if getattr(args, "coeffs", None) else None
    if args.profile == "extended":
        return evaluate.EvalProfile.extended(table)
    return evaluate.EvalProfile.double(table)


def _format_value(v, prof: evaluate.EvalProfile) -> str:
    if prof.tier == "double":
        re_s = f"{float(v.real):.17g}"
        im_s = f"{abs(float(v.imag)):.17g}"
        sign = "-" if float(v.imag) < 0 else "+"
    else:
        re_s = mp.nstr(v.real, prof.print_digits, strip_zeros=False)
        im_s = mp.nstr(abs(v.imag), prof.print_digits, strip_zeros=False)
        sign = "-" if v.imag < 0 else "+"
    return f"{re_s} {sign} {im_s}i"


def cmd_gen(args) -> int:
    ctx = PrecisionContext(args.digits)
    e = generator.generate(args.p, args.n1, args.n2, ctx)
    tables = KernelTables.build(max(e.n2, 1), max(e.n1, 1), ctx)
    mres, dres = generator.verify_conditions(e, tables, ctx)
    out = args.out or f"coeffs_p{args.p}_n{args.n1}_n{args.n2}.txt"
    store.save(e, out, digits=args.store_digits)
    with ctx.workdps():
        mmax = mp.nstr(max(mres), 3) if mres else "n/a"
        dmax = mp.nstr(max(dres), 3) if dres else "n/a"
    print(f"generated p={args.p} n1={args.n1} n2={args.n2} at {args.digits} digits")
    print(f"max moment residual:     {mmax}")
    print(f"max derivative residual: {dmax}")
    print(f"wrote {out}")
    return 0


def cmd_audit(args) -> int:
    if args.builtin:
        e = store.builtin_p15() if args.builtin == "p15" else store.load_p45()
        name = f"builtin {args.builtin}"
    elif args.coeffs:
        e = store.load(args.coeffs)
        name = args.coeffs
    else:
        raise ParseError("audit needs a coefficients file or --builtin")
    rep = run_audit(e, digits=args.digits, points=args.points)
    print(f"audit of {name} (p={e.p}, n1={e.n1}, n2={e.n2})")
    print(f"eps1 = {rep.eps1:.6e} at x = {rep.argmax1:.6f}")
    print(f"eps2 = {rep.eps2:.6e} at x = {rep.argmax2:.6f}")
    print(f"sup |f - phi| = {rep.sup_plain:.6e} at x = {rep.argmax_plain:.6f}")
    if args.csv:
        rep.write_csv(args.csv)
        print(f"wrote {args.csv}")
    return 0


def cmd_eval(args) -> int:
    prof = _profile(args)
    re_s, im_s = parse_complex_parts(args.z)
    if prof.tier == "double":
        z = complex(float(re_s), float(im_s))
    else:
        with mp.workdps(evaluate.EXTENDED_DPS):
            z = mp.mpc(mp.mpf(re_s), mp.mpf(im_s))
    value = _FUNCTIONS[args.function](z, prof)
    print(f"{args.function}({args.z}) [{prof.tier} tier]")
    print(_format_value(value, prof))
    bound = None
    if args.function in ("ln_gamma", "gamma"):
        bound = prof.eps1
    elif args.function in ("ln_g", "g"):
        bound = prof.eps2
    if bound is not None:
        print(f"|error| <= {bound:.1e} (audited table bound, log scale)")
    elif args.function == "li2":
        eps = 2.3e-16 if prof.tier == "double" else 1e-36
        print(f"|error| <= ~10*eps_tier = {10 * eps:.1e}")
    else:
        print("|error| bound unavailable (unaudited table)")
    return 0


def _grid_value(fun, z, prof):
    try:
        return fun(z, prof)
    except (DomainError, EvalOverflowError):
        return None


def cmd_grid(args) -> int:
    req = GridRequest(
        re_min=args.re_min,
        re_max=args.re_max,
        im_min=args.im_min,
        im_max=args.im_max,
        steps=args.steps,
        function=args.function,
        part=args.part,
    )
    prof = _profile(args)
    fun = _FUNCTIONS[req.function]
    header = {"re": "re_z,im_z,re_value", "im": "re_z,im_z,im_value",
              "both": "re_z,im_z,re_value,im_value"}[req.part]
    lines = [header]
    for x in req.axis(req.re_min, req.re_max):
        for y in req.axis(req.im_min, req.im_max):
            v = _grid_value(fun, complex(x, y), prof)
            if v is None:
                fields = ["nan"] * (2 if req.part == "both" else 1)
            else:
                re_v, im_v = float(v.real), float(v.imag)
                if req.part == "re":
                    fields = [repr(re_v)]
                elif req.part == "im":
                    fields = [repr(im_v)]
                else:
                    fields = [repr(re_v), repr(im_v)]
            lines.append(",".join([repr(float(x)), repr(float(y))] + fields))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out} ({(req.steps) ** 2} rows)")
    else:
        sys.stdout.write(text)
    return 0


def _selftest_table():
    e = store.builtin_p15()
    if os.environ.get("BARNESG_SELFTEST_PERTURB") == "1":
        # Test hook: corrupt c_1 so the residual gate must trip.
        lam0, c0 = e.terms[0]
        terms = ((lam0, c0 + 1e-8),) + e.terms[1:]
        e = generator.ExpSum(p=e.p, n1=e.n1, n2=e.n2, terms=terms, digits=e.digits)
    return e


def cmd_selftest(_args) -> int:
    failures = 0

    def check(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        print(f"{'ok  ' if ok else 'FAIL'} {name}" + (f"  ({detail})" if detail else ""))
        failures += 0 if ok else 1

    ctx = PrecisionContext(60)
    e = _selftest_table()
    tables = KernelTables.build(e.n2, e.n1, ctx)
    mres, dres = generator.verify_conditions(e, tables, ctx)
    with ctx.workdps():
        worst = float(max(mres + dres))
    check("builtin table residuals <= 1e-17", worst <= 1e-17, f"max {worst:.2e}")

    prof = evaluate.EvalProfile.double()
    v = float(evaluate.li2(1.0, prof).real)
    target = float(math.pi**2 / 6)
    check("li2(1) = pi^2/6 within 2 ulps", abs(v - target) <= 2 * math.ulp(target))
    check("li2(0) = 0", complex(evaluate.li2(0.0, prof)) == 0)

    checks = [
        ("ln_gamma(5) = ln 24", evaluate.ln_gamma(5, prof), math.log(24)),
        ("ln_gamma(1/2) = ln sqrt(pi)", evaluate.ln_gamma(0.5, prof), math.log(math.pi) / 2),
        ("ln_g(4) = ln 2", evaluate.ln_g(4, prof), math.log(2)),
        ("ln_g(1) = 0", evaluate.ln_g(1, prof), 0.0),
        (
            "reflection: ln_gamma(1/4) + ln_gamma(3/4)",
            evaluate.ln_gamma(0.25, prof) + evaluate.ln_gamma(0.75, prof),
            math.log(math.pi * math.sqrt(2)),
        ),
    ]
    for name, got, want in checks:
        check(name, abs(complex(got) - want) <= 1e-13)

    z = complex(3.25, 7.5)
    resid = abs(
        complex(evaluate.ln_g(z + 1, prof))
        - complex(evaluate.ln_g(z, prof))
        - complex(evaluate.ln_gamma(z, prof))
    )
    check("functional equation at 3.25+7.5i", resid <= 1e-13, f"resid {resid:.2e}")

    a = complex(evaluate.ln_g(complex(-1.5, 2.5), prof))
    b = complex(evaluate.ln_g(complex(-1.5, 2.5), prof))
    check("determinism", a == b)

    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "t.txt")
        store.save(store.builtin_p15(), path, digits=19)
        e2 = store.load(path)
        check("save/load round trip", e2.p == 15 and len(e2.terms) == 15)

    print(f"{'PASS' if failures == 0 else 'FAIL'}: {failures} failure(s)")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="barnesg",
        description="Barnes G / log-gamma evaluation, coefficient generation and audits",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an exponential-sum coefficient table")
    g.add_argument("p", type=int)
    g.add_argument("n1", type=int)
    g.add_argument("n2", type=int)
    g.add_argument("--digits", type=int, default=500)
    g.add_argument("--store-digits", type=int, default=30)
    g.add_argument("--out", "-o", default=None)
    g.set_defaults(fn=cmd_gen)

    a = sub.add_parser("audit", help="sup-norm error audit of a table")
    a.add_argument("coeffs", nargs="?", default=None)
    a.add_argument("--builtin", choices=["p15", "p45"], default=None)
    a.add_argument("--digits", type=int, default=50)
    a.add_argument("--points", type=int, default=4000)
    a.add_argument("--csv", default=None)
    a.set_defaults(fn=cmd_audit)

    ev = sub.add_parser("eval", help="evaluate a function at one point")
    ev.add_argument("function", choices=sorted(_FUNCTIONS))
    ev.add_argument("z", help="complex point, e.g. '1.5-2.25e-1i'")
    ev.add_argument("--profile", choices=["double", "extended"], default="double")
    ev.add_argument("--coeffs", default=None)
    ev.set_defaults(fn=cmd_eval)

    gr = sub.add_parser("grid", help="emit CSV values over a rectangular grid")
    gr.add_argument("function", choices=sorted(_FUNCTIONS))
    gr.add_argument("--re-min", type=float, required=True)
    gr.add_argument("--re-max", type=float, required=True)
    gr.add_argument("--im-min", type=float, required=True)
    gr.add_argument("--im-max", type=float, required=True)
    gr.add_argument("--steps", type=int, required=True)
    gr.add_argument("--part", choices=["re", "im", "both"], default="both")
    gr.add_argument("--profile", choices=["double", "extended"], default="double")
    gr.add_argument("--coeffs", default=None)
    gr.add_argument("--out", "-o", default=None)
    gr.set_defaults(fn=cmd_grid)

    st = sub.add_parser("selftest", help="fast subset of the acceptance checks")
    st.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (DomainError, EvalOverflowError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GeneratorError as exc:
        print(f"generator error: {exc}", file=sys.stderr)
        return 3
    except (CoeffFileError, OSError) as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return 4
    except BarnesgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
