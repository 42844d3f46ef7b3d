"""Compare the compiled evaluation kernels against the pure-Python fallback.

Run:  python benchmarks/bench_backends.py [points_per_case]

Times ln_g / ln_gamma / li2 over scattered points with both backends (the
pure one is loaded directly, bypassing the import-time selection) and
reports per-call times, speedups and the worst cross-backend deviation.
"""

from __future__ import annotations

import sys
import time

import numpy as np

from barnesg import _purekernels
from barnesg._backend import COMPILED, backend_name
from barnesg.evaluate import EvalProfile, _DoubleOps, _route_ln_g, _route_ln_gamma


class _PureOps(_DoubleOps):
    """Double-tier ops bound to the pure kernels regardless of the build."""

    def lngamma_hp(self, z):
        return _purekernels.lngamma_halfplane(
            float(z.real), float(z.imag), self.lam_re, self.lam_im, self.c_re, self.c_im
        )

    def lng_hp(self, z):
        return _purekernels.lng_halfplane(
            float(z.real), float(z.imag), self.lam_re, self.lam_im, self.c_re, self.c_im
        )

    def li2(self, q, region: int = 0):
        return _purekernels.li2(float(q.real), float(q.imag), self.debye, region)


def _points(n: int, seed: int = 7):
    rng = np.random.default_rng(seed)
    zs = []
    while len(zs) < n:
        z = complex(rng.uniform(-8, 10), rng.uniform(-12, 12))
        if not (z.imag == 0 and z.real <= 0):
            zs.append(z)
    disk = []
    while len(disk) < n:
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        if abs(z) <= 0.999:
            disk.append(z)
    return zs, disk


def _time(fun, pts) -> float:
    t0 = time.perf_counter()
    for z in pts:
        fun(z)
    return (time.perf_counter() - t0) / len(pts)


def main() -> int:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
    prof = EvalProfile.double()
    selected = prof._ops
    pure = _PureOps(prof.table)
    zs, disk = _points(n)

    cases = [
        ("ln_g", lambda ops: (lambda z: _route_ln_g(ops.convert(z), ops)), zs),
        ("ln_gamma", lambda ops: (lambda z: _route_ln_gamma(ops.convert(z), ops)), zs),
        ("li2", lambda ops: (lambda z: ops.li2(ops.convert(z))), disk),
    ]

    print(f"selected backend: {backend_name()} (compiled available: {COMPILED})")
    print(f"{n} points per case\n")
    print(f"{'case':<10} {'selected':>12} {'pure':>12} {'speedup':>9} {'max |diff|':>12}")
    for name, make, pts in cases:
        f_sel = make(selected)
        f_pure = make(pure)
        t_sel = _time(f_sel, pts)
        t_pure = _time(f_pure, pts)
        dev = max(float(abs(f_sel(z) - f_pure(z))) for z in pts[: min(len(pts), 200)])
        print(
            f"{name:<10} {t_sel * 1e6:>10.2f}us {t_pure * 1e6:>10.2f}us "
            f"{t_pure / t_sel:>8.1f}x {dev:>12.3e}"
        )
    if not COMPILED:
        print("\nnote: compiled kernels unavailable; 'selected' is the pure fallback")
    return 0


if __name__ == "__main__":
    sys.exit(main())
