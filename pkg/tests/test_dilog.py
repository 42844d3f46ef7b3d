import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpc, mpf

from barnesg import dilog as D
from barnesg.errors import DomainError
from barnesg.evaluate import EvalProfile
from barnesg.evaluate import li2 as li2_tier
from barnesg.precision import PrecisionContext

CTX = PrecisionContext(40)


def direct_series_mp(z, tol_exp=-45):
    """Plain sum of z^k / k^2 with enough terms for the modulus."""
    with mp.workdps(-tol_exp + 10):
        zv = mpc(z)
        if abs(zv) >= 1:
            raise ValueError("oracle needs |z| < 1")
        acc = mpc(0)
        term = mpc(1)
        k = 0
        while True:
            k += 1
            term = term * zv if k > 1 else zv
            acc += term / k**2
            if abs(term) < mpf(10) ** tol_exp:
                break
        return acc


def alternating_series_value(levels=4, terms=4000):
    """Euler-averaged alternating sum for the value at -1."""
    with mp.workdps(30):
        partial = []
        acc = mpf(0)
        for k in range(1, terms + levels + 2):
            acc += mpf((-1) ** k) / k**2
            partial.append(acc)
        seq = partial
        for _ in range(levels):
            seq = [(a + b) / 2 for a, b in zip(seq, seq[1:])]
        return seq[-1]


class TestDebye:
    def test_zero(self):
        assert D.debye_D(0, CTX) == 0

    def test_identity_with_direct_series(self):
        with CTX.workdps():
            z = mpc("0.3")
            lhs = D.debye_D(-mp.log(1 - z), CTX)
            assert abs(lhs - direct_series_mp(z)) < mpf(10) ** -38

    def test_radius_rejected(self):
        with pytest.raises(DomainError):
            D.debye_D(2 * math.pi + 0.1, CTX)

    def test_term_decay_rate(self):
        # At |w| = pi/3 successive series terms shrink ~ 6^(-2n).
        with CTX.workdps():
            coeffs = D.debye_coefficients(30, CTX)
            w = mp.pi / 3
            prev = None
            for n in range(1, 31):
                term = abs(coeffs[n - 1]) * w ** (2 * n + 1)
                if prev is not None and term != 0:
                    assert term / prev < 1.0 / 25
                prev = term


class TestLi2Mp:
    def test_one(self):
        with CTX.workdps():
            assert abs(D.li2(1, CTX) - mp.pi**2 / 6) < CTX.tolerance()

    def test_zero(self):
        assert D.li2(0, CTX) == 0

    def test_minus_one(self):
        with CTX.workdps():
            ref = alternating_series_value()
            assert abs(D.li2(-1, CTX) - ref) < mpf(10) ** -12
            assert abs(D.li2(-1, CTX) + mp.pi**2 / 12) < CTX.tolerance()

    def test_outside_disk_rejected(self):
        with pytest.raises(DomainError):
            D.li2(mpc(1.2, 0.3), CTX)

    @settings(max_examples=60, deadline=None)
    @given(st.floats(-0.99, 0.99), st.floats(-0.99, 0.99))
    def test_oracle_equivalence(self, x, y):
        z = complex(x, y)
        if abs(z) > 0.99:
            return
        with CTX.workdps():
            got = D.li2(z, CTX)
            ref = direct_series_mp(z)
            assert abs(got - ref) <= 10 * mpf(10) ** (-CTX.digits) * max(1, abs(ref))

    def test_region_seam(self):
        with CTX.workdps():
            for y in (0.05, 0.25, 0.5, 0.75, 0.86, -0.4, -0.8):
                z = mpc(0.5, y)
                if abs(z) > 1:
                    continue
                a = D.li2(z, CTX, region=1)
                b = D.li2(z, CTX, region=2)
                assert abs(a - b) <= 10 * mpf(10) ** (-CTX.digits) * max(1, abs(a))

    def test_omega1_argument_bound(self):
        # For |z| <= 1, Re z <= 1/2 the Debye argument stays within pi/3.
        with CTX.workdps():
            for t in np.linspace(float(mp.pi) / 3, float(mp.pi), 40):
                for r in (0.2, 0.6, 0.95, 1.0):
                    z = r * mp.exp(mpc(0, t))
                    if z.real > 0.5:
                        continue
                    w = -mp.log(1 - z)
                    assert abs(w) <= mp.pi / 3 + mpf("1e-15")


class TestLi2Tiers:
    def test_double_tier_golden(self):
        prof = EvalProfile.double()
        v = li2_tier(1.0, prof)
        target = np.longdouble(str(mp.pi**2)) / 6
        assert abs(float(v.real) - float(target)) <= 2 * math.ulp(float(target))
        assert li2_tier(0.0, prof) == 0

    def test_double_tier_against_series(self):
        prof = EvalProfile.double()
        rng = np.random.default_rng(202)
        pts = []
        while len(pts) < 200:
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if abs(z) <= 0.99:
                pts.append(z)
        eps = float(np.finfo(np.float64).eps)
        for z in pts:
            got = complex(li2_tier(z, prof))
            ref = complex(direct_series_mp(z, tol_exp=-25))
            assert abs(got - ref) <= 10 * eps * max(1.0, abs(ref))

    def test_extended_tier_against_series(self):
        prof = EvalProfile.extended()
        rng = np.random.default_rng(203)
        with mp.workdps(50):
            for _ in range(40):
                z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                if abs(z) > 0.99:
                    continue
                got = li2_tier(z, prof)
                ref = direct_series_mp(z)
                assert abs(got - ref) <= mpf(10) ** -34 * max(1, abs(ref))
