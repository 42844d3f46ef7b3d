from fractions import Fraction

import pytest
from mpmath import mp, mpf

from barnesg import constants as C
from barnesg.precision import PrecisionContext

CTX = PrecisionContext(60)

# Reference digits, frozen after computing them with the oracles below.
ZETA3 = "1.20205690315959428539973816151"
GAMMA = "0.577215664901532860606512090082"
LN_A = "0.248754477033784262547252993576"
A_CONST = "1.28242712910062263687534256887"


def akiyama_tanigawa(n):
    """Independent Bernoulli oracle (second kind converted to B_1 = -1/2)."""
    row = [Fraction(1, m + 1) for m in range(n + 1)]
    for j in range(1, n + 1):
        for m in range(n - j + 1):
            row[m] = (m + 1) * (row[m] - row[m + 1])
    b = row[0]  # Akiyama-Tanigawa yields B_n with B_1 = +1/2
    return -b if n == 1 else b


class TestBernoulli:
    def test_first_values(self):
        assert C.bernoulli(0) == 1
        assert C.bernoulli(1) == Fraction(-1, 2)
        assert C.bernoulli(2) == Fraction(1, 6)
        assert C.bernoulli(4) == Fraction(-1, 30)

    def test_odd_vanish(self):
        for n in (3, 5, 7, 9, 21):
            assert C.bernoulli(n) == 0

    @pytest.mark.parametrize("n", [4, 8, 12, 16, 20, 30, 40])
    def test_against_akiyama_tanigawa(self, n):
        assert C.bernoulli(n) == akiyama_tanigawa(n)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            C.bernoulli(-1)

    def test_asymptotic_ratio(self):
        # |B_2n| (2 pi)^(2n) / (2 (2n)!) -> 1; within 1% by n = 60.
        with mp.workdps(80):
            n = 60
            b = abs(C.bernoulli(n))
            ratio = mpf(b.numerator) / b.denominator * (2 * mp.pi) ** n / (2 * mp.factorial(n))
            assert abs(ratio - 1) < 0.01


class TestZeta:
    def test_even_closed_forms(self):
        with CTX.workdps():
            assert abs(C.zeta_int(2, CTX) - mp.pi**2 / 6) < CTX.tolerance()
            assert abs(C.zeta_int(4, CTX) - mp.pi**4 / 90) < CTX.tolerance()

    def test_zeta3_value(self):
        with CTX.workdps():
            assert abs(C.zeta_int(3, CTX) - mpf(ZETA3)) < mpf(10) ** -29

    def test_zeta3_against_direct_sum(self):
        # Plain summation oracle at its achievable tolerance (tail ~ 1/(2N^2)).
        with mp.workdps(40):
            direct = sum(mpf(1) / k**3 for k in range(1, 20001))
            tail_bound = mpf(1) / (2 * 20000**2)
            assert abs(C.zeta_int(3, CTX) - direct) < 2 * tail_bound

    def test_odd_values_match_em_at_two_precisions(self):
        lo, hi = PrecisionContext(60), PrecisionContext(120)
        with mp.workdps(130):
            for n in (3, 5, 9, 23, 51):
                assert abs(C.zeta_int(n, lo) - C.zeta_int(n, hi)) < mpf(10) ** -58

    def test_decreasing_in_range(self):
        with CTX.workdps():
            vals = [C.zeta_int(n, CTX) for n in range(2, 40)]
            for a, b in zip(vals, vals[1:]):
                assert 1 < b < a <= mp.pi**2 / 6

    def test_below_two_rejected(self):
        with pytest.raises(ValueError):
            C.zeta_int(1, CTX)


class TestDerivedConstants:
    def test_euler_gamma_two_precisions(self):
        with mp.workdps(130):
            lo = C.euler_gamma(PrecisionContext(60))
            hi = C.euler_gamma(PrecisionContext(120))
            assert abs(lo - hi) < mpf(10) ** -58
            assert abs(lo - mpf(GAMMA)) < mpf(10) ** -29

    def test_ln_glaisher_against_numerical_derivative(self):
        # Oracle: ln A = 1/12 - zeta'(-1) with zeta'(-1) by central difference
        # of the Euler-Maclaurin zeta.
        ctx80 = PrecisionContext(80)
        with mp.workdps(90):
            h = mpf(10) ** -25
            zp = (C._em_zeta(mpf(-1) + h, ctx80) - C._em_zeta(mpf(-1) - h, ctx80)) / (2 * h)
            oracle = mpf(1) / 12 - zp
            assert abs(C.ln_glaisher(CTX) - oracle) < mpf(10) ** -45
            assert abs(C.ln_glaisher(CTX) - mpf(LN_A)) < mpf(10) ** -29

    def test_glaisher_exponentiated(self):
        with CTX.workdps():
            assert abs(mp.exp(C.ln_glaisher(CTX)) - mpf(A_CONST)) < mpf(10) ** -28

    def test_zeta_prime_minus_two_identity(self):
        # zeta'(-2) = -zeta(3)/(4 pi^2), via the numerically differentiated
        # Euler-Maclaurin sum.
        ctx80 = PrecisionContext(80)
        with mp.workdps(90):
            h = mpf(10) ** -20
            zp = (C._em_zeta(mpf(-2) + h, ctx80) - C._em_zeta(mpf(-2) - h, ctx80)) / (2 * h)
            rhs = -C.zeta_int(3, ctx80) / (4 * mp.pi**2)
            assert abs(zp - rhs) < mpf(10) ** -35

    def test_mu0_expressions_agree(self):
        # (1/2) zeta'(-2) + 1/72 must equal -zeta(3)/(8 pi^2) + 1/72.
        ctx80 = PrecisionContext(80)
        with mp.workdps(90):
            h = mpf(10) ** -20
            zp = (C._em_zeta(mpf(-2) + h, ctx80) - C._em_zeta(mpf(-2) - h, ctx80)) / (2 * h)
            lhs = zp / 2 + mpf(1) / 72
            rhs = -C.zeta_int(3, ctx80) / (8 * mp.pi**2) + mpf(1) / 72
            assert abs(lhs - rhs) < mpf(10) ** -35

    def test_analytic_zeta_prime_matches_difference(self):
        ctx = PrecisionContext(60)
        with mp.workdps(80):
            h = mpf(10) ** -20
            fd = (C._em_zeta(mpf(2) + h, ctx) - C._em_zeta(mpf(2) - h, ctx)) / (2 * h)
            assert abs(C.zeta_prime(2, ctx) - fd) < mpf(10) ** -38
