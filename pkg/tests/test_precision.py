import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpc, mpf

from barnesg.errors import DomainError, ParseError
from barnesg.precision import (
    PrecisionContext,
    parse_decimal,
    principal_log,
    to_decimal,
    to_decimal_sci,
)

CTX = PrecisionContext(60)


def _series_exp(z, terms=120):
    """Independent Taylor-series exponential used as the log oracle."""
    acc = mpc(1)
    term = mpc(1)
    for k in range(1, terms):
        term = term * z / k
        acc += term
    return acc


class TestPrincipalLog:
    def test_identity_at_one(self):
        assert principal_log(1, CTX) == 0

    def test_branch_at_minus_one(self):
        with CTX.workdps():
            v = principal_log(-1, CTX)
            assert v.real == 0
            assert abs(v.imag - mp.pi) < CTX.tolerance()

    def test_log_i_against_series_exp(self):
        with CTX.workdps():
            v = principal_log(mpc(0, 1), CTX)
            assert abs(v - mpc(0, mp.pi / 2)) < CTX.tolerance()
            # exp(result) must recover i, with exp summed independently.
            assert abs(_series_exp(v) - mpc(0, 1)) < CTX.tolerance()

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            principal_log(0, CTX)

    def test_imaginary_part_range(self):
        with CTX.workdps():
            for z in [mpc(-3, 1e-30), mpc(-3, -1e-30), mpc(2, -5), mpc(-1, 4)]:
                v = principal_log(z, CTX)
                assert -mp.pi < v.imag <= mp.pi

    @settings(max_examples=60, deadline=None)
    @given(
        st.floats(-10, 10, allow_nan=False),
        st.floats(-10, 10, allow_nan=False),
    )
    def test_conjugation_off_cut(self, x, y):
        z = mpc(x, y)
        if z == 0 or (y == 0 and x < 0):
            return
        with CTX.workdps():
            a = principal_log(mp.conj(z), CTX)
            b = mp.conj(principal_log(z, CTX))
            assert abs(a - b) <= CTX.tolerance() * max(1, abs(a))


class TestDecimalRoundTrip:
    def test_table_entry_parses_exactly(self):
        ctx = PrecisionContext(25)
        x = parse_decimal("1.015816941860969308", ctx)
        assert to_decimal(x, 19) == "1.015816941860969308"

    def test_small_coefficient(self):
        ctx = PrecisionContext(25)
        x = parse_decimal("-1.501034759773e-3", ctx)
        assert to_decimal_sci(x, 13) == "-1.501034759773e-3"

    def test_fixed_padding(self):
        assert to_decimal(parse_decimal("0.5", CTX), 3) == "0.500"

    @pytest.mark.parametrize("bad", ["", "1.2.3", "abc", "1e", "--5", "inf", "nan"])
    def test_malformed_rejected(self, bad):
        with pytest.raises(ParseError):
            parse_decimal(bad, CTX)

    @settings(max_examples=80, deadline=None)
    @given(st.floats(-10, 10, allow_nan=False, allow_infinity=False))
    def test_round_trip_random(self, x):
        with CTX.workdps():
            v = mpf(x)
            back = parse_decimal(to_decimal(v, CTX.digits), CTX)
            assert abs(back - v) <= CTX.tolerance() * max(1, abs(v))


class TestContext:
    def test_default_digits(self):
        assert PrecisionContext().digits == 500

    def test_positive_required(self):
        with pytest.raises(ValueError):
            PrecisionContext(0)

    def test_tolerance_guard(self):
        ctx = PrecisionContext(50)
        with ctx.workdps():
            assert ctx.tolerance(10) == mpf(10) ** -40
