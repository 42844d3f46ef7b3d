import pytest
from mpmath import mp

from barnesg.auditing import audit
from barnesg.generator import generate
from barnesg.precision import PrecisionContext
from barnesg.store import builtin_p15, load_p45

GEN_DIGITS = 500


@pytest.fixture(scope="session")
def ctx500():
    return PrecisionContext(GEN_DIGITS)


@pytest.fixture(scope="session")
def gen_p3(ctx500):
    return generate(3, 3, 3, ctx500)


@pytest.fixture(scope="session")
def gen_p15(ctx500):
    return generate(15, 22, 8, ctx500)


@pytest.fixture(scope="session")
def builtin15():
    return builtin_p15()


@pytest.fixture(scope="session")
def table45():
    return load_p45()


@pytest.fixture(scope="session")
def audit_builtin15(builtin15):
    return audit(builtin15, digits=50, points=4000)


def match_terms(generated, reference, rel_tol):
    """Pair generated (lambda, c) terms with reference ones by nearest lambda
    and assert both components agree to rel_tol."""
    with mp.workdps(40):
        unmatched = list(generated)
        for lam_ref, c_ref in reference:
            best_idx = min(
                range(len(unmatched)),
                key=lambda i: abs(unmatched[i][0] - lam_ref),
            )
            lam, c = unmatched.pop(best_idx)
            assert abs(lam - lam_ref) <= rel_tol * abs(lam_ref), (
                f"lambda mismatch: {lam} vs {lam_ref}"
            )
            assert abs(c - c_ref) <= rel_tol * abs(c_ref), (
                f"coefficient mismatch at lambda={lam_ref}: {c} vs {c_ref}"
            )
        assert not unmatched
