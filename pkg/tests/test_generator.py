import random

import mpmath
import pytest
from mpmath import mp, mpc, mpf

from barnesg import generator as G
from barnesg.errors import GeneratorError, RootFindingError, SingularSystemError
from barnesg.kernel import KernelTables, kernel_value, moment
from barnesg.precision import PrecisionContext

from conftest import match_terms

CTX = PrecisionContext(120)

# Published p=3 values (13 significant digits).
P3_REFERENCE = [
    ("1.119578657398", "0", "-1.501034759773e-3", "0"),
    ("1.348997960953", "0.462842303653", "5.607293544244e-5", "-1.516208003305e-4"),
    ("1.348997960953", "-0.462842303653", "5.607293544244e-5", "1.516208003305e-4"),
]


def _ref_terms(raw):
    with mp.workdps(40):
        return [
            (mpc(mpf(lr), mpf(li)), mpc(mpf(cr), mpf(ci))) for lr, li, cr, ci in raw
        ]


class TestBuildSystem:
    def test_p1_hand_solution(self):
        tables = KernelTables.build(1, 1, CTX)
        a_mat, y = G.build_system(1, 1, 1, tables, CTX)
        x = G.solve_linear(a_mat, y, CTX)
        with CTX.workdps():
            f0 = kernel_value(0, CTX)
            mu0 = moment(0, CTX)
            assert abs(x[0] - f0) <= CTX.tolerance()
            assert abs(x[1] - f0 / mu0) <= CTX.tolerance()

    def test_row_structure_p3(self):
        tables = KernelTables.build(3, 3, CTX)
        a_mat, _ = G.build_system(3, 3, 3, tables, CTX)
        for k in range(3):  # k <= p-1 rows carry the unit diagonal
            assert a_mat[k][k] == 1

    def test_parity_violation(self):
        tables = KernelTables.build(3, 3, CTX)
        with pytest.raises(GeneratorError):
            G.build_system(2, 3, 2, tables, CTX)

    def test_insufficient_tables(self):
        tables = KernelTables.build(1, 1, CTX)
        with pytest.raises(GeneratorError):
            G.build_system(3, 3, 3, tables, CTX)


class TestSolveLinear:
    def test_identity(self):
        with CTX.workdps():
            a = [[mpf(1 if i == j else 0) for j in range(4)] for i in range(4)]
            y = [mpf(v) for v in (3, -1, 2, 7)]
            assert G.solve_linear(a, y, CTX) == y

    def test_against_mpmath_lu(self):
        rng = random.Random(11)
        with CTX.workdps():
            a = [[mpf(rng.uniform(-1, 1)) for _ in range(8)] for _ in range(8)]
            y = [mpf(rng.uniform(-1, 1)) for _ in range(8)]
            ours = G.solve_linear(a, y, CTX)
            ref = mpmath.lu_solve(mp.matrix(a), mp.matrix(y))
            for u, v in zip(ours, ref):
                assert abs(u - v) <= mpf(10) ** -100

    def test_singular_detected(self):
        with CTX.workdps():
            a = [[mpf(1), mpf(2)], [mpf(2), mpf(4)]]
            with pytest.raises(SingularSystemError):
                G.solve_linear(a, [mpf(1), mpf(2)], CTX)


class TestPolyRoots:
    def test_linear(self):
        roots = G.poly_roots([mpf(-1), mpf(1)], CTX)
        assert len(roots) == 1
        with CTX.workdps():
            assert abs(roots[0] - 1) <= CTX.tolerance()

    def test_quadratic(self):
        # z^2 - 2z + 2 has roots 1 +/- i.
        roots = G.poly_roots([mpf(2), mpf(-2), mpf(1)], CTX)
        with CTX.workdps():
            got = sorted(roots, key=lambda r: r.imag)
            assert abs(got[0] - mpc(1, -1)) <= CTX.tolerance()
            assert abs(got[1] - mpc(1, 1)) <= CTX.tolerance()

    def test_against_mpmath_polyroots(self):
        rng = random.Random(5)
        with mp.workdps(140):
            coeffs = [mpf(rng.uniform(-2, 2)) for _ in range(12)] + [mpf(1)]
            ours = sorted(G.poly_roots(coeffs, CTX), key=lambda r: (r.real, r.imag))
            ref = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=200)
            ref = sorted((mpc(r) for r in ref), key=lambda r: (r.real, r.imag))
            for u, v in zip(ours, ref):
                assert abs(u - v) <= mpf(10) ** -90

    def test_near_multiple_root_rejected(self):
        # (z - 1)^2 (z + 2) = z^3 - 3z + 2
        with pytest.raises(RootFindingError):
            G.poly_roots([mpf(2), mpf(-3), mpf(0), mpf(1)], CTX)

    def test_non_monic_rejected(self):
        with pytest.raises(RootFindingError):
            G.poly_roots([mpf(1), mpf(2)], CTX)


class TestPartialFractions:
    def test_single_pole(self):
        # 1/(z + 2): P = (1,), Q = (2, 1).
        rat = G.RationalApprox(num=(mpf(1),), den=(mpf(2),))
        roots = G.poly_roots(rat.den_monic(), CTX)
        terms = G.partial_fractions(rat, roots, CTX)
        with CTX.workdps():
            assert len(terms) == 1
            assert abs(terms[0][0] - 2) <= CTX.tolerance()
            assert abs(terms[0][1] - 1) <= CTX.tolerance()

    def test_cover_up_two_poles(self):
        # (2z + 3)/((z + 1)(z + 2)) = 1/(z + 1) + 1/(z + 2).
        rat = G.RationalApprox(num=(mpf(3), mpf(2)), den=(mpf(2), mpf(3)))
        roots = G.poly_roots(rat.den_monic(), CTX)
        terms = G.partial_fractions(rat, roots, CTX)
        with CTX.workdps():
            assert abs(terms[0][0] - 1) <= CTX.tolerance()
            assert abs(terms[0][1] - 1) <= CTX.tolerance()
            assert abs(terms[1][0] - 2) <= CTX.tolerance()
            assert abs(terms[1][1] - 1) <= CTX.tolerance()


class TestGenerate:
    def test_p3_reproduces_published_values(self, gen_p3):
        match_terms(gen_p3.terms, _ref_terms(P3_REFERENCE), mpf("5e-12"))

    def test_p3_residuals(self, gen_p3, ctx500):
        tables = KernelTables.build(3, 3, ctx500)
        mres, dres = G.verify_conditions(gen_p3, tables, ctx500)
        with ctx500.workdps():
            assert max(mres + dres) < mpf(10) ** -400

    def test_perturbed_coefficient_moves_first_residual(self, gen_p3, ctx500):
        with ctx500.workdps():
            lam0, c0 = gen_p3.terms[0]
            delta = mpf(10) ** -20
            terms = ((lam0, c0 + delta),) + gen_p3.terms[1:]
            e = G.ExpSum(p=3, n1=3, n2=3, terms=terms, digits=gen_p3.digits)
            tables = KernelTables.build(3, 3, ctx500)
            mres, _ = G.verify_conditions(e, tables, ctx500)
            expected = delta / abs(lam0)
            assert abs(mres[0] - expected) <= expected * mpf("0.01")

    def test_laplace_duality(self, gen_p3, ctx500):
        # Transform of the term sum equals minus the derivative of the
        # coefficient-form rational function at scattered points.
        tables = KernelTables.build(3, 3, ctx500)
        a_mat, y = G.build_system(3, 3, 3, tables, ctx500)
        x = G.solve_linear(a_mat, y, ctx500)
        rat = G.RationalApprox(num=tuple(x[:3]), den=tuple(x[3:]))
        rng = random.Random(3)
        from barnesg.auditing import transform_value

        with ctx500.workdps():
            for _ in range(20):
                z = mpc(rng.uniform(0.1, 6), rng.uniform(-4, 4))
                lhs = transform_value(gen_p3, z, ctx500)
                rhs = -G.rational_derivative(rat, z)
                assert abs(lhs - rhs) <= mpf(10) ** -400 * max(1, abs(rhs))

    def test_conjugate_closure_and_stability(self, gen_p15):
        gen_p15.validate()  # raises on any violated invariant
        assert all(lam.real > 0 for lam, _ in gen_p15.terms)

    def test_term_ordering(self, gen_p15):
        keys = [(float(l.real), float(l.imag)) for l, _ in gen_p15.terms]
        assert keys == sorted(keys)

    def test_residuals_shrink_with_precision(self):
        # 250 -> 500 digits must gain at least 100 orders on the p=15 run.
        lo_ctx = PrecisionContext(250)
        hi_ctx = PrecisionContext(500)
        e_lo = G.generate(15, 22, 8, lo_ctx)
        e_hi = G.generate(15, 22, 8, hi_ctx)
        t_lo = KernelTables.build(8, 22, lo_ctx)
        t_hi = KernelTables.build(8, 22, hi_ctx)
        with mp.workdps(520):
            r_lo = max(sum(G.verify_conditions(e_lo, t_lo, lo_ctx), []))
            r_hi = max(sum(G.verify_conditions(e_hi, t_hi, hi_ctx), []))
            assert r_hi < r_lo * mpf(10) ** -100

    def test_parity_error(self):
        with pytest.raises(GeneratorError):
            G.generate(2, 3, 2, CTX)

    def test_min_digits(self):
        with pytest.raises(GeneratorError):
            G.generate(3, 3, 3, PrecisionContext(20))


class TestExpSumValidate:
    def test_nonpositive_lambda_rejected(self):
        with mp.workdps(30):
            terms = ((mpc(-1, 0), mpc(1, 0)),)
            e = G.ExpSum(p=1, n1=1, n2=1, terms=terms, digits=20)
            with pytest.raises(GeneratorError):
                e.validate()

    def test_missing_conjugate_rejected(self):
        with mp.workdps(30):
            terms = ((mpc(1, 1), mpc(1, 0)), (mpc(2, 0), mpc(1, 0)))
            e = G.ExpSum(p=2, n1=2, n2=2, terms=terms, digits=20)
            with pytest.raises(GeneratorError):
                e.validate()

    def test_coincident_lambdas_rejected(self):
        with mp.workdps(30):
            terms = ((mpc(1, 0), mpc(1, 0)), (mpc(1, 0), mpc(2, 0)))
            e = G.ExpSum(p=2, n1=2, n2=2, terms=terms, digits=20)
            with pytest.raises(GeneratorError):
                e.validate()
