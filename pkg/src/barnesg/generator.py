"""Two-point Pade generator for exponential-sum approximations of the kernel.

Pipeline: build the 2p x 2p linear system matching n1 moments and n2 Taylor
derivatives, solve it by Gaussian elimination with partial pivoting, find the
denominator roots (Aberth-Ehrlich plus Newton polish), decompose into partial
fractions and verify the moment/derivative conditions by direct substitution.
Everything runs at the context's working precision; both the linear solve and
the root finding are ill-conditioned, which is absorbed by high precision
rather than by algorithmic tricks.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .errors import GeneratorError, RootFindingError, SingularSystemError
from .kernel import KernelTables
from .precision import PrecisionContext

ABERTH_MAX_ITER = 200
NEWTON_POLISH_STEPS = 5
VERIFY_GUARD = 60        # residual pass bound is 10**(-digits + VERIFY_GUARD)
PIVOT_GUARD = 20
RESIDUAL_GUARD = 30


@dataclass(frozen=True)
class RationalApprox:
    """P/Q with monic Q of degree p and deg P <= p-1 (ascending coefficients)."""

    num: tuple[mpf, ...]   # a_0 .. a_{p-1}
    den: tuple[mpf, ...]   # b_0 .. b_{p-1}; the leading 1 of Q is implicit

    @property
    def p(self) -> int:
        return len(self.den)

    def den_monic(self) -> tuple[mpf, ...]:
        return self.den + (mpf(1),)


@dataclass(frozen=True)
class ExpSum:
    """Exponential-sum approximation: terms (lambda_j, c_j) with Re lambda > 0."""

    p: int
    n1: int
    n2: int
    terms: tuple[tuple[mpc, mpc], ...]
    digits: int

    @property
    def lambdas(self) -> tuple[mpc, ...]:
        return tuple(t[0] for t in self.terms)

    @property
    def coefficients(self) -> tuple[mpc, ...]:
        return tuple(t[1] for t in self.terms)

    def validate(self, rel_tol=None) -> None:
        """Raise GeneratorError unless all table invariants hold.

        rel_tol bounds the conjugate-closure mismatch and the minimum pole
        separation, relative to the scale of lambda.
        """
        if self.n1 + self.n2 != 2 * self.p:
            raise GeneratorError(
                f"n1 + n2 = {self.n1 + self.n2} must equal 2p = {2 * self.p}"
            )
        if len(self.terms) != self.p:
            raise GeneratorError(f"expected {self.p} terms, got {len(self.terms)}")
        with mp.workdps(self.digits + 10):
            if rel_tol is None:
                rel_tol = mpf(10) ** (-(self.digits // 2))
            lams = self.lambdas
            for lam in lams:
                if not lam.real > 0:
                    raise GeneratorError(f"Re(lambda) must be positive, got {lam}")
            scale = max(abs(lam) for lam in lams)
            for i in range(len(lams)):
                for j in range(i + 1, len(lams)):
                    if abs(lams[i] - lams[j]) <= rel_tol * scale:
                        raise GeneratorError(
                            f"lambdas {i} and {j} coincide within tolerance"
                        )
            # Conjugate closure: the term multiset must equal its conjugate.
            unmatched = list(self.terms)
            while unmatched:
                lam, c = unmatched.pop()
                if abs(lam.imag) <= rel_tol * scale:
                    continue
                for k, (lam2, c2) in enumerate(unmatched):
                    if (
                        abs(lam2 - mp.conj(lam)) <= rel_tol * scale
                        and abs(c2 - mp.conj(c)) <= rel_tol * max(abs(c), mpf(1))
                    ):
                        unmatched.pop(k)
                        break
                else:
                    raise GeneratorError(f"no conjugate partner for lambda = {lam}")


def build_system(p: int, n1: int, n2: int, tables: KernelTables, ctx: PrecisionContext):
    """Assemble the 2p x 2p matrix A and right-hand side y of the matching
    conditions; unknowns are [a_0..a_{p-1}, b_0..b_{p-1}]."""
    if n1 < 0 or n2 < 0 or n1 + n2 != 2 * p or p < 1:
        raise GeneratorError(f"need n1 + n2 = 2p with p >= 1, got ({p}, {n1}, {n2})")
    if len(tables.moments) < n1:
        raise GeneratorError(f"tables hold {len(tables.moments)} moments, need {n1}")
    if len(tables.derivs) < n2:
        raise GeneratorError(f"tables hold {len(tables.derivs)} derivatives, need {n2}")
    with ctx.workdps():
        alpha = [tables.derivs[n] for n in range(n2)]
        beta = [(-1) ** n * tables.moments[n] / mp.factorial(n) for n in range(n1)]
        size = 2 * p
        a_mat = [[mpf(0)] * size for _ in range(size)]
        y = [mpf(0)] * size
        for k in range(n1):
            if k <= p - 1:
                a_mat[k][k] = mpf(1)
            for j in range(p):
                if 0 <= k - j <= n1 - 1:
                    a_mat[k][p + j] = -beta[k - j]
            if k >= p:
                y[k] = beta[k - p]
        for l in range(n2):
            row = n1 + l
            if l <= p - 1:
                a_mat[row][p - 1 - l] = mpf(1)
            for j in range(p):
                t = l + j - p
                if 0 <= t <= n2 - 1:
                    a_mat[row][p + j] = -alpha[t]
            y[row] = alpha[l]
        return a_mat, y


def solve_linear(a_mat, y, ctx: PrecisionContext):
    """Gaussian elimination with partial pivoting at working precision."""
    n = len(y)
    with ctx.workdps():
        a = [[+v for v in row] for row in a_mat]
        b = [+v for v in y]
        pivot_floor = mpf(10) ** (-ctx.digits + PIVOT_GUARD)
        for col in range(n):
            piv = max(range(col, n), key=lambda r: abs(a[r][col]))
            if abs(a[piv][col]) < pivot_floor:
                raise SingularSystemError(
                    f"pivot collapse at column {col} (|pivot| < 1e{-ctx.digits + PIVOT_GUARD})"
                )
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                b[col], b[piv] = b[piv], b[col]
            inv = 1 / a[col][col]
            for r in range(col + 1, n):
                factor = a[r][col] * inv
                if factor == 0:
                    continue
                arow, crow = a[r], a[col]
                for c in range(col, n):
                    arow[c] -= factor * crow[c]
                b[r] -= factor * b[col]
        x = [mpf(0)] * n
        for r in range(n - 1, -1, -1):
            acc = b[r]
            row = a[r]
            for c in range(r + 1, n):
                acc -= row[c] * x[c]
            x[r] = acc / row[r]
        # Residual check against the original system.
        y_scale = max(max(abs(v) for v in y), mpf(10) ** (-ctx.digits))
        bound = mpf(10) ** (-ctx.digits + RESIDUAL_GUARD) * y_scale
        for r in range(n):
            res = sum(a_mat[r][c] * x[c] for c in range(n)) - y[r]
            if abs(res) > bound:
                raise SingularSystemError(
                    f"solution residual {mp.nstr(abs(res), 5)} exceeds bound at row {r}"
                )
        return x


def _horner_pair(coeffs, z):
    """Polynomial value and derivative at z (ascending coefficients)."""
    val = mpc(0)
    dval = mpc(0)
    for c in reversed(coeffs):
        dval = dval * z + val
        val = val * z + c
    return val, dval


def poly_roots(coeffs, ctx: PrecisionContext):
    """All roots of a monic polynomial (ascending coeffs, leading 1) by
    Aberth-Ehrlich iteration from a scaled circle, Newton-polished."""
    deg = len(coeffs) - 1
    if deg < 1:
        raise RootFindingError("degree must be >= 1")
    with mp.workdps(ctx.digits + 20):
        coeffs = [mpf(c) for c in coeffs]
        if coeffs[-1] != 1:
            raise RootFindingError("polynomial must be monic")
        # Geometric mean of the root magnitudes (|b_0| = product of |roots|)
        # as the starting scale; radii are staggered and the phase twisted so
        # the initial configuration has no symmetry for the iteration to
        # preserve.  A failed attempt restarts from a rotated configuration.
        if coeffs[0] != 0:
            radius = max(mpf(1), abs(coeffs[0]) ** (mpf(1) / deg))
        else:
            radius = mpf(1)
        target = mpf(10) ** (-(ctx.digits + 10))
        stagnation = mpf(10) ** (-(ctx.digits // 2))
        converged = False
        for attempt in range(5):
            roots = [
                radius
                * (mpf(6 + attempt) / 10 + mpf(8 * k) / (10 * max(deg - 1, 1)))
                * mp.exp(mpc(0, 2 * mp.pi * k / deg + mpf(7) / (10 * deg) + attempt))
                for k in range(deg)
            ]
            prev_worst = mp.inf
            for _ in range(ABERTH_MAX_ITER):
                worst = mpf(0)
                for i in range(deg):
                    z = roots[i]
                    val, dval = _horner_pair(coeffs, z)
                    if val == 0:
                        continue
                    if dval == 0:
                        roots[i] = z * (1 + mpf(10) ** (-(ctx.digits // 2)))
                        worst = mpf(1)
                        continue
                    w = val / dval
                    s = mpc(0)
                    for j in range(deg):
                        if j != i:
                            dz = z - roots[j]
                            if dz == 0:
                                dz = mpc(target)
                            s += 1 / dz
                    corr = w / (1 - w * s)
                    roots[i] = z - corr
                    worst = max(worst, abs(corr) / max(mpf(1), abs(z)))
                if worst < target or (worst < stagnation and worst >= prev_worst):
                    # Either fully converged or corrections hit the rounding
                    # floor set by the coefficient scale; Newton polish follows.
                    converged = True
                    break
                prev_worst = worst
            if converged:
                break
        if not converged:
            raise RootFindingError(
                f"Aberth-Ehrlich did not converge in {ABERTH_MAX_ITER} iterations"
            )
        for i in range(deg):
            for _ in range(NEWTON_POLISH_STEPS):
                val, dval = _horner_pair(coeffs, roots[i])
                if val == 0 or dval == 0:
                    break
                roots[i] = roots[i] - val / dval
        # Residual and separation diagnostics.
        sep_floor = mpf(10) ** (-ctx.digits // 2)
        for i in range(deg):
            scale = sum(abs(c) * abs(roots[i]) ** k for k, c in enumerate(coeffs))
            val, _ = _horner_pair(coeffs, roots[i])
            if abs(val) > mpf(10) ** (-ctx.digits + RESIDUAL_GUARD) * scale:
                raise RootFindingError(
                    f"root residual too large at root {i}: {mp.nstr(abs(val), 5)}"
                )
            for j in range(i + 1, deg):
                if abs(roots[i] - roots[j]) < sep_floor * max(mpf(1), abs(roots[i])):
                    raise RootFindingError(
                        "near-multiple roots detected; simple poles required"
                    )
    with ctx.workdps():
        return [+r for r in roots]


def _canonical_terms(raw_terms, digits: int):
    """Realify near-real terms, average conjugate pairs to exact closure and
    sort by (Re lambda, Im lambda)."""
    tol = mpf(10) ** (-digits // 2)
    scale = max(abs(lam) for lam, _ in raw_terms)
    real_terms = []
    complex_terms = []
    for lam, c in raw_terms:
        if abs(lam.imag) <= tol * scale:
            real_terms.append((mpc(lam.real, 0), mpc(c.real, 0)))
        else:
            complex_terms.append((lam, c))
    paired = []
    pool = list(complex_terms)
    while pool:
        lam, c = pool.pop()
        best, dist = None, None
        for k, (lam2, _) in enumerate(pool):
            d = abs(lam2 - mp.conj(lam))
            if dist is None or d < dist:
                best, dist = k, d
        if best is None or dist > tol * scale:
            raise RootFindingError(f"no conjugate partner for pole {-lam}")
        lam2, c2 = pool.pop(best)
        lam_avg = (lam + mp.conj(lam2)) / 2
        c_avg = (c + mp.conj(c2)) / 2
        paired.append((lam_avg, c_avg))
        paired.append((mp.conj(lam_avg), mp.conj(c_avg)))
    terms = real_terms + paired
    terms.sort(key=lambda t: (t[0].real, t[0].imag))
    return tuple(terms)


def partial_fractions(rat: RationalApprox, roots, ctx: PrecisionContext):
    """Terms (lambda_j, c_j) with lambda_j = -z_j and c_j = P(z_j)/Q'(z_j)."""
    with ctx.workdps():
        q_coeffs = rat.den_monic()
        raw = []
        for z in roots:
            _, dq = _horner_pair(q_coeffs, z)
            if dq == 0:
                raise RootFindingError(f"multiple root at {z}; simple poles required")
            pval, _ = _horner_pair(rat.num, z)
            raw.append((-mpc(z), pval / dq))
        return _canonical_terms(raw, ctx.digits)


def verify_conditions(e: ExpSum, tables: KernelTables, ctx: PrecisionContext):
    """Residuals of the moment and derivative matching conditions.

    Each residual is normalised by max(1, |target|) so the pass bound
    10**(-digits + 60) is meaningful across the factorially growing moments.
    """
    with ctx.workdps():
        moment_res = []
        for n in range(e.n1):
            acc = mpc(0)
            for lam, c in e.terms:
                acc += c * lam ** (-n - 1)
            target = tables.moments[n]
            res = abs(mp.factorial(n) * acc - target) / max(mpf(1), abs(target))
            moment_res.append(res)
        deriv_res = []
        for n in range(e.n2):
            acc = mpc(0)
            for lam, c in e.terms:
                acc += c * lam**n
            target = tables.derivs[n]
            res = abs((-1) ** n * acc - target) / max(mpf(1), abs(target))
            deriv_res.append(res)
        return moment_res, deriv_res


def rational_value(rat: RationalApprox, z):
    """P(z)/Q(z)."""
    num, _ = _horner_pair(rat.num, mpc(z))
    den, _ = _horner_pair(rat.den_monic(), mpc(z))
    return num / den


def rational_derivative(rat: RationalApprox, z):
    """(P/Q)'(z) from the coefficient arrays."""
    z = mpc(z)
    num, dnum = _horner_pair(rat.num, z)
    den, dden = _horner_pair(rat.den_monic(), z)
    return (dnum * den - num * dden) / den**2


def generate(p: int, n1: int, n2: int, ctx: PrecisionContext | None = None) -> ExpSum:
    """Full pipeline: tables -> system -> solve -> roots -> partial fractions
    -> verification.  Fails hard on instability (Re lambda <= 0) or residuals
    above 10**(-digits + 60)."""
    if ctx is None:
        ctx = PrecisionContext()
    if ctx.digits < 50:
        raise GeneratorError("generator work needs at least 50 digits")
    if n1 < 0 or n2 < 0 or n1 + n2 != 2 * p or p < 1:
        raise GeneratorError(f"need n1 + n2 = 2p with p >= 1, got ({p}, {n1}, {n2})")
    # The pipeline runs with a 20-digit internal guard; the returned terms and
    # the verification pass are at the requested working precision.
    ctx_in = PrecisionContext(ctx.digits + 20)
    tables_in = KernelTables.build(n_derivs=max(n2, 1), n_moments=max(n1, 1), ctx=ctx_in)
    a_mat, y = build_system(p, n1, n2, tables_in, ctx_in)
    x = solve_linear(a_mat, y, ctx_in)
    with ctx_in.workdps():
        rat = RationalApprox(num=tuple(x[:p]), den=tuple(x[p:]))
        roots = poly_roots(rat.den_monic(), ctx_in)
        terms_in = partial_fractions(rat, roots, ctx_in)
    with ctx.workdps():
        terms = tuple((+lam, +c) for lam, c in terms_in)
        tables = KernelTables(
            digits=ctx.digits,
            derivs=tuple(+d for d in tables_in.derivs),
            moments=tuple(+m for m in tables_in.moments),
        )
        e = ExpSum(p=p, n1=n1, n2=n2, terms=terms, digits=ctx.digits)
        for lam, _ in terms:
            if not lam.real > 0:
                raise GeneratorError(
                    f"unstable exponent Re(lambda) <= 0 for (p={p}, n1={n1}, n2={n2}): "
                    f"lambda = {mp.nstr(lam, 8)}"
                )
        moment_res, deriv_res = verify_conditions(e, tables, ctx)
        bound = mpf(10) ** (-ctx.digits + VERIFY_GUARD)
        worst = max(moment_res + deriv_res) if (moment_res or deriv_res) else mpf(0)
        if worst > bound:
            raise GeneratorError(
                f"verification failed for (p={p}, n1={n1}, n2={n2}): "
                f"max residual {mp.nstr(worst, 5)} > {mp.nstr(bound, 5)}"
            )
        e.validate()
        return e
