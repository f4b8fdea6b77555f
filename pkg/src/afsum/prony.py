"""Discrete moment problem solver.

Solves sum_k mu_k lambda_k^m = s_m for m = 0..2n-1 by the classical route:
a Hankel solve produces the monic generating polynomial, its roots are the
frequencies, and the amplitudes follow either from the symmetric-polynomial
formula or from the leading Vandermonde block.  Also provides regularity
diagnostics, Hankel rank, Hamburger positivity, and sum evaluation.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import polyroots, series
from .errors import DegenerateSystemError, IncompatibleBasisError, NonRegularError
from .polyroots import ComplexPolynomial
from .series import FunctionSpec, TruncatedSeries, _fsum_complex
from .tolerances import DEFAULT

REGULAR = "regular"
DEGREE_DEFICIENT = "degree_deficient"
MULTIPLE_ROOTS = "multiple_roots"


@dataclass(frozen=True)
class MomentSequence:
    """The 2n right-hand sides s_0..s_{2n-1} of a discrete moment problem."""

    n: int
    s: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order must be at least 1")
        entries = tuple(complex(x) for x in self.s)
        if len(entries) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} moments, got {len(entries)}")
        if not all(np.isfinite(x) for x in entries):
            raise ValueError("moments must be finite")
        object.__setattr__(self, "s", entries)


@dataclass(frozen=True)
class CorrectionBinomial:
    """The correction c1*z^k1 + c2*z^k2 attached to a regularized sum."""

    c1: complex
    k1: int
    c2: complex
    k2: int


@dataclass(frozen=True)
class AFSum:
    """An amplitude-and-frequency sum over a basis function.

    Represents sum_k mu_k * h(lambda_k * z), optionally plus a correction
    binomial.  ``basis`` may be None for a bare solution of a moment problem.
    """

    n: int
    mu: tuple
    lam: tuple
    basis: FunctionSpec = field(default=None)
    binomial: CorrectionBinomial = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(complex(x) for x in self.mu))
        object.__setattr__(self, "lam", tuple(complex(x) for x in self.lam))
        if len(self.mu) != self.n or len(self.lam) != self.n:
            raise ValueError("amplitude and frequency lists must have length n")


def moment_sequence(f, h, n):
    """Moments s_m = f_m / h_m (zero where f_m = 0) for m = 0..2n-1.

    Raises IncompatibleBasisError when some h_m vanishes but f_m does not;
    such a target cannot be represented over this basis.
    """
    fm = series.maclaurin_coeffs(f, 2 * n - 1).coefficients
    hm = series.maclaurin_coeffs(h, 2 * n - 1).coefficients
    out = []
    for m in range(2 * n):
        if fm[m] == 0:
            out.append(0j)
        elif hm[m] == 0:
            raise IncompatibleBasisError(
                f"basis coefficient {m} vanishes but the target coefficient does not"
            )
        else:
            out.append(fm[m] / hm[m])
    return MomentSequence(n, tuple(out))


def _solve_pivoted(matrix, rhs, pivot_tol):
    """Gaussian elimination with partial pivoting and a relative pivot floor."""
    a = np.array(matrix, dtype=complex)
    b = np.array(rhs, dtype=complex)
    n = a.shape[0]
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if scale == 0.0:
        raise DegenerateSystemError("coefficient matrix is zero")
    for k in range(n):
        pivot_row = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[pivot_row, k]) <= pivot_tol * scale:
            raise DegenerateSystemError(
                f"pivot {abs(a[pivot_row, k]):.3e} below tolerance at column {k}"
            )
        if pivot_row != k:
            a[[k, pivot_row]] = a[[pivot_row, k]]
            b[[k, pivot_row]] = b[[pivot_row, k]]
        factors = a[k + 1:, k] / a[k, k]
        a[k + 1:, k:] -= np.outer(factors, a[k, k:])
        b[k + 1:] -= factors * b[k]
    x = np.zeros(n, dtype=complex)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return [complex(v) for v in x]


def generating_polynomial(m, tol=DEFAULT):
    """Monic degree-n polynomial whose roots are the frequencies.

    Solves the n x n Hankel system (s_{i+j}) g = -(s_n..s_{2n-1}); a pivot
    under tolerance means the actual degree is below n (degenerate problem).
    Monic normalization leaves the roots invariant.
    """
    n = m.n
    s = m.s
    hankel = [[s[i + j] for j in range(n)] for i in range(n)]
    rhs = [-s[n + i] for i in range(n)]
    try:
        g = _solve_pivoted(hankel, rhs, tol.pivot)
    except DegenerateSystemError as exc:
        raise DegenerateSystemError(
            f"generating polynomial has degree below n={n}: {exc}"
        ) from None
    return ComplexPolynomial(tuple(g) + (1 + 0j,))


def hankel_rank(m, tol=DEFAULT):
    """Numerical rank of the n x n Hankel matrix (s_{i+j})."""
    n = m.n
    a = np.array([[m.s[i + j] for j in range(n)] for i in range(n)], dtype=complex)
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return 0
    threshold = tol.pivot * scale
    rank = 0
    row = 0
    for col in range(n):
        pivot_row = row + int(np.argmax(np.abs(a[row:, col])))
        if abs(a[pivot_row, col]) <= threshold:
            continue
        if pivot_row != row:
            a[[row, pivot_row]] = a[[pivot_row, row]]
        factors = a[row + 1:, col] / a[row, col]
        a[row + 1:, col:] -= np.outer(factors, a[row, col:])
        rank += 1
        row += 1
        if row == n:
            break
    return rank


def is_regular(m, tol=DEFAULT):
    """Classify the moment problem: regular, degree_deficient, or multiple_roots."""
    try:
        poly = generating_polynomial(m, tol)
    except DegenerateSystemError:
        return DEGREE_DEFICIENT
    rts = polyroots.roots(poly, tol)
    top = max(abs(r) for r in rts)
    if polyroots.min_separation(rts) <= tol.separation * (1 + top):
        return MULTIPLE_ROOTS
    return REGULAR


def amplitudes_sylvester(rts, m, tol=DEFAULT):
    """Amplitudes from the symmetric-polynomial formula.

    mu_k is the scalar product of (s_0..s_{n-1}) with the coefficient row
    built from the elementary symmetric polynomials of the other roots,
    divided by the derivative of the monic generating polynomial at root k.
    """
    rts = tuple(complex(r) for r in rts)
    n = m.n
    if len(rts) != n:
        raise ValueError("need exactly n roots")
    scale = (1 + max(abs(r) for r in rts)) ** max(n - 1, 1)
    out = []
    for k in range(n):
        # monic polynomial with the other n-1 roots, ascending coefficients
        q = [1 + 0j]
        for j, root in enumerate(rts):
            if j == k:
                continue
            q = [0j] + q
            for i in range(len(q) - 1):
                q[i] -= root * q[i + 1]
        deriv = 0j
        for c in reversed(q):
            deriv = deriv * rts[k] + c
        if abs(deriv) < tol.derivative_floor * scale:
            raise DegenerateSystemError(
                f"generating polynomial derivative ~0 at frequency {rts[k]!r}"
            )
        numerator = _fsum_complex(q[i] * m.s[i] for i in range(n))
        out.append(numerator / deriv)
    return tuple(out)


def amplitudes_vandermonde(rts, m, tol=DEFAULT):
    """Amplitudes from the leading n x n Vandermonde block (oracle route)."""
    rts = tuple(complex(r) for r in rts)
    n = m.n
    if len(rts) != n:
        raise ValueError("need exactly n roots")
    v = [[rts[k] ** i for k in range(n)] for i in range(n)]
    return tuple(_solve_pivoted(v, m.s[:n], tol.pivot))


def moment_residual(af, m):
    """Largest deviation of the sum's power sums from the given moments."""
    return max(abs(power_sum(af, v) - m.s[v]) for v in range(2 * m.n))


def solve(m, tol=DEFAULT):
    """Solve a regular moment problem into an AFSum (basis left unattached).

    The result satisfies all 2n moment equations within tol.residual relative
    to the moment scale; a regular-looking system that cannot meet that is
    reported as non-regular with verdict "residual".
    """
    verdict = is_regular(m, tol)
    if verdict != REGULAR:
        raise NonRegularError(verdict)
    poly = generating_polynomial(m, tol)
    lam = polyroots.roots(poly, tol)
    mu = amplitudes_sylvester(lam, m, tol)
    af = AFSum(n=m.n, mu=mu, lam=lam)
    limit = tol.residual * (1 + max(abs(x) for x in m.s))
    resid = moment_residual(af, m)
    if resid > limit:
        raise NonRegularError(
            "residual",
            f"moment residual {resid:.3e} exceeds {limit:.3e}; "
            "the problem is too ill-conditioned to solve reliably",
        )
    return af


def power_sum(af, v):
    """Generalized power sum S_v = sum_k mu_k * lambda_k^v."""
    if v < 0:
        raise ValueError("exponent must be non-negative")
    return _fsum_complex(af.mu[k] * af.lam[k] ** v for k in range(af.n))


def extend_power_sums(poly, seed, upto):
    """Propagate power sums with the linear recurrence given by the polynomial.

    ``seed`` must hold at least deg(poly) consecutive values S_0, S_1, ...;
    returns the list extended through S_upto.
    """
    g = poly.coefficients
    n = poly.degree
    if len(seed) < n:
        raise ValueError("seed must contain at least deg(poly) values")
    out = [complex(x) for x in seed]
    while len(out) <= upto:
        v = len(out) - n
        out.append(-_fsum_complex(out[v + i] * g[i] for i in range(n)) / g[n])
    return out


def is_positive_sequence(m):
    """True iff the leading principal Hankel minors Delta_1..Delta_n are positive.

    Positivity guarantees real pairwise distinct frequencies and positive
    amplitudes.  Requires real moments.
    """
    if any(x.imag != 0 for x in m.s):
        raise ValueError("positivity is defined for real moment sequences")
    vals = [x.real for x in m.s]
    for k in range(1, m.n + 1):
        minor = np.array([[vals[i + j] for j in range(k)] for i in range(k)])
        if not np.linalg.det(minor) > 0:
            return False
    return True


def evaluate_sum(af, z):
    """Value of the sum (plus any correction binomial) at a complex point."""
    if af.basis is None:
        raise ValueError("sum has no basis attached")
    z = complex(z)
    total = _fsum_complex(
        af.mu[k] * series.evaluate(af.basis, af.lam[k] * z) for k in range(af.n)
    )
    if af.binomial is not None:
        total += af.binomial.c1 * z ** af.binomial.k1
        total += af.binomial.c2 * z ** af.binomial.k2
    return total


def sum_maclaurin(af, M):
    """Maclaurin coefficients of the sum: h_m * S_m plus binomial terms."""
    if af.basis is None:
        raise ValueError("sum has no basis attached")
    h = series.maclaurin_coeffs(af.basis, M).coefficients
    coeffs = [h[m] * power_sum(af, m) for m in range(M + 1)]
    if af.binomial is not None:
        if af.binomial.k1 <= M:
            coeffs[af.binomial.k1] += af.binomial.c1
        if af.binomial.k2 <= M:
            coeffs[af.binomial.k2] += af.binomial.c2
    return TruncatedSeries(tuple(coeffs))
