"""Universal numerical differentiation operator.

For n >= 3 and an admissible parameter p, z*f'(z) is approximated by
sum_k mu_k f(lambda_k z) - p f_{n-1} z^{n-1} - q f_{2n-1} z^{2n-1} with
q coupled to p so that the generating polynomial takes a closed p-independent
shape (up to its constant term).  The formula is exact for polynomials of
degree <= 2n-1 and has leading remainder C_n(p) f_{2n} z^{2n}.
"""

import cmath
import math
from dataclasses import dataclass

from . import polyroots, series
from .errors import ForbiddenParameterError, SeparationFailureError
from .polyroots import ComplexPolynomial
from .prony import MomentSequence, amplitudes_sylvester, moment_residual, AFSum
from .series import _fsum_complex
from .tolerances import DEFAULT

_PERTURB_TRIALS = 41
_PERTURB_DIRECTION = cmath.exp(1j * math.pi / 7)


@dataclass(frozen=True)
class DiffOperator:
    """Coefficient set for z*f'(z) interpolation, with validity bounds.

    lambda_bound is an analytic bound on all |lambda_k|; remainder_factor is
    the coefficient of f_{2n} z^{2n} in the leading remainder term.
    """

    n: int
    p: complex
    q: complex
    mu: tuple
    lam: tuple
    lambda_bound: float
    remainder_factor: complex


def forbidden_set(n):
    """The three p values for which the operator degenerates."""
    if n < 3:
        raise ValueError("the differentiation operator requires n >= 3")
    d = math.sqrt((2.0 / 3.0) * (n - 1) * (n - 3))
    return (0j, complex(n / 2.0 * (1 - n + d)), complex(n / 2.0 * (1 - n - d)))


def _check_allowed(n, p, tol):
    for bad in forbidden_set(n):
        if abs(complex(p) - bad) <= tol.forbidden_distance:
            raise ForbiddenParameterError(
                f"p = {p!r} is within {tol.forbidden_distance} of the excluded value {bad!r}"
            )


def q0(n, p):
    """The q coupled to p: -2p(3p + n^2 - 1) / ((n-1)(n-2))."""
    if n < 3:
        raise ValueError("q0 requires n >= 3")
    p = complex(p)
    return -2.0 * p * (3.0 * p + n * n - 1.0) / ((n - 1) * (n - 2))


def diff_moments(n, p, q):
    """Moments s_m = m with s_{n-1} += p and s_{2n-1} += q."""
    s = [complex(m) for m in range(2 * n)]
    s[n - 1] += p
    s[2 * n - 1] += q
    return MomentSequence(n, tuple(s))


def diff_generating_poly(n, p, tol=DEFAULT):
    """Monic generating polynomial for the differentiation moments at q = q0(p).

    Expanded finite-sum form: lambda^n - 6/((n-1)(n-2)) * sum_{m=1}^{n-1}
    (n-m-1) lambda^m + 2 + 6p/((n-1)(n-2)).  The equivalent factored shape has
    a removable singularity at lambda = 1, so it is never used numerically.
    """
    if n < 3:
        raise ValueError("the differentiation operator requires n >= 3")
    _check_allowed(n, p, tol)
    denom = (n - 1) * (n - 2)
    coeffs = [0j] * (n + 1)
    coeffs[n] = 1 + 0j
    for m in range(1, n):
        coeffs[m] = complex(-6.0 * (n - m - 1) / denom)
    coeffs[0] = 2.0 + 6.0 * complex(p) / denom
    return ComplexPolynomial(tuple(coeffs))


def diff_coeffs_general(n, p, q):
    """Closed-form coefficients of the differentiation generating polynomial.

    Valid for any q (not just q0); used as a cross-check oracle against the
    Hankel-solve route, so agreement is only meaningful after monic
    normalization.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    p = complex(p)
    q = complex(q)
    if p == 0 and n < 3:
        raise ForbiddenParameterError("closed-form coefficients need p != 0 for n < 3")
    kappa = (-1) ** (n * (n + 1) // 2) * p ** (n - 3)
    g = [0j] * (n + 1)
    g[n] = kappa * p * (p * p + n * (n - 1) * p + n * n * (n * n - 1) / 12.0)
    g[0] = -kappa * (
        p * p * q
        + (2 * n - 1) * p * p
        + (n - 1) ** 2 * p * q
        - n * (n * n - 1) / 6.0 * p
        + (n - 2) * n * (n - 1) ** 2 / 12.0 * q
    )
    for m in range(1, n):
        g[m] = -kappa * (
            (2 * n - (m + 1)) * p * p
            - (n - (m + 1)) * p * q
            - n * (n + 1) / 2.0 * ((n + 2) / 3.0 - (m + 1)) * p
            + n * (n - 1) / 2.0 * ((m + 1) - 2.0 * (n + 1) / 3.0) * q
        )
    return tuple(g)


def lambda_bound(n, p):
    """Analytic bound on the frequency moduli: (2*delta)^(3/sqrt(n-2))."""
    delta = 1.0 + 3.0 * abs(complex(p)) / ((n - 1) * (n - 2))
    return (2.0 * delta) ** (3.0 / math.sqrt(n - 2))


def remainder_factor(n, p):
    """Coefficient C_n(p) = 6np/((n-1)(n-2)) of the leading remainder term."""
    return 6.0 * n * complex(p) / ((n - 1) * (n - 2))


def build_diff_operator(n, p=-1.0, tol=DEFAULT):
    """Construct the order-n differentiation operator.

    If the generating polynomial for the requested p has coincident roots,
    p is nudged along a shrinking trial sequence until the roots separate.
    """
    if n < 3:
        raise ValueError("the differentiation operator requires n >= 3")
    p = complex(p)
    _check_allowed(n, p, tol)

    trial = p
    lam = None
    for j in range(-1, _PERTURB_TRIALS):
        if j >= 0:
            trial = p + 1e-2 * 2.0 ** -j * (1 + abs(p)) * _PERTURB_DIRECTION
            try:
                _check_allowed(n, trial, tol)
            except ForbiddenParameterError:
                continue
        poly = diff_generating_poly(n, trial, tol)
        candidate = polyroots.roots(poly, tol)
        top = max(abs(r) for r in candidate)
        if polyroots.min_separation(candidate) > tol.separation * (1 + top):
            lam = candidate
            break
    if lam is None:
        raise SeparationFailureError(
            "no trial perturbation of p produced pairwise distinct roots"
        )

    q = q0(n, trial)
    moments = diff_moments(n, trial, q)
    mu = amplitudes_sylvester(lam, moments, tol)
    limit = tol.residual * (1 + max(abs(x) for x in moments.s))
    resid = moment_residual(AFSum(n=n, mu=mu, lam=lam), moments)
    if resid > limit:
        raise SeparationFailureError(
            f"moment residual {resid:.3e} exceeds {limit:.3e} after construction"
        )
    bound = lambda_bound(n, trial)
    if any(abs(r) > bound * (1 + 1e-12) for r in lam):
        raise SeparationFailureError("a frequency exceeds its analytic bound")
    return DiffOperator(
        n=n,
        p=trial,
        q=q,
        mu=tuple(mu),
        lam=tuple(lam),
        lambda_bound=bound,
        remainder_factor=remainder_factor(n, trial),
    )


def apply_diff(op, f, z):
    """Approximate z*f'(z) by the operator.

    Coefficient extraction for the correction terms is skipped when the
    target's parity forces them to vanish.
    """
    z = complex(z)
    n = op.n
    total = _fsum_complex(
        op.mu[k] * series.evaluate(f, op.lam[k] * z) for k in range(n)
    )
    _, parity = series.parity_reduce(f)
    need1 = not (
        (parity == series.EVEN and (n - 1) % 2 == 1)
        or (parity == series.ODD and (n - 1) % 2 == 0)
    )
    need2 = not (
        (parity == series.EVEN and (2 * n - 1) % 2 == 1)
        or (parity == series.ODD and (2 * n - 1) % 2 == 0)
    )
    if need1 or need2:
        coeffs = series.maclaurin_coeffs(f, 2 * n - 1).coefficients
        if need1:
            total -= op.p * coeffs[n - 1] * z ** (n - 1)
        if need2:
            total -= op.q * coeffs[2 * n - 1] * z ** (2 * n - 1)
    return total
