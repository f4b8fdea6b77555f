"""Universal numerical extrapolation operator.

For a > 0 and p > 0, f(az) is approximated by sum_k mu_k f(lambda_k z)
- p f_{n-1} z^{n-1}, with every node lambda_k z strictly inside the disc of
radius delta*a*|z|, delta < 1, so outer values are predicted from inner ones.
The formula is exact for polynomials of degree <= 2n-1 and the remainder is
bounded by the target's own series tail at a|z|, independently of p.
"""

import math
from dataclasses import dataclass

from . import polyroots, series
from .errors import ForbiddenParameterError
from .polyroots import ComplexPolynomial
from .prony import AFSum, MomentSequence, amplitudes_sylvester, moment_residual, power_sum
from .series import _fsum_complex
from .tolerances import DEFAULT


@dataclass(frozen=True)
class ExtrapOperator:
    """Coefficient set for f(az) extrapolation; contraction = delta < 1."""

    n: int
    a: float
    p: float
    mu: tuple
    lam: tuple
    contraction: float


def extrap_moments(n, a, p):
    """Moments s_m = a^m with s_{n-1} += p."""
    s = [complex(a) ** m for m in range(2 * n)]
    s[n - 1] += p
    return MomentSequence(n, tuple(s))


def extrap_generating_poly(n, a, p):
    """Monic generating polynomial: lambda^n - a^{2n-1}/(n a^{n-1} + p) * sum_m lambda^m / a^m."""
    if a <= 0 or p <= 0:
        raise ValueError("extrapolation requires a > 0 and p > 0")
    factor = a ** (2 * n - 1) / (n * a ** (n - 1) + p)
    coeffs = [complex(-factor / a ** m) for m in range(n)] + [1 + 0j]
    return ComplexPolynomial(tuple(coeffs))


def extrap_coeffs_general(n, a, p, q):
    """Closed-form coefficients for general q (cross-check oracle).

    Excluded parameter values p = 0 and p = -n a^{n-1} make the leading
    coefficient vanish.
    """
    p = complex(p)
    q = complex(q)
    if p == 0 or abs(p + n * a ** (n - 1)) == 0:
        raise ForbiddenParameterError(
            "closed-form coefficients need p != 0 and p != -n a^(n-1)"
        )
    kappa = (-1) ** (n * (n + 1) // 2) * p ** (n - 2)
    g = [0j] * (n + 1)
    g[n] = kappa * p * (n * a ** (n - 1) + p)
    g[0] = -kappa * (a ** (2 * n - 1) * p + (n - 1) * a ** (n - 1) * q + p * q)
    for m in range(1, n):
        g[m] = -kappa * a ** (n - 1 - m) * (a ** n * p - q)
    return tuple(g)


def contraction_factor(n, a, p):
    """delta = (1 + p/(n a^{n-1}))^(-1/n), in (0, 1) for p > 0."""
    if a <= 0 or p <= 0:
        raise ValueError("extrapolation requires a > 0 and p > 0")
    return (1.0 + p / (n * a ** (n - 1))) ** (-1.0 / n)


def build_extrap_operator(n, a, p, tol=DEFAULT):
    """Construct the order-n extrapolation operator for contraction a and weight p.

    The generating polynomial provably has n pairwise distinct roots inside
    the disc |lambda| < delta*a; both facts are still verified numerically.
    For n = 1 the single root sits exactly on the delta*a circle, so that case
    is checked against the closed disc.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    a = float(a)
    p = float(p)
    poly = extrap_generating_poly(n, a, p)
    lam = polyroots.roots(poly, tol)
    top = max(abs(r) for r in lam)
    if polyroots.min_separation(lam) <= tol.separation * (1 + top):
        raise ForbiddenParameterError("extrapolation roots failed to separate")

    moments = extrap_moments(n, a, p)
    mu = amplitudes_sylvester(lam, moments, tol)
    af = AFSum(n=n, mu=mu, lam=lam)
    limit = tol.residual * (1 + max(abs(x) for x in moments.s))
    resid = moment_residual(af, moments)
    if resid > limit:
        raise ForbiddenParameterError(
            f"moment residual {resid:.3e} exceeds {limit:.3e}; "
            "amplitudes are too ill-conditioned at these parameters"
        )

    delta = contraction_factor(n, a, p)
    edge = delta * a
    if n == 1:
        inside = all(abs(r) <= edge * (1 + 8e-15) for r in lam)
    else:
        inside = all(abs(r) < edge for r in lam)
    if not inside:
        raise ForbiddenParameterError("a frequency escaped the contraction disc")

    slack = tol.residual * (1 + a ** (2 * n + 5))
    for v in range(2 * n, 2 * n + 6):
        sv = power_sum(af, v)
        if abs(sv.imag) > slack or sv.real < -slack or sv.real > a ** v + slack:
            raise ForbiddenParameterError(
                f"power sum S_{v} = {sv!r} violates its [0, a^{v}] bound"
            )
    return ExtrapOperator(n=n, a=a, p=p, mu=tuple(mu), lam=tuple(lam), contraction=delta)


def apply_extrap(op, f, z):
    """Approximate f(a*z) by the operator (exact for degree <= 2n-1)."""
    z = complex(z)
    n = op.n
    total = _fsum_complex(
        op.mu[k] * series.evaluate(f, op.lam[k] * z) for k in range(n)
    )
    _, parity = series.parity_reduce(f)
    vanishes = (parity == series.EVEN and (n - 1) % 2 == 1) or (
        parity == series.ODD and (n - 1) % 2 == 0
    )
    if not vanishes:
        coeff = series.maclaurin_coeffs(f, n - 1).coefficients[n - 1]
        total -= op.p * coeff * z ** (n - 1)
    return total


def remainder_bound(op, f, z, M):
    """Tail bound sum_{m>=2n} |f_m| |az|^m truncated at M.

    Returns ``(value, tail_bounded)``.  When the last coefficient ratios admit
    a geometric majorant (or the series is structurally finite) the bound
    covers the full tail and ``tail_bounded`` is True; otherwise the partial
    sum is a lower estimate.
    """
    if M < 2 * op.n:
        raise ValueError("M must be at least 2n")
    z = complex(z)
    az = abs(op.a * z)
    coeffs = series.maclaurin_coeffs(f, M + 1).coefficients
    partial = math.fsum(abs(coeffs[m]) * az ** m for m in range(2 * op.n, M + 1))

    if f.kind in series.COEFFICIENT_KINDS and M + 1 >= len(f.coefficients):
        return partial, True
    if az == 0:
        return 0.0, True
    ratios = []
    for m in range(M - 4, M + 1):
        if coeffs[m] == 0:
            ratios = None
            break
        ratios.append(abs(coeffs[m + 1]) / abs(coeffs[m]))
    if ratios:
        rho = max(ratios)
        r = rho * az
        if r < 1:
            tail = abs(coeffs[M + 1]) * az ** (M + 1) / (1 - r)
            return partial + tail, True
    return partial, False
