"""Analytic regularization of non-regular moment problems.

Two moments are varied, s_{n-1} by p and s_{2n-1} by q, which is equivalent
to subtracting the binomial p*h_{n-1}*z^{n-1} + q*h_{2n-1}*z^{2n-1} from the
interpolant.  A diagonally dominant choice of p guarantees the generating
polynomial keeps full degree; a small complex perturbation of q separates any
multiple roots.
"""

import cmath
import math
from dataclasses import dataclass, replace

from . import series
from .errors import SeparationFailureError
from .prony import (
    REGULAR,
    AFSum,
    CorrectionBinomial,
    MomentSequence,
    generating_polynomial,
    is_regular,
    moment_sequence,
    solve,
)
from .tolerances import DEFAULT

# trial perturbations leave the real axis at a fixed irrational-looking angle
# so real moment data cannot align with them accidentally
_DELTA_DIRECTION = cmath.exp(1j * math.pi / 7)
_DELTA_TRIALS = 41


@dataclass(frozen=True)
class RegularizationParams:
    """Moment variation actually applied: s_{n-1} += p, s_{2n-1} += q + delta."""

    p: complex
    q: complex
    delta: complex = 0j

    @property
    def effective_q(self):
        return self.q + self.delta


def varied_moments(m, p, q):
    """Copy of the moments with s_{n-1} += p and s_{2n-1} += q."""
    if p == 0 and q == 0:
        return m
    s = list(m.s)
    s[m.n - 1] += p
    s[2 * m.n - 1] += q
    return MomentSequence(m.n, tuple(s))


def choose_p(m):
    """A real p large enough that the varied Hankel matrix is diagonally dominant.

    n * max|s_m| suffices for dominance; a 1/16 margin plus 1 keeps the bound
    strict even for zero moments.
    """
    top = max(abs(x) for x in m.s)
    return m.n * top * (1 + 1.0 / 16.0) + 1.0


def separate_roots(m, p, q, tol=DEFAULT):
    """Find the perturbation of q that makes the varied problem regular.

    Requires the varied generating polynomial to have full degree (that only
    depends on p).  Returns delta = 0 when (p, q) already gives pairwise
    distinct roots; otherwise tries a geometrically shrinking sequence of
    complex perturbations and returns the first that works.
    """
    generating_polynomial(varied_moments(m, p, q), tol)
    if is_regular(varied_moments(m, p, q), tol) == REGULAR:
        return RegularizationParams(p, q, 0j)
    for j in range(_DELTA_TRIALS):
        delta = 1e-2 * 2.0 ** -j * (1 + abs(q)) * _DELTA_DIRECTION
        if is_regular(varied_moments(m, p, q + delta), tol) == REGULAR:
            return RegularizationParams(p, q, delta)
    raise SeparationFailureError(
        "no trial perturbation of q produced pairwise distinct roots"
    )


def regularized_interpolant(f, h, n, params=None, tol=DEFAULT):
    """Interpolating sum over basis h matching f through order 2n-1.

    When ``params`` is omitted, the raw problem is used as-is if regular;
    otherwise p is chosen by diagonal dominance, q = p, and q is perturbed
    as needed.  Explicitly supplied parameters are honored (their q still
    gets the separation treatment unless a nonzero delta is given).
    """
    m = moment_sequence(f, h, n)
    if params is None:
        if is_regular(m, tol) == REGULAR:
            return replace(solve(m, tol), basis=h)
        p = choose_p(m)
        params = separate_roots(m, p, p, tol)
    elif params.delta == 0:
        params = separate_roots(m, params.p, params.q, tol)

    p = complex(params.p)
    q_eff = complex(params.effective_q)
    af = solve(varied_moments(m, p, q_eff), tol)
    if p == 0 and q_eff == 0:
        return replace(af, basis=h)
    hm = series.maclaurin_coeffs(h, 2 * n - 1).coefficients
    binomial = CorrectionBinomial(
        c1=-p * hm[n - 1], k1=n - 1, c2=-q_eff * hm[2 * n - 1], k2=2 * n - 1
    )
    return replace(af, basis=h, binomial=binomial)
