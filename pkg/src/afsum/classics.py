"""Classical specializations of the moment pipeline.

Gauss-Legendre and Gauss-Chebyshev rules recovered from their moment
sequences, Pade approximants, exponential sums, and the three local Bessel
approximants with their analytic error bounds.
"""

import cmath
import math
import warnings
from dataclasses import dataclass

from . import prony, series
from .prony import MomentSequence
from .series import FunctionSpec, _fsum_complex
from .tolerances import DEFAULT

_REAL_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of an n-point rule on the symmetric interval."""

    n: int
    nodes: tuple
    weights: tuple
    family: str


def legendre_moments(n):
    """Monomial integrals over [-1, 1]: 2/(m+1) for even m, 0 for odd."""
    return MomentSequence(
        n, tuple(2.0 / (m + 1) if m % 2 == 0 else 0.0 for m in range(2 * n))
    )


def chebyshev_moments(n):
    """Monomial integrals against the arcsine weight: pi*(2m)!/(2^m m!)^2 at even m."""
    s = []
    value = math.pi
    for m in range(2 * n):
        if m % 2 == 0:
            s.append(value)
            j = m // 2
            value *= (2 * j + 1) / (2 * j + 2)
        else:
            s.append(0.0)
    return MomentSequence(n, tuple(s))


def _real_rule(af, family):
    top = 1 + max(abs(x) for x in af.lam)
    if any(abs(x.imag) > _REAL_IMAG_TOL * top for x in af.lam + af.mu):
        raise ArithmeticError(f"{family} rule came out non-real")
    return QuadratureRule(
        n=af.n,
        nodes=tuple(x.real for x in af.lam),
        weights=tuple(x.real for x in af.mu),
        family=family,
    )


def gauss_legendre(n, tol=DEFAULT):
    """n-point Gauss-Legendre rule built through the moment pipeline.

    Nodes come out as the Legendre roots in (-1, 1) with positive weights
    summing to 2; they are returned in ascending node order.
    """
    return _real_rule(prony.solve(legendre_moments(n), tol), "legendre")


def gauss_chebyshev(n):
    """n-point Gauss-Chebyshev rule in closed form.

    Nodes cos((2k-1)pi/(2n)) for k = 1..n with equal weights pi/n.  The
    moment pipeline on :func:`chebyshev_moments` reproduces the same rule.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    nodes = tuple(math.cos((2 * k - 1) * math.pi / (2 * n)) for k in range(1, n + 1))
    return QuadratureRule(n=n, nodes=nodes, weights=(math.pi / n,) * n, family="chebyshev")


def pade_from_series(f, n, tol=DEFAULT):
    """Rational interpolant sum_k mu_k/(lambda_k z - 1) matching f through order 2n-1."""
    fm = series.maclaurin_coeffs(f, 2 * n - 1).coefficients
    moments = MomentSequence(n, tuple(-c for c in fm))
    af = prony.solve(moments, tol)
    return prony.AFSum(
        n=af.n, mu=af.mu, lam=af.lam, basis=FunctionSpec("inv_zm1")
    )


def exp_sum(f, n, tol=DEFAULT):
    """Exponential sum sum_k mu_k e^{lambda_k z} matching f through order 2n-1."""
    fm = series.maclaurin_coeffs(f, 2 * n - 1).coefficients
    moments = MomentSequence(
        n, tuple(math.factorial(m) * fm[m] for m in range(2 * n))
    )
    af = prony.solve(moments, tol)
    return prony.AFSum(n=af.n, mu=af.mu, lam=af.lam, basis=FunctionSpec("exp"))


@dataclass(frozen=True)
class BesselCosineSum:
    """Local model of J0: the average of n cosines with Chebyshev-root frequencies."""

    n: int
    frequencies: tuple

    def __call__(self, x):
        if isinstance(x, complex):
            return _fsum_complex(cmath.cos(c * x) for c in self.frequencies) / self.n
        return math.fsum(math.cos(c * x) for c in self.frequencies) / self.n

    def error_bound(self, x):
        """|x|^(4n) / (2^(4n-1) (4n)!) -- valid everywhere."""
        return _power_factorial_bound(abs(x), 4 * self.n, 4 * self.n - 1)


@dataclass(frozen=True)
class BesselPrimeSineSum:
    """Local model of J0': term-by-term derivative of the cosine sum."""

    n: int
    frequencies: tuple

    def __call__(self, x):
        if isinstance(x, complex):
            return -_fsum_complex(c * cmath.sin(c * x) for c in self.frequencies) / self.n
        return -math.fsum(c * math.sin(c * x) for c in self.frequencies) / self.n

    def error_bound(self, x):
        """|x|^(4n-1) / (2^(4n-1) (4n-1)!)."""
        return _power_factorial_bound(abs(x), 4 * self.n - 1, 4 * self.n - 1)


def _power_factorial_bound(r, power, two_exponent):
    """r^power / (2^two_exponent * power!) computed through logs (huge factorials)."""
    if r == 0:
        return 0.0
    log_value = (
        power * math.log(r)
        - two_exponent * math.log(2.0)
        - math.lgamma(power + 1)
    )
    return math.exp(log_value)


def bessel_j0_sum(n):
    """Cosine-sum approximant of J0 with remainder O(x^{4n})."""
    if n < 1:
        raise ValueError("order must be at least 1")
    freqs = tuple(math.cos((2 * k - 1) * math.pi / (4 * n)) for k in range(1, n + 1))
    return BesselCosineSum(n=n, frequencies=freqs)


def bessel_j0_prime_sum(n):
    """Sine-sum approximant of J0' with remainder O(x^{4n-1})."""
    if n < 1:
        raise ValueError("order must be at least 1")
    freqs = tuple(math.cos((2 * k - 1) * math.pi / (4 * n)) for k in range(1, n + 1))
    return BesselPrimeSineSum(n=n, frequencies=freqs)


@dataclass(frozen=True)
class BesselSincSum:
    """Approximant J0(x) ~ sum_k mu_k sinc(sqrt(lambda_k) x), remainder O(x^{4n})."""

    n: int
    mu: tuple
    lam: tuple

    def __call__(self, x):
        sinc = FunctionSpec("sinc")
        total = _fsum_complex(
            self.mu[k] * series.evaluate(sinc, cmath.sqrt(self.lam[k]) * x)
            for k in range(self.n)
        )
        return total.real if not isinstance(x, complex) else total

    @property
    def order(self):
        return 4 * self.n


def bessel_j0_sinc_sum(n, tol=DEFAULT):
    """Build the sinc-basis approximant of J0 through the even-part reduction.

    The moment problem acts on the squared variable: both J0 and sinc are
    even, so their half streams are divided termwise.  The frequencies are
    expected (but not guaranteed) to come out non-negative real; anything
    else triggers a warning, not an error.
    """
    reduced_f, pf = series.parity_reduce(FunctionSpec("bessel_j0"))
    reduced_h, ph = series.parity_reduce(FunctionSpec("sinc"))
    assert pf == series.EVEN and ph == series.EVEN
    fm = reduced_f(2 * n - 1).coefficients
    hm = reduced_h(2 * n - 1).coefficients
    moments = MomentSequence(n, tuple(fm[m] / hm[m] for m in range(2 * n)))
    af = prony.solve(moments, tol)
    top = 1 + max(abs(x) for x in af.lam)
    if any(x.imag != 0 and abs(x.imag) > _REAL_IMAG_TOL * top for x in af.lam) or any(
        x.real < -_REAL_IMAG_TOL * top for x in af.lam
    ):
        warnings.warn(
            "sinc-basis frequencies are not non-negative real; "
            "the approximant remains valid but loses its usual form",
            stacklevel=2,
        )
    return BesselSincSum(n=n, mu=af.mu, lam=af.lam)


def error_table(exact, approx, grid):
    """Rows (x, exact, approx, |difference|) over a uniform grid.

    ``exact`` and ``approx`` may be FunctionSpec instances or callables;
    ``grid`` is (start, end, count) with count >= 2.  Rows come out in
    ascending x order.
    """
    start, end, count = grid
    if count < 2:
        raise ValueError("grid needs at least two points")
    def as_callable(obj):
        if isinstance(obj, FunctionSpec):
            return lambda x: series.evaluate(obj, x)
        return obj
    f_exact = as_callable(exact)
    f_approx = as_callable(approx)
    rows = []
    for i in range(count):
        x = start + i * (end - start) / (count - 1)
        ve = complex(f_exact(x))
        va = complex(f_approx(x))
        rows.append((x, ve, va, abs(ve - va)))
    return rows


def write_error_table(rows, stream):
    """Serialize table rows as CSV with 17 significant digits."""
    stream.write("x,exact_re,exact_im,approx_re,approx_im,abs_err\n")
    for x, ve, va, err in rows:
        stream.write(
            f"{x:.17g},{ve.real:.17g},{ve.imag:.17g},"
            f"{va.real:.17g},{va.imag:.17g},{err:.17g}\n"
        )
