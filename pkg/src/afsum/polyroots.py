"""Complex polynomial utilities: evaluation, derivative, deterministic root finding.

Roots are located by Aberth-Ehrlich simultaneous iteration started from a
perturbed circle, then polished per root with Newton steps.  Clustered roots
get an exact-rational polish pass so that multiple roots land tightly together
instead of scattering at the sqrt(machine-eps) radius; downstream regularity
checks rely on that clustering.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConvergenceError
from .tolerances import DEFAULT

_ABERTH_CAP = 500
_STEP_TOL = 5e-15
_CLUSTER_RADIUS = 1e-6


@dataclass(frozen=True)
class ComplexPolynomial:
    """Coefficients g_0..g_n in ascending powers."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        if not all(cmath.isfinite(c) for c in coeffs):
            raise ValueError("polynomial coefficients must be finite")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self):
        return len(self.coefficients) - 1


def trim(poly, tol=DEFAULT):
    """Strip trailing coefficients below tol.trim relative to the largest one."""
    coeffs = poly.coefficients
    top = max(abs(c) for c in coeffs)
    if top == 0:
        return ComplexPolynomial((0j,))
    cut = len(coeffs)
    while cut > 1 and abs(coeffs[cut - 1]) <= tol.trim * top:
        cut -= 1
    return ComplexPolynomial(coeffs[:cut])


def evaluate(poly, z):
    """Horner evaluation from the highest power down."""
    value = 0j
    for c in reversed(poly.coefficients):
        value = value * z + c
    return value


def derivative(poly):
    coeffs = poly.coefficients
    if len(coeffs) == 1:
        return ComplexPolynomial((0j,))
    return ComplexPolynomial(tuple((m + 1) * c for m, c in enumerate(coeffs[1:])))


def min_separation(values):
    """Minimum pairwise distance; +inf for a single value."""
    vals = list(values)
    if not vals:
        raise ValueError("need at least one value")
    if len(vals) == 1:
        return math.inf
    return min(
        abs(vals[i] - vals[j])
        for i in range(len(vals))
        for j in range(i + 1, len(vals))
    )


def roots(poly, tol=DEFAULT):
    """All complex roots, with multiplicity, sorted by (real, imag).

    Every returned r satisfies |poly(r)| <= tol.root_residual * max|g_m| *
    max(1, |r|)^n.  Multiple roots come out as tight clusters.
    """
    trimmed = trim(poly, tol)
    n = trimmed.degree
    if n < 1:
        raise ValueError("polynomial must have degree >= 1")
    coeffs = list(trimmed.coefficients)

    found = []
    while len(coeffs) > 1 and coeffs[0] == 0:
        found.append(0j)
        coeffs.pop(0)

    if len(coeffs) > 1:
        lead = coeffs[-1]
        monic = [c / lead for c in coeffs]
        if len(monic) == 2:
            estimates = [-monic[0]]
        else:
            estimates = _aberth(monic)
        found.extend(_polish(monic, estimates))

    scale = max(abs(c) for c in trimmed.coefficients)
    for r in found:
        bound = tol.root_residual * scale * max(1.0, abs(r)) ** n
        if abs(evaluate(trimmed, r)) > bound:
            raise ConvergenceError(
                f"root {r!r} has residual above {bound:.3e}; "
                "the polynomial is badly scaled"
            )
    return tuple(sorted(found, key=lambda r: (r.real, r.imag)))


def _horner_pair(coeffs, z):
    """Polynomial value and first derivative at z."""
    p = 0j
    dp = 0j
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _aberth(monic, cap=_ABERTH_CAP):
    n = len(monic) - 1
    radius = 1.0 + max(abs(c) for c in monic[:-1])
    z = [
        radius * (1 + 1e-4 * k / n) * cmath.exp(2j * math.pi * (k + 0.35) / n)
        for k in range(n)
    ]
    for _ in range(cap):
        moved = False
        for i in range(n):
            p, dp = _horner_pair(monic, z[i])
            if p == 0:
                continue
            if dp == 0:
                z[i] += (1e-6 + 1e-6j) * (1 + abs(z[i]))
                moved = True
                continue
            w = p / dp
            offset = sum(1.0 / (z[i] - z[j]) for j in range(n) if j != i)
            denom = 1.0 - w * offset
            step = w if denom == 0 else w / denom
            z[i] -= step
            if abs(step) > _STEP_TOL * (1 + abs(z[i])):
                moved = True
        if not moved:
            break
    return z


def _polish(monic, estimates):
    polished = []
    for z in estimates:
        for _ in range(3):
            p, dp = _horner_pair(monic, z)
            if p == 0 or dp == 0:
                break
            step = p / dp
            if abs(step) > 0.5 * (1 + abs(z)):
                break
            z -= step
        polished.append(z)

    scale = 1 + max(abs(z) for z in polished)
    for i, z in enumerate(polished):
        clustered = any(
            abs(z - other) < _CLUSTER_RADIUS * scale
            for j, other in enumerate(polished)
            if j != i
        )
        if clustered:
            polished[i] = _exact_newton(monic, z, cap=80)
        else:
            polished[i] = _exact_newton(monic, z, cap=4)
    return polished


def _exact_newton(coeffs, z, cap):
    """Newton refinement with exact rational evaluation of p and p'.

    Double-precision Horner stalls at ~sqrt(eps) from a multiple root; exact
    evaluation removes the noise floor so the linear contraction can continue
    down to spacing-level accuracy.
    """
    for _ in range(cap):
        p, dp = _exact_horner_pair(coeffs, z)
        if p == 0 or dp == 0:
            break
        step = p / dp
        z_next = z - step
        if abs(step) <= 1e-16 * (1 + abs(z_next)):
            z = z_next
            break
        z = z_next
    return z


def _exact_horner_pair(coeffs, z):
    zr = Fraction(z.real)
    zi = Fraction(z.imag)
    pr = pi = Fraction(0)
    dr = di = Fraction(0)
    for c in reversed(coeffs):
        dr, di = dr * zr - di * zi + pr, dr * zi + di * zr + pi
        pr, pi = pr * zr - pi * zi + Fraction(c.real), pr * zi + pi * zr + Fraction(c.imag)
    return complex(float(pr), float(pi)), complex(float(dr), float(di))
