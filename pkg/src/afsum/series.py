"""Target and basis functions as Maclaurin coefficient streams with complex evaluation.

Each function is described by a :class:`FunctionSpec`, either one of the named
analytic kinds (``exp``, ``cos``, ``sinc``, ``bessel_j0``, ``inv_zm1``) or an
explicit coefficient list (``polynomial``, ``raw_series``).  Coefficients are
generated by recurrences, never by direct factorial formulas.
"""

import cmath
import math
from dataclasses import dataclass, field

from .errors import DomainError

NAMED_KINDS = ("exp", "cos", "sinc", "bessel_j0", "inv_zm1")
COEFFICIENT_KINDS = ("polynomial", "raw_series")

EVEN = "even"
ODD = "odd"
NONE = "none"

# Past |z| ~ 30 the alternating series loses all significant digits in doubles.
BESSEL_J0_RADIUS = 30.0

_TERM_CAP = 200
_EPS = 2.0 ** -53


def _fsum_complex(terms):
    """Sum complex terms with compensated (exact) real accumulation."""
    ts = list(terms)
    return complex(math.fsum(t.real for t in ts), math.fsum(t.imag for t in ts))


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_M of a truncated Maclaurin expansion."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        if not coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        if not all(cmath.isfinite(c) for c in coeffs):
            raise ValueError("series coefficients must be finite")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self):
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class FunctionSpec:
    """A named analytic function or an explicit coefficient list.

    ``polynomial`` is a finite polynomial evaluated exactly; ``raw_series``
    carries the leading coefficients of a series and reports zero beyond its
    list (evaluation sums the stored terms).
    """

    kind: str
    coefficients: tuple = field(default=None)

    def __post_init__(self):
        if self.kind in NAMED_KINDS:
            if self.coefficients is not None:
                raise ValueError(f"kind {self.kind!r} takes no coefficients")
        elif self.kind in COEFFICIENT_KINDS:
            if self.coefficients is None:
                raise ValueError(f"kind {self.kind!r} requires coefficients")
            coeffs = tuple(complex(c) for c in self.coefficients)
            if not all(cmath.isfinite(c) for c in coeffs):
                raise ValueError("coefficients must be finite")
            object.__setattr__(self, "coefficients", coeffs)
        else:
            raise ValueError(f"unknown function kind {self.kind!r}")


def _coefficient_stream(spec):
    """Yield Maclaurin coefficients c_0, c_1, ... of the function."""
    kind = spec.kind
    if kind == "exp":
        c = 1.0
        m = 0
        while True:
            yield complex(c)
            m += 1
            c /= m
    elif kind == "cos":
        c = 1.0
        j = 0
        while True:
            yield complex(c)
            yield 0j
            c = -c / ((2 * j + 1) * (2 * j + 2))
            j += 1
    elif kind == "sinc":
        c = 1.0
        j = 0
        while True:
            yield complex(c)
            yield 0j
            c = -c / ((2 * j + 2) * (2 * j + 3))
            j += 1
    elif kind == "bessel_j0":
        c = 1.0
        j = 0
        while True:
            yield complex(c)
            yield 0j
            c = -c / (4 * (j + 1) ** 2)
            j += 1
    elif kind == "inv_zm1":
        while True:
            yield complex(-1.0)
    else:
        yield from spec.coefficients
        while True:
            yield 0j


def maclaurin_coeffs(spec, M):
    """Exact Maclaurin coefficients c_0..c_M of the function."""
    if M < 0:
        raise ValueError("order must be non-negative")
    stream = _coefficient_stream(spec)
    return TruncatedSeries(tuple(next(stream) for _ in range(M + 1)))


def evaluate(spec, z):
    """Value of the function at a complex point.

    Named elementary kinds use closed forms; ``bessel_j0`` sums its series
    adaptively and is only trusted for |z| <= BESSEL_J0_RADIUS.
    """
    z = complex(z)
    if not cmath.isfinite(z):
        raise ValueError("evaluation point must be finite")
    kind = spec.kind
    if kind == "exp":
        return cmath.exp(z)
    if kind == "cos":
        return cmath.cos(z)
    if kind == "sinc":
        return 1.0 + 0j if z == 0 else cmath.sin(z) / z
    if kind == "bessel_j0":
        if abs(z) > BESSEL_J0_RADIUS:
            raise DomainError(
                f"bessel_j0 evaluation is only accurate for |z| <= {BESSEL_J0_RADIUS}"
            )
        return _bessel_j0_series(z)
    if kind == "inv_zm1":
        if z == 1:
            raise DomainError("inv_zm1 has a pole at z = 1")
        return 1.0 / (z - 1.0)
    return _horner(spec.coefficients, z)


def evaluate_derivative(spec, z):
    """Value of the first derivative at a complex point."""
    z = complex(z)
    kind = spec.kind
    if kind == "exp":
        return cmath.exp(z)
    if kind == "cos":
        return -cmath.sin(z)
    if kind == "sinc":
        if z == 0:
            return 0j
        return (z * cmath.cos(z) - cmath.sin(z)) / (z * z)
    if kind == "bessel_j0":
        if abs(z) > BESSEL_J0_RADIUS:
            raise DomainError(
                f"bessel_j0 evaluation is only accurate for |z| <= {BESSEL_J0_RADIUS}"
            )
        return _bessel_j0_prime_series(z)
    if kind == "inv_zm1":
        if z == 1:
            raise DomainError("inv_zm1 has a pole at z = 1")
        return -1.0 / (z - 1.0) ** 2
    deriv = tuple((m + 1) * c for m, c in enumerate(spec.coefficients[1:]))
    return _horner(deriv, z) if deriv else 0j


def _horner(coeffs, z):
    value = 0j
    for c in reversed(coeffs):
        value = value * z + c
    return value


def _bessel_j0_series(z):
    w = z * z / 4.0
    term = 1.0 + 0j
    terms = [term]
    partial = term
    for j in range(1, _TERM_CAP):
        term = -term * w / (j * j)
        terms.append(term)
        partial += term
        if abs(term) < _EPS * abs(partial):
            break
    return _fsum_complex(terms)


def _bessel_j0_prime_series(z):
    c = 1.0
    terms = []
    partial = 0j
    for j in range(1, _TERM_CAP):
        c = -c / (4 * j * j)
        term = c * 2 * j * z ** (2 * j - 1)
        terms.append(term)
        partial += term
        if abs(term) < _EPS * (abs(partial) + 1e-300):
            break
    return _fsum_complex(terms)


def _detect_parity(spec):
    if spec.kind in ("cos", "sinc", "bessel_j0"):
        return EVEN
    if spec.kind in ("exp", "inv_zm1"):
        return NONE
    coeffs = spec.coefficients
    odd_zero = all(c == 0 for c in coeffs[1::2])
    even_zero = all(c == 0 for c in coeffs[0::2])
    if odd_zero:
        # an all-zero list counts as even
        return EVEN
    if even_zero:
        return ODD
    return NONE


def parity_reduce(spec):
    """Halve the coefficient stream of an even or odd function.

    Returns ``(reduced, parity)`` where ``reduced(M)`` yields the truncated
    series of the reduced function.  For an even f, f(z) = g(z^2) with
    g_m = f_{2m}; for an odd f, f(z) = z*g(z^2) with g_m = f_{2m+1}; otherwise
    the identity stream is returned with parity "none".
    """
    parity = _detect_parity(spec)
    if parity == EVEN:
        def reduced(M):
            full = maclaurin_coeffs(spec, 2 * M).coefficients
            return TruncatedSeries(full[0::2])
    elif parity == ODD:
        def reduced(M):
            full = maclaurin_coeffs(spec, 2 * M + 1).coefficients
            return TruncatedSeries(full[1::2])
    else:
        def reduced(M):
            return maclaurin_coeffs(spec, M)
    return reduced, parity


_NAME_TO_KIND = {
    "exp": "exp",
    "cos": "cos",
    "sinc": "sinc",
    "j0": "bessel_j0",
    "invzm1": "inv_zm1",
}
_KIND_TO_NAME = {v: k for k, v in _NAME_TO_KIND.items()}


def parse_complex(text):
    """Parse a `re` or `re+imi` literal into a complex number."""
    cleaned = text.strip().replace(" ", "")
    if not cleaned:
        raise ValueError("empty number")
    try:
        return complex(cleaned.replace("i", "j").replace("I", "j"))
    except ValueError:
        raise ValueError(f"cannot parse complex literal {text!r}") from None


def format_complex(z):
    """Render a complex number in the `re+imi` grammar with 17 significant digits."""
    z = complex(z)
    if z.imag == 0:
        return format(z.real, ".17g")
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_function_spec(text):
    """Parse the CLI function grammar.

    Accepts the named kinds (``exp``, ``cos``, ``sinc``, ``j0``, ``invzm1``)
    and inline coefficient lists ``poly:c0,c1,...`` / ``series:c0,c1,...``
    with real or `re+imi` complex literals.  (``series:<path>`` is resolved
    by the CLI before reaching this parser.)
    """
    text = text.strip()
    if text in _NAME_TO_KIND:
        return FunctionSpec(_NAME_TO_KIND[text])
    for prefix, kind in (("poly:", "polynomial"), ("series:", "raw_series")):
        if text.startswith(prefix):
            body = text[len(prefix):]
            coeffs = tuple(parse_complex(part) for part in body.split(","))
            return FunctionSpec(kind, coeffs)
    raise ValueError(f"unknown function {text!r}")


def format_function_spec(spec):
    """Inverse of :func:`parse_function_spec` (coefficient kinds inline)."""
    if spec.kind in _KIND_TO_NAME:
        return _KIND_TO_NAME[spec.kind]
    prefix = "poly:" if spec.kind == "polynomial" else "series:"
    return prefix + ",".join(format_complex(c) for c in spec.coefficients)
