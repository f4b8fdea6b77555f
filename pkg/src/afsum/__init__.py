"""Amplitude-and-frequency sums.

Constructs sums of dilated copies of a basis function, sum_k mu_k h(lambda_k z),
that interpolate a target through order 2n-1 at the origin, by solving the
associated discrete moment problem.  Includes analytic regularization of
non-regular problems and the derived universal differentiation and
extrapolation operators, plus classical quadrature/Pade/Bessel specializations.
"""

from .errors import (
    AfsumError,
    ConvergenceError,
    DegenerateSystemError,
    DomainError,
    ForbiddenParameterError,
    IncompatibleBasisError,
    NonRegularError,
    SeparationFailureError,
)
from .polyroots import ComplexPolynomial, min_separation, roots
from .prony import (
    AFSum,
    CorrectionBinomial,
    MomentSequence,
    amplitudes_sylvester,
    amplitudes_vandermonde,
    evaluate_sum,
    generating_polynomial,
    hankel_rank,
    is_positive_sequence,
    is_regular,
    moment_sequence,
    power_sum,
    solve,
    sum_maclaurin,
)
from .regularize import (
    RegularizationParams,
    choose_p,
    regularized_interpolant,
    separate_roots,
    varied_moments,
)
from .series import FunctionSpec, TruncatedSeries, evaluate, maclaurin_coeffs, parity_reduce
from .tolerances import DEFAULT, Tolerances

__version__ = "0.1.0"
