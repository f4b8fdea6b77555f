"""Central numerical tolerance configuration."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Thresholds used across the moment-solver pipeline.

    All thresholds are relative; the absolute scale is derived from the data
    at the point of use (matrix row norms, moment magnitudes, root radii).

    pivot: pivot floor for Gaussian elimination and numerical-rank decisions.
    separation: minimum distance between frequencies for a regular system.
    residual: moment residual allowed for a solved amplitude/frequency sum.
    root_residual: polynomial residual accepted for a polished root.
    trim: size under which trailing polynomial coefficients are dropped.
    derivative_floor: floor for the derivative of the generating polynomial
        at a root, below which the amplitude formula refuses to divide.
    forbidden_distance: exclusion radius around forbidden operator parameters.
    """

    pivot: float = 1e-10
    separation: float = 1e-8
    residual: float = 1e-9
    root_residual: float = 2.0 ** -35
    trim: float = 2.0 ** -40
    derivative_floor: float = 1e-12
    forbidden_distance: float = 1e-6


DEFAULT = Tolerances()
