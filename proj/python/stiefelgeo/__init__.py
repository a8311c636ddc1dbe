"""Geometry of the Stiefel manifold under the beta-metric family."""

import json as _json

from ._core import (
    StiefelError,
    UnsupportedRegime,
    canonical_loop,
    conjugate_radius_bounds,
    curvature_bound,
    dexpm,
    expm,
    first_conjugate_time,
    geodesic,
    geodesic_length,
    injectivity_radius,
    jacobi_field,
    loop_length_bound,
    max_curvature_search,
    on_conjugate_criterion,
    sectional_curvature,
    skew_eigen_angles,
    t_beta_r,
)
from ._core import run_checks as _run_checks


def run_checks(suite="all", seed=0):
    """Run the invariant suites and return the parsed report."""
    return _json.loads(_run_checks(suite, seed))


__all__ = [
    "StiefelError",
    "UnsupportedRegime",
    "canonical_loop",
    "conjugate_radius_bounds",
    "curvature_bound",
    "dexpm",
    "expm",
    "first_conjugate_time",
    "geodesic",
    "geodesic_length",
    "injectivity_radius",
    "jacobi_field",
    "loop_length_bound",
    "max_curvature_search",
    "on_conjugate_criterion",
    "run_checks",
    "sectional_curvature",
    "skew_eigen_angles",
    "t_beta_r",
]
