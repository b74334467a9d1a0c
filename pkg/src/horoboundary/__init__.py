"""Computable horofunction boundary of infinite dimensional real hyperbolic space.

Points of the Hilbert space are finite-support sequences (:class:`SparseVector`);
the Lorentz cone lives in V = R + H (:class:`ConeVector`) and Klein's model is
the slice lambda = 1 (:class:`DiscPoint`).

Quick start::

    >>> from horoboundary import DiscPoint, birkhoff_distance, validate_params, horo_eval
    >>> round(birkhoff_distance(DiscPoint(), DiscPoint({1: 0.5})), 12)
    0.549306144334
    >>> p = validate_params(SparseVector({1: 0.3}), 0.8)
    >>> p.is_busemann
    False
"""

from .errors import CheckFailed, DomainError, HoroError, InputError, InvalidParamsError, NonConvergenceError
from .horofunctions import (
    HoroParams,
    LimitEstimate,
    busemann_eval,
    horo_eval,
    i_embed,
    limit_params,
    validate_params,
)
from .linalg import (
    CONE_TOL,
    ORIGIN,
    ZERO,
    ConeClass,
    ConeVector,
    DiscPoint,
    SparseVector,
    bilinear_form,
    classify_cone,
    inner,
    normalize_hyperboloid,
    quadratic_form,
)
from .metrics import (
    BoundaryChord,
    birkhoff_distance,
    boundary_intersections,
    cross_ratio_distance,
    gauge_closed,
    gauge_oracle,
    hyperbolic_distance,
)
from .sequences import (
    AlmostGeodesicReport,
    CauchyReport,
    PointSequence,
    SequenceKind,
    almost_geodesic_check,
    busemann_diagnostic,
    cauchy_limit_check,
    gen_boundary_approach,
    gen_orthonormal_drift,
    gen_radial_geodesic,
)

__version__ = "0.1.0"
