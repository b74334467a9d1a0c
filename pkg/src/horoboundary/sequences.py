"""Sequences of disc points: the constructive witnesses for horofunctions, and checks on them.

Generators are deterministic functions of (kind, parameters, index).  The
checks work on a finite window of terms and return reports, never raise on a
failed property.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import DomainError, InputError, InvalidParamsError
from .horofunctions import HoroParams, validate_params
from .linalg import CONE_TOL, ORIGIN, ConeVector, DiscPoint, SparseVector, inner
from .metrics import birkhoff_distance

UNIT_TOL = 1e-12


class SequenceKind(str, enum.Enum):
    RADIAL = "radial"
    BOUNDARY_APPROACH = "boundary_approach"
    DRIFT = "drift"
    USER_SUPPLIED = "user_supplied"


@dataclass(frozen=True)
class PointSequence:
    """Indexed sequence of disc points, defined for ``first_index <= n (<= last_index)``."""

    kind: SequenceKind
    term_fn: Callable[[int], DiscPoint] = field(repr=False)
    first_index: int = 0
    last_index: Optional[int] = None
    target: Optional[HoroParams] = None
    meta: dict = field(default_factory=dict, compare=False)

    def term(self, n: int) -> DiscPoint:
        if n < self.first_index or (self.last_index is not None and n > self.last_index):
            raise IndexError(f"term {n} outside [{self.first_index}, {self.last_index}]")
        return self.term_fn(n)

    def indices(self, n_max: int) -> range:
        stop = n_max if self.last_index is None else min(n_max, self.last_index)
        return range(self.first_index, stop + 1)

    def terms(self, n_max: int) -> list[DiscPoint]:
        return [self.term(n) for n in self.indices(n_max)]

    @classmethod
    def from_terms(cls, terms: Sequence[DiscPoint], first_index: int = 0, target: Optional[HoroParams] = None):
        pts = tuple(DiscPoint.from_cone(t) if not isinstance(t, DiscPoint) else t for t in terms)
        if not pts:
            raise InputError("empty sequence")
        return cls(
            SequenceKind.USER_SUPPLIED,
            lambda n: pts[n - first_index],
            first_index,
            first_index + len(pts) - 1,
            target,
        )


def _require_unit(x: SparseVector, what: str) -> None:
    if abs(x.norm() - 1.0) > UNIT_TOL:
        raise InputError(f"{what} must have unit norm, got {x.norm()!r}")


def gen_radial_geodesic(direction: SparseVector, steps: Sequence[float]) -> PointSequence:
    """Term k is (1, tanh(steps[k]) * direction), at distance steps[k] from the origin."""
    _require_unit(direction, "direction")
    steps = [float(s) for s in steps]
    if not steps:
        raise InputError("steps must be non-empty")
    if steps[0] < 0 or any(b <= a for a, b in zip(steps, steps[1:])):
        raise InputError("steps must be non-negative and strictly increasing")
    pts = tuple(DiscPoint(direction * math.tanh(s)) for s in steps)
    return PointSequence(
        SequenceKind.RADIAL,
        lambda k: pts[k],
        0,
        len(pts) - 1,
        None,
        {"direction": direction, "steps": tuple(steps)},
    )


def gen_boundary_approach(x_hat: SparseVector) -> PointSequence:
    """Term n >= 2 is (1, (1 - 1/n) x_hat); converges in norm to the boundary point (1, x_hat)."""
    _require_unit(x_hat, "x_hat")
    target = validate_params(x_hat, 1.0)
    xh = target.x_hat
    return PointSequence(
        SequenceKind.BOUNDARY_APPROACH,
        lambda n: DiscPoint(xh * (1.0 - 1.0 / n)),
        2,
        None,
        target,
    )


def gen_orthonormal_drift(x_hat: SparseVector, r: float, start_index: Optional[int] = None) -> PointSequence:
    """Term n >= 1 is (1, x_hat + c_n e_{start_index + n}): weak limit x_hat, norm limit r.

    For r < 1, c_n = sqrt(r^2 - ||x_hat||^2) and every term has norm r.  For
    r = 1 the terms would sit on the unit sphere, so the norm follows the
    interior schedule r_n = ||x_hat|| + (1 - ||x_hat||)(1 - 1/(n + 2)) instead.
    """
    target = validate_params(x_hat, r)
    if target.is_busemann:
        raise InvalidParamsError("drift needs ||x_hat|| < r; use gen_boundary_approach for unit x_hat")
    if start_index is None:
        start_index = max(x_hat.max_index, 0)
    if start_index < 0:
        raise InputError("start_index must be non-negative")
    if start_index < x_hat.max_index:
        raise InputError(f"start_index {start_index} lies inside the support of x_hat (max index {x_hat.max_index})")
    nx = x_hat.norm()

    if target.r < 1.0:
        c = math.sqrt((target.r - nx) * (target.r + nx))

        def term(n: int) -> DiscPoint:
            return DiscPoint(x_hat + SparseVector.basis(start_index + n, c))

    else:

        def term(n: int) -> DiscPoint:
            rn = nx + (1.0 - nx) * (1.0 - 1.0 / (n + 2))
            return DiscPoint(x_hat + SparseVector.basis(start_index + n, math.sqrt((rn - nx) * (rn + nx))))

    return PointSequence(SequenceKind.DRIFT, term, 1, None, target, {"start_index": start_index})


@dataclass(frozen=True)
class AlmostGeodesicReport:
    """Outcome of the pairwise almost-geodesic test on terms ``first..last``.

    ``first_valid_index`` is the smallest threshold A such that every pair
    A <= n <= n' has violation d(b,x_n) + d(x_n,x_n') - d(b,x_n') <= epsilon.
    Since a threshold at the very end is always valid, the test passes only
    if A <= ``threshold_limit`` (by default the middle of the window).
    """

    epsilon: float
    first: int
    last: int
    first_valid_index: Optional[int]
    threshold_limit: int
    worst_violation: float
    worst_pair: tuple[int, int]
    tail_violation: Optional[float]

    @property
    def passes(self) -> bool:
        return self.first_valid_index is not None and self.first_valid_index <= self.threshold_limit

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "first": self.first,
            "last": self.last,
            "first_valid_index": self.first_valid_index,
            "threshold_limit": self.threshold_limit,
            "worst_violation": self.worst_violation,
            "worst_pair": list(self.worst_pair),
            "tail_violation": self.tail_violation,
            "passes": self.passes,
        }


def _threshold_limit(first: int, last: int, fraction: float) -> int:
    return first + int(fraction * (last - first))


def almost_geodesic_check(
    seq: PointSequence,
    n_max: int,
    epsilon: float,
    base: ConeVector = ORIGIN,
    threshold_fraction: float = 0.5,
) -> AlmostGeodesicReport:
    if not epsilon > 0:
        raise InputError("epsilon must be positive")
    idx = list(seq.indices(n_max))
    if not idx:
        raise InputError(f"no terms up to n_max = {n_max}")
    pts = [seq.term(n) for n in idx]
    db = [birkhoff_distance(base, p) for p in pts]
    m = len(pts)
    row_max = [0.0] * m
    worst, worst_pair = -math.inf, (idx[0], idx[0])
    for a in range(m):
        best = 0.0  # n' = n contributes exactly 0
        for b in range(a, m):
            viol = db[a] + birkhoff_distance(pts[a], pts[b]) - db[b]
            if viol > best:
                best = viol
            if viol > worst:
                worst, worst_pair = viol, (idx[a], idx[b])
        row_max[a] = best
    # smallest A whose tail (all rows >= A) stays within epsilon
    first_valid, tail = None, None
    running = 0.0
    for a in range(m - 1, -1, -1):
        running = max(running, row_max[a])
        if running <= epsilon:
            first_valid, tail = idx[a], running
        else:
            break
    return AlmostGeodesicReport(
        epsilon,
        idx[0],
        idx[-1],
        first_valid,
        _threshold_limit(idx[0], idx[-1], threshold_fraction),
        worst,
        worst_pair,
        tail,
    )


@dataclass(frozen=True)
class CauchyReport:
    converged: bool
    limit: Optional[DiscPoint]
    threshold_index: Optional[int]
    tail_diameter: Optional[float]


def cauchy_limit_check(
    seq: PointSequence, n_max: int, tol: float, threshold_fraction: float = 0.5
) -> CauchyReport:
    """Look for N with max_{N <= n, n' <= n_max} d(x_n, x_n') < tol, in the Birkhoff metric."""
    idx = list(seq.indices(n_max))
    if not idx:
        raise InputError(f"no terms up to n_max = {n_max}")
    pts = [seq.term(n) for n in idx]
    m = len(pts)
    row_max = [max((birkhoff_distance(pts[a], pts[b]) for b in range(a, m)), default=0.0) for a in range(m)]
    threshold, diameter = None, None
    running = 0.0
    for a in range(m - 1, -1, -1):
        running = max(running, row_max[a])
        if running < tol:
            threshold, diameter = idx[a], running
        else:
            break
    ok = threshold is not None and threshold <= _threshold_limit(idx[0], idx[-1], threshold_fraction)
    return CauchyReport(ok, pts[-1] if ok else None, threshold, diameter)


def busemann_diagnostic(seq: PointSequence, x_hat: SparseVector, n_max: int, tol: float = CONE_TOL) -> list[float]:
    """q_n = (1 - <x_n, x_hat>) / (1 - ||x_n||) for n = first_index..n_max.

    Unbounded growth of q_n along an almost geodesic is impossible, so a
    diverging tail rules out a Busemann limit with this ``x_hat``.
    """
    out = []
    for n in seq.indices(n_max):
        x = seq.term(n).spatial
        nx = x.norm()
        if nx >= 1.0 - tol:
            raise DomainError(f"term {n} has norm {nx!r}, too close to the boundary")
        out.append((1.0 - inner(x, x_hat)) / (1.0 - nx))
    return out
