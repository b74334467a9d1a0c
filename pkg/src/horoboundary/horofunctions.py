"""Horofunctions of infinite dimensional hyperbolic space in Klein's model.

Every horofunction is parameterized by a weak-limit direction ``x_hat`` and a
norm limit ``r`` with either ``||x_hat|| < r <= 1`` or ``||x_hat|| = r = 1``;
it is a Busemann point exactly in the second case.  Base point throughout is
the origin ``(1, 0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError, InvalidParamsError, NonConvergenceError
from .linalg import (
    CONE_TOL,
    ORIGIN,
    ConeVector,
    SparseVector,
    bilinear_form,
    quadratic_form,
    require_interior,
)
from .metrics import CLAMP_WINDOW, birkhoff_distance, clamp_discriminant

PARAM_TOL = 1e-12


@dataclass(frozen=True)
class HoroParams:
    """Validated horofunction parameters; build with :func:`validate_params`."""

    x_hat: SparseVector
    r: float

    @property
    def is_busemann(self) -> bool:
        return self.r == 1.0 and abs(self.x_hat.norm() - 1.0) <= PARAM_TOL

    @property
    def u_hat(self) -> ConeVector:
        return ConeVector(1.0, self.x_hat)

    def to_json(self) -> dict:
        return {"x_hat": self.x_hat.to_json(), "r": self.r, "is_busemann": self.is_busemann}


def validate_params(x_hat: SparseVector, r: float, tol: float = PARAM_TOL) -> HoroParams:
    """Accept exactly the parameter region of the classification theorem.

    With ``||x_hat|| = 1`` and ``r = 1`` (both within ``tol``) ``x_hat`` is
    renormalized to exact unit length.  ``r <= ||x_hat|| < 1`` is rejected:
    those parameters give ``i(1, x_hat)``, an interior point, not a
    horofunction.
    """
    r = float(r)
    if not math.isfinite(r):
        raise InputError(f"r must be finite, got {r!r}")
    n = x_hat.norm()
    if abs(n - 1.0) <= tol and abs(r - 1.0) <= tol:
        return HoroParams(x_hat / n, 1.0)
    if n > 1.0:
        raise InvalidParamsError(f"||x_hat|| = {n!r} exceeds 1")
    if r > 1.0:
        raise InvalidParamsError(f"r = {r!r} exceeds 1")
    if r <= 0.0:
        raise InvalidParamsError(f"r = {r!r} must be positive")
    if r <= n:
        raise InvalidParamsError(
            f"r = {r!r} <= ||x_hat|| = {n!r}: this is the distance function of an interior point"
        )
    return HoroParams(x_hat, r)


def horo_eval(p: HoroParams, v: ConeVector, tol: float = CONE_TOL, clamp: float = CLAMP_WINDOW) -> float:
    """xi(v) = log((B(u,v) + sqrt(B(u,v)^2 - Q(v)(1 - r^2))) / ((1 + r) sqrt(Q(v)))), u = (1, x_hat)."""
    require_interior(v, tol, "v")
    b = bilinear_form(p.u_hat, v)
    q = quadratic_form(v)
    disc = clamp_discriminant(b * b - q * (1.0 - p.r * p.r), b * b, clamp)
    return math.log((b + math.sqrt(disc)) / ((1.0 + p.r) * math.sqrt(q)))


def busemann_eval(p: HoroParams, v: ConeVector, tol: float = CONE_TOL) -> float:
    """xi(v) = 1/2 log(B(u,v)^2 / Q(v)) for a Busemann point."""
    if not p.is_busemann:
        raise InvalidParamsError(f"{p!r} is not a Busemann point (needs ||x_hat|| = r = 1)")
    require_interior(v, tol, "v")
    b = bilinear_form(p.u_hat, v)
    return 0.5 * math.log(b * b / quadratic_form(v))


def i_embed(x: ConeVector, y: ConeVector, base: ConeVector = ORIGIN) -> float:
    """i(x)(y) = d(x, y) - d(x, base) with the Birkhoff metric."""
    return birkhoff_distance(x, y) - birkhoff_distance(x, base)


@dataclass(frozen=True)
class LimitEstimate:
    params: HoroParams
    x_hat_raw: SparseVector
    r_raw: float
    norm_step: float
    approaching_boundary: bool


def limit_params(
    seq,
    n_probe: int,
    tol: float = 1e-5,
    window: int = 2,
    param_tol: float = PARAM_TOL,
) -> LimitEstimate:
    """Estimate (x_hat, r) from the tail of a sequence of disc points.

    ``r`` is the norm of term ``n_probe``; the last two norms must agree to
    ``tol``.  ``x_hat`` keeps the coordinates present in each of the last
    ``window`` terms, valued at term ``n_probe``: coordinates that move off to
    fresh basis vectors converge weakly to 0 and are dropped.

    If the norms are still creeping toward 1 at a rate that closes the gap
    within another ``n_probe`` steps, the estimate is flagged as
    approaching the boundary and ``r`` is snapped to 1; ``x_hat`` is snapped to
    unit length too when it carries the whole norm (strong convergence).
    """
    if window < 2:
        raise InputError("window must be at least 2")
    first = seq.first_index
    if n_probe - window + 1 < first:
        raise InputError(f"need at least {window} terms ending at n_probe = {n_probe}")
    tail = [seq.term(n).spatial for n in range(n_probe - window + 1, n_probe + 1)]
    r_raw = tail[-1].norm()
    step = abs(r_raw - tail[-2].norm())
    if step > tol:
        raise NonConvergenceError(f"tail norms differ by {step!r} > {tol!r} at n = {n_probe}")
    persistent = set(tail[0].support)
    for t in tail[1:]:
        persistent &= set(t.support)
    x_raw = SparseVector((i, v) for i, v in tail[-1].items() if i in persistent)

    trend = 2.0 * n_probe * step
    approaching = step > 0.0 and 1.0 - r_raw <= trend
    if approaching:
        nx = x_raw.norm()
        if r_raw - nx <= trend + param_tol and nx > 0.0:
            params = validate_params(x_raw / nx, 1.0, param_tol)
        else:
            params = validate_params(x_raw, 1.0, param_tol)
    else:
        params = validate_params(x_raw, r_raw, param_tol)
    return LimitEstimate(params, x_raw, r_raw, step, approaching)


__all__ = [
    "HoroParams",
    "LimitEstimate",
    "validate_params",
    "horo_eval",
    "busemann_eval",
    "i_embed",
    "limit_params",
]
