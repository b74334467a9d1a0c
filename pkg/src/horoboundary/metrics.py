"""Gauge function, the three distance formulas on the Lorentz cone, and a bisection oracle.

``birkhoff_distance`` is the workhorse; ``hyperbolic_distance`` (arccosh of the
normalized Lorentz product) and ``cross_ratio_distance`` (Hilbert's chord
cross-ratio on the disc) are evaluated along independent numerical routes so
the three can be checked against one another.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .linalg import (
    CONE_TOL,
    ConeVector,
    DiscPoint,
    SparseVector,
    bilinear_form,
    inner,
    quadratic_form,
    require_interior,
)

CLAMP_WINDOW = 1e-12


def clamp_discriminant(disc: float, scale: float, window: float = CLAMP_WINDOW) -> float:
    """Clamp a slightly negative discriminant to 0; reject anything further below."""
    if disc >= 0.0:
        return disc
    if disc >= -window * scale:
        return 0.0
    raise DomainError(f"negative discriminant {disc!r} (scale {scale!r}); input is numerically exterior")


def _disc_coords(u: ConeVector) -> SparseVector:
    return u.spatial if u.lam == 1.0 else u.spatial / u.lam


def _pair_terms(x: SparseVector, y: SparseVector) -> tuple[float, float, float, float]:
    """Return (Q(1,x), Q(1,y), B, B^2 - Q Q) for two disc points, cancellation-free.

    B comes from polarization, B = (Q(1,x) + Q(1,y) + ||y - x||^2) / 2, and the
    discriminant from B^2 - Q(1,x)Q(1,y) = Q(1,x)||w||^2 + <x,w>^2 with w = y - x,
    averaged over both endpoints so the result is exactly symmetric in (x, y).
    """
    nx, ny = x.norm(), y.norm()
    qx = (1.0 - nx) * (1.0 + nx)
    qy = (1.0 - ny) * (1.0 + ny)
    w = y - x
    w2 = w.norm2()
    b = (qx + qy + w2) / 2.0
    tx = qx * w2 + inner(x, w) ** 2
    ty = qy * w2 + inner(y, w) ** 2
    disc = (tx + ty) / 2.0
    return qx, qy, b, disc


def gauge_closed(u: ConeVector, v: ConeVector, tol: float = CONE_TOL, clamp: float = CLAMP_WINDOW) -> float:
    """M(u/v) = inf{beta > 0 : u <= beta v}, from the larger root of the boundary quadratic.

    Equal to ``(B(u,v) + sqrt(B(u,v)^2 - Q(u)Q(v))) / Q(v)``; the terms are
    evaluated on the rays' disc representatives and rescaled by lam_u / lam_v.
    """
    require_interior(u, tol, "u")
    require_interior(v, tol, "v")
    _, qy, b, disc = _pair_terms(_disc_coords(u), _disc_coords(v))
    disc = clamp_discriminant(disc, b * b, clamp)
    return (u.lam / v.lam) * (b + math.sqrt(disc)) / qy


def _feasible(beta: float, u: ConeVector, v: ConeVector) -> bool:
    # beta*v - u in the closed cone
    head = beta * v.lam - u.lam
    return head >= 0.0 and head >= (v.spatial * beta - u.spatial).norm()


def gauge_oracle(
    u: ConeVector,
    v: ConeVector,
    tol: float = 1e-10,
    cap: float = 1e12,
    max_iter: int = 200,
    cone_tol: float = CONE_TOL,
) -> float:
    """M(u/v) by bisection on the definition: the feasible set of beta is an upward-closed ray.

    The bracket starts at [0, max(1, 2 (lam_u + ||x||) / (lam_v - ||y||))], whose
    right end is feasible by the triangle inequality, and is doubled if needed.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    require_interior(u, cone_tol, "u")
    require_interior(v, cone_tol, "v")
    lo = 0.0
    bound = (u.lam + u.spatial.norm()) / (v.lam - v.spatial.norm())
    hi = max(1.0, 2.0 * bound)
    while not _feasible(hi, u, v):
        lo = hi
        hi *= 2.0
        if hi > cap:
            raise DomainError(f"no feasible beta below cap {cap!r}")
    for _ in range(max_iter):
        # absolute width for M >= 1, relative below so small gauges keep their digits
        if hi - lo < tol * min(1.0, hi):
            break
        mid = 0.5 * (lo + hi)
        if _feasible(mid, u, v):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def birkhoff_distance(u: ConeVector, v: ConeVector, tol: float = CONE_TOL, clamp: float = CLAMP_WINDOW) -> float:
    """rho(u, v) = 1/2 log(M(u/v) M(v/u)); projective, so computed on disc representatives."""
    require_interior(u, tol, "u")
    require_interior(v, tol, "v")
    qx, qy, b, disc = _pair_terms(_disc_coords(u), _disc_coords(v))
    disc = clamp_discriminant(disc, b * b, clamp)
    top = b + math.sqrt(disc)
    # the lam_u/lam_v factors of the two gauges cancel exactly
    rho = 0.5 * (math.log(top / qy) + math.log(top / qx))
    return max(rho, 0.0)


def hyperbolic_distance(u: ConeVector, v: ConeVector, tol: float = CONE_TOL, clamp: float = CLAMP_WINDOW) -> float:
    """d_h(u, v) = arccosh(B(u,v) / sqrt(Q(u) Q(v)))."""
    require_interior(u, tol, "u")
    require_interior(v, tol, "v")
    ratio = bilinear_form(u, v) / (math.sqrt(quadratic_form(u)) * math.sqrt(quadratic_form(v)))
    if ratio < 1.0:
        if ratio < 1.0 - clamp:
            raise DomainError(f"cosh argument {ratio!r} is below 1")
        ratio = 1.0
    return math.acosh(ratio)


@dataclass(frozen=True)
class BoundaryChord:
    """Chord of the unit ball through u and v, ordered u' .. u .. v .. v'.

    ``alpha`` and ``s`` locate the endpoints in units of w = v - u:
    u' = u - alpha*w and v' = v + s*w.
    """

    u: DiscPoint
    v: DiscPoint
    u_prime: ConeVector
    v_prime: ConeVector
    alpha: float
    s: float
    step: float  # ||v - u||

    @property
    def lengths(self) -> tuple[float, float, float, float]:
        """(||u'-v||, ||v'-u||, ||u'-u||, ||v'-v||)."""
        L = self.step
        return (1.0 + self.alpha) * L, (1.0 + self.s) * L, self.alpha * L, self.s * L


def _outward_root(p: SparseVector, w: SparseVector, a: float) -> float:
    # positive root s of ||p + s w|| = 1, i.e. a s^2 + 2<p,w> s - Q(1,p) = 0
    n = p.norm()
    q = (1.0 - n) * (1.0 + n)
    b = inner(p, w)
    root = math.sqrt(b * b + a * q)
    if b <= 0.0:
        return (root - b) / a
    return q / (b + root)


def _as_disc(u: ConeVector) -> DiscPoint:
    if isinstance(u, DiscPoint):
        return u
    if u.lam != 1.0:
        raise DomainError(f"cross-ratio distance is defined on the disc (lambda = 1); got lambda = {u.lam!r}")
    return DiscPoint(u.spatial)


def boundary_intersections(u: ConeVector, v: ConeVector) -> BoundaryChord:
    u, v = _as_disc(u), _as_disc(v)
    w = v.spatial - u.spatial
    a = w.norm2()
    if a == 0.0:
        raise DomainError("u and v coincide; the line through them is undefined")
    alpha = _outward_root(u.spatial, -w, a)
    s = _outward_root(v.spatial, w, a)
    u_prime = ConeVector(1.0, u.spatial - w * alpha)
    v_prime = ConeVector(1.0, v.spatial + w * s)
    return BoundaryChord(u, v, u_prime, v_prime, alpha, s, math.sqrt(a))


def cross_ratio_distance(u: ConeVector, v: ConeVector) -> float:
    """Hilbert's metric 1/2 log(|u'v| |v'u| / (|u'u| |v'v|)); 0 when u == v."""
    u, v = _as_disc(u), _as_disc(v)
    if (v.spatial - u.spatial).norm2() == 0.0:
        return 0.0
    l_upv, l_vpu, l_upu, l_vpv = boundary_intersections(u, v).lengths
    return max(0.5 * math.log((l_upv * l_vpu) / (l_upu * l_vpv)), 0.0)


METRICS = {
    "birkhoff": birkhoff_distance,
    "arccosh": hyperbolic_distance,
    "crossratio": cross_ratio_distance,
}
