"""Almost-geodesic sequences and the Busemann diagnostic.

The radial approach to a boundary point is geodesic. Drifting off along new
orthogonal directions stays bounded but never settles, so it fails the check,
and the diagnostic ratio q_n blows up for the r = 1 drift.
"""

from horoboundary import (
    ZERO,
    SparseVector,
    almost_geodesic_check,
    busemann_diagnostic,
    gen_boundary_approach,
    gen_orthonormal_drift,
    limit_params,
)

e1 = SparseVector({1: 1.0})
radial = gen_boundary_approach(e1)
print("radial   :", almost_geodesic_check(radial, 50, 1e-9).to_json())
print("limit    :", limit_params(radial, 1000).params.to_json())

drift = gen_orthonormal_drift(ZERO, 0.9, 1)
rep = almost_geodesic_check(drift, 30, 0.1)
print("drift    : passes =", rep.passes, "worst violation =", rep.worst_violation)

damped = gen_orthonormal_drift(ZERO, 1.0)
qs = busemann_diagnostic(damped, ZERO, 1000)
print("q_n      :", [round(qs[n - 1], 3) for n in (1, 10, 100, 1000)])
