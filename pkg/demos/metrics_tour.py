"""Three routes to the same distance on the unit disc.

The gauge-based (Birkhoff) distance, the arccosh form on the hyperboloid and
the cross-ratio of the chord through both points should all agree.
"""

import math

from horoboundary import (
    ConeVector,
    DiscPoint,
    birkhoff_distance,
    boundary_intersections,
    cross_ratio_distance,
    gauge_closed,
    gauge_oracle,
    hyperbolic_distance,
)

u = DiscPoint({1: 0.5})
v = DiscPoint({2: 0.5})

# the gauge M(u/v) is the least t with t*v - u in the cone; closed form and bisection
print("gauge closed:", gauge_closed(u, v))
print("gauge oracle:", gauge_oracle(u, v, 1e-12))

print("birkhoff    :", birkhoff_distance(u, v))
print("arccosh     :", hyperbolic_distance(u, v))
print("cross-ratio :", cross_ratio_distance(u, v))
print("exact value :", math.acosh(4 / 3))

chord = boundary_intersections(u, v)
print("chord ends  :", chord.u_prime.spatial.to_json(), chord.v_prime.spatial.to_json())

# the distance is projective: rescaling either ray changes nothing
print("rescaled    :", birkhoff_distance(u.scaled(7.0), ConeVector(0.2, v.spatial * 0.2)))
