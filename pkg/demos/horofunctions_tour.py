"""Evaluating horofunctions, and watching a sequence converge to one.

A horofunction is given by a weak limit x_hat and a norm limit r with
||x_hat|| < r <= 1 (or ||x_hat|| = r = 1 for Busemann points).
"""

from horoboundary import (
    ORIGIN,
    DiscPoint,
    SparseVector,
    busemann_eval,
    gen_orthonormal_drift,
    horo_eval,
    i_embed,
    validate_params,
)

p = validate_params(SparseVector({1: 0.3}), 0.8)
y = DiscPoint({1: 0.5})
print("xi(b)            :", horo_eval(p, ORIGIN))
print("xi(y)            :", horo_eval(p, y))

# terms x_n = x_hat + sqrt(r^2 - ||x_hat||^2) e_{10+n}: the embedding matches xi exactly
seq = gen_orthonormal_drift(p.x_hat, p.r, 10)
for n in (1, 5, 50):
    print(f"i(x_{n:<2})(y)       :", i_embed(seq.term(n), y))

q = validate_params(SparseVector({1: 1.0}), 1.0)
print("Busemann at y    :", busemann_eval(q, y), "(horo_eval:", horo_eval(q, y), ")")
