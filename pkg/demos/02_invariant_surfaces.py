"""The rational curve and its one-parameter family of invariant surfaces.

Sweeps the Hermitian surface, the hyperbolic quadric, the Baer
subgeometry and the family F_gamma = hermitian - gamma * quadric^((q+1)/2),
then verifies the size formulas and the fact that any two distinct
family members meet exactly in the curve.
"""

import itertools

from quasiherm import geometry_for_q, varieties as V

q = 5
g = geometry_for_q(q)

H = V.hermitian_set(g)
Qp = V.quadric_set(g)
Sg = V.sigma_set(g)
O = V.curve_set(g)

print(f"=== the classical sets at q = {q} ===")
print(f"|hermitian| = {H.sum()}   (q^3+1)(q^2+1) = {(q**3+1)*(q**2+1)}")
print(f"|quadric|   = {Qp.sum()}    (q^2+1)^2     = {(q**2+1)**2}")
print(f"|baer|      = {Sg.sum()}    q^3+q^2+q+1   = {q**3+q**2+q+1}")
print(f"|curve|     = {O.sum()}     q^2+1         = {q**2+1}")
assert ((H & Qp) == O).all() and ((H & Sg) == O).all() and ((Qp & Sg) == O).all()
print("checked: hermitian, quadric and baer intersect pairwise in the curve")

print()
print("=== the invariant family ===")
for j in V.valid_j(q):
    size = int(V.surface_S(g, j).sum())
    print(f"S_{j}: {size} points (formula {V.size_S(q)})")
    assert size == V.size_S(q)
for k in V.valid_k(q):
    size = int(V.surface_E(g, k).sum())
    formula = V.size_E_end(q) if k in (0, q - 1) else V.size_E_mid(q)
    print(f"E_{k}: {size} points (formula {formula})")
    assert size == formula

members = [V.surface_S(g, j) for j in V.valid_j(q)]
members += [V.surface_E(g, k) for k in V.valid_k(q)]
for a, b in itertools.combinations(range(len(members)), 2):
    assert ((members[a] & members[b]) == O).all()
print(f"checked: all {len(members)} members meet pairwise exactly in the curve")
