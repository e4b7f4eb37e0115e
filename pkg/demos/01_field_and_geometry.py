"""Tour of the arithmetic and geometric substrate at q = 3.

Builds GF(9) over GF(3), prints the distinguished constants, and walks
the basic counts of PG(3, 9): points, planes, lines, and the two
polarities.
"""

import numpy as np

from quasiherm import geometry_for_q

g = geometry_for_q(3)
F = g.F

print("=== GF(q) inside GF(q^2), q = 3 ===")
print(f"modulus coefficients (low to high): {F.prim_poly}")
print(f"xi  (primitive element): {F.elem_str(F.xi)}")
print(f"s   (non-square of GF(q)): {F.elem_str(F.s)}")
print(f"i   (square root of s): {F.elem_str(F.i_elem)}")
assert F.mul(F.i_elem, F.i_elem) == F.s
assert F.add(F.i_elem, F.frobenius(F.i_elem)) == 0
print("checked: i^2 = s and i + i^q = 0")

print()
print("=== PG(3, q^2) ===")
print(f"points: {g.n_points},  planes: {g.n_points},  lines: {g.n_lines}")
assert g.n_points == 820 and g.n_lines == 7462

plane = g.plane_points(0)
print(f"a plane carries {len(plane)} points (q^4+q^2+1)")

line = g.lines().line_points(0)
print(f"a line carries {len(line)} points (q^2+1)")

tau = g.tau_perm()
fixed = int((tau == np.arange(g.n_points)).sum())
print(f"the semilinear involution tau fixes {fixed} points (the Baer subgeometry)")
assert fixed == 40

perp = g.perp_quadric_perm()
assert (perp[perp] == np.arange(g.n_points)).all()
assert (tau[perp] == perp[tau]).all()
print("checked: both polarities are involutions and tau o perp = perp o tau")
