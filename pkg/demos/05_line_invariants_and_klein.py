"""Line-level invariants: the census that separates the constructions,
and the full line-orbit decomposition through the Klein correspondence.

The new surfaces carry exactly (q+1)(q^2+1) lines with a distinctive
per-point pattern; the older constructions carry different censuses, so
none of them are projectively equivalent.  The full orbit count on
lines matches 2q^2+2q+4 at q = 3 and q = 5.
"""

from quasiherm import geometry_for_q, invariants as I, quasi as QH

q = 3
g = geometry_for_q(q)

print(f"=== line censuses at q = {q} ===")
v4 = QH.assemble(g, QH.QuasiKind("SH2", j=1))
for name, mask in (
    ("S1+H2 (new)", v4),
    ("V1 (tangent-plane surgery)", I.build_V1(g, 1)["mask"]),
    ("V2 (additive curve)", I.build_V2(g)["mask"]),
    ("V3 (subline cover)", I.build_V3(g, "elliptic")["mask"]),
):
    cen = I.lines_in_set(g, mask)
    print(f"  {name:28s} lines={cen.contained:3d}  per-point {cen.per_point_hist}")

print()
print("=== Klein-quadric orbits of the special line pencils ===")
F = g.F
for omega in range(F.q2):
    length = I.klein_orbit_length(g, omega)
    mark = "full" if omega in (0, 1) else "half"
    print(f"  omega={omega}: orbit length {length} ({mark})")

print()
for q in (3, 5):
    cen = I.line_orbit_census(geometry_for_q(q))
    print(
        f"q={q}: the curve stabilizer has {cen['n_orbits']} line orbits "
        f"(2q^2+2q+4 = {cen['conjectured']})"
    )
    assert cen["n_orbits"] == cen["conjectured"]
