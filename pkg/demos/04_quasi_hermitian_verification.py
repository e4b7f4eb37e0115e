"""Orbit stitching: assembling quasi-Hermitian surfaces and sweeping
every plane to prove the two-character property.

A set is quasi-Hermitian when every plane meets it in q^3+1 or
q^3+q^2+1 points, exactly as for the classical Hermitian surface.  A
failed stitching (right size, wrong orbits) is shown as a negative
control.
"""

from quasiherm import geometry_for_q, quasi as QH

q = 5
g = geometry_for_q(q)

print(f"=== q = {q}: all admissible unions ===")
for kind in QH.valid_kinds(q):
    res = QH.verify_quasi_hermitian(g, QH.assemble(g, kind))
    print(
        f"  {kind.label():8s} size {res['size']:5d} "
        f"spectrum {res['spectrum']} -> quasi-Hermitian: {res['is_quasi']}"
    )
    assert res["is_quasi"]

print()
print("=== negative control at q = 3 ===")
g3 = geometry_for_q(3)
good = QH.verify_quasi_hermitian(g3, QH.assemble(g3, QH.QuasiKind("SH2", j=1)))
print(f"  S1+H2 : size {good['size']}, spectrum {good['spectrum']}")
bad = QH.assemble_orbit_union(g3, ["O", "S1", "S3", "H1"])
res = QH.verify_quasi_hermitian(g3, bad)
print(
    f"  O+S1+S3+H1 has the Hermitian size ({res['size']}) but spectrum "
    f"{res['spectrum']}: quasi-Hermitian = {res['is_quasi']}"
)
assert good["is_quasi"] and not res["is_quasi"]
