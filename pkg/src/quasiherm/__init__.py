"""Exact verification of the quasi-Hermitian surfaces built from the
Hermitian Veronese curve in PG(3, q^2), q an odd prime power.

The library constructs the curve, its two classical carrier surfaces,
the one-parameter family of invariant surfaces, and the point/line
orbit structure of the curve stabilizers PSL(2, q^2) <= PGL(2, q^2),
then checks every combinatorial claim by exhaustive enumeration.
"""

__version__ = "0.1.0"

from .gf import FieldCtx, make_field, field_for_q
from .projgeom import Geometry, geometry_for_q
from . import varieties
from . import group
from . import quasi
from . import tables
from . import invariants
from . import srg
from . import report

__all__ = [
    "FieldCtx",
    "make_field",
    "field_for_q",
    "Geometry",
    "geometry_for_q",
    "varieties",
    "group",
    "quasi",
    "tables",
    "invariants",
    "srg",
    "report",
    "__version__",
]
