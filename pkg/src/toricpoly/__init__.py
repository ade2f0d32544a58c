"""Labeled rational polytopes of toric spaces with isolated singularities.

Vertex classification (smooth / orbifold / singular), symplectic cuts,
desingularization by Reeb cuts, vertex links, and the weight data presenting
a labeled polytope as a symplectic quotient of ``C^d``.
"""

from .classify import (
    ClassificationReport,
    VertexClass,
    VertexKind,
    classify,
    classify_vertex,
    is_simple_at_vertex,
    orbifold_group_order,
    validate_simple_away_from_vertices,
)
from .cuts import (
    CutSpec,
    Desingularization,
    LinkPolytope,
    ReebCovector,
    cut,
    desingularize,
    desingularize_details,
    find_reeb_covector,
    is_reeb,
    link_polytope,
    moment_cone,
)
from .delzant import GroupPresentation, SynthesisReport, reduction_group, synthesize, weight_matrix
from .formats import emit, format_poly, parse
from .lattice import (
    IntMatrix,
    SmithDecomposition,
    determinant,
    hermite_normal_form,
    lattice_kernel,
    primitive_part,
    smith_normal_form,
)
from .polytope import (
    Cone,
    Halfspace,
    LabeledPolytope,
    Vertex,
    apply_unimodular,
    canonicalize,
    dilate,
    dual_cone,
    enumerate_vertices,
    tangent_cone,
)

__version__ = "0.1.0"
