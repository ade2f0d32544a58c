"""Vertex singularity classification.

A simple vertex is an orbifold point whose local group is the cokernel of the
labeled normals ``label_i * normal_i`` of its facets; if that cokernel is
trivial the vertex is smooth.  A vertex lying on more than ``n`` facets is an
isolated genuine singularity: its link is not a finite quotient of a sphere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import NotSimple
from .lattice import IntMatrix, determinant, smith_normal_form
from .polytope import LabeledPolytope, Vertex


class VertexKind(str, enum.Enum):
    SMOOTH = "smooth"
    ORBIFOLD = "orbifold"
    SINGULAR = "singular"


@dataclass(frozen=True)
class VertexClass:
    kind: VertexKind
    invariant_factors: tuple[int, ...] = ()

    @classmethod
    def smooth(cls):
        return cls(VertexKind.SMOOTH)

    @classmethod
    def orbifold(cls, factors):
        return cls(VertexKind.ORBIFOLD, tuple(factors))

    @classmethod
    def singular(cls):
        return cls(VertexKind.SINGULAR)

    @property
    def group_order(self) -> int | None:
        """Order of the local structure group; ``None`` for singular points."""
        if self.kind is VertexKind.SINGULAR:
            return None
        order = 1
        for d in self.invariant_factors:
            order *= d
        return order

    def __str__(self):
        if self.kind is VertexKind.ORBIFOLD:
            return f"orbifold{list(self.invariant_factors)}"
        return self.kind.value


@dataclass(frozen=True)
class ClassificationReport:
    polytope: LabeledPolytope
    vertices: tuple[Vertex, ...]
    classes: tuple[VertexClass, ...]
    labels: tuple[int, ...]
    valid: bool

    def count(self, kind: VertexKind) -> int:
        return sum(c.kind is kind for c in self.classes)

    @property
    def singular_vertices(self) -> list[int]:
        return [i for i, c in enumerate(self.classes) if c.kind is VertexKind.SINGULAR]


def is_simple_at_vertex(P: LabeledPolytope, v: Vertex) -> bool:
    return len(v.incident_facets) == P.dim


def validate_simple_away_from_vertices(P: LabeledPolytope) -> bool:
    """True iff every face of dimension ``k >= 1`` lies on exactly ``n - k`` facets."""
    return all(len(F.facets) == P.dim - F.dim for F in P.faces if F.dim >= 1)


def labeled_normal_matrix(P: LabeledPolytope, v: Vertex) -> IntMatrix:
    """Columns ``label_i * normal_i`` over the facets through ``v``, in facet order."""
    cols = [
        tuple(P.halfspaces[i].label * a for a in P.halfspaces[i].normal)
        for i in sorted(v.incident_facets)
    ]
    return IntMatrix.from_columns(cols, rows=P.dim)


def classify_vertex(P: LabeledPolytope, v: Vertex) -> VertexClass:
    if not is_simple_at_vertex(P, v):
        return VertexClass.singular()
    factors = smith_normal_form(labeled_normal_matrix(P, v)).torsion
    return VertexClass.orbifold(factors) if factors else VertexClass.smooth()


def orbifold_group_order(P: LabeledPolytope, v: Vertex) -> int:
    """Index in ``Z^n`` of the lattice spanned by the labeled normals at ``v``."""
    if not is_simple_at_vertex(P, v):
        raise NotSimple(f"vertex {tuple(str(x) for x in v.point)} is not simple")
    return abs(determinant(labeled_normal_matrix(P, v)))


def classify(P: LabeledPolytope) -> ClassificationReport:
    verts = P.vertices
    return ClassificationReport(
        polytope=P,
        vertices=verts,
        classes=tuple(classify_vertex(P, v) for v in verts),
        labels=tuple(P.labels),
        valid=validate_simple_away_from_vertices(P),
    )
