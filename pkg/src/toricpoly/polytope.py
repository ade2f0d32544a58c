"""Labeled rational polytopes in H-representation.

A polytope is stored as a tuple of halfspaces ``<normal, x> <= offset`` with
primitive outward integer normals and a positive integer label per facet.
Vertices, edges and faces are derived from that description with exact
arithmetic: vertices come from solving every ``n``-subset of facet equations,
which is fine for the small inputs this package targets (``n <= 8``, a few
dozen facets).

Vertices are ordered lexicographically by coordinates, and cone rays
lexicographically by entries, so every derived quantity is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    DuplicateFacetLabelConflict,
    EmptyPolytope,
    NotFullDimensional,
    Unbounded,
    ZeroVector,
)
from .lattice import (
    IntMatrix,
    affine_dimension,
    content,
    dot,
    lattice_kernel,
    rank,
    solve,
    unimodular_inverse,
)


@dataclass(frozen=True)
class Halfspace:
    """The set ``{x : <normal, x> <= offset}`` together with a facet label."""

    normal: tuple[int, ...]
    offset: Fraction
    label: int = 1

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(int(a) for a in self.normal))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if not any(self.normal):
            raise ZeroVector("halfspace normal must be nonzero")
        if int(self.label) != self.label or self.label < 1:
            raise ValueError(f"facet label must be a positive integer, got {self.label!r}")
        object.__setattr__(self, "label", int(self.label))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def is_primitive(self) -> bool:
        return content(self.normal) == 1

    def primitive(self) -> "Halfspace":
        """Same halfspace with the normal divided by its content."""
        g = content(self.normal)
        if g == 1:
            return self
        return Halfspace(tuple(a // g for a in self.normal), self.offset / g, self.label)

    def value(self, point) -> Fraction:
        return dot(self.normal, point)

    def __str__(self):
        lhs = " + ".join(f"{a}*x{i}" for i, a in enumerate(self.normal) if a)
        return f"{lhs} <= {self.offset}  [label {self.label}]"


@dataclass(frozen=True)
class Vertex:
    point: tuple[Fraction, ...]
    incident_facets: frozenset[int]
    edge_directions: tuple[tuple[int, ...], ...]

    @property
    def is_simple(self) -> bool:
        return len(self.incident_facets) == len(self.point)


@dataclass(frozen=True)
class Cone:
    """Cone generated by primitive integer rays (apex at the origin)."""

    rays: tuple[tuple[int, ...], ...]
    dim: int

    @classmethod
    def of(cls, rays: Iterable[Sequence[int]], dim: int) -> "Cone":
        out = set()
        for r in rays:
            g = content(r)
            if g:
                out.add(tuple(int(a) // g for a in r))
        return cls(tuple(sorted(out)), dim)

    def __len__(self):
        return len(self.rays)

    def is_full_dimensional(self) -> bool:
        return rank(self.rays) == self.dim if self.rays else self.dim == 0


@dataclass(frozen=True)
class Face:
    vertices: frozenset[int]
    facets: frozenset[int]
    dim: int


def _coerce_halfspace(h) -> Halfspace:
    if isinstance(h, Halfspace):
        return h
    return Halfspace(*h)


def _is_feasible(point, normals, offsets) -> bool:
    return all(dot(a, point) <= b for a, b in zip(normals, offsets))


def _vertex_table(normals, offsets, n) -> dict:
    """Map each vertex of ``{x : A x <= b}`` to the set of its tight rows.

    Assumes the normals span ``Q^n``; otherwise the system has no vertices.
    """
    table = {}
    for subset in combinations(range(len(normals)), n):
        x = solve([normals[i] for i in subset], [offsets[i] for i in subset])
        if x is None or x in table:
            continue
        if _is_feasible(x, normals, offsets):
            table[x] = frozenset(
                i for i, (a, b) in enumerate(zip(normals, offsets)) if dot(a, x) == b
            )
    return table


def _line_direction(rows, n) -> tuple[int, ...] | None:
    """Primitive generator of the common kernel of ``rows`` if it is a line."""
    ker = lattice_kernel(IntMatrix.from_rows(rows, cols=n))
    return ker[0] if len(ker) == 1 else None


def _extreme_rays(normals, n) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{d : <a, d> <= 0 for a in normals}``."""
    if n == 0:
        return []
    rays = set()
    for subset in combinations(normals, n - 1):
        d = _line_direction(subset, n)
        if d is None:
            continue
        for s in (d, tuple(-x for x in d)):
            if all(dot(a, s) <= 0 for a in normals):
                rays.add(s)
    return sorted(rays)


def canonicalize(halfspaces, dim: int | None = None) -> "LabeledPolytope":
    """Build a :class:`LabeledPolytope` from arbitrary halfspaces.

    Normals are made primitive (offsets rescaled), identical halfspaces are
    merged, and halfspaces that do not support a facet are dropped.  The
    surviving halfspaces keep their input order.

    Raises:
        EmptyPolytope, Unbounded, NotFullDimensional,
        DuplicateFacetLabelConflict.
    """
    hs = [_coerce_halfspace(h).primitive() for h in halfspaces]
    if not hs:
        raise ValueError("at least one halfspace is required")
    n = hs[0].dim if dim is None else dim
    if any(h.dim != n for h in hs):
        raise ValueError("halfspaces of mixed dimension")

    merged: dict = {}
    for h in hs:
        key = (h.normal, h.offset)
        if key in merged and merged[key] != h.label:
            raise DuplicateFacetLabelConflict(
                f"halfspace {h.normal} <= {h.offset} given with labels "
                f"{merged[key]} and {h.label}"
            )
        merged.setdefault(key, h.label)
    hs = [Halfspace(a, b, m) for (a, b), m in merged.items()]
    normals = [h.normal for h in hs]
    offsets = [h.offset for h in hs]

    if rank(normals) < n:
        # Lineality is present; test feasibility on its orthogonal complement.
        lines = lattice_kernel(IntMatrix.from_rows(normals, cols=n))
        aug_n = normals + [l for l in lines] + [tuple(-x for x in l) for l in lines]
        aug_b = offsets + [Fraction(0)] * (2 * len(lines))
        if not _vertex_table(aug_n, aug_b, n):
            raise EmptyPolytope("halfspaces have empty intersection")
        raise Unbounded("halfspace normals do not span; the region contains a line")

    table = _vertex_table(normals, offsets, n)
    if not table:
        raise EmptyPolytope("halfspaces have empty intersection")
    if _extreme_rays(normals, n):
        raise Unbounded("halfspace intersection is unbounded")

    points = list(table)
    adim = affine_dimension(points)
    if adim < n:
        raise NotFullDimensional(adim, n)

    kept = [
        h for i, h in enumerate(hs)
        if affine_dimension([p for p in points if i in table[p]]) == n - 1
    ]
    return LabeledPolytope(n, tuple(kept))


@dataclass(frozen=True)
class LabeledPolytope:
    """Canonical labeled polytope; build it with :func:`canonicalize`."""

    dim: int
    halfspaces: tuple[Halfspace, ...]

    @property
    def normals(self) -> list[tuple[int, ...]]:
        return [h.normal for h in self.halfspaces]

    @property
    def offsets(self) -> list[Fraction]:
        return [h.offset for h in self.halfspaces]

    @property
    def labels(self) -> list[int]:
        return [h.label for h in self.halfspaces]

    def __len__(self):
        return len(self.halfspaces)

    @cached_property
    def vertices(self) -> tuple[Vertex, ...]:
        normals, n = self.normals, self.dim
        table = _vertex_table(normals, self.offsets, n)
        out = []
        for point in sorted(table):
            tight = table[point]
            edges = _extreme_rays([normals[i] for i in sorted(tight)], n)
            out.append(Vertex(point, tight, tuple(edges)))
        return tuple(out)

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        """All nonempty faces, including the polytope itself.

        Faces are closed under intersection with facets, so a breadth-first
        closure starting from the full vertex set finds every one of them.
        """
        verts = self.vertices
        facet_sets = [
            frozenset(k for k, v in enumerate(verts) if i in v.incident_facets)
            for i in range(len(self.halfspaces))
        ]
        top = frozenset(range(len(verts)))
        seen = {top}
        queue = [top]
        while queue:
            f = queue.pop()
            for s in facet_sets:
                g = f & s
                if g and g not in seen:
                    seen.add(g)
                    queue.append(g)
        out = []
        for f in seen:
            on = frozenset(i for i, s in enumerate(facet_sets) if f <= s)
            d = self.dim - rank([self.normals[i] for i in on]) if on else self.dim
            out.append(Face(f, on, d))
        out.sort(key=lambda F: (F.dim, sorted(F.vertices)))
        return tuple(out)

    def faces_of_dim(self, k: int) -> list[Face]:
        return [F for F in self.faces if F.dim == k]

    def facet_vertices(self, i: int) -> list[int]:
        return [k for k, v in enumerate(self.vertices) if i in v.incident_facets]

    def contains(self, point) -> bool:
        return _is_feasible(point, self.normals, self.offsets)

    def vertex_index(self, point) -> int:
        point = tuple(Fraction(x) for x in point)
        for k, v in enumerate(self.vertices):
            if v.point == point:
                return k
        raise KeyError(f"{point} is not a vertex")

    def __str__(self):
        lines = [f"LabeledPolytope(dim={self.dim}, facets={len(self.halfspaces)})"]
        lines += [f"  {h}" for h in self.halfspaces]
        return "\n".join(lines)


def enumerate_vertices(P: LabeledPolytope) -> list[Vertex]:
    """Vertices of ``P`` in lexicographic order with incidence and edge data."""
    return list(P.vertices)


def tangent_cone(P: LabeledPolytope, v: Vertex) -> Cone:
    """Cone of directions from ``v`` into ``P``, generated by its edges."""
    return Cone.of(v.edge_directions, P.dim)


def dual_cone(C: Cone) -> Cone:
    """``{Y : <d, Y> >= 0 for every ray d}`` by primitive generators.

    If ``C`` is not full-dimensional the dual contains a linear subspace,
    which is returned as a pair ``+l, -l`` for each vector of its lattice basis.
    """
    n = C.dim
    rays = list(C.rays)
    lines = lattice_kernel(IntMatrix.from_rows(rays, cols=n))
    gens = set()
    for l in lines:
        gens.add(l)
        gens.add(tuple(-x for x in l))
    k = n - len(lines)
    if k >= 1:
        for subset in combinations(rays, k - 1):
            d = _line_direction(list(lines) + list(subset), n)
            if d is None:
                continue
            for s in (d, tuple(-x for x in d)):
                if all(dot(r, s) >= 0 for r in rays):
                    gens.add(s)
    return Cone.of(gens, n)


def apply_unimodular(P: LabeledPolytope, A) -> LabeledPolytope:
    """Image of ``P`` under ``x -> A x`` for a unimodular integer matrix ``A``.

    Normals transform by the inverse transpose; offsets and labels are kept.
    """
    A = IntMatrix.coerce(A)
    Ainv_T = unimodular_inverse(A).T
    return LabeledPolytope(
        P.dim,
        tuple(Halfspace(Ainv_T @ h.normal, h.offset, h.label) for h in P.halfspaces),
    )


def dilate(P: LabeledPolytope, t) -> LabeledPolytope:
    """Scale ``P`` about the origin by a positive rational ``t``."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("dilation factor must be positive")
    return LabeledPolytope(
        P.dim, tuple(Halfspace(h.normal, h.offset * t, h.label) for h in P.halfspaces)
    )


def relabel(P: LabeledPolytope, labels: Sequence[int]) -> LabeledPolytope:
    if len(labels) != len(P.halfspaces):
        raise ValueError("one label per facet required")
    return LabeledPolytope(
        P.dim, tuple(Halfspace(h.normal, h.offset, m) for h, m in zip(P.halfspaces, labels))
    )
