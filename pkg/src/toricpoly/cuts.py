"""Cutting polytopes by rational halfspaces, Reeb covectors and links.

Sign conventions: edge directions at a vertex ``v`` point into the polytope,
and a Reeb covector ``Y`` at ``v`` pairs strictly positively with all of them,
so ``<x - v, Y> > 0`` for every other point ``x`` of the polytope.  Excising
``v`` keeps ``{x : <x, Y> >= <v, Y> + eps}``; the new facet has normal ``-Y``
(made primitive) and label 1.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classify import VertexKind, classify, validate_simple_away_from_vertices
from .errors import (
    DesingularizationFailed,
    EmptyCut,
    EpsilonTooLarge,
    InvalidReeb,
    NoInteriorPoint,
    NotValid,
    TrivialCutWarning,
    ZeroVector,
)
from .lattice import (
    IntMatrix,
    clear_denominators,
    content,
    dot,
    ext_gcd,
    lattice_kernel,
    primitive_part,
)
from .polytope import (
    Cone,
    Halfspace,
    LabeledPolytope,
    Vertex,
    canonicalize,
    dual_cone,
    tangent_cone,
)

# Halving steps tried by the default epsilon policy before giving up.
MAX_EPSILON_HALVINGS = 40
# Largest box radius searched for an interior lattice point of a dual cone.
MAX_REEB_BOX = 32


@dataclass(frozen=True)
class CutSpec:
    """Keep ``<x, direction> >= level`` (``keep="ge"``) or ``<= level`` (``"le"``).

    A non-primitive direction is divided by its content and the level
    rescaled, so the kept halfspace is unchanged.
    """

    direction: tuple[int, ...]
    level: Fraction
    keep: str = "ge"

    def __post_init__(self):
        direction = tuple(int(a) for a in self.direction)
        g = content(direction)
        if g == 0:
            raise ZeroVector("cut direction must be nonzero")
        if self.keep not in ("ge", "le"):
            raise ValueError(f"keep must be 'ge' or 'le', got {self.keep!r}")
        object.__setattr__(self, "direction", tuple(a // g for a in direction))
        object.__setattr__(self, "level", Fraction(self.level) / g)

    def halfspace(self) -> Halfspace:
        if self.keep == "ge":
            return Halfspace(tuple(-a for a in self.direction), -self.level, 1)
        return Halfspace(self.direction, self.level, 1)


def cut(P: LabeledPolytope, spec: CutSpec) -> LabeledPolytope:
    """Intersect ``P`` with the kept halfspace; the new facet gets label 1.

    Raises :class:`EmptyCut` if the kept part has no interior.  If the
    hyperplane misses the interior on the other side, ``P`` is returned
    unchanged and a :class:`TrivialCutWarning` is issued.
    """
    h = spec.halfspace()
    values = [h.value(v.point) for v in P.vertices]
    if min(values) >= h.offset:
        raise EmptyCut(
            f"halfspace {spec.keep} {spec.level} along {spec.direction} "
            f"does not meet the interior of the polytope"
        )
    if max(values) <= h.offset:
        warnings.warn(
            f"cut along {spec.direction} at level {spec.level} leaves the polytope unchanged",
            TrivialCutWarning,
            stacklevel=2,
        )
        return P
    return canonicalize(P.halfspaces + (h,), P.dim)


@dataclass(frozen=True)
class ReebCovector:
    Y: tuple[int, ...]
    vertex: Vertex


def is_reeb(v: Vertex, Y: Sequence[int]) -> bool:
    return bool(v.edge_directions) and all(dot(d, Y) > 0 for d in v.edge_directions)


def find_reeb_covector(P: LabeledPolytope, v: Vertex) -> ReebCovector:
    """A primitive lattice ``Y`` pairing positively with every edge at ``v``.

    The sum of the dual cone's primitive rays is tried first; failing that,
    boxes ``[-r, r]^n`` of growing radius are scanned in lexicographic order.
    """
    C = tangent_cone(P, v)
    if not C.is_full_dimensional():
        raise NoInteriorPoint("tangent cone is not full-dimensional")
    dual = dual_cone(C)
    s = tuple(sum(col) for col in zip(*dual.rays)) if dual.rays else ()
    if s and any(s) and is_reeb(v, s):
        return ReebCovector(primitive_part(s), v)
    for r in range(1, MAX_REEB_BOX + 1):
        for Y in itertools.product(range(-r, r + 1), repeat=P.dim):
            if any(Y) and is_reeb(v, Y):
                return ReebCovector(primitive_part(Y), v)
    raise NoInteriorPoint("no interior lattice point found in the dual cone")


@dataclass(frozen=True)
class Desingularization:
    polytope: LabeledPolytope
    epsilon: Fraction
    excised: tuple[Vertex, ...]
    reeb: tuple[tuple[int, ...], ...]
    cut_facets: tuple[int, ...]


def _excision_halfspace(v: Vertex, Y, eps) -> Halfspace:
    return Halfspace(tuple(-a for a in Y), -(dot(v.point, Y) + eps), 1)


def _excise(P, sing, reebs, eps):
    """Cut off every vertex in ``sing``; return ``(Q, cut facet indices)`` or ``None``
    if the cuts interfere with each other."""
    cuts = [_excision_halfspace(v, Y, eps).primitive() for v, Y in zip(sing, reebs)]
    try:
        Q = canonicalize(P.halfspaces + tuple(cuts), P.dim)
    except Exception:
        return None
    if len(Q.halfspaces) != len(P.halfspaces) + len(cuts):
        return None
    index = {(h.normal, h.offset): i for i, h in enumerate(Q.halfspaces)}
    cut_ids = [index.get((h.normal, h.offset)) for h in cuts]
    if None in cut_ids:
        return None
    cut_set = set(cut_ids)
    for v, i in zip(sing, cut_ids):
        if len(Q.facet_vertices(i)) != len(v.edge_directions):
            return None
    for w in Q.vertices:
        if len(w.incident_facets & cut_set) > 1 or not w.is_simple:
            return None
    return Q, tuple(cut_ids)


def desingularize_details(P: LabeledPolytope, epsilon=None) -> Desingularization:
    """Excise every singular vertex of ``P`` by a small Reeb cut.

    All cuts use the same ``epsilon``.  When ``epsilon`` is ``None`` it starts
    at one third of the smallest gap ``<w - v, Y_v>`` over singular ``v`` and
    other vertices ``w`` (so cuts at two ends of an edge cannot meet), and
    is halved until the cuts are disjoint and every new vertex is simple.
    """
    if not validate_simple_away_from_vertices(P):
        raise NotValid("polytope is not simple away from its vertices")
    report = classify(P)
    sing = [report.vertices[i] for i in report.singular_vertices]
    if not sing:
        return Desingularization(P, Fraction(0), (), (), ())
    reebs = [find_reeb_covector(P, v).Y for v in sing]
    gap = min(
        dot([a - b for a, b in zip(w.point, v.point)], Y)
        for v, Y in zip(sing, reebs)
        for w in P.vertices
        if w.point != v.point
    )

    if epsilon is not None:
        eps = Fraction(epsilon)
        if eps <= 0:
            raise ValueError("epsilon must be positive")
        if eps >= gap:
            raise EpsilonTooLarge(
                f"epsilon {eps} reaches another vertex (must be below {gap})"
            )
        result = _excise(P, sing, reebs, eps)
        if result is None:
            raise EpsilonTooLarge(f"cuts with epsilon {eps} run into each other")
        return Desingularization(result[0], eps, tuple(sing), tuple(reebs), result[1])

    eps = gap / 3
    for _ in range(MAX_EPSILON_HALVINGS):
        result = _excise(P, sing, reebs, eps)
        if result is not None:
            return Desingularization(result[0], eps, tuple(sing), tuple(reebs), result[1])
        eps /= 2
    raise DesingularizationFailed("could not find an epsilon giving a simple polytope")


def desingularize(P: LabeledPolytope, epsilon=None) -> LabeledPolytope:
    return desingularize_details(P, epsilon).polytope


def _gcd_witness(Y: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Return ``(g, u)`` with ``<u, Y> == g == gcd(Y)``."""
    g, coeffs = 0, [0] * len(Y)
    for i, y in enumerate(Y):
        g, x, z = ext_gcd(g, y)
        coeffs = [x * c for c in coeffs]
        coeffs[i] = z
    return g, tuple(coeffs)


@dataclass(frozen=True)
class LinkPolytope:
    """Cross-section ``{d in T_v : <d, Y> = height}`` of a vertex tangent cone.

    Slice coordinates ``s`` correspond to the direction
    ``origin + sum(s_j * basis[j])``, where ``basis`` is a lattice basis of
    ``{u : <u, Y> = 0}``.
    """

    polytope: LabeledPolytope
    apex: tuple[Fraction, ...]
    Y: tuple[int, ...]
    height: Fraction
    basis: tuple[tuple[int, ...], ...]
    origin: tuple[Fraction, ...]

    def to_direction(self, s) -> tuple[Fraction, ...]:
        d = list(self.origin)
        for coef, b in zip(s, self.basis):
            d = [x + coef * y for x, y in zip(d, b)]
        return tuple(d)

    def to_ambient(self, s) -> tuple[Fraction, ...]:
        return tuple(a + d for a, d in zip(self.apex, self.to_direction(s)))


def link_polytope(P: LabeledPolytope, v: Vertex, Y, c=1) -> LinkPolytope:
    """Link of ``v`` as a labeled polytope of dimension ``n - 1``.

    Facet labels follow the quotient lattice: a facet normal whose image in
    slice coordinates is ``k`` times a primitive vector gets label
    ``k * label``.
    """
    Y = tuple(Y.Y if isinstance(Y, ReebCovector) else Y)
    c = Fraction(c)
    if c <= 0:
        raise ValueError("link height must be positive")
    if not is_reeb(v, Y):
        raise InvalidReeb(f"{Y} does not pair positively with every edge at the vertex")
    n = P.dim
    g, u = _gcd_witness(Y)
    origin = tuple(Fraction(c, g) * a for a in u)
    basis = tuple(lattice_kernel(IntMatrix.from_rows([Y], cols=n)))
    if n == 1:
        return LinkPolytope(LabeledPolytope(0, ()), v.point, Y, c, basis, origin)
    hs = []
    for i in sorted(v.incident_facets):
        h = P.halfspaces[i]
        w = tuple(dot(h.normal, b) for b in basis)
        k = content(w)
        rhs = -dot(h.normal, origin)
        if k == 0:
            continue
        hs.append(Halfspace(tuple(a // k for a in w), rhs / k, h.label * k))
    return LinkPolytope(canonicalize(hs, n - 1), v.point, Y, c, basis, origin)


def moment_cone(P: LabeledPolytope, v: Vertex) -> Cone:
    """Cone over the link of ``v``: the rays through the link's vertices."""
    link = link_polytope(P, v, find_reeb_covector(P, v), 1)
    return Cone.of(
        (clear_denominators(link.to_direction(w.point)) for w in link.polytope.vertices),
        P.dim,
    )
