"""Presenting a labeled polytope as a symplectic quotient of ``C^d``.

Column ``j`` of the weight matrix ``W`` (``n x d``, ``d`` = number of facets)
is ``label_j * normal_j``.  The reduction group is the kernel ``K`` of the
induced torus map ``T^d -> T^n``:

* its identity component has Lie algebra ``ker W`` with lattice basis
  :func:`~toricpoly.lattice.lattice_kernel` of ``W``, so it has rank ``d - n``;
* its component group is ``Z^n / W Z^d``, read off from the nontrivial Smith
  invariant factors of ``W``.

Reduction level: with the kernel basis as the columns of ``B`` (``d x (d-n)``),
``level = B^T (label_j * offset_j)_j``.  The offsets are scaled by the labels
because ``P = {x : <label_j * normal_j, x> <= label_j * offset_j}`` is the
description matching the columns of ``W``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classify import ClassificationReport, classify, validate_simple_away_from_vertices
from .errors import NotValid, RankDeficient
from .lattice import IntMatrix, dot, lattice_kernel, rank, smith_normal_form
from .polytope import LabeledPolytope


@dataclass(frozen=True)
class GroupPresentation:
    torus_rank: int
    finite_invariant_factors: tuple[int, ...]
    kernel_basis: tuple[tuple[int, ...], ...]
    level: tuple[Fraction, ...] | None = None

    @property
    def component_count(self) -> int:
        out = 1
        for d in self.finite_invariant_factors:
            out *= d
        return out


@dataclass(frozen=True)
class FacetReduction:
    index: int
    label: int
    normal: tuple[int, ...]
    offset: Fraction
    weight: tuple[int, ...]
    structure_group_order: int


@dataclass(frozen=True)
class SynthesisReport:
    weights: IntMatrix
    group: GroupPresentation
    facets: tuple[FacetReduction, ...]
    classification: ClassificationReport

    @property
    def ambient_dim(self) -> int:
        """Complex dimension of the space being reduced (number of facets)."""
        return self.weights.cols

    @property
    def facets_minus_dim(self) -> int:
        """Number of facets minus the torus dimension, the alternative count."""
        return self.weights.cols - self.weights.rows


def weight_matrix(P: LabeledPolytope) -> IntMatrix:
    if not validate_simple_away_from_vertices(P):
        raise NotValid("polytope is not simple away from its vertices")
    cols = [tuple(h.label * a for a in h.normal) for h in P.halfspaces]
    return IntMatrix.from_columns(cols, rows=P.dim)


def reduction_group(W: IntMatrix, offsets: Sequence | None = None) -> GroupPresentation:
    """Rank, component group and kernel lattice of ``ker(T^d -> T^n)``.

    ``offsets`` are the *labeled* offsets ``label_j * offset_j``; if given,
    the reduction level is included.
    """
    W = IntMatrix.coerce(W)
    n, d = W.rows, W.cols
    if rank(W.to_rows()) != n:
        raise RankDeficient(f"weight matrix has rank {rank(W.to_rows())}, expected {n}")
    kernel = tuple(lattice_kernel(W))
    factors = smith_normal_form(W).torsion
    level = None
    if offsets is not None:
        level = tuple(dot(k, [Fraction(c) for c in offsets]) for k in kernel)
    return GroupPresentation(d - n, factors, kernel, level)


def synthesize(P: LabeledPolytope) -> SynthesisReport:
    W = weight_matrix(P)
    labeled_offsets = [h.label * h.offset for h in P.halfspaces]
    group = reduction_group(W, labeled_offsets)
    facets = tuple(
        FacetReduction(j, h.label, h.normal, h.offset, W.column(j), h.label)
        for j, h in enumerate(P.halfspaces)
    )
    return SynthesisReport(W, group, facets, classify(P))
