"""Acceptance criteria, one test each.

Every test records a ``PASS`` or ``FAIL`` line that is printed in the
"acceptance criteria" section of the pytest summary.  All comparisons are
exact (rational arithmetic), so no numeric tolerance applies.
"""

import functools
import itertools
import json
import random
import subprocess
import sys
import time
from fractions import Fraction

from sympy.matrices.normalforms import hermite_normal_form as sympy_hnf

import oracles
from conftest import ACCEPTANCE_LINES, CORPUS, DATA, load
from toricpoly import formats
from toricpoly.classify import VertexKind, classify, validate_simple_away_from_vertices
from toricpoly.cuts import CutSpec, cut, desingularize_details, find_reeb_covector, link_polytope
from toricpoly.delzant import synthesize
from toricpoly.lattice import IntMatrix, dot, hermite_normal_form, smith_normal_form
from toricpoly.polytope import Halfspace, apply_unimodular, canonicalize

F = Fraction


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                detail = fn()
            except BaseException as exc:
                ACCEPTANCE_LINES.append(f"FAIL criterion {number}: {title} ({exc!r:.120})")
                raise
            line = f"PASS criterion {number}: {title}"
            if detail:
                line += f" ({detail})"
            ACCEPTANCE_LINES.append(line)
            print(line)
        return run
    return wrap


def _random_unimodular(n, rng):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(8):
        if n == 1:
            M[0][0] = -M[0][0]
            continue
        i, j = rng.sample(range(n), 2)
        op = rng.random()
        if op < 0.6:
            k = rng.choice([-2, -1, 1, 2])
            M[i] = [a + k * b for a, b in zip(M[i], M[j])]
        elif op < 0.8:
            M[i], M[j] = M[j], M[i]
        else:
            M[i] = [-a for a in M[i]]
    return M


@criterion(1, "octahedron pipeline")
def test_criterion_1_octahedron_pipeline():
    text = "dim 3\n" + "".join(
        f"facet {a} {b} {c} ; 1\n" for a, b, c in itertools.product((1, -1), repeat=3)
    )
    start = time.perf_counter()
    P = formats.parse(text).polytope()
    assert validate_simple_away_from_vertices(P)
    report = classify(P)
    d = desingularize_details(P)
    elapsed = time.perf_counter() - start
    Q = d.polytope

    assert report.count(VertexKind.SINGULAR) == 6
    assert report.count(VertexKind.ORBIFOLD) == 0
    assert len(Q) == 14
    assert len(Q.vertices) == 24
    assert all(v.is_simple for v in Q.vertices)
    assert all(Q.labels[i] == 1 for i in d.cut_facets) and len(d.cut_facets) == 6
    assert elapsed < 1.0

    # independent oracle: the expected H-representation and brute-force vertices
    eps = d.epsilon
    expected = {(s, 1) for s in itertools.product((1, -1), repeat=3)}
    expected |= {(tuple(s * int(i == k) for i in range(3)), 1 - eps)
                 for k in range(3) for s in (1, -1)}
    assert {(h.normal, h.offset) for h in Q.halfspaces} == expected
    brute = oracles.vertices([h[0] for h in expected], [h[1] for h in expected])
    assert len(brute) == 24 and set(brute.values()) == {3}
    assert set(brute) == {v.point for v in Q.vertices}
    return f"6 singular, 14 facets, 24 simple vertices, epsilon {eps}, {elapsed:.3f}s"


@criterion(2, "cube is smooth, torus rank 3, no finite part")
def test_criterion_2_cube():
    P = load("cube")
    report = classify(P)
    assert report.count(VertexKind.SMOOTH) == 8 == len(report.vertices)
    g = synthesize(P).group
    assert g.torus_rank == 3
    assert g.finite_invariant_factors == ()


@criterion(3, "teardrops n = 2, 3, 5")
def test_criterion_3_teardrops():
    for n in (2, 3, 5):
        P = canonicalize([Halfspace((-1,), 0, 1), Halfspace((1,), 1, n)])
        report = classify(P)
        labeled = report.vertices.index(P.vertices[P.vertex_index((1,))])
        c = report.classes[labeled]
        assert c.kind is VertexKind.ORBIFOLD and c.invariant_factors == (n,)
        assert c.group_order == n
        assert str(report.classes[1 - labeled]) == "smooth"
        basis = synthesize(P).group.kernel_basis
        assert len(basis) == 1
        # the kernel line of W = (-1, n) is spanned by (n, 1) up to sign
        assert basis[0] in ((n, 1), (-n, -1))


@criterion(4, "simplex gives torus rank 1, kernel (1,1,1), trivial finite part")
def test_criterion_4_simplex():
    g = synthesize(load("simplex")).group
    assert g.torus_rank == 1
    assert g.kernel_basis == ((1, 1, 1),)
    assert g.finite_invariant_factors == ()


def _random_rational_polytope(rng):
    n = rng.choice([2, 3])
    hs = [Halfspace(tuple(s * int(i == j) for j in range(n)), F(rng.randint(2, 6), rng.randint(1, 2)))
          for i in range(n) for s in (1, -1)]
    for _ in range(rng.randint(0, 4)):
        a = tuple(rng.randint(-3, 3) for _ in range(n))
        if any(a):
            hs.append(Halfspace(a, F(rng.randint(2, 15), rng.randint(1, 3)), rng.randint(1, 3)))
    return canonicalize(hs)


@criterion(5, "cut identity on 50 random polytopes")
def test_criterion_5_cut_identity():
    rng = random.Random(5)
    done = 0
    while done < 50:
        P = _random_rational_polytope(rng)
        X = tuple(rng.randint(-3, 3) for _ in range(P.dim))
        if not any(X):
            continue
        vals = sorted(dot(v.point, X) for v in P.vertices)
        if vals[0] == vals[-1]:
            continue
        t = F(rng.randint(1, 9), 10)
        a = vals[0] + t * (vals[-1] - vals[0])
        keep = rng.choice(["ge", "le"])
        spec = CutSpec(X, a, keep)
        Q = cut(P, spec)
        predicted = oracles.predicted_cut_vertices(P.normals, P.offsets, X, a, keep)
        assert {v.point for v in Q.vertices} == predicted
        new = spec.halfspace().primitive()
        assert Q.halfspaces[Q.normals.index(new.normal)].label == 1
        # vertices strictly on the kept side keep their classification
        sign = 1 if keep == "ge" else -1
        old = dict(zip((v.point for v in P.vertices), map(str, classify(P).classes)))
        new_classes = dict(zip((v.point for v in Q.vertices), map(str, classify(Q).classes)))
        for p, c in old.items():
            if sign * (dot(p, X) - a) > 0:
                assert new_classes[p] == c
        done += 1
    return "50/50 exact"


@criterion(6, "SNF/HNF oracle equivalence on 200 random matrices")
def test_criterion_6_snf():
    rng = random.Random(6)
    for _ in range(200):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        A = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        M = IntMatrix.from_rows(A)
        snf = smith_normal_form(M)
        assert snf.U @ M @ snf.V == snf.D
        assert snf.D.is_diagonal()
        assert abs(oracles.det_leibniz(snf.U.to_rows())) == 1
        assert abs(oracles.det_leibniz(snf.V.to_rows())) == 1
        nonzero = [d for d in snf.D.diagonal() if d]
        assert all(d > 0 for d in nonzero)
        assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
        assert snf.invariant_factors == oracles.invariant_factors(A)
        if r == c:
            det = oracles.det_leibniz(A)
            if det:
                prod = 1
                for d in snf.D.diagonal():
                    prod *= d
                assert prod == abs(det)
        # HNF columns generate the same lattice as the columns of A
        h_cols = [col for col in hermite_normal_form(M).columns() if any(col)]
        assert all(oracles.in_lattice(h_cols, col) for col in M.columns())
        assert len(h_cols) == len(nonzero)
        S = sympy_hnf(oracles.sympy.Matrix(A))
        s_cols = [tuple(int(x) for x in S.col(j)) for j in range(S.shape[1]) if any(S.col(j))]
        assert all(oracles.in_lattice(s_cols, col) for col in h_cols)
    return "200/200"


@criterion(7, "GL(n,Z) equivariance under 20 random transforms")
def test_criterion_7_equivariance():
    rng = random.Random(7)
    corpus = [load(name) for name in CORPUS]
    for _ in range(20):
        P = rng.choice(corpus)
        A = _random_unimodular(P.dim, rng)
        Q = apply_unimodular(P, A)
        before, after = classify(P), classify(Q)
        assert before.valid == after.valid
        image = {tuple(dot(row, v.point) for row in A): c
                 for v, c in zip(before.vertices, before.classes)}
        assert {v.point: c for v, c in zip(after.vertices, after.classes)} == image
        g, h = synthesize(P).group, synthesize(Q).group
        assert g.torus_rank == h.torus_rank
        assert g.finite_invariant_factors == h.finite_invariant_factors
    return "20/20"


@criterion(8, "links are simplices at simple vertices, squares on the octahedron")
def test_criterion_8_links():
    checked = 0
    for name in CORPUS:
        P = load(name)
        for v, c in zip(P.vertices, classify(P).classes):
            L = link_polytope(P, v, find_reeb_covector(P, v)).polytope
            assert L.dim == P.dim - 1
            if c.kind is not VertexKind.SINGULAR:
                assert len(L.vertices) == P.dim
                assert len(L) == (P.dim if P.dim > 1 else 0)
                checked += 1
    P = load("octahedron")
    for v in P.vertices:
        L = link_polytope(P, v, find_reeb_covector(P, v)).polytope
        assert L.dim == 2 and len(L.vertices) == 4 and len(L) == 4
    return f"{checked} simple vertices, 6 octahedron vertices"


@criterion(9, "round-trip on the corpus and byte-identical CLI output")
def test_criterion_9_round_trip():
    for name in CORPUS:
        P = load(name)
        text = formats.format_poly(P, name)
        assert formats.parse(text).polytope() == P
        assert formats.format_poly(formats.parse(text).polytope(), name) == text
        assert formats.parse(formats.to_json(P)).polytope() == P
        assert formats.parse(formats.to_json(classify(P))).polytope() == P
    for name in CORPUS:
        for command in ("classify", "delzant", "desingularize"):
            args = [sys.executable, "-m", "toricpoly", command, str(DATA / f"{name}.poly"),
                    "--format", "json"]
            outs = [subprocess.run(args, capture_output=True, check=True).stdout for _ in range(2)]
            assert outs[0] == outs[1]
            json.loads(outs[0])
    return f"{len(CORPUS)} polytopes"
