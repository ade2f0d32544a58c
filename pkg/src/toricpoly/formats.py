"""The ``.poly`` text format and JSON / text reports.

``.poly`` grammar (one record per line)::

    # comment (also allowed after a record)
    name <free text>            optional
    dim <n>                     required, before any facet
    facet <a1> ... <an> ; <c> [; <label>]

``a_i`` are integers, ``c`` is an integer or ``p/q``, ``label`` is a positive
integer (default 1).  Each facet record is the halfspace
``a1*x1 + ... + an*xn <= c``.  A non-primitive normal is divided by its
content (offset rescaled) and a :class:`NonPrimitiveNormalWarning` is issued.

JSON reports are emitted with sorted keys, rationals as ``"p/q"`` strings and
vectors as arrays.  Any report that carries a ``"polytope"`` object can be fed
back to :func:`parse`.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import singledispatch

from .classify import ClassificationReport, VertexKind
from .cuts import Desingularization, LinkPolytope
from .delzant import SynthesisReport
from .errors import DimensionMismatch, NonPrimitiveNormalWarning, PolySyntaxError
from .lattice import content
from .polytope import Halfspace, LabeledPolytope, canonicalize

FORMAT_VERSION = 1

_TOKEN = re.compile(r"[^\s;]+|;")
_INT = re.compile(r"[+-]?\d+$")
_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` exactly; raises ``ValueError`` otherwise."""
    text = text.strip()
    if not _RATIONAL.match(text):
        raise ValueError(f"not a rational number: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


@dataclass
class PolytopeDocument:
    dim: int
    halfspaces: list[Halfspace]
    name: str | None = None
    comments: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def polytope(self) -> LabeledPolytope:
        return canonicalize(self.halfspaces, self.dim)


def parse(text: str) -> PolytopeDocument:
    """Parse ``.poly`` text, or a JSON document containing a polytope."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    dim = None
    name = None
    comments: list[str] = []
    halfspaces: list[Halfspace] = []
    notes: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw
        hash_at = line.find("#")
        if hash_at >= 0:
            comments.append(line[hash_at + 1:].strip())
            line = line[:hash_at]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        keyword, col = tokens[0]
        if keyword == "dim":
            if dim is not None:
                raise PolySyntaxError("duplicate dim declaration", lineno, col)
            if len(tokens) != 2 or not _INT.match(tokens[1][0]) or int(tokens[1][0]) < 1:
                raise PolySyntaxError("expected 'dim <positive integer>'", lineno, col)
            dim = int(tokens[1][0])
        elif keyword == "name":
            name = line[col - 1 + len("name"):].strip() or None
        elif keyword == "facet":
            if dim is None:
                raise PolySyntaxError("facet record before dim declaration", lineno, col)
            h, note = _parse_facet(tokens[1:], dim, lineno, len(line) + 1)
            if note:
                notes.append(note)
                warnings.warn(note, NonPrimitiveNormalWarning, stacklevel=2)
            halfspaces.append(h)
        else:
            raise PolySyntaxError(f"unknown record {keyword!r}", lineno, col)
    if dim is None:
        raise PolySyntaxError("missing dim declaration")
    if not halfspaces:
        raise PolySyntaxError("no facet records")
    return PolytopeDocument(dim, halfspaces, name, comments, notes)


def _parse_facet(tokens, dim, lineno, eol):
    groups: list[list] = [[]]
    for tok, col in tokens:
        if tok == ";":
            groups.append([])
        else:
            groups[-1].append((tok, col))
    if len(groups) not in (2, 3):
        raise PolySyntaxError("expected 'facet <normal> ; <offset> [; <label>]'", lineno, eol)

    normal_toks = groups[0]
    for tok, col in normal_toks:
        if not _INT.match(tok):
            raise PolySyntaxError(f"normal entry {tok!r} is not an integer", lineno, col)
    if len(normal_toks) != dim:
        col = normal_toks[0][1] if normal_toks else eol
        raise DimensionMismatch(
            f"facet normal has {len(normal_toks)} entries, expected {dim}", lineno, col
        )
    normal = tuple(int(t) for t, _ in normal_toks)
    if not any(normal):
        raise PolySyntaxError("facet normal is zero", lineno, normal_toks[0][1])

    def single(group, what):
        if len(group) != 1:
            col = group[1][1] if len(group) > 1 else eol
            raise PolySyntaxError(f"expected a single {what}", lineno, col)
        return group[0]

    tok, col = single(groups[1], "offset")
    try:
        offset = parse_rational(tok)
    except ValueError:
        raise PolySyntaxError(f"offset {tok!r} is not a rational number", lineno, col) from None
    label = 1
    if len(groups) == 3:
        tok, col = single(groups[2], "label")
        if not _INT.match(tok) or int(tok) < 1:
            raise PolySyntaxError(f"label {tok!r} is not a positive integer", lineno, col)
        label = int(tok)

    note = None
    g = content(normal)
    if g > 1:
        note = (
            f"line {lineno}: normal {list(normal)} is not primitive; "
            f"divided by {g} (offset {offset} -> {offset / g})"
        )
    return Halfspace(normal, offset, label).primitive(), note


def _parse_json(text: str) -> PolytopeDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolySyntaxError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    obj = data.get("polytope", data) if isinstance(data, dict) else None
    try:
        dim = int(obj["dim"])
        hs = [
            Halfspace(tuple(f["normal"]), parse_rational(str(f["offset"])), int(f["label"]))
            for f in obj["facets"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise PolySyntaxError(f"JSON document does not describe a polytope ({exc})") from None
    if any(h.dim != dim for h in hs):
        raise DimensionMismatch("facet normal length differs from dim")
    if not hs:
        raise PolySyntaxError("no facets")
    return PolytopeDocument(dim, [h.primitive() for h in hs], obj.get("name"))


def format_poly(P: LabeledPolytope, name: str | None = None) -> str:
    """``.poly`` text for ``P``; parsing it back gives an equal polytope."""
    lines = []
    if name:
        lines.append(f"name {name}")
    lines.append(f"dim {P.dim}")
    for h in P.halfspaces:
        lines.append(f"facet {' '.join(str(a) for a in h.normal)} ; {h.offset} ; {h.label}")
    return "\n".join(lines) + "\n"


# -- JSON ------------------------------------------------------------------

def _q(x) -> str:
    return str(Fraction(x))


def _qvec(v) -> list[str]:
    return [_q(x) for x in v]


def polytope_data(P: LabeledPolytope) -> dict:
    return {
        "dim": P.dim,
        "facets": [
            {"normal": list(h.normal), "offset": _q(h.offset), "label": h.label}
            for h in P.halfspaces
        ],
    }


def _vertex_rows(report: ClassificationReport) -> list[dict]:
    rows = []
    for i, (v, c) in enumerate(zip(report.vertices, report.classes)):
        rows.append({
            "index": i,
            "point": _qvec(v.point),
            "incident_facets": sorted(v.incident_facets),
            "edge_directions": [list(d) for d in v.edge_directions],
            "class": c.kind.value,
            "invariant_factors": list(c.invariant_factors),
            "group_order": c.group_order,
        })
    return rows


def _summary(report: ClassificationReport) -> dict:
    return {k.value: report.count(k) for k in VertexKind}


@singledispatch
def report_data(obj) -> dict:
    raise TypeError(f"cannot render {type(obj).__name__}")


@report_data.register
def _(P: LabeledPolytope) -> dict:
    return {"polytope": polytope_data(P), "vertex_count": len(P.vertices)}


@report_data.register
def _(report: ClassificationReport) -> dict:
    return {
        "polytope": polytope_data(report.polytope),
        "valid": report.valid,
        "vertices": _vertex_rows(report),
        "summary": _summary(report),
    }


@report_data.register
def _(report: SynthesisReport) -> dict:
    g = report.group
    return {
        "polytope": polytope_data(report.classification.polytope),
        "weight_matrix": report.weights.to_rows(),
        "ambient_dim": report.ambient_dim,
        "facets_minus_dim": report.facets_minus_dim,
        "group": {
            "torus_rank": g.torus_rank,
            "finite_invariant_factors": list(g.finite_invariant_factors),
            "kernel_basis": [list(k) for k in g.kernel_basis],
            "level": _qvec(g.level) if g.level is not None else None,
        },
        "facets": [
            {
                "index": f.index,
                "label": f.label,
                "weight": list(f.weight),
                "offset": _q(f.offset),
                "structure_group_order": f.structure_group_order,
            }
            for f in report.facets
        ],
        "classification": {
            "valid": report.classification.valid,
            "vertices": _vertex_rows(report.classification),
            "summary": _summary(report.classification),
        },
    }


@report_data.register
def _(d: Desingularization) -> dict:
    return {
        "polytope": polytope_data(d.polytope),
        "epsilon": _q(d.epsilon),
        "excised": [
            {"point": _qvec(v.point), "reeb": list(Y)} for v, Y in zip(d.excised, d.reeb)
        ],
        "cut_facets": list(d.cut_facets),
        "vertex_count": len(d.polytope.vertices),
    }


@report_data.register
def _(link: LinkPolytope) -> dict:
    return {
        "apex": _qvec(link.apex),
        "reeb": list(link.Y),
        "height": _q(link.height),
        "slice_basis": [list(b) for b in link.basis],
        "slice_origin": _qvec(link.origin),
        "polytope": polytope_data(link.polytope),
        "vertices": [
            {"point": _qvec(w.point), "ambient": _qvec(link.to_ambient(w.point))}
            for w in link.polytope.vertices
        ],
    }


def to_json(obj, command: str | None = None, **extra) -> str:
    doc = {"format-version": FORMAT_VERSION}
    if command:
        doc["command"] = command
    doc.update(report_data(obj))
    doc.update(extra)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# -- text ------------------------------------------------------------------

def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _table(header, rows) -> list[str]:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(x) for x in col) for col in zip(header, *rows)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return [fmt.format(*header).rstrip()] + [fmt.format(*r).rstrip() for r in rows]


def _facet_table(P: LabeledPolytope) -> list[str]:
    return _table(
        ["#", "normal", "offset", "label"],
        [[i, _fmt_vec(h.normal), h.offset, h.label] for i, h in enumerate(P.halfspaces)],
    )


def _vertex_table(report: ClassificationReport) -> list[str]:
    return _table(
        ["#", "point", "facets", "class"],
        [
            [i, _fmt_vec(v.point), len(v.incident_facets), c]
            for i, (v, c) in enumerate(zip(report.vertices, report.classes))
        ],
    )


@singledispatch
def report_text(obj) -> list[str]:
    raise TypeError(f"cannot render {type(obj).__name__}")


@report_text.register
def _(P: LabeledPolytope) -> list[str]:
    return [f"polytope: dim {P.dim}, {len(P)} facets, {len(P.vertices)} vertices"] + _facet_table(P)


@report_text.register
def _(report: ClassificationReport) -> list[str]:
    P = report.polytope
    s = _summary(report)
    return (
        [f"polytope: dim {P.dim}, {len(P)} facets, {len(report.vertices)} vertices",
         f"simple away from vertices: {'yes' if report.valid else 'no'}",
         "facets:"]
        + ["  " + x for x in _facet_table(P)]
        + ["vertices:"]
        + ["  " + x for x in _vertex_table(report)]
        + [f"summary: smooth {s['smooth']}, orbifold {s['orbifold']}, singular {s['singular']}"]
    )


@report_text.register
def _(report: SynthesisReport) -> list[str]:
    g = report.group
    lines = [
        f"weight matrix ({report.weights.rows} x {report.weights.cols}):",
        *("  " + r for r in str(report.weights).splitlines()),
        f"ambient C^{report.ambient_dim}; facets minus dim = {report.facets_minus_dim}",
        f"reduction group: torus rank {g.torus_rank}, "
        f"finite part {list(g.finite_invariant_factors) or 'trivial'}",
        "kernel basis:",
        *(f"  {_fmt_vec(k)}" for k in g.kernel_basis),
    ]
    if g.level is not None:
        lines.append(f"level: {_fmt_vec(g.level)}")
    s = _summary(report.classification)
    lines.append(
        f"classification: smooth {s['smooth']}, orbifold {s['orbifold']}, singular {s['singular']}"
    )
    return lines


@report_text.register
def _(d: Desingularization) -> list[str]:
    P = d.polytope
    lines = [f"excised {len(d.excised)} singular vertices with epsilon {d.epsilon}"]
    lines += [f"  {_fmt_vec(v.point)}  reeb {_fmt_vec(Y)}" for v, Y in zip(d.excised, d.reeb)]
    lines.append(f"result: {len(P)} facets, {len(P.vertices)} vertices")
    lines += _facet_table(P)
    return lines


@report_text.register
def _(link: LinkPolytope) -> list[str]:
    Q = link.polytope
    lines = [
        f"link at {_fmt_vec(link.apex)}, reeb {_fmt_vec(link.Y)}, height {link.height}",
        f"slice basis: {', '.join(_fmt_vec(b) for b in link.basis) or '(none)'}",
        f"link polytope: dim {Q.dim}, {len(Q)} facets, {len(Q.vertices)} vertices",
    ]
    lines += _facet_table(Q) if Q.halfspaces else []
    lines += [f"  vertex {_fmt_vec(w.point)} -> {_fmt_vec(link.to_ambient(w.point))}"
              for w in Q.vertices]
    return lines


def to_text(obj) -> str:
    return "\n".join(report_text(obj)) + "\n"


def emit(obj, format: str = "json", command: str | None = None) -> str:
    if format == "json":
        return to_json(obj, command)
    if format == "text":
        return to_text(obj)
    raise ValueError(f"unknown format {format!r}")
