"""Line-oriented text format for beaded diagrams.

::

    # comments start with '#'; ';' separates statements on one line
    format: 1
    delta: t - 1 + t^-1          # optional, default 1
    vertices: v1, v2             # optional; if present every vertex must be listed
    e1: v1 -> v2 [t^-1 - 1 + t]  # bead is a Laurent polynomial (its value)
    e2: v1 -> v2 [t^2 / delta]   # ... or a numerator over delta
    e3: v1 -> v2                 # no bead means bead 1
    or v1 = (e1.s, e2.s, e3.s)
    leg v3 = z(1, 2, 0)          # decorated univalent vertex
    leg v4                       # undecorated leg (hair)
"""

from __future__ import annotations

import re

from .diagram import SOURCE, TARGET, BeadedDiagram, Edge, Leg, Vertex
from .errors import ParseError, ValidationError
from .laurent import TRIVIAL_CONTEXT, Bead, DeltaContext, LaurentPoly, validate_alexander

_EDGE = re.compile(r"e(\d+)\s*:\s*v(\d+)\s*->\s*v(\d+)\s*(?:\[(.*)\])?\s*$")
_OR = re.compile(r"or\s+v(\d+)\s*=\s*\((.*)\)\s*$")
_LEG = re.compile(r"leg\s+v(\d+)\s*(?:=\s*z\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\))?\s*$")
_HALF = re.compile(r"\s*e(\d+)\.([st])\s*$")


def _statements(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        col = 0
        for part in line.split(";"):
            stripped = part.strip()
            if stripped:
                yield lineno, col + (len(part) - len(part.lstrip())) + 1, stripped
            col += len(part) + 1


def parse_diagram(text: str, context: DeltaContext | None = None) -> BeadedDiagram:
    """Parse the diagram format.  ``context`` is used unless the text has a
    ``delta:`` line."""
    edges: dict[int, tuple] = {}
    orient: dict[int, tuple] = {}
    legs: dict[int, Leg] = {}
    declared: set[int] | None = None
    delta_text = None
    where: dict = {}
    for lineno, col, st in _statements(text):
        low = st.lower()
        if low.startswith("format"):
            m = re.fullmatch(r"format\s*:?\s*(\S+)", st)
            if not m or m.group(1) != "1":
                raise ParseError(f"unsupported format version {st!r}", lineno, col)
            continue
        if low.startswith("delta"):
            m = re.fullmatch(r"delta\s*:\s*(.+)", st)
            if not m:
                raise ParseError("expected 'delta: <polynomial>'", lineno, col)
            delta_text = (m.group(1), lineno, col)
            continue
        if low.startswith("vertices"):
            m = re.fullmatch(r"vertices\s*:\s*(.*)", st)
            names = [x.strip() for x in m.group(1).split(",") if x.strip()] if m else None
            if names is None or not all(re.fullmatch(r"v\d+", x) for x in names):
                raise ParseError("expected 'vertices: v1, v2, ...'", lineno, col)
            declared = {int(x[1:]) for x in names}
            continue
        m = _EDGE.match(st)
        if m:
            e, a, b = int(m.group(1)), int(m.group(2)), int(m.group(3))
            if e in edges:
                raise ValidationError(f"line {lineno}: edge e{e} declared twice")
            edges[e] = (a, b, m.group(4), lineno, col + m.start(4) if m.group(4) is not None else col)
            continue
        m = _OR.match(st)
        if m:
            v = int(m.group(1))
            if v in orient:
                raise ValidationError(f"line {lineno}: orientation of v{v} given twice")
            hs = []
            for part in m.group(2).split(","):
                hm = _HALF.match(part)
                if not hm:
                    raise ParseError(f"bad half-edge {part.strip()!r}, expected e<i>.s or e<i>.t", lineno, col)
                hs.append((int(hm.group(1)), SOURCE if hm.group(2) == "s" else TARGET))
            orient[v] = (tuple(hs), lineno)
            continue
        m = _LEG.match(st)
        if m:
            v = int(m.group(1))
            if m.group(2) is None:
                legs[v] = (Leg(), lineno)
            else:
                legs[v] = (Leg(int(m.group(2)), int(m.group(3)), int(m.group(4))), lineno)
            continue
        raise ParseError(f"unrecognized statement {st!r}", lineno, col)

    if delta_text is not None:
        try:
            context = validate_alexander(LaurentPoly.parse(delta_text[0]))
        except ParseError as exc:
            raise ParseError(f"in delta: {exc.message}", delta_text[1], delta_text[2]) from None
    context = context or TRIVIAL_CONTEXT

    eids = sorted(edges)
    eindex = {e: i for i, e in enumerate(eids)}
    used = {x for a, b, *_ in edges.values() for x in (a, b)}
    for v, (_, lineno) in list(orient.items()) + list(legs.items()):
        if v not in used:
            raise ValidationError(f"line {lineno}: vertex v{v} has no incident edge")
    if declared is not None:
        for e in eids:
            a, b, _, lineno, _ = edges[e]
            for v in (a, b):
                if v not in declared:
                    raise ValidationError(f"line {lineno}: edge e{e} references undeclared vertex v{v}")
    vids = sorted(used | (declared or set()))
    vindex = {v: i for i, v in enumerate(vids)}

    es = []
    for e in eids:
        a, b, btext, lineno, bcol = edges[e]
        es.append(Edge(vindex[a], vindex[b], _parse_bead(btext, context, lineno, bcol)))
    incident = {v: [] for v in vids}
    for e in eids:
        a, b = edges[e][:2]
        incident[a].append((eindex[e], SOURCE))
        incident[b].append((eindex[e], TARGET))
    verts = []
    for v in vids:
        hs = incident[v]
        leg = legs[v][0] if v in legs else None
        if v in orient:
            given, lineno = orient[v]
            for e, _end in given:
                if e not in eindex:
                    raise ValidationError(f"line {lineno}: orientation of v{v} names unknown edge e{e}")
            mapped = [(eindex[e], end) for e, end in given]
            if sorted(mapped) != sorted(hs):
                raise ValidationError(f"line {lineno}: orientation of v{v} does not list exactly its half-edges")
            hs = mapped
        expected = 1 if leg is not None else 3
        if len(hs) != expected:
            what = "leg" if leg is not None else "vertex"
            line = legs[v][1] if v in legs else min(edges[e][3] for e in eids if v in edges[e][:2]) if hs else None
            raise ValidationError(
                f"line {line}: {what} v{v} has valence {len(hs)}, expected {expected}")
        verts.append(Vertex(tuple(hs), leg))
    return BeadedDiagram(verts, es, context)


def _parse_bead(text, context: DeltaContext, lineno, col) -> Bead:
    if text is None:
        return context.one()
    body = text.strip()
    over = False
    m = re.fullmatch(r"(.*?)\s*/\s*delta", body)
    if m:
        body, over = m.group(1), True
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
    try:
        p = LaurentPoly.parse(body)
    except ParseError as exc:
        raise ParseError(f"in bead: {exc.message}", lineno, col + (exc.column or 1)) from None
    return Bead(p, context) if over else context.from_laurent(p)


def format_bead(b: Bead) -> str | None:
    ctx = b.context
    if b.is_one():
        return None
    if ctx.is_trivial():
        return str(b.numerator)
    return f"{b.numerator} / delta"


def format_diagram(d: BeadedDiagram, header: bool = True) -> str:
    """Serialize; vertices become ``v1..`` and edges ``e1..`` in stored order."""
    lines = []
    if header and not d.context.is_trivial():
        lines.append(f"delta: {d.context.delta}")
    for e, x in enumerate(d.edges, 1):
        b = format_bead(x.bead)
        lines.append(f"e{e}: v{x.source + 1} -> v{x.target + 1}" + (f" [{b}]" if b is not None else ""))
    for v, vert in enumerate(d.vertices, 1):
        if vert.is_leg:
            leg = vert.leg
            lines.append(f"leg v{v}" + (f" = z({leg.handlebody},{leg.curve},{leg.shift})" if leg.decorated else ""))
        else:
            hs = ", ".join(f"e{e + 1}.{'st'[end]}" for e, end in vert.halfedges)
            lines.append(f"or v{v} = ({hs})")
    return "\n".join(lines) + "\n"
