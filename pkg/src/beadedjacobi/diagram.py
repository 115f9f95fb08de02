"""Beaded trivalent diagrams, canonical keys, automorphisms and the
canonical vertex orientation of numbered graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Mapping, NamedTuple, Sequence

from . import _canon
from .errors import ContextMismatchError, ValidationError
from .laurent import TRIVIAL_CONTEXT, Bead, DeltaContext, LaurentPoly, conjugate_bead

SOURCE, TARGET = 0, 1


@dataclass(frozen=True, order=True)
class Leg:
    """Decoration of a univalent vertex: ``theta^shift`` applied to curve
    ``curve`` of handlebody ``handlebody``.  Undecorated legs (hair) leave
    both indices as ``None``."""

    handlebody: int | None = None
    curve: int | None = None
    shift: int = 0

    @property
    def decorated(self) -> bool:
        return self.handlebody is not None

    def kind(self) -> tuple:
        if not self.decorated:
            return (1,)
        return (1, self.handlebody, self.curve, self.shift)

    def shifted(self, m: int) -> "Leg":
        return Leg(self.handlebody, self.curve, self.shift + m)

    def __str__(self):
        if not self.decorated:
            return "hair"
        return f"z({self.handlebody},{self.curve},{self.shift})"


class Edge(NamedTuple):
    source: int
    target: int
    bead: Bead


class Vertex(NamedTuple):
    """``halfedges`` are ``(edge_index, end)`` pairs in cyclic order."""

    halfedges: tuple
    leg: Leg | None = None

    @property
    def is_leg(self) -> bool:
        return self.leg is not None


def _norm_half(h):
    e, end = h
    if end in ("s", SOURCE):
        return (int(e), SOURCE)
    if end in ("t", TARGET):
        return (int(e), TARGET)
    raise ValueError(f"bad half-edge end {end!r}")


class BeadedDiagram:
    """Trivalent graph with vertex orientations, oriented beaded edges and
    optional decorated legs.  Immutable; all editing methods return copies."""

    __slots__ = ("vertices", "edges", "context", "_key")

    def __init__(self, vertices: Sequence[Vertex], edges: Sequence[Edge],
                 context: DeltaContext = TRIVIAL_CONTEXT, check: bool = True):
        self.vertices = tuple(Vertex(tuple(_norm_half(h) for h in v.halfedges), v.leg) for v in vertices)
        self.edges = tuple(Edge(int(e.source), int(e.target), e.bead) for e in edges)
        self.context = context
        self._key = None
        if check:
            self.validate()

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable, context: DeltaContext = TRIVIAL_CONTEXT,
                   orientations: Mapping | None = None, legs: Mapping | None = None) -> "BeadedDiagram":
        """Build from ``(u, w)`` or ``(u, w, bead)`` entries over arbitrary
        sortable vertex labels.  Beads may be ``Bead`` objects, Laurent
        polynomials or strings (read as the bead's value, i.e. multiplied by
        delta).  Without an explicit orientation a vertex lists its
        half-edges in edge order, source end first."""
        raw = []
        for item in edges:
            if len(item) == 2:
                u, w = item
                b = context.one()
            else:
                u, w, b = item
                if not isinstance(b, Bead):
                    b = context.from_laurent(b)
            if b.context != context:
                raise ContextMismatchError("bead context differs from diagram context")
            raw.append((u, w, b))
        labels = sorted({x for u, w, _ in raw for x in (u, w)} | set(legs or {}) | set(orientations or {}))
        index = {lab: i for i, lab in enumerate(labels)}
        incident: dict[int, list] = {i: [] for i in range(len(labels))}
        for e, (u, w, _) in enumerate(raw):
            incident[index[u]].append((e, SOURCE))
            incident[index[w]].append((e, TARGET))
        verts = []
        for lab in labels:
            i = index[lab]
            hs = incident[i]
            if orientations and lab in orientations:
                hs = [_norm_half(h) for h in orientations[lab]]
            leg = (legs or {}).get(lab)
            verts.append(Vertex(tuple(hs), leg))
        es = [Edge(index[u], index[w], b) for u, w, b in raw]
        return cls(verts, es, context)

    def validate(self):
        seen = {}
        for v, vert in enumerate(self.vertices):
            if vert.is_leg:
                if len(vert.halfedges) != 1:
                    raise ValidationError(f"leg vertex {v} must have exactly one half-edge")
            elif len(vert.halfedges) != 3:
                raise ValidationError(f"vertex {v} has valence {len(vert.halfedges)}, expected 3")
            for h in vert.halfedges:
                if h in seen:
                    raise ValidationError(f"half-edge {h} appears at two vertices")
                seen[h] = v
        for e, edge in enumerate(self.edges):
            if edge.bead.context != self.context:
                raise ContextMismatchError(f"edge {e} bead context differs from diagram context")
            for end, v in ((SOURCE, edge.source), (TARGET, edge.target)):
                if seen.get((e, end)) != v:
                    raise ValidationError(f"half-edge ({e}, {'st'[end]}) is not attached to vertex {v}")
        if len(seen) != 2 * len(self.edges):
            raise ValidationError("dangling half-edge")

    # -- inspection ---------------------------------------------------------

    @property
    def trivalent(self) -> list[int]:
        return [v for v, x in enumerate(self.vertices) if not x.is_leg]

    @property
    def legs(self) -> list[int]:
        return [v for v, x in enumerate(self.vertices) if x.is_leg]

    @property
    def loop_degree(self) -> int:
        """Half of (trivalent minus univalent vertices); for closed diagrams
        this is half the number of vertices."""
        t = len(self.trivalent)
        u = len(self.legs)
        return (t - u) // 2

    def half_vertex(self, h) -> int:
        e, end = h
        return self.edges[e].source if end == SOURCE else self.edges[e].target

    def is_loop(self, e: int) -> bool:
        return self.edges[e].source == self.edges[e].target

    def loop_edges(self) -> list[int]:
        return [e for e in range(len(self.edges)) if self.is_loop(e)]

    def components(self) -> list[list[int]]:
        return _canon.components(len(self.vertices), [(x.source, x.target) for x in self.edges])

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def has_monomial_beads(self) -> bool:
        return all(len(e.bead.numerator.terms()) == 1 for e in self.edges)

    # -- editing --------------------------------------------------------------

    def with_bead(self, e: int, bead) -> "BeadedDiagram":
        if not isinstance(bead, Bead):
            bead = self.context.bead(bead)
        es = list(self.edges)
        es[e] = es[e]._replace(bead=bead)
        return BeadedDiagram(self.vertices, es, self.context, check=False)

    def with_context(self, context: DeltaContext, bead_map=None) -> "BeadedDiagram":
        es = [Edge(x.source, x.target, bead_map(x.bead) if bead_map else Bead(x.bead.numerator, context))
              for x in self.edges]
        return BeadedDiagram(self.vertices, es, context, check=False)

    def reverse_edge(self, e: int) -> "BeadedDiagram":
        """Reverse edge ``e`` and conjugate its bead (an equivalent presentation)."""
        swap = {(e, SOURCE): (e, TARGET), (e, TARGET): (e, SOURCE)}
        verts = [Vertex(tuple(swap.get(h, h) for h in v.halfedges), v.leg) for v in self.vertices]
        es = list(self.edges)
        x = es[e]
        es[e] = Edge(x.target, x.source, conjugate_bead(x.bead))
        return BeadedDiagram(verts, es, self.context, check=False)

    def flip_vertex(self, v: int) -> "BeadedDiagram":
        """Swap two half-edges in the cyclic order at ``v`` (the class changes sign)."""
        verts = list(self.vertices)
        a, b, c = verts[v].halfedges
        verts[v] = Vertex((b, a, c), verts[v].leg)
        return BeadedDiagram(verts, self.edges, self.context, check=False)

    def rotate_vertex(self, v: int, k: int = 1) -> "BeadedDiagram":
        verts = list(self.vertices)
        hs = verts[v].halfedges
        k %= len(hs)
        verts[v] = Vertex(hs[k:] + hs[:k], verts[v].leg)
        return BeadedDiagram(verts, self.edges, self.context, check=False)

    def holonomy(self, v: int, power: int = 1) -> "BeadedDiagram":
        """Generalized holonomy move at ``v``: incoming beads times ``t^power``,
        outgoing beads times ``t^-power`` (loops are unchanged)."""
        es = []
        for x in self.edges:
            k = (power if x.target == v else 0) - (power if x.source == v else 0)
            es.append(x if k == 0 else x._replace(bead=x.bead.times(LaurentPoly.monomial(k))))
        return BeadedDiagram(self.vertices, es, self.context, check=False)

    def relabel(self, vertex_perm: Sequence[int], edge_perm: Sequence[int]) -> "BeadedDiagram":
        """Renumber: old vertex ``v`` becomes ``vertex_perm[v]``, old edge
        ``e`` becomes ``edge_perm[e]``."""
        nv, ne = len(self.vertices), len(self.edges)
        verts = [None] * nv
        for v, x in enumerate(self.vertices):
            verts[vertex_perm[v]] = Vertex(tuple((edge_perm[e], end) for e, end in x.halfedges), x.leg)
        es = [None] * ne
        for e, x in enumerate(self.edges):
            es[edge_perm[e]] = Edge(vertex_perm[x.source], vertex_perm[x.target], x.bead)
        return BeadedDiagram(verts, es, self.context, check=False)

    def disjoint_union(self, other: "BeadedDiagram") -> "BeadedDiagram":
        if other.context != self.context:
            raise ContextMismatchError("disjoint union of diagrams over different denominators")
        nv, ne = len(self.vertices), len(self.edges)
        verts = list(self.vertices) + [
            Vertex(tuple((e + ne, end) for e, end in x.halfedges), x.leg) for x in other.vertices]
        es = list(self.edges) + [Edge(x.source + nv, x.target + nv, x.bead) for x in other.edges]
        return BeadedDiagram(verts, es, self.context, check=False)

    def subdiagram(self, vertex_set: Iterable[int]) -> "BeadedDiagram":
        """The full subdiagram on a union of components."""
        keep = sorted(vertex_set)
        vmap = {v: i for i, v in enumerate(keep)}
        emap = {}
        for e, x in enumerate(self.edges):
            if x.source in vmap:
                if x.target not in vmap:
                    raise ValidationError("vertex set is not a union of components")
                emap[e] = len(emap)
        verts = [Vertex(tuple((emap[e], end) for e, end in self.vertices[v].halfedges), self.vertices[v].leg)
                 for v in keep]
        es = [Edge(vmap[x.source], vmap[x.target], x.bead) for e, x in enumerate(self.edges) if e in emap]
        return BeadedDiagram(verts, es, self.context, check=False)

    # -- compact form -------------------------------------------------------------

    def compact(self):
        """``(kinds, rots, edges)`` in the integer form used by the labeling search."""
        kinds = tuple((0,) if not v.is_leg else v.leg.kind() for v in self.vertices)
        rots = tuple(tuple(2 * e + end for e, end in v.halfedges) for v in self.vertices)
        return kinds, rots

    def __eq__(self, other):
        if not isinstance(other, BeadedDiagram):
            return NotImplemented
        return (self.vertices == other.vertices and self.context == other.context
                and [(x.source, x.target, x.bead.numerator) for x in self.edges]
                == [(x.source, x.target, x.bead.numerator) for x in other.edges])

    def __hash__(self):
        return hash((self.vertices, tuple((x.source, x.target, x.bead.numerator) for x in self.edges)))

    def __repr__(self):
        from .dsl import format_diagram
        return f"BeadedDiagram(<<\n{format_diagram(self)}>>)"


# -- standard diagrams -----------------------------------------------------------

def theta(context: DeltaContext = TRIVIAL_CONTEXT, beads=(1, 1, 1)) -> BeadedDiagram:
    """The planar theta graph: three edges from v0 to v1, both vertices
    oriented counterclockwise in the plane (edge 0 below, edge 2 above)."""
    return BeadedDiagram.from_edges(
        [(0, 1, beads[0]), (0, 1, beads[1]), (0, 1, beads[2])], context,
        orientations={0: [(0, "s"), (1, "s"), (2, "s")], 1: [(2, "t"), (1, "t"), (0, "t")]})


def dumbbell(context: DeltaContext = TRIVIAL_CONTEXT, beads=(1, 1, 1)) -> BeadedDiagram:
    """Two loops joined by an edge: loop 0 at v0, stick 1 from v0 to v1, loop 2 at v1."""
    return BeadedDiagram.from_edges([(0, 0, beads[0]), (0, 1, beads[1]), (1, 1, beads[2])], context)


def tadpole_on(d: BeadedDiagram, e: int, loop_bead=1, stick_bead=1) -> BeadedDiagram:
    """Insert a tadpole on edge ``e``: a new vertex splits ``e`` and carries a
    stick to a new vertex with a loop.  The stick bead multiplies nothing
    else; the second half of ``e`` gets bead 1."""
    ctx = d.context
    lb = loop_bead if isinstance(loop_bead, Bead) else ctx.from_laurent(loop_bead)
    sb = stick_bead if isinstance(stick_bead, Bead) else ctx.from_laurent(stick_bead)
    nv, ne = len(d.vertices), len(d.edges)
    split, head = nv, nv + 1
    x = d.edges[e]
    verts = list(d.vertices)
    # edge e now ends at the split vertex; edge ne continues to the old target
    verts[x.target] = Vertex(tuple((ne, TARGET) if h == (e, TARGET) else h
                                   for h in verts[x.target].halfedges), verts[x.target].leg)
    es = list(d.edges)
    es[e] = Edge(x.source, split, x.bead)
    es.append(Edge(split, x.target, ctx.one()))
    es.append(Edge(split, head, sb))
    es.append(Edge(head, head, lb))
    verts.append(Vertex(((e, TARGET), (ne, SOURCE), (ne + 1, SOURCE))))
    verts.append(Vertex(((ne + 1, TARGET), (ne + 2, SOURCE), (ne + 2, TARGET))))
    return BeadedDiagram(verts, es, ctx)


def tripod(legs: Sequence[Leg], context: DeltaContext = TRIVIAL_CONTEXT) -> BeadedDiagram:
    """One trivalent vertex joined to three legs; the vertex orientation
    follows the order of ``legs``."""
    if len(legs) != 3:
        raise ValidationError("a tripod has exactly three legs")
    return BeadedDiagram.from_edges([(0, i + 1) for i in range(3)], context,
                                    legs={i + 1: leg for i, leg in enumerate(legs)})


# -- canonical keys ----------------------------------------------------------------

def canonical_key(d: BeadedDiagram) -> bytes:
    """Isomorphism-invariant key preserving orientations, directions, beads
    and leg decorations.  Components are encoded separately and sorted."""
    if d._key is None:
        kinds, rots = d.compact()
        codes = []
        for comp in d.components():
            sub = d.subdiagram(comp)
            k, r = sub.compact()
            es = [(x.source, x.target, x.bead.numerator.key()) for x in sub.edges]
            codes.append(_canon.iso_code(k, r, es))
        codes.sort()
        payload = (d.context.delta.key(), tuple(codes))
        d._key = repr(payload).encode()
    return d._key


# -- automorphisms -------------------------------------------------------------------

def automorphisms(d: BeadedDiagram, fix_vertices: bool = False):
    """Yield automorphisms as ``(vertex_map, edge_map, flips, sign)``.

    An automorphism permutes vertices (legs to equal legs), permutes edges
    compatibly, and may reverse an edge when the image bead is the
    conjugate.  ``sign`` is the product over trivalent vertices of the
    parity of the induced map on cyclic orders."""
    nv, ne = len(d.vertices), len(d.edges)
    kinds, _ = d.compact()
    mult = {}
    for x in d.edges:
        key = (min(x.source, x.target), max(x.source, x.target))
        mult[key] = mult.get(key, 0) + 1
    adj = [[] for _ in range(nv)]
    for (a, b), m in mult.items():
        adj[a].append((b, m))
        if a != b:
            adj[b].append((a, m))
    colors = _canon.refine(_canon._initial_colors(kinds), adj)

    def extend(sigma, v):
        if v == nv:
            yield list(sigma)
            return
        cands = [v] if fix_vertices else [u for u in range(nv) if colors[u] == colors[v] and u not in sigma]
        for u in cands:
            ok = True
            for w in range(v):
                a, b = (v, w) if v <= w else (w, v)
                c, e = (u, sigma[w]) if u <= sigma[w] else (sigma[w], u)
                if mult.get((a, b), 0) != mult.get((c, e), 0):
                    ok = False
                    break
            if ok and mult.get((v, v), 0) == mult.get((u, u), 0):
                sigma.append(u)
                yield from extend(sigma, v + 1)
                sigma.pop()

    groups: dict[tuple, list[int]] = {}
    for e, x in enumerate(d.edges):
        groups.setdefault((min(x.source, x.target), max(x.source, x.target)), []).append(e)

    for sigma in extend([], 0):
        per_group = []
        for (a, b), es in groups.items():
            img = groups[(min(sigma[a], sigma[b]), max(sigma[a], sigma[b]))]
            opts = []
            for perm in permutations(img):
                choices = []
                for e, f in zip(es, perm):
                    x, y = d.edges[e], d.edges[f]
                    fl = []
                    if sigma[x.source] == y.source and sigma[x.target] == y.target and x.bead == y.bead:
                        fl.append(False)
                    if sigma[x.source] == y.target and sigma[x.target] == y.source \
                            and conjugate_bead(x.bead) == y.bead:
                        fl.append(True)
                    if not fl:
                        break
                    choices.append([(e, f, flip) for flip in fl])
                else:
                    opts.extend(product(*choices))
            if not opts:
                break
            per_group.append(opts)
        else:
            for combo in product(*per_group):
                emap = [0] * ne
                flips = [False] * ne
                for part in combo:
                    for e, f, flip in part:
                        emap[e] = f
                        flips[e] = flip
                sign = 1
                for v, vert in enumerate(d.vertices):
                    if vert.is_leg:
                        continue
                    image = []
                    for e, end in vert.halfedges:
                        image.append((emap[e], end ^ 1 if flips[e] else end))
                    target = d.vertices[sigma[v]].halfedges
                    perm = tuple(target.index(h) for h in image)
                    if perm not in _canon.EVEN3:
                        sign = -sign
                yield sigma, emap, flips, sign


def automorphism_count(d: BeadedDiagram, oriented: bool = False, fix_vertices: bool = False) -> int:
    """Order of the automorphism group.

    By default orientations are ignored: this is the stabilizer used in
    the labeled orbit count ``2^(3n) (3n)! (2n)! / #Aut``.  ``oriented``
    keeps only automorphisms of total sign +1; ``fix_vertices`` restricts
    to automorphisms fixing every vertex (the colored variant)."""
    return sum(1 for *_, sign in automorphisms(d, fix_vertices) if not oriented or sign == 1)


def has_odd_automorphism(d: BeadedDiagram) -> bool:
    return any(sign == -1 for *_, sign in automorphisms(d))


# -- numbered graphs ------------------------------------------------------------------

@dataclass(frozen=True)
class NumberedGraph:
    """``3n`` ordered pairs over vertices ``1..2n``.  Half-edge ``(r, 1)``
    is the source end of edge ``r`` (1-based) and ``(r, 2)`` its target end."""

    n: int
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if len(self.edges) != 3 * self.n:
            raise ValidationError(f"expected {3 * self.n} edges, got {len(self.edges)}")
        val = [0] * (2 * self.n + 1)
        for a, b in self.edges:
            if not (1 <= a <= 2 * self.n and 1 <= b <= 2 * self.n):
                raise ValidationError(f"vertex out of range in edge ({a}, {b})")
            val[a] += 1
            val[b] += 1
        if any(x != 3 for x in val[1:]):
            raise ValidationError("graph is not trivalent")

    @property
    def vertices(self) -> range:
        return range(1, 2 * self.n + 1)

    def has_loops(self) -> bool:
        return any(a == b for a, b in self.edges)

    def halfedges_at(self, v: int) -> list[tuple[int, int]]:
        out = []
        for r, (a, b) in enumerate(self.edges, 1):
            if a == v:
                out.append((r, 1))
            if b == v:
                out.append((r, 2))
        return out

    def to_diagram(self, context: DeltaContext = TRIVIAL_CONTEXT, orientation=None) -> BeadedDiagram:
        """Beads 1; orientation defaults to the canonical one."""
        if orientation is None:
            orientation, _ = canonical_vertex_orientation(self)
        ors = {v: [(r - 1, end - 1) for r, end in orientation[v]] for v in self.vertices}
        return BeadedDiagram.from_edges(list(self.edges), context, orientations=ors)

    def dsl(self) -> str:
        return "; ".join(f"e{r}: v{a} -> v{b}" for r, (a, b) in enumerate(self.edges, 1))


def _perm_sign(seq: Sequence[int]) -> int:
    seq = list(seq)
    sign = 1
    seen = [False] * len(seq)
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = seq[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def orientation_sign(g: NumberedGraph, orientation: Mapping[int, Sequence]) -> int:
    """Sign of the permutation taking the half-edge list
    ``(1,1), (1,2), (2,1), ..., (3n,2)`` to the concatenation of the cyclic
    orders at ``v1, v2, ...``."""
    index = {(r, end): 2 * (r - 1) + (end - 1) for r in range(1, len(g.edges) + 1) for end in (1, 2)}
    seq = []
    for v in g.vertices:
        hs = [tuple(h) for h in orientation[v]]
        if sorted(hs) != sorted(g.halfedges_at(v)):
            raise ValidationError(f"orientation at v{v} does not list its half-edges")
        seq.extend(index[h] for h in hs)
    return _perm_sign(seq)


def canonical_vertex_orientation(g: NumberedGraph) -> tuple[dict[int, tuple], int]:
    """An orientation whose defining permutation is even, and that sign (+1)."""
    orientation = {v: tuple(g.halfedges_at(v)) for v in g.vertices}
    if orientation_sign(g, orientation) < 0:
        a, b, c = orientation[1]
        orientation[1] = (b, a, c)
    sign = orientation_sign(g, orientation)
    return orientation, sign
