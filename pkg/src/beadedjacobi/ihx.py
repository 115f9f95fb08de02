"""IHX closure of the normal-form space inside a bounded exponent window.

Normal-form keys already quotient by multilinearity, conjugation,
holonomy and antisymmetry.  The closure adds every IHX relation whose
three terms stay inside the window and row-reduces exactly, so membership
questions are sound and complete relative to that window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .diagram import SOURCE, TARGET, BeadedDiagram, Edge, NumberedGraph, Vertex
from .enumeration import multigraph_shapes
from .errors import BudgetError, ValidationError
from .laurent import TRIVIAL_CONTEXT, Bead, DeltaContext, LaurentPoly
from .normalform import DiagramSum, reduce


class SparseEliminator:
    """Incremental exact row echelon form; each stored row has its largest
    key as pivot with coefficient 1."""

    def __init__(self):
        self.rows: dict = {}

    def residue(self, vec) -> dict:
        v = {k: Fraction(x) for k, x in vec.items() if x}
        while v:
            k = max(v)
            row = self.rows.get(k)
            if row is None:
                break
            c = v[k]
            for kk, x in row.items():
                y = v.get(kk, 0) - c * x
                if y:
                    v[kk] = y
                else:
                    v.pop(kk, None)
        return v

    def add(self, vec) -> bool:
        v = self.residue(vec)
        if not v:
            return False
        k = max(v)
        c = v[k]
        self.rows[k] = {kk: x / c for kk, x in v.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def ihx_terms(d: BeadedDiagram, e: int) -> list[BeadedDiagram]:
    """The three diagrams of the IHX relation on edge ``e`` (which must join
    distinct trivalent vertices).  With ``u = (e, x, y)`` at the source and
    ``w = (d, e, z)`` at the target, the terms keep ``d`` fixed and cycle
    ``x, y, z`` through the three remaining slots; their sum is zero."""
    edge = d.edges[e]
    u, w = edge.source, edge.target
    if u == w or d.vertices[u].is_leg or d.vertices[w].is_leg:
        raise ValidationError("IHX needs an edge between two distinct trivalent vertices")
    hu = list(d.vertices[u].halfedges)
    i = hu.index((e, SOURCE))
    hu = hu[i:] + hu[:i]
    hw = list(d.vertices[w].halfedges)
    j = hw.index((e, TARGET))
    hw = hw[j - 1:] + hw[:j - 1] if j else hw[2:] + hw[:2]
    x, y = hu[1], hu[2]
    dd, z = hw[0], hw[2]
    out = []
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        verts = list(d.vertices)
        verts[u] = Vertex(((e, SOURCE), a, b))
        verts[w] = Vertex((dd, (e, TARGET), c))
        ends = {}
        for v, vert in enumerate(verts):
            for h in vert.halfedges:
                ends[h] = v
        es = [Edge(ends[(f, SOURCE)], ends[(f, TARGET)], x_.bead) for f, x_ in enumerate(d.edges)]
        out.append(BeadedDiagram(verts, es, d.context))
    return out


def ihx_relation(d: BeadedDiagram, e: int) -> DiagramSum:
    t1, t2, t3 = ihx_terms(d, e)
    return reduce([(1, t1), (1, t2), (1, t3)])


@dataclass
class IHXQuotient:
    degree: int
    window: tuple
    context: DeltaContext
    generators: list
    rank: int
    relations: int
    eliminator: SparseEliminator = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.generators) - self.rank

    @property
    def basis(self) -> list:
        """Generators that are not pivots: a basis of the windowed quotient."""
        return [k for k in self.generators if k not in self.eliminator.rows]

    def residue(self, x) -> dict:
        s = reduce(x, context=self.context) if not isinstance(x, DiagramSum) else x
        if s.context != self.context:
            raise ValidationError("element lives over a different denominator")
        outside = [k for k in s.terms if k not in self._genset]
        if outside:
            raise ValidationError("element has terms outside the enumerated window")
        return self.eliminator.residue(s.terms)

    def is_zero(self, x) -> bool:
        """Whether ``x`` vanishes modulo the relations inside the window."""
        return not self.residue(x)

    def __post_init__(self):
        self._genset = set(self.generators)


def _shape_diagrams(n, context, connected):
    for pairs in multigraph_shapes(n, loops=True, connected=connected):
        yield NumberedGraph(n, pairs).to_diagram(context)


def _presentations(base: BeadedDiagram, exps, symmetric, skip=None):
    """All edge-direction choices (unless the window is conjugation
    symmetric) and monomial exponents from ``exps``; edge ``skip`` keeps
    bead 1 and its direction."""
    ctx = base.context
    ne = len(base.edges)
    free = [f for f in range(ne) if f != skip]
    dirs = [()] if symmetric else product((False, True), repeat=len(free))
    for flips in dirs:
        d = base
        for f, fl in zip(free, flips):
            if fl:
                d = d.reverse_edge(f)
        for ks in product(exps, repeat=len(free)):
            es = list(d.edges)
            for f, k in zip(free, ks):
                es[f] = es[f]._replace(bead=Bead(LaurentPoly.monomial(k), ctx))
            if skip is not None:
                es[skip] = es[skip]._replace(bead=ctx.one())
            yield BeadedDiagram(d.vertices, es, ctx, check=False)


def ihx_closure(n: int, window=(0, 0), context: DeltaContext = TRIVIAL_CONTEXT,
                connected: bool = False, budget: int = 200_000) -> IHXQuotient:
    """Windowed IHX quotient in loop degree ``n`` for bead exponents in
    ``window = (lo, hi)``."""
    lo, hi = window
    if lo > hi:
        raise ValidationError("empty exponent window")
    if n < 1:
        raise ValidationError("degree must be at least 1")
    exps = list(range(lo, hi + 1))
    symmetric = lo + hi == context.symmetry_shift
    shapes = list(_shape_diagrams(n, context, connected))
    work = sum(len(exps) ** (3 * n) * (1 if symmetric else 2 ** (3 * n)) * (1 + 3 * n) for _ in shapes)
    if work > budget:
        raise BudgetError(f"window enumeration needs about {work} presentations, budget is {budget}")
    gens = set()
    for base in shapes:
        for d in _presentations(base, exps, symmetric):
            gens.update(reduce(d).terms)
    elim = SparseEliminator()
    nrel = 0
    for base in shapes:
        for e, edge in enumerate(base.edges):
            if edge.source == edge.target:
                continue
            for d in _presentations(base, exps, symmetric, skip=e):
                rel = ihx_relation(d, e)
                if not rel.terms or any(k not in gens for k in rel.terms):
                    continue
                nrel += 1
                elim.add(rel.terms)
    generators = sorted(gens)
    return IHXQuotient(n, (lo, hi), context, generators, elim.rank, nrel, elim)
