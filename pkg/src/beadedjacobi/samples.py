"""Random inputs for property checks and demos.  Every function takes a
``random.Random`` so runs are reproducible."""

from __future__ import annotations

import random
from fractions import Fraction

from .contraction import LinkingTable, SurgeryDatum, TrilinearForm
from .diagram import BeadedDiagram, NumberedGraph, Vertex
from .enumeration import multigraph_shapes
from .laurent import TRIVIAL_CONTEXT, Bead, DeltaContext, LaurentPoly, conjugate_bead
from .normalform import DiagramSum, reduce
from .series import GradedSeries

_SHAPES: dict = {}


def shapes(n, connected=False):
    key = (n, connected)
    if key not in _SHAPES:
        _SHAPES[key] = multigraph_shapes(n, loops=True, connected=connected)
    return _SHAPES[key]


def random_laurent(rng: random.Random, lo=-3, hi=3, max_terms=2, allow_zero=False) -> LaurentPoly:
    while True:
        k = rng.randint(1, max_terms)
        p = LaurentPoly({rng.randint(lo, hi): Fraction(rng.choice([-3, -2, -1, 1, 1, 2, 3]),
                                                       rng.choice([1, 1, 2, 3])) for _ in range(k)})
        if allow_zero or not p.is_zero():
            return p


def random_diagram(rng: random.Random, n: int, context: DeltaContext = TRIVIAL_CONTEXT,
                   lo=-3, hi=3, max_terms=2, connected=False) -> BeadedDiagram:
    """A random shape with random vertex orientations, edge directions and
    bead numerators."""
    pairs = rng.choice(shapes(n, connected))
    g = NumberedGraph(n, pairs)
    d = g.to_diagram(context)
    for v in range(len(d.vertices)):
        if rng.random() < 0.5:
            d = d.flip_vertex(v)
        d = d.rotate_vertex(v, rng.randrange(3))
    for e in range(len(d.edges)):
        if rng.random() < 0.5:
            d = d.reverse_edge(e)
        d = d.with_bead(e, Bead(random_laurent(rng, lo, hi, max_terms), context))
    perm_v = list(range(len(d.vertices)))
    perm_e = list(range(len(d.edges)))
    rng.shuffle(perm_v)
    rng.shuffle(perm_e)
    return d.relabel(perm_v, perm_e)


def random_move(rng: random.Random, d: BeadedDiagram) -> tuple[BeadedDiagram, int]:
    """One relation move and the sign it introduces."""
    kind = rng.randrange(5)
    if kind == 0:
        return d.holonomy(rng.randrange(len(d.vertices)), rng.choice([-2, -1, 1, 2])), 1
    if kind == 1:
        return d.reverse_edge(rng.randrange(len(d.edges))), 1
    if kind == 2:
        return d.flip_vertex(rng.choice(d.trivalent)), -1
    if kind == 3:
        return d.rotate_vertex(rng.choice(d.trivalent), rng.randrange(1, 3)), 1
    pv = list(range(len(d.vertices)))
    pe = list(range(len(d.edges)))
    rng.shuffle(pv)
    rng.shuffle(pe)
    return d.relabel(pv, pe), 1


def random_moves(rng: random.Random, d: BeadedDiagram, count: int) -> tuple[BeadedDiagram, int]:
    sign = 1
    for _ in range(count):
        d, s = random_move(rng, d)
        sign *= s
    return d, sign


def random_unbeaded_sum(rng: random.Random, n: int, terms=3) -> DiagramSum:
    raw = []
    for _ in range(terms):
        d = NumberedGraph(n, rng.choice(shapes(n))).to_diagram()
        raw.append((Fraction(rng.randint(-5, 5), rng.randint(1, 4)), d))
    return reduce(raw, degree=n)


def random_series(rng: random.Random, truncation: int, context: DeltaContext = TRIVIAL_CONTEXT,
                  connected=True, density=0.7) -> GradedSeries:
    """Zero constant term; each degree gets a few random (connected) unbeaded
    classes lifted to ``context``."""
    comps = {}
    for n in range(1, truncation + 1):
        if n > 3 or rng.random() > density:
            continue
        raw = []
        for _ in range(rng.randint(1, 2)):
            pairs = rng.choice(shapes(n, connected))
            d = NumberedGraph(n, pairs).to_diagram(context)
            raw.append((Fraction(rng.randint(-4, 4), rng.randint(1, 3)), d))
        s = reduce(raw, context=context, degree=n)
        if s.terms:
            comps[n] = s
    return GradedSeries(comps, truncation, context)


def random_table(rng: random.Random, curves, context: DeltaContext = TRIVIAL_CONTEXT,
                 density=0.5, intra=True, lo=-2, hi=2) -> LinkingTable:
    """Exchange-symmetric table on ``curves``; diagonal entries are made
    self-conjugate."""
    entries = {}
    cs = sorted(curves)
    for i, x in enumerate(cs):
        for y in cs[i:]:
            if x[0] == y[0] and not intra:
                b = Bead(LaurentPoly(), context)
            elif rng.random() > density:
                b = Bead(LaurentPoly(), context)
            else:
                b = Bead(random_laurent(rng, lo, hi, 2), context)
            if x == y:
                b = b + conjugate_bead(b)
            entries[(x, y)] = b
    return LinkingTable(entries, context)


def random_datum(rng: random.Random, n: int, genus_range=(3, 4), context: DeltaContext = TRIVIAL_CONTEXT,
                 form_density=0.5, table_density=0.5, shift_range=(-2, 2)) -> SurgeryDatum:
    forms, shifts = [], []
    for _ in range(2 * n):
        g = rng.randint(*genus_range)
        triples = [(i, j, k) for i in range(1, g + 1) for j in range(i + 1, g + 1) for k in range(j + 1, g + 1)]
        vals = {t: Fraction(rng.choice([-2, -1, 1, 2, 3]), rng.choice([1, 2])) for t in triples
                if rng.random() < form_density}
        if not vals:
            vals = {rng.choice(triples): Fraction(1)}
        forms.append(TrilinearForm(g, vals))
        shifts.append(rng.randint(*shift_range))
    curves = [(a, j) for a, f in enumerate(forms, 1) for j in range(1, f.genus + 1)]
    table = random_table(rng, curves, context, table_density)
    return SurgeryDatum(n, forms, shifts, table, context)
