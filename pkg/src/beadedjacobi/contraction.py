"""Tripods, leg pairings, contraction by equivariant linking numbers, the
surgery right-hand side and the bijection-sum evaluation path.

Sign convention: a matched leg pair becomes one edge oriented from the leg
that comes first in the order (handlebody, curve, shift, vertex index) to
the other, beaded ``t^(p - q) lk(J, L)`` for legs ``theta^p J`` and
``theta^q L``.  The glued edge takes the place of the leg edge in the
cyclic order of each trivalent neighbour.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import factorial

from .diagram import SOURCE, TARGET, BeadedDiagram, Edge, Leg, Vertex, _perm_sign, tripod
from .errors import BudgetError, ParseError, ValidationError
from .laurent import TRIVIAL_CONTEXT, Bead, DeltaContext, LaurentPoly, conjugate_bead, format_fraction, \
    validate_alexander
from .normalform import DiagramSum, reduce


# -- data ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrilinearForm:
    """Antisymmetric trilinear form on ``genus`` curves, stored on
    increasing triples."""

    genus: int
    values: tuple = ()

    def __init__(self, genus: int, values=None):
        clean = {}
        for (i, j, k), v in dict(values or {}).items():
            if not (1 <= i < j < k <= genus):
                raise ValidationError(f"form index ({i}, {j}, {k}) is not an increasing triple in 1..{genus}")
            v = Fraction(v)
            if v:
                clean[(i, j, k)] = v
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "values", tuple(sorted(clean.items())))

    def __call__(self, i, j, k) -> Fraction:
        """Antisymmetric extension to arbitrary index order."""
        idx = (i, j, k)
        if len(set(idx)) < 3:
            return Fraction(0)
        srt = tuple(sorted(idx))
        sign = _perm_sign([srt.index(x) for x in idx])
        return sign * dict(self.values).get(srt, Fraction(0))

    def scaled(self, c) -> "TrilinearForm":
        return TrilinearForm(self.genus, {t: v * Fraction(c) for t, v in self.values})

    def curves(self) -> set:
        return {x for t, _ in self.values for x in t}


class LinkingTable:
    """Equivariant linking numbers between curves ``(handlebody, curve)``.
    Entries given in one direction are completed by conjugation; a
    contradicting pair is rejected."""

    def __init__(self, entries, context: DeltaContext = TRIVIAL_CONTEXT):
        self.context = context
        self._lk: dict = {}
        for (x, y), b in dict(entries).items():
            x, y = tuple(x), tuple(y)
            if not isinstance(b, Bead):
                b = context.from_laurent(LaurentPoly.coerce(b))
            if b.context != context:
                raise ValidationError("linking bead over a different denominator")
            self._set(x, y, b)
            self._set(y, x, conjugate_bead(b))

    def _set(self, x, y, b):
        old = self._lk.get((x, y))
        if old is not None and old != b:
            raise ValidationError(f"linking entries for {x} and {y} violate exchange symmetry")
        self._lk[(x, y)] = b

    def lk(self, x, y) -> Bead:
        try:
            return self._lk[(tuple(x), tuple(y))]
        except KeyError:
            raise ValidationError(f"missing linking entry for curves {tuple(x)} and {tuple(y)}") from None

    def bead(self, leg_x: Leg, leg_y: Leg) -> Bead:
        b = self.lk((leg_x.handlebody, leg_x.curve), (leg_y.handlebody, leg_y.curve))
        return b.times(LaurentPoly.monomial(leg_x.shift - leg_y.shift))

    def items(self):
        return sorted(self._lk.items())

    def covers(self, curves) -> bool:
        return all((x, y) in self._lk for x in curves for y in curves)


@dataclass
class SurgeryDatum:
    n: int
    forms: list
    shifts: list
    table: LinkingTable
    context: DeltaContext = TRIVIAL_CONTEXT

    def __post_init__(self):
        if len(self.forms) != 2 * self.n or len(self.shifts) != 2 * self.n:
            raise ValidationError(f"degree {self.n} needs {2 * self.n} handlebodies")
        if self.table.context != self.context:
            raise ValidationError("linking table over a different denominator")
        curves = {(a, j) for a, f in enumerate(self.forms, 1) for j in f.curves()}
        for x in sorted(curves):
            for y in sorted(curves):
                if x != y:
                    self.table.lk(x, y)

    def with_shift(self, i: int, m: int) -> "SurgeryDatum":
        shifts = list(self.shifts)
        shifts[i] = m
        return SurgeryDatum(self.n, self.forms, shifts, self.table, self.context)

    def with_form(self, i: int, form: TrilinearForm) -> "SurgeryDatum":
        forms = list(self.forms)
        forms[i] = form
        return SurgeryDatum(self.n, forms, self.shifts, self.table, self.context)

    # -- JSON --------------------------------------------------------------------

    @classmethod
    def from_json(cls, text: str) -> "SurgeryDatum":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
        return cls.from_dict(obj)

    @classmethod
    def from_dict(cls, obj) -> "SurgeryDatum":
        from .dsl import _parse_bead
        if obj.get("format", 1) != 1:
            raise ValidationError(f"unsupported format version {obj.get('format')!r}")
        try:
            ctx = validate_alexander(LaurentPoly.parse(str(obj.get("delta", "1"))))
            n = int(obj["n"])
            forms, shifts = [], []
            for h in obj["handlebodies"]:
                vals = {}
                for ent in h.get("form", []):
                    key = (int(ent["i"]), int(ent["j"]), int(ent["k"]))
                    if key in vals:
                        raise ValidationError(f"form entry {key} given twice")
                    vals[key] = Fraction(str(ent["value"]))
                forms.append(TrilinearForm(int(h["genus"]), vals))
                shifts.append(int(h.get("shift", 0)))
            entries = {}
            for ent in obj.get("linking", []):
                x, y = tuple(ent["from"]), tuple(ent["to"])
                b = _parse_bead(str(ent["bead"]), ctx, None, 1)
                if (x, y) in entries and entries[(x, y)] != b:
                    raise ValidationError(f"linking entry {x} -> {y} given twice with different beads")
                entries[(x, y)] = b
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed surgery datum: {exc}") from None
        return cls(n, forms, shifts, LinkingTable(entries, ctx), ctx)

    def to_dict(self) -> dict:
        from .dsl import format_bead
        hb = []
        for f, m in zip(self.forms, self.shifts):
            hb.append({"genus": f.genus, "shift": m,
                       "form": [{"i": i, "j": j, "k": k, "value": format_fraction(v)}
                                for (i, j, k), v in f.values]})
        links = []
        for (x, y), b in self.table.items():
            if x <= y:
                links.append({"from": list(x), "to": list(y), "bead": format_bead(b) or "1"})
        return {"format": 1, "delta": str(self.context.delta), "n": self.n,
                "handlebodies": hb, "linking": links}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# -- tripods and pairings ----------------------------------------------------------------

def tripods(form: TrilinearForm, handlebody: int, shift: int = 0,
            context: DeltaContext = TRIVIAL_CONTEXT) -> list[tuple[Fraction, BeadedDiagram]]:
    """``sum_{i<j<k} I(i, j, k)`` times the tripod with legs
    ``theta^shift z_i, z_j, z_k`` in that cyclic order."""
    return [(v, tripod([Leg(handlebody, c, shift) for c in t], context)) for t, v in form.values]


def tripod_for_choice(handlebody: int, triple, shift: int = 0,
                      context: DeltaContext = TRIVIAL_CONTEXT) -> BeadedDiagram:
    return tripod([Leg(handlebody, c, shift) for c in triple], context)


def disjoint_sum(parts: list[list[tuple[Fraction, BeadedDiagram]]]) -> list[tuple[Fraction, BeadedDiagram]]:
    """Multilinear disjoint union of formal sums."""
    out = []
    for combo in product(*parts):
        c = Fraction(1)
        d = None
        for coef, x in combo:
            c *= coef
            d = x if d is None else d.disjoint_union(x)
        if c and d is not None:
            out.append((c, d))
    return out


def enumerate_pairings(items) -> list[tuple[tuple[int, int], ...]]:
    """All perfect matchings of ``items`` (a count or a sequence), pairing
    the first unmatched item with each later one in turn."""
    seq = list(range(items)) if isinstance(items, int) else list(items)
    if len(seq) % 2:
        raise ValidationError(f"cannot pair an odd number ({len(seq)}) of legs")

    def rec(rest):
        if not rest:
            yield ()
            return
        a = rest[0]
        for i in range(1, len(rest)):
            for m in rec(rest[1:i] + rest[i + 1:]):
                yield ((a, rest[i]),) + m

    return list(rec(seq))


# -- gluing ---------------------------------------------------------------------------------

def _leg_order(d: BeadedDiagram, v: int):
    leg = d.vertices[v].leg
    return (leg.handlebody, leg.curve, leg.shift, v)


def _leg_attachment(d: BeadedDiagram, v: int):
    (f, end), = d.vertices[v].halfedges
    edge = d.edges[f]
    if not edge.bead.is_one():
        raise ValidationError("leg edges must carry bead 1 before contraction")
    other = (f, 1 - end)
    w = d.half_vertex(other)
    if d.vertices[w].is_leg:
        raise ValidationError("an edge joining two legs cannot be contracted")
    return w, other


def glue(d: BeadedDiagram, matching, table: LinkingTable) -> BeadedDiagram | None:
    """Replace each matched leg pair by one beaded edge; None if a bead is 0."""
    ctx = d.context
    keep_v = d.trivalent
    vmap = {v: i for i, v in enumerate(keep_v)}
    keep_e = [e for e, x in enumerate(d.edges)
              if not d.vertices[x.source].is_leg and not d.vertices[x.target].is_leg]
    emap = {e: i for i, e in enumerate(keep_e)}
    replace = {}
    es = [Edge(vmap[d.edges[e].source], vmap[d.edges[e].target], d.edges[e].bead) for e in keep_e]
    for x, y in matching:
        if _leg_order(d, y) < _leg_order(d, x):
            x, y = y, x
        b = table.bead(d.vertices[x].leg, d.vertices[y].leg)
        if b.is_zero():
            return None
        wx, hx = _leg_attachment(d, x)
        wy, hy = _leg_attachment(d, y)
        new = len(es)
        es.append(Edge(vmap[wx], vmap[wy], b))
        replace[hx] = (new, SOURCE)
        replace[hy] = (new, TARGET)
    verts = []
    for v in keep_v:
        hs = tuple(replace[h] if h in replace else (emap[h[0]], h[1]) for h in d.vertices[v].halfedges)
        verts.append(Vertex(hs))
    return BeadedDiagram(verts, es, ctx)


def _pairings_nonzero(d: BeadedDiagram, table: LinkingTable):
    """Matchings whose glued beads are all nonzero, pruned as they grow."""
    legs = sorted(d.legs, key=lambda v: _leg_order(d, v))
    if len(legs) % 2:
        raise ValidationError(f"cannot pair an odd number ({len(legs)}) of legs")

    def rec(rest):
        if not rest:
            yield ()
            return
        a = rest[0]
        la = d.vertices[a].leg
        for i in range(1, len(rest)):
            if table.bead(la, d.vertices[rest[i]].leg).is_zero():
                continue
            for m in rec(rest[1:i] + rest[i + 1:]):
                yield ((a, rest[i]),) + m

    return rec(legs)


def contract(terms, table: LinkingTable, threads: int = 1) -> DiagramSum:
    """Sum over all leg pairings of the glued diagrams, bilinearly in the
    formal sum ``terms`` of ``(coefficient, legged diagram)``."""
    if isinstance(terms, BeadedDiagram):
        terms = [(Fraction(1), terms)]
    terms = list(terms)
    ctx = table.context

    def work(item):
        c, d = item
        if d.context != ctx:
            raise ValidationError("legged diagram and linking table use different denominators")
        raw = []
        for m in _pairings_nonzero(d, table):
            g = glue(d, m, table)
            if g is not None:
                raw.append((c, g))
        return raw

    degree = None
    for _, d in terms:
        degree = len(d.trivalent) // 2
        break
    results = _map(work, terms, threads)
    raw = [x for part in results for x in part]
    return reduce(raw, context=ctx, degree=degree if degree is not None else 0)


def _map(fn, items, threads):
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def surgery_legged(datum: SurgeryDatum) -> list[tuple[Fraction, BeadedDiagram]]:
    parts = [tripods(f, a, m, datum.context)
             for a, (f, m) in enumerate(zip(datum.forms, datum.shifts), 1)]
    return disjoint_sum(parts)


def surgery_rhs(datum: SurgeryDatum, threads: int = 1) -> DiagramSum:
    """Contraction of the disjoint union of all handlebody tripod sums."""
    legged = surgery_legged(datum)
    if not legged:
        return DiagramSum.zero(datum.n, datum.context)
    out = contract(legged, datum.table, threads)
    out.degree = datum.n
    return out


# -- the bijection path --------------------------------------------------------------------

def choice_space(datum: SurgeryDatum):
    """All choices ``d``: one increasing triple per handlebody."""
    per = [[(i, j, k) for i in range(1, f.genus + 1) for j in range(i + 1, f.genus + 1)
            for k in range(j + 1, f.genus + 1)] for f in datum.forms]
    return list(product(*per))


def choice_weight(datum: SurgeryDatum, dd) -> Fraction:
    """``prod_i I_i(d(i, 1), d(i, 2), d(i, 3))`` with antisymmetric extension."""
    c = Fraction(1)
    for f, t in zip(datum.forms, dd):
        c *= f(*t)
    return c


def choice_tripods(datum: SurgeryDatum, dd) -> BeadedDiagram:
    d = None
    for a, (t, m) in enumerate(zip(dd, datum.shifts), 1):
        x = tripod_for_choice(a, t, m, datum.context)
        d = x if d is None else d.disjoint_union(x)
    return d


def bijection_diagram(datum: SurgeryDatum, dd, b) -> BeadedDiagram | None:
    """The graph of a bijection ``b``: ``b[2(r-1) + (end-1)] = (i, k)`` sends
    the ``end`` half of edge ``r`` to slot ``k`` of vertex ``i``.  Edge ``r``
    runs from ``v(i)`` to ``v(j)`` beaded by the linking number of the
    shifted decorations, and vertex ``i`` is oriented by its slots."""
    n = datum.n
    nv = 2 * n
    slots = [[None] * 3 for _ in range(nv)]
    es = []
    for r in range(3 * n):
        (i, k), (j, l) = b[2 * r], b[2 * r + 1]
        x = Leg(i, dd[i - 1][k - 1], datum.shifts[i - 1])
        y = Leg(j, dd[j - 1][l - 1], datum.shifts[j - 1])
        bead = datum.table.bead(x, y)
        if bead.is_zero():
            return None
        es.append(Edge(i - 1, j - 1, bead))
        slots[i - 1][k - 1] = (r, SOURCE)
        slots[j - 1][l - 1] = (r, TARGET)
    return BeadedDiagram([Vertex(tuple(s)) for s in slots], es, datum.context)


def bijection_matching(b):
    """The leg pairing determined by a bijection, as pairs of ``(i, k)`` slots."""
    return tuple(sorted(tuple(sorted((b[2 * r], b[2 * r + 1]))) for r in range(len(b) // 2)))


def contract_via_colorings(datum: SurgeryDatum, dd, budget: int = 10 ** 6, threads: int = 1) -> DiagramSum:
    """``sum_b I(d) [Gamma(b)] / (2^(3n) (3n)!)`` over all bijections ``b``
    from edge halves to vertex slots."""
    n = datum.n
    total = factorial(6 * n)
    if total > budget:
        raise BudgetError(f"{total} bijections exceed the budget of {budget}")
    weight = choice_weight(datum, dd)
    if not weight:
        return DiagramSum.zero(n, datum.context)
    targets = [(i, k) for i in range(1, 2 * n + 1) for k in (1, 2, 3)]
    norm = Fraction(1, 2 ** (3 * n) * factorial(3 * n))
    cache: dict = {}

    def term(b):
        key = tuple(sorted((b[2 * r], b[2 * r + 1]) for r in range(3 * n)))
        hit = cache.get(key)
        if hit is None:
            # edge labels do not matter; keep orientations as given
            g = bijection_diagram(datum, dd, [x for pair in key for x in pair])
            hit = cache[key] = reduce(g) if g is not None else None
        return hit

    acc: dict = {}
    for b in permutations(targets):
        s = term(b)
        if s is None:
            continue
        for k, v in s.terms.items():
            acc[k] = acc.get(k, 0) + v
    out = DiagramSum(acc, n, datum.context) * (weight * norm)
    out.degree = n
    return out


def bijection_sum_all(datum: SurgeryDatum, budget: int = 10 ** 6) -> DiagramSum:
    """Sum of the bijection path over every choice ``d``."""
    out = DiagramSum.zero(datum.n, datum.context)
    for dd in choice_space(datum):
        if choice_weight(datum, dd):
            out = out + contract_via_colorings(datum, dd, budget)
    return out
