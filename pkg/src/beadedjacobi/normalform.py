"""Normal forms for beaded diagrams modulo multilinearity, conjugation,
generalized holonomy and antisymmetry, plus the maps between beaded and
unbeaded diagram spaces.

A normalized term is keyed by the sorted tuple of its components' canonical
codes, so disjoint union of normalized terms is concatenation of keys.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterable

from . import _canon
from .diagram import SOURCE, TARGET, BeadedDiagram, Edge, Leg, Vertex
from .errors import ContextMismatchError, ParseError, ValidationError
from .laurent import (TRIVIAL_CONTEXT, Bead, DeltaContext, LaurentPoly, conjugate_bead,
                      format_fraction, validate_alexander)


# -- keys and representatives ------------------------------------------------------

def _merge_keys(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b))


def decode_key(key: tuple, context: DeltaContext) -> BeadedDiagram:
    """The normal-form representative of a key: vertices in canonical
    order, each vertex's cyclic order equal to its slot order, edges
    oriented from lower to higher slot with monomial numerators."""
    verts, es = [], []
    voff = 0
    for kinds, code_edges in key:
        slots = []
        for p, k in enumerate(kinds):
            size = 3 if k[0] == 0 else 1
            slots.extend([p + voff] * size)
        owner: dict[int, tuple] = {}
        base_e = len(es)
        for i, (a, b, k) in enumerate(code_edges):
            es.append(Edge(slots[a], slots[b], Bead(LaurentPoly.monomial(k), context)))
            owner[a] = (base_e + i, SOURCE)
            owner[b] = (base_e + i, TARGET)
        h = 0
        for k in kinds:
            size = 3 if k[0] == 0 else 1
            leg = None
            if k[0] == 1:
                leg = Leg(*k[1:3], k[3]) if len(k) > 1 else Leg()
            verts.append(Vertex(tuple(owner[h + j] for j in range(size)), leg))
            h += size
        voff += len(kinds)
    return BeadedDiagram(verts, es, context, check=False)


def _key_degree(key: tuple) -> int:
    t = u = 0
    for kinds, _ in key:
        for k in kinds:
            if k[0] == 0:
                t += 1
            else:
                u += 1
    return (t - u) // 2


class DiagramSum:
    """Finite rational combination of normalized diagrams of one loop degree
    over one denominator.  Keys are canonical; zero coefficients are never
    stored."""

    __slots__ = ("terms", "degree", "context", "_reps")

    def __init__(self, terms=None, degree: int = 0, context: DeltaContext = TRIVIAL_CONTEXT):
        self.terms: dict[tuple, Fraction] = {k: Fraction(v) for k, v in (terms or {}).items() if v}
        self.degree = degree
        self.context = context
        self._reps: dict[tuple, BeadedDiagram] = {}

    @classmethod
    def zero(cls, degree: int = 0, context: DeltaContext = TRIVIAL_CONTEXT) -> "DiagramSum":
        return cls({}, degree, context)

    @classmethod
    def one(cls, context: DeltaContext = TRIVIAL_CONTEXT) -> "DiagramSum":
        """The empty diagram with coefficient 1."""
        return cls({(): Fraction(1)}, 0, context)

    def _compatible(self, other: "DiagramSum"):
        if self.context != other.context:
            raise ContextMismatchError("sums over different denominators")
        if self.degree != other.degree and self.terms and other.terms:
            raise ValidationError(f"sums of different degrees {self.degree} and {other.degree}")

    def __add__(self, other: "DiagramSum") -> "DiagramSum":
        self._compatible(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return DiagramSum(t, self.degree if self.terms else other.degree, self.context)

    def __neg__(self):
        return DiagramSum({k: -v for k, v in self.terms.items()}, self.degree, self.context)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, DiagramSum):
            return self.union_product(c)
        c = Fraction(c)
        return DiagramSum({k: v * c for k, v in self.terms.items()}, self.degree, self.context)

    __rmul__ = __mul__

    def union_product(self, other: "DiagramSum") -> "DiagramSum":
        """Bilinear extension of disjoint union."""
        if self.context != other.context:
            raise ContextMismatchError("sums over different denominators")
        t: dict[tuple, Fraction] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = _merge_keys(ka, kb)
                t[k] = t.get(k, 0) + va * vb
        return DiagramSum(t, self.degree + other.degree, self.context)

    def __eq__(self, other):
        if not isinstance(other, DiagramSum):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms \
            and (self.degree == other.degree or not self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def representative(self, key: tuple) -> BeadedDiagram:
        rep = self._reps.get(key)
        if rep is None:
            rep = self._reps[key] = decode_key(key, self.context)
        return rep

    def items(self):
        """``(key, representative, coefficient)`` sorted by key."""
        for k in sorted(self.terms):
            yield k, self.representative(k), self.terms[k]

    def coefficient(self, d: BeadedDiagram) -> Fraction:
        """Coefficient of the normal form of ``d`` (which must be a single
        nonvanishing class)."""
        r = reduce(d)
        if len(r.terms) != 1:
            raise ValidationError("diagram does not reduce to a single class")
        (k, v), = r.terms.items()
        return self.terms.get(k, Fraction(0)) / v

    def is_connected_terms(self) -> bool:
        return all(len(k) <= 1 for k in self.terms)

    def key_bytes(self, key: tuple) -> bytes:
        return repr(key).encode()

    def to_text(self) -> str:
        lines = []
        if not self.context.is_trivial():
            lines.append(f"delta: {self.context.delta}")
        lines.append(f"degree: {self.degree}")
        from .dsl import format_diagram
        for k, rep, c in self.items():
            lines.append(f"term {format_fraction(c)}")
            body = format_diagram(rep, header=False)
            lines.extend("  " + x for x in body.splitlines() if x)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, context: DeltaContext | None = None) -> "DiagramSum":
        from .dsl import parse_diagram
        degree = None
        terms: list[tuple[Fraction, list[str]]] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("delta:"):
                context = validate_alexander(LaurentPoly.parse(line[6:]))
            elif line.startswith("degree:"):
                try:
                    degree = int(line[7:])
                except ValueError:
                    raise ParseError("bad degree", lineno) from None
            elif line.startswith("term"):
                try:
                    c = Fraction(line[4:].strip())
                except ValueError:
                    raise ParseError("bad coefficient", lineno) from None
                terms.append((c, []))
            else:
                if not terms:
                    raise ParseError("diagram line before any 'term'", lineno)
                terms[-1][1].append(line)
        context = context or TRIVIAL_CONTEXT
        raw = [(c, parse_diagram("\n".join(body), context)) for c, body in terms]
        out = reduce(raw, context=context, degree=degree)
        return out

    def __repr__(self):
        return f"DiagramSum(degree={self.degree}, {len(self.terms)} terms)"


# -- reduction --------------------------------------------------------------------

@lru_cache(maxsize=200_000)
def _component_sum(kinds, rots, bead_terms, s):
    """Normal form of one connected component whose edge ``e`` carries the
    numerator ``bead_terms[e][2]`` (a tuple of ``(exp, num, den)``)."""
    out: dict[tuple, Fraction] = {}
    choices = [[(k, Fraction(p, q)) for k, p, q in bt[2]] for bt in bead_terms]
    for combo in product(*choices):
        c = Fraction(1)
        edges = []
        for (src, tgt, _), (k, x) in zip(bead_terms, combo):
            c *= x
            edges.append((src, tgt, k))
        code, sign = _canon.normal_code(kinds, rots, edges, s)
        if sign:
            out[code] = out.get(code, 0) + sign * c
    return tuple((k, v) for k, v in out.items() if v)


def _split(d: BeadedDiagram):
    kinds, rots = d.compact()
    parts = []
    for comp in d.components():
        vmap = {v: i for i, v in enumerate(comp)}
        emap = {}
        for v in comp:
            for e, _ in d.vertices[v].halfedges:
                if e not in emap:
                    emap[e] = len(emap)
        # renumber edges in original order for determinism
        order = sorted(emap)
        emap = {e: i for i, e in enumerate(order)}
        ck = tuple(kinds[v] for v in comp)
        cr = tuple(tuple(2 * emap[e] + end for e, end in d.vertices[v].halfedges) for v in comp)
        ce = tuple((vmap[d.edges[e].source], vmap[d.edges[e].target], d.edges[e].bead.numerator.key())
                   for e in order)
        parts.append((ck, cr, ce))
    return parts


def _reduce_diagram(d: BeadedDiagram, coef: Fraction, acc: dict):
    for v in d.vertices:
        if v.is_leg and v.leg.decorated:
            raise ValidationError("diagrams with decorated legs must be contracted before reduction")
    s = d.context.symmetry_shift
    partial = {(): Fraction(coef)}
    for ck, cr, ce in _split(d):
        comp = _component_sum(ck, cr, ce, s)
        if not comp:
            return
        nxt: dict[tuple, Fraction] = {}
        for key, c in partial.items():
            for code, v in comp:
                k = key + (code,)
                nxt[k] = nxt.get(k, 0) + c * v
        partial = nxt
    for key, c in partial.items():
        k = tuple(sorted(key))
        acc[k] = acc.get(k, 0) + c


def reduce(x, context: DeltaContext | None = None, degree: int | None = None) -> DiagramSum:
    """Normalize a diagram, an iterable of ``(coefficient, diagram)`` pairs,
    or a ``DiagramSum`` (returned unchanged).  Linear and idempotent."""
    if isinstance(x, DiagramSum):
        return x
    if isinstance(x, BeadedDiagram):
        x = [(Fraction(1), x)]
    acc: dict[tuple, Fraction] = {}
    for c, d in x:
        if context is None:
            context = d.context
        elif d.context != context:
            raise ContextMismatchError("terms over different denominators")
        if degree is None:
            degree = d.loop_degree
        elif d.loop_degree != degree:
            raise ValidationError(f"terms of different loop degrees {degree} and {d.loop_degree}")
        if c:
            _reduce_diagram(d, Fraction(c), acc)
    return DiagramSum(acc, degree or 0, context or TRIVIAL_CONTEXT)


def expand_multilinear(d: BeadedDiagram, coefficient=1) -> list[tuple[Fraction, BeadedDiagram]]:
    """Split every bead into monomials; each output diagram has unit monomial
    numerators ``t^k`` and the scalars are collected in the coefficient."""
    ctx = d.context
    for x in d.edges:
        if x.bead.context != ctx:
            raise ContextMismatchError("bead context differs from diagram context")
    out = []
    for combo in product(*[x.bead.numerator.terms() for x in d.edges]):
        c = Fraction(coefficient)
        es = []
        for x, (k, v) in zip(d.edges, combo):
            c *= v
            es.append(x._replace(bead=Bead(LaurentPoly.monomial(k), ctx)))
        if c:
            out.append((c, BeadedDiagram(d.vertices, es, ctx, check=False)))
    return out


def _monomial_exponents(d: BeadedDiagram) -> list[tuple[int, Fraction]]:
    out = []
    for e, x in enumerate(d.edges):
        t = x.bead.numerator.terms()
        if len(t) != 1:
            raise ValidationError(f"edge {e} bead is not a monomial")
        out.append(t[0])
    return out


def holonomy_normal_form(d: BeadedDiagram) -> BeadedDiagram:
    """Forest-normalize monomial bead exponents in the given labeling: a
    spanning forest is grown greedily in edge order, its edges get exponent
    0 and every other edge the exponent sum around its fundamental cycle.
    Orientations and scalars are kept."""
    mono = _monomial_exponents(d)
    edges = [(x.source, x.target, k) for x, (k, _) in zip(d.edges, mono)]
    normed = _canon.holonomy_normalize_edges(edges, len(d.vertices))
    es = [x._replace(bead=Bead(LaurentPoly.monomial(k, c), d.context))
          for x, (_, _, k), (_, c) in zip(d.edges, normed, mono)]
    return BeadedDiagram(d.vertices, es, d.context, check=False)


def orientation_normalize(d: BeadedDiagram) -> tuple[BeadedDiagram, Fraction]:
    """Canonical presentation up to edge reversal and vertex-orientation
    flips (no holonomy).  Returns the diagram with unit monomial beads and
    the factor relating it to ``d``: the product of the bead scalars and
    the antisymmetry sign, or 0 when ``d`` equals its own negative."""
    mono = _monomial_exponents(d)
    factor = Fraction(1)
    for _, c in mono:
        factor *= c
    s = d.context.symmetry_shift
    codes = []
    for ck, cr, ce in _split(d):
        edges = [(a, b, kk[0][0]) for a, b, kk in ce]
        code, sign = _canon.normal_code(ck, cr, edges, s, holonomy=False)
        if sign == 0:
            factor = Fraction(0)
        factor *= sign if sign else 1
        codes.append(code)
    return decode_key(tuple(sorted(codes)), d.context), factor


# -- tadpoles ----------------------------------------------------------------------

def _pick_loop(d: BeadedDiagram, e: int | None) -> int:
    loops = d.loop_edges()
    if e is None:
        if not loops:
            raise ValidationError("diagram has no loop edge")
        return loops[0]
    if e not in loops:
        raise ValidationError(f"edge {e} is not a loop")
    return e


def antisymmetrize_loop(d: BeadedDiagram, e: int | None = None) -> BeadedDiagram:
    """Replace the bead ``b`` of loop ``e`` by ``(b - conj(b)) / 2``."""
    e = _pick_loop(d, e)
    b = d.edges[e].bead
    return d.with_bead(e, (b - conjugate_bead(b)).scale(Fraction(1, 2)))


def tadpole_split(d: BeadedDiagram, e: int | None = None) -> DiagramSum:
    """Reduced class of the loop-antisymmetrized diagram; equal to
    ``reduce(d)``."""
    return reduce(antisymmetrize_loop(d, e))


def stick_of(d: BeadedDiagram, loop: int) -> int:
    """The edge attached to the vertex carrying loop ``loop``."""
    v = d.edges[loop].source
    for e, _ in d.vertices[v].halfedges:
        if e != loop:
            return e
    raise ValidationError("loop vertex has no stick")


def evaluate_stick(d: BeadedDiagram, loop: int | None = None) -> tuple[Fraction, BeadedDiagram]:
    """``(P(1), d with stick bead 1)`` where ``P`` is the stick bead of the
    tadpole whose loop is ``loop``."""
    loop = _pick_loop(d, loop)
    st = stick_of(d, loop)
    if d.is_loop(st):
        raise ValidationError("stick edge is itself a loop")
    p1 = d.edges[st].bead.value_at_one()
    return p1, d.with_bead(st, d.context.one())


def tadpole_stick_eval(d: BeadedDiagram, loop: int | None = None) -> DiagramSum:
    c, d1 = evaluate_stick(d, loop)
    return reduce([(c, d1)], context=d.context, degree=d.loop_degree)


# -- maps between beaded and unbeaded spaces ----------------------------------------------

def inclusion_i(s: DiagramSum, context: DeltaContext) -> DiagramSum:
    """Bead every edge by 1 in ``context``."""
    raw = []
    for _, rep, c in s.items():
        raw.append((c, rep.with_context(context, lambda b: context.one())))
    return reduce(raw, context=context, degree=s.degree)


def evaluation_p(s) -> DiagramSum:
    """Set ``t = 1`` in every bead and move the values into the coefficient."""
    if isinstance(s, BeadedDiagram):
        s = [(Fraction(1), s)]
    if isinstance(s, DiagramSum):
        degree = s.degree
        s = [(c, rep) for _, rep, c in s.items()]
    else:
        s = list(s)
        degree = s[0][1].loop_degree if s else 0
    raw = []
    for c, d in s:
        for x in d.edges:
            c *= x.bead.value_at_one()
        if c:
            raw.append((c, d.with_context(TRIVIAL_CONTEXT, lambda b: TRIVIAL_CONTEXT.one())))
    return reduce(raw, context=TRIVIAL_CONTEXT, degree=degree)


def _exp_coefficients(p: LaurentPoly, bound: int) -> list[Fraction]:
    """Coefficients of ``x^m``, ``m <= bound``, in ``p(exp(x))``."""
    return [sum((c * Fraction(k) ** m for k, c in p.terms()), Fraction(0)) / factorial(m)
            for m in range(bound + 1)]


def _hairy(d: BeadedDiagram, counts: list[int]) -> BeadedDiagram:
    """Replace edge ``e`` by a chain carrying ``counts[e]`` legs.  Each new
    vertex is oriented (incoming segment, leg, outgoing segment)."""
    one = TRIVIAL_CONTEXT.one()
    verts = [list(v.halfedges) for v in d.vertices]
    legs_of = [v.leg for v in d.vertices]
    es: list[list] = [[x.source, x.target] for x in d.edges]
    for e, m in enumerate(counts):
        if m == 0:
            continue
        final_target = es[e][1]
        prev = e
        for _ in range(m):
            w = len(verts)
            leg_v = w + 1
            es[prev][1] = w
            nxt = len(es)
            hair = nxt + 1
            es.append([w, None])
            es.append([w, leg_v])
            verts.append([(prev, TARGET), (hair, SOURCE), (nxt, SOURCE)])
            verts.append([(hair, TARGET)])
            legs_of.extend([None, Leg()])
            prev = nxt
        es[prev][1] = final_target
        tv = verts[final_target]
        verts[final_target] = [(prev, TARGET) if h == (e, TARGET) else h for h in tv]
    vs = [Vertex(tuple(h), leg) for h, leg in zip(verts, legs_of)]
    return BeadedDiagram(vs, [Edge(a, b, one) for a, b in es], TRIVIAL_CONTEXT)


def hair_map(s, leg_bound: int) -> DiagramSum:
    """Expand each bead ``P`` as ``P(exp(x)) = sum p_m x^m`` and replace the
    edge by ``sum_{m <= leg_bound} p_m`` times the edge with ``m`` legs."""
    if leg_bound < 0:
        raise ValidationError("leg bound must be nonnegative")
    if isinstance(s, BeadedDiagram):
        s = [(Fraction(1), s)]
    elif isinstance(s, DiagramSum):
        s = [(c, rep) for _, rep, c in s.items()]
    raw = []
    degree = None
    for c, d in s:
        degree = d.loop_degree if degree is None else degree
        series = [_exp_coefficients(x.bead.as_laurent(), leg_bound) for x in d.edges]
        for counts in product(range(leg_bound + 1), repeat=len(d.edges)):
            w = Fraction(c)
            for e, m in enumerate(counts):
                w *= series[e][m]
                if not w:
                    break
            if w:
                raw.append((w, _hairy(d, list(counts))))
    return reduce(raw, context=TRIVIAL_CONTEXT, degree=degree or 0)


def leg_count_part(s: DiagramSum, legs: int) -> DiagramSum:
    """Terms with exactly ``legs`` univalent vertices."""
    keep = {k: v for k, v in s.terms.items()
            if sum(1 for kinds, _ in k for x in kinds if x[0] == 1) == legs}
    return DiagramSum(keep, s.degree, s.context)


def strip_hair_free(s: DiagramSum) -> DiagramSum:
    return leg_count_part(s, 0)
