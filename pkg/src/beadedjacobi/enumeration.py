"""Labeled trivalent graphs with ordered oriented edges, their colorings,
and the counting identities used as oracles.

A labeled graph of degree ``n`` has vertices ``1..2n`` and ``3n`` ordered
pairs as edges.  Three families are generated:

``Su``  no loops
``S``   no loops, connected
``Sl``  loops allowed
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import factorial

from .diagram import NumberedGraph, automorphism_count
from .errors import BudgetError, ValidationError

FAMILIES = ("Su", "S", "Sl")
DEFAULT_BUDGET = 5_000_000


def _check_family(family):
    if family not in FAMILIES:
        raise ValidationError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _connected(nv, pairs):
    parent = list(range(nv + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        parent[find(a)] = find(b)
    return len({find(v) for v in range(1, nv + 1)}) == 1


# -- unordered multigraphs ------------------------------------------------------------

def _multigraphs(nv, loops):
    """All symmetric multiplicity patterns on vertices ``1..nv`` with every
    vertex of degree 3 (a loop counts twice), as sorted pair tuples."""
    slots = [(a, b) for a in range(1, nv + 1) for b in range(a, nv + 1) if loops or a != b]
    cap = [0] + [3] * nv
    out = []

    def rec(i, acc):
        if i == len(slots):
            if all(c == 0 for c in cap[1:]):
                out.append(tuple(acc))
            return
        a, b = slots[i]
        # vertices below a receive no more edges after this point
        if any(cap[v] for v in range(1, a)):
            return
        top = cap[a] // 2 if a == b else min(cap[a], cap[b])
        for m in range(top, -1, -1):
            use = 2 * m if a == b else m
            if a == b:
                cap[a] -= use
            else:
                cap[a] -= m
                cap[b] -= m
            rec(i + 1, acc + [(a, b)] * m)
            if a == b:
                cap[a] += use
            else:
                cap[a] += m
                cap[b] += m

    rec(0, [])
    return out


def canonical_pairs(pairs, nv):
    """Least relabeling of an unordered multigraph over all vertex permutations."""
    best = None
    for perm in permutations(range(1, nv + 1)):
        img = tuple(sorted(tuple(sorted((perm[a - 1], perm[b - 1]))) for a, b in pairs))
        if best is None or img < best:
            best = img
    return best


def multigraph_shapes(n, loops=True, connected=False):
    """Isomorphism classes of trivalent multigraphs on ``2n`` vertices,
    each as its canonical sorted pair tuple."""
    nv = 2 * n
    seen = set()
    for pairs in _multigraphs(nv, loops):
        if connected and not _connected(nv, pairs):
            continue
        seen.add(canonical_pairs(pairs, nv))
    return sorted(seen)


def count_graphs(n, family):
    """Number of labeled graphs in a family, computed from multiplicity
    patterns: ``(3n)! / prod m! * 2^(non-loop edges)`` per pattern."""
    _check_family(family)
    nv = 2 * n
    total = 0
    for pairs in _multigraphs(nv, family == "Sl"):
        if family == "S" and not _connected(nv, pairs):
            continue
        mult = Counter(pairs)
        c = factorial(3 * n)
        for m in mult.values():
            c //= factorial(m)
        c *= 2 ** sum(1 for a, b in pairs if a != b)
        total += c
    return total


# -- labeled graphs --------------------------------------------------------------------

def enumerate_graphs(n, family="Sl", budget=DEFAULT_BUDGET):
    """Stream the labeled graphs of a family in lexicographic order of the
    edge list.  Raises ``BudgetError`` before streaming when the family has
    more than ``budget`` members."""
    _check_family(family)
    if n < 1:
        raise ValidationError("degree must be at least 1")
    size = count_graphs(n, family)
    if size > budget:
        raise BudgetError(f"family {family} in degree {n} has {size} graphs, budget is {budget}")
    return _stream(n, family)


def _stream(n, family):
    nv, ne = 2 * n, 3 * n
    loops = family == "Sl"
    cap = [0] + [3] * nv
    pairs = [(a, b) for a in range(1, nv + 1) for b in range(1, nv + 1) if loops or a != b]
    acc = []

    def rec(r):
        if r == ne:
            if family != "S" or _connected(nv, acc):
                yield NumberedGraph(n, tuple(acc))
            return
        for a, b in pairs:
            need_a = 2 if a == b else 1
            if cap[a] < need_a or cap[b] < 1:
                continue
            cap[a] -= 1
            cap[b] -= 1
            acc.append((a, b))
            yield from rec(r + 1)
            acc.pop()
            cap[a] += 1
            cap[b] += 1

    yield from rec(0)


def orbit_counts(n, family="Sl", budget=DEFAULT_BUDGET):
    """Group the enumerated labeled graphs by unlabeled class.  Returns a
    list of ``(class_pairs, labeled_count, predicted_count, aut)`` where the
    prediction is ``2^(3n) (3n)! (2n)! / aut``."""
    nv = 2 * n
    by_pattern = Counter()
    for g in enumerate_graphs(n, family, budget):
        by_pattern[tuple(sorted(tuple(sorted(e)) for e in g.edges))] += 1
    by_class = Counter()
    for pattern, c in by_pattern.items():
        by_class[canonical_pairs(pattern, nv)] += c
    full = 2 ** (3 * n) * factorial(3 * n) * factorial(2 * n)
    out = []
    for cls in sorted(by_class):
        aut = automorphism_count(NumberedGraph(n, cls).to_diagram())
        out.append((cls, by_class[cls], full // aut if full % aut == 0 else full / aut, aut))
    return out


def matching_count_oracle(legs: int) -> int:
    """``(legs - 1)!!`` by the first-leg recursion."""
    if legs < 0 or legs % 2:
        raise ValidationError("number of legs must be even and nonnegative")
    if legs > 24:
        raise BudgetError("matching oracle is limited to 24 legs")
    if legs == 0:
        return 1
    return (legs - 1) * matching_count_oracle(legs - 2)


# -- colorings -------------------------------------------------------------------------

@dataclass(frozen=True)
class Coloring:
    """Vertex colors (index ``v - 1``) and edge colors (index ``r - 1``,
    0 when uncolored), with one ``(case, vertices)`` entry per component
    of the colored forest when the coloring is admissible."""

    vertex_colors: tuple
    edge_colors: tuple
    cases: tuple = field(default=(), compare=False)

    @property
    def is_simple(self) -> bool:
        return not any(self.edge_colors)


def _forest_components(g: NumberedGraph, colored):
    """Vertex sets of the colored subgraph, or None if it has a cycle."""
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for r in colored:
        a, b = g.edges[r - 1]
        ra, rb = find(a), find(b)
        if ra == rb:
            return None
        parent[ra] = rb
    comps: dict[int, list] = {}
    for v in g.vertices:
        comps.setdefault(find(v), []).append(v)
    return sorted(comps.values())


def _classify(g: NumberedGraph, verts, colored):
    """Case label of one colored-forest component, or None."""
    vs = set(verts)
    inner = [r for r in colored if g.edges[r - 1][0] in vs]
    uncolored_in = [r for r, (a, b) in enumerate(g.edges, 1)
                    if r not in colored and a in vs and b in vs]
    external = [r for r, (a, b) in enumerate(g.edges, 1) if (a in vs) != (b in vs)]
    if len(vs) == 1:
        return "V"
    if len(vs) == 2:
        (r,) = inner
        ends = set(g.edges[r - 1])
        parallel = [u for u in uncolored_in if set(g.edges[u - 1]) == ends]
        if len(parallel) == 2 and not external:
            return "theta"
        if len(parallel) == 1:
            return "D1"
        return None
    if len(vs) == 3:
        if len(external) != 1:
            return None
        x = next(v for v in g.edges[external[0] - 1] if v in vs)
        at_x = [r for r in inner if x in g.edges[r - 1]]
        if len(at_x) != 1:
            return None
        r1 = at_x[0]
        (r2,) = [r for r in inner if r != r1]
        b = (set(g.edges[r1 - 1]) & set(g.edges[r2 - 1])).pop()
        (c,) = vs - {x, b}
        want = sorted([tuple(sorted((x, c))), tuple(sorted((b, c)))])
        have = sorted(tuple(sorted(g.edges[u - 1])) for u in uncolored_in)
        return "D2" if have == want and r1 < r2 else None
    if len(vs) == 4:
        if external:
            return None
        deg = Counter(v for r in inner for v in g.edges[r - 1])
        if sorted(deg.values()) != [1, 1, 2, 2]:
            return None
        mid = [r for r in inner if all(deg[v] == 2 for v in g.edges[r - 1])]
        if len(mid) != 1:
            return None
        r1 = mid[0]
        r2, r3 = [r for r in inner if r != r1]
        a = next(v for v in g.edges[r2 - 1] if deg[v] == 1)
        b = next(v for v in g.edges[r2 - 1] if deg[v] == 2)
        c = next(v for v in g.edges[r3 - 1] if deg[v] == 2)
        d = next(v for v in g.edges[r3 - 1] if deg[v] == 1)
        want = sorted(tuple(sorted(p)) for p in ((a, b), (c, d), (a, d)))
        have = sorted(tuple(sorted(g.edges[u - 1])) for u in uncolored_in)
        return "D3" if have == want and r1 < r2 and r1 < r3 else None
    return None


def admissible_forests(g: NumberedGraph):
    """Colored edge sets that admit admissible colorings, with their cases."""
    ne = len(g.edges)
    nonloop = [r for r in range(1, ne + 1) if g.edges[r - 1][0] != g.edges[r - 1][1]]
    out = []
    for size in range(0, len(g.vertices)):
        for colored in combinations(nonloop, size):
            comps = _forest_components(g, colored)
            if comps is None:
                continue
            cases = []
            for verts in comps:
                kind = _classify(g, verts, colored)
                if kind is None:
                    break
                cases.append((kind, tuple(verts)))
            else:
                out.append((colored, tuple(cases)))
    return out


def enumerate_admissible_colorings(g: NumberedGraph, budget=DEFAULT_BUDGET):
    """Every admissible coloring.  Each valid colored forest with ``c``
    components and ``k`` colored edges is colored by a bijection from the
    ``c + k = 2n`` items onto ``N``."""
    nv = len(g.vertices)
    forests = admissible_forests(g)
    if len(forests) * factorial(nv) > budget:
        raise BudgetError("too many admissible colorings for the budget")
    out = []
    for colored, cases in forests:
        items = [("c", i) for i in range(len(cases))] + [("e", r) for r in colored]
        for perm in permutations(range(1, nv + 1)):
            vc = [0] * nv
            ec = [0] * len(g.edges)
            for (what, x), col in zip(items, perm):
                if what == "c":
                    for v in cases[x][1]:
                        vc[v - 1] = col
                else:
                    ec[x - 1] = col
            out.append(Coloring(tuple(vc), tuple(ec), cases))
    return out


def enumerate_simple_colorings(g: NumberedGraph):
    """All bijections from vertices to ``N``."""
    nv = len(g.vertices)
    return [Coloring(tuple(p), (0,) * len(g.edges), tuple(("V", (v,)) for v in g.vertices))
            for p in permutations(range(1, nv + 1))]


def admissible_cases(g: NumberedGraph, c: Coloring):
    """Structural admissibility test: the case list, or None."""
    nv = len(g.vertices)
    colored = [r for r, col in enumerate(c.edge_colors, 1) if col]
    if any(g.edges[r - 1][0] == g.edges[r - 1][1] for r in colored):
        return None
    used = set(c.vertex_colors) | {col for col in c.edge_colors if col}
    if used != set(range(1, nv + 1)) or any(not (1 <= x <= nv) for x in c.vertex_colors):
        return None
    comps = _forest_components(g, colored)
    if comps is None:
        return None
    comp_of = {v: i for i, vs in enumerate(comps) for v in vs}
    for u in g.vertices:
        for v in g.vertices:
            same_color = c.vertex_colors[u - 1] == c.vertex_colors[v - 1]
            if same_color != (comp_of[u] == comp_of[v]):
                return None
    cases = []
    for verts in comps:
        kind = _classify(g, verts, set(colored))
        if kind is None:
            return None
        cases.append((kind, tuple(verts)))
    return tuple(cases)


def is_admissible_by_pattern(g: NumberedGraph, c: Coloring) -> bool:
    """Second, independently written admissibility test matching each color
    class against the explicit pictures of the five cases."""
    nv = len(g.vertices)
    N = set(range(1, nv + 1))
    vcol = {v: c.vertex_colors[v - 1] for v in g.vertices}
    ecol = {r: c.edge_colors[r - 1] for r in range(1, len(g.edges) + 1)}
    if not all(x in N for x in vcol.values()) or not all(x in N for x in ecol.values() if x):
        return False
    # every color is used, by an edge or a vertex
    if N - set(vcol.values()) - {x for x in ecol.values() if x}:
        return False
    for r, x in ecol.items():
        a, b = g.edges[r - 1]
        if x and (a == b or vcol[a] != vcol[b]):
            return False
    for color in set(vcol.values()):
        block = sorted(v for v in g.vertices if vcol[v] == color)
        inside = set(block)
        dotted = [r for r in ecol if ecol[r] and g.edges[r - 1][0] in inside]
        plain = Counter(frozenset(g.edges[r - 1]) for r in ecol
                        if not ecol[r] and set(g.edges[r - 1]) <= inside)
        ext = Counter(v for r in ecol for v in g.edges[r - 1]
                      if v in inside and not set(g.edges[r - 1]) <= inside)
        if not _matches_picture(g, block, dotted, plain, ext):
            return False
    return True


def _matches_picture(g, block, dotted, plain, ext):
    def pair(r):
        return frozenset(g.edges[r - 1])

    k = len(block)
    if len(dotted) != k - 1:
        return False
    if k == 1:
        return True
    if k == 2:
        link = pair(dotted[0])
        if link != frozenset(block):
            return False
        if plain == Counter({link: 2}) and not ext:
            return True
        return plain == Counter({link: 1}) and ext == Counter({block[0]: 1, block[1]: 1})
    if k == 3:
        # try every labeling (a, b, c) of the picture: dotted a-b (r1), b-c (r2)
        for a, b, cc in permutations(block):
            es = {pair(r): r for r in dotted}
            if set(es) != {frozenset((a, b)), frozenset((b, cc))}:
                continue
            r1, r2 = es[frozenset((a, b))], es[frozenset((b, cc))]
            if r1 < r2 and ext == Counter({a: 1}) \
                    and plain == Counter({frozenset((a, cc)): 1, frozenset((b, cc)): 1}):
                return True
        return False
    if k == 4:
        for a, b, cc, d in permutations(block):
            es = {pair(r): r for r in dotted}
            if set(es) != {frozenset((a, b)), frozenset((b, cc)), frozenset((cc, d))}:
                continue
            r2, r1, r3 = es[frozenset((a, b))], es[frozenset((b, cc))], es[frozenset((cc, d))]
            if r1 < r2 and r1 < r3 and not ext and plain == Counter(
                    {frozenset((a, b)): 1, frozenset((cc, d)): 1, frozenset((a, d)): 1}):
                return True
        return False
    return False


# -- tadpoles ----------------------------------------------------------------------------

@dataclass(frozen=True)
class TadpoleCounts:
    tadpoles: int
    class_size: int
    theta_admissible: int


def tadpole_components(g: NumberedGraph):
    """Components made of two loops joined by an edge, as
    ``(middle_edge, loop_edge, loop_edge)`` label triples."""
    out = []
    for v in g.vertices:
        for w in g.vertices:
            if v >= w:
                continue
            loops_v = [r for r, e in enumerate(g.edges, 1) if e == (v, v)]
            loops_w = [r for r, e in enumerate(g.edges, 1) if e == (w, w)]
            mid = [r for r, e in enumerate(g.edges, 1) if set(e) == {v, w} and v != w]
            if len(loops_v) == 1 and len(loops_w) == 1 and len(mid) == 1:
                out.append((mid[0], loops_v[0], loops_w[0]))
    return out


def tadpole_class_counts(g: NumberedGraph, budget=DEFAULT_BUDGET) -> TadpoleCounts:
    """Count, by explicit enumeration, the simply colored graphs obtained by
    permuting edge labels inside tadpoles and the theta-admissible dashings
    (one dashed loop per tadpole whose label is below the middle label)."""
    tads = tadpole_components(g)
    if 6 ** len(tads) > budget:
        raise BudgetError("too many tadpoles for the budget")
    variants = set()
    admissible = 0
    for perms in product(*[list(permutations(t)) for t in tads]):
        edges = list(g.edges)
        for t, p in zip(tads, perms):
            # label p[i] now carries the edge that label t[i] carried
            for old, new in zip(t, p):
                edges[new - 1] = g.edges[old - 1]
        key = tuple(edges)
        if key in variants:
            continue
        variants.add(key)
        ways = 1
        for t, p in zip(tads, perms):
            middle = next(new for old, new in zip(t, p) if old == t[0])
            loop_labels = [new for old, new in zip(t, p) if old != t[0]]
            ways *= sum(1 for r in loop_labels if r < middle)
        admissible += ways
    return TadpoleCounts(len(tads), len(variants), admissible)
