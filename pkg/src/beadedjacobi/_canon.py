"""Canonical labeling by individualization and refinement.

Graphs arrive in a compact form:

``kinds``   one sortable tuple per vertex; ``(0,)`` is trivalent, anything
            starting with 1 is a univalent leg.
``rots``    per vertex, the tuple of half-edge ids in cyclic order.  Half-edge
            ``2*e`` is the source end of edge ``e`` and ``2*e + 1`` its target.
``edges``   per edge ``(source_vertex, target_vertex, label)``.

Two encodings are produced.  ``iso_code`` identifies a graph up to
isomorphism preserving cyclic orders, edge directions and edge labels.
``normal_code`` works with integer bead exponents and additionally quotients
by edge reversal (``k -> s - k``), generalized holonomy and orientation
flips, returning the sign picked up on the way, or 0 when the graph is
equivalent to its own negative.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import permutations, product

EVEN3 = frozenset({(0, 1, 2), (1, 2, 0), (2, 0, 1)})


def _half_vertex(rots, nh):
    hv = [0] * nh
    for v, hs in enumerate(rots):
        for h in hs:
            hv[h] = v
    return hv


def refine(colors, adj):
    """Equitable refinement of ``colors``; ``adj[v]`` lists ``(u, label)``."""
    n = len(colors)
    ncells = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted((colors[u], lab) for u, lab in adj[v]))) for v in range(n)]
        order = sorted(set(sigs))
        rank = {sg: i for i, sg in enumerate(order)}
        new = [rank[sg] for sg in sigs]
        if len(order) == ncells:
            return new
        colors, ncells = new, len(order)


def leaves(colors, adj):
    """Discrete colorings at the leaves of the search tree."""
    colors = refine(colors, adj)
    n = len(colors)
    counts = Counter(colors)
    if len(counts) == n:
        yield colors
        return
    target = min(c for c, m in counts.items() if m > 1)
    for v in range(n):
        if colors[v] != target:
            continue
        c2 = [2 * c + (1 if (c == target and u != v) else 0) for u, c in enumerate(colors)]
        yield from leaves(c2, adj)


def _initial_colors(kinds, extra=None):
    sig = [(k, extra[v] if extra else ()) for v, k in enumerate(kinds)]
    order = sorted(set(sig))
    rank = {s: i for i, s in enumerate(order)}
    return [rank[s] for s in sig]


def _blocks(kinds_by_pos):
    off = []
    t = 0
    for k in kinds_by_pos:
        off.append(t)
        t += 3 if k[0] == 0 else 1
    return off, t


def normal_code(kinds, rots, edges, s, holonomy=True):
    """Return ``(code, sign)`` with ``sign`` in ``{1, -1, 0}``."""
    return _normal_code(tuple(kinds), tuple(tuple(r) for r in rots), tuple(edges), s, holonomy)


@lru_cache(maxsize=400_000)
def _normal_code(kinds, rots, edges, s, holonomy):
    n = len(kinds)
    nh = 2 * len(edges)
    hv = _half_vertex(rots, nh)
    adj = [[(hv[h ^ 1], 0) for h in rots[v]] for v in range(n)]
    loops = [0] * n
    for (a, b, _k) in edges:
        if a == b:
            loops[a] += 1
    best = None
    signs = set()
    for pos in leaves(_initial_colors(kinds, loops), adj):
        order = sorted(range(n), key=pos.__getitem__)
        kinds_p = tuple(kinds[v] for v in order)
        off, total = _blocks(kinds_p)
        vp = [0] * total
        for p, k in enumerate(kinds_p):
            for j in range(3 if k[0] == 0 else 1):
                vp[off[p] + j] = p
        per_vertex = []
        for v in range(n):
            hs = sorted(rots[v], key=lambda h: pos[hv[h ^ 1]])
            groups = []
            for h in hs:
                key = pos[hv[h ^ 1]]
                if groups and groups[-1][0] == key:
                    groups[-1][1].append(h)
                else:
                    groups.append((key, [h]))
            if all(len(g) == 1 for _, g in groups):
                per_vertex.append([tuple(hs)])
            else:
                opts = [list(permutations(g)) for _, g in groups]
                per_vertex.append([sum(c, ()) for c in product(*opts)])
        for combo in product(*per_vertex):
            hid = [0] * nh
            for v, seq in enumerate(combo):
                base = off[pos[v]]
                for j, h in enumerate(seq):
                    hid[h] = base + j
            es = []
            for e, (_a, _b, k) in enumerate(edges):
                x, y = hid[2 * e], hid[2 * e + 1]
                if x < y:
                    es.append((x, y, k))
                else:
                    es.append((y, x, s - k))
            es.sort()
            if holonomy:
                es = _holonomy(es, vp, n)
            sign = 1
            for v in range(n):
                r = rots[v]
                if len(r) == 3:
                    base = off[pos[v]]
                    if (hid[r[0]] - base, hid[r[1]] - base, hid[r[2]] - base) not in EVEN3:
                        sign = -sign
            code = (kinds_p, tuple(es))
            if best is None or code < best:
                best = code
                signs = {sign}
            elif code == best:
                signs.add(sign)
    return best, (0 if len(signs) > 1 else signs.pop())


def _holonomy(es, vp, n):
    """Forest-normalize a sorted, low-to-high oriented edge list."""
    ks = holonomy_normalize_edges([(vp[a], vp[b], k) for (a, b, k) in es], n)
    return [(a, b, k) for (a, b, _), (_, _, k) in zip(es, ks)]


def holonomy_normalize_edges(edges, n):
    """Forest-normalize exponents for edges given as ``(u, w, k)`` on
    vertices ``0..n-1``, keeping orientations; Kruskal runs in list order."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = [[] for _ in range(n)]
    for (u, w, k) in edges:
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[ru] = rw
            tree[u].append((w, -k))
            tree[w].append((u, k))
    f = [None] * n
    for root in range(n):
        if f[root] is not None:
            continue
        f[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y, d in tree[x]:
                if f[y] is None:
                    f[y] = f[x] + d
                    stack.append(y)
    return [(u, w, k + f[w] - f[u]) for (u, w, k) in edges]


def iso_code(kinds, rots, edges):
    """Canonical encoding up to orientation-, direction- and label-preserving
    isomorphism.  Edge labels must be sortable."""
    kinds = tuple(kinds)
    n = len(kinds)
    nh = 2 * len(edges)
    hv = _half_vertex(rots, nh)
    lab = [edges[h >> 1][2] for h in range(nh)]
    adj = [[(hv[h ^ 1], (h & 1, lab[h])) for h in rots[v]] for v in range(n)]
    best = None
    for pos in leaves(_initial_colors(kinds), adj):
        order = sorted(range(n), key=pos.__getitem__)
        kinds_p = tuple(kinds[v] for v in order)
        off, _ = _blocks(kinds_p)
        per_vertex = []
        for v in range(n):
            r = tuple(rots[v])
            rotations = [r[i:] + r[:i] for i in range(len(r))]
            keyed = [(tuple((pos[hv[h ^ 1]], h & 1, lab[h]) for h in rr), rr) for rr in rotations]
            m = min(k for k, _ in keyed)
            per_vertex.append([rr for k, rr in keyed if k == m])
        for combo in product(*per_vertex):
            hid = [0] * nh
            for v, seq in enumerate(combo):
                base = off[pos[v]]
                for j, h in enumerate(seq):
                    hid[h] = base + j
            es = tuple(sorted((hid[2 * e], hid[2 * e + 1], edges[e][2]) for e in range(len(edges))))
            code = (kinds_p, es)
            if best is None or code < best:
                best = code
    return best


def components(n, edges):
    """Connected components (sorted vertex lists) of the vertex graph."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b, *_rest) in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())
