"""Beaded diagrams as data: the text format, canonical keys and symmetry.

Two diagrams get the same canonical key exactly when a relabeling carries
one to the other, keeping orientations, directions and beads.
"""

from beadedjacobi import automorphism_count, canonical_key, format_diagram, parse_diagram, theta
from beadedjacobi.diagram import NumberedGraph, canonical_vertex_orientation

text = """
delta: t - 1 + t^-1
e1: v1 -> v2 [t]
e2: v1 -> v2
e3: v1 -> v2 [t^-2 / delta]
or v1 = (e1.s, e2.s, e3.s)
or v2 = (e3.t, e2.t, e1.t)
"""
d = parse_diagram(text)
print("A theta graph read from text and written back:")
print(format_diagram(d))

relabeled = d.relabel([1, 0], [2, 0, 1])
print("Relabeled copy has the same key:", canonical_key(relabeled) == canonical_key(d))
print("Flipping one vertex changes it:", canonical_key(d.flip_vertex(0)) != canonical_key(d))

t = theta()
print("\nThe plain theta has", automorphism_count(t), "automorphisms;",
      automorphism_count(t, oriented=True), "of them keep the vertex orientations, so theta is not forced to 0")

g = NumberedGraph(2, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)))
orientation, sign = canonical_vertex_orientation(g)
print("\nCanonical vertex orientation of K4 (sign", sign, "):")
for v in g.vertices:
    print(f"  v{v}: {orientation[v]}")
