"""Counting labeled trivalent graphs, matchings and tadpole classes.

Labeled graphs of degree n have vertices 1..2n and 3n ordered oriented
edges.  Grouping them by shape reproduces the orbit-size formula
2^(3n) (3n)! (2n)! / #Aut.
"""

from collections import Counter

from beadedjacobi.enumeration import (count_graphs, enumerate_admissible_colorings, enumerate_graphs,
                                      matching_count_oracle, orbit_counts, tadpole_class_counts)

for fam, label in (("Su", "no loops"), ("S", "connected, no loops"), ("Sl", "loops allowed")):
    print(f"{label:>20}: n=1 {count_graphs(1, fam):>4}, n=2 {count_graphs(2, fam):>7}")

print("\nOrbits in degree 2 with loops allowed:")
for cls, labeled, predicted, aut in orbit_counts(2, "Sl"):
    print(f"  {cls}: {labeled} labeled, #Aut {aut}, formula {predicted}")

print("\nPerfect matchings of 6n legs:", [matching_count_oracle(6 * n) for n in (1, 2, 3, 4)])

tally = Counter()
for g in enumerate_graphs(2, "Sl"):
    c = tadpole_class_counts(g)
    tally[(c.tadpoles, c.class_size, c.theta_admissible)] += 1
print("\nTadpoles, class size and theta-admissible count over degree 2:")
for (t, size, adm), k in sorted(tally.items()):
    print(f"  {t} tadpoles: class size {size}, theta-admissible {adm} ({k} graphs)")

g = next(enumerate_graphs(2, "Su"))
cases = Counter(kind for c in enumerate_admissible_colorings(g) for kind, _ in c.cases)
print(f"\nAdmissible colorings of {g.dsl()}: case usage {dict(cases)}")
