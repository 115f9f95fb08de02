"""Contracting tripods along a linking table.

Each handlebody contributes a sum of tripods weighted by its trilinear
form.  Contraction pairs the legs in every way and beads each new edge by
the equivariant linking number of the two curves.  The result does not
depend on the chosen lifts, and a second route through bijections onto
vertex slots gives the same answer.
"""

import random

from beadedjacobi.contraction import (LinkingTable, SurgeryDatum, TrilinearForm, bijection_sum_all,
                                      surgery_rhs)
from beadedjacobi.laurent import TRIVIAL_CONTEXT
from beadedjacobi.samples import random_datum

ctx = TRIVIAL_CONTEXT
form = TrilinearForm(3, {(1, 2, 3): 1})
entries = {((1, j), (2, k)): ctx.from_laurent(1 if j == k else 0) for j in (1, 2, 3) for k in (1, 2, 3)}
entries.update({((a, j), (a, k)): ctx.from_laurent(0) for a in (1, 2) for j in (1, 2, 3) for k in (1, 2, 3)
                if j <= k})
datum = SurgeryDatum(1, [form, form], [0, 0], LinkingTable(entries, ctx), ctx)

print("Two tripods linked index by index contract to one theta:")
print(surgery_rhs(datum).to_text())

rng = random.Random(1)
d = random_datum(rng, 1)
out = surgery_rhs(d)
print(f"A random datum gives {len(out)} classes.")
print("Shifting the lift of handlebody 1 by 3 leaves it unchanged:",
      surgery_rhs(d.with_shift(0, d.shifts[0] + 3)) == out)
print("Summing over all 720 bijections per choice gives the same result:",
      bijection_sum_all(d) == out)
