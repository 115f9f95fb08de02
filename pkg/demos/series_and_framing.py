"""Graded series: exp, log, the partition form of exp, and the framing
correction by the anomaly.
"""

import random
from fractions import Fraction

from beadedjacobi import reduce, theta
from beadedjacobi.samples import random_series
from beadedjacobi.series import (AnomalySeries, GradedSeries, exp, exp_via_partitions, framing_correct, log,
                                 partition_label_count)

z = random_series(random.Random(1), 4)
Z = exp(z)
print("A random connected series z and Z = exp(z):")
for n in range(1, 5):
    print(f"  degree {n}: z has {len(z[n])} terms, Z has {len(Z[n])}")
print("exp by partitions agrees:", exp_via_partitions(z) == Z)
print("log recovers z:", log(Z) == z)

print("\nSplitting 6 labels into two blocks of 3 can be done in",
      partition_label_count(2, [(1, 2)]), "ways")

alpha = AnomalySeries(5)
print("\nThe anomaly is theta/12 in degree 1; odd degrees", list(alpha.unknown), "are not known and set to 0")
corrected = framing_correct(GradedSeries.one(2), 4)
print("Correcting the unit series with p1 = 4 gives in degree 1:")
print(corrected[1].to_text())
print("which is -theta/12:", corrected[1] == reduce(theta()) * Fraction(-1, 12))
