"""The Jacobi (IHX) relation is applied only inside a finite window of
bead exponents.  Inside the window, membership questions are answered
exactly by row reduction.
"""

from beadedjacobi import dumbbell, reduce, theta
from beadedjacobi.ihx import ihx_closure

for n, connected in ((1, False), (2, True), (2, False)):
    q = ihx_closure(n, (0, 0), connected=connected)
    kind = "connected" if connected else "all"
    print(f"degree {n}, {kind} diagrams, unbeaded: {len(q.generators)} normal forms, "
          f"{q.relations} relations, quotient dimension {q.dimension}")

q = ihx_closure(1, (0, 0))
print("\ntheta is nonzero:", not q.is_zero(theta()))
print("the dumbbell is zero:", q.is_zero(dumbbell()))

t2 = reduce(theta()).union_product(reduce(theta()))
q2 = ihx_closure(2, (0, 0))
print("theta squared survives in degree 2:", not q2.is_zero(t2))
