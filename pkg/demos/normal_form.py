"""Normal forms: the fast quotient by bead multilinearity, holonomy,
edge conjugation, antisymmetry and the two tadpole rules.
"""

from fractions import Fraction

from beadedjacobi import reduce, tadpole_on, theta

t = theta(beads=["t", 1, 1])
print("theta(t, 1, 1) normalizes to")
print(reduce(t).to_text())

print("Holonomy: multiplying the beads at a vertex by t changes nothing.")
print("  same class:", reduce(t.holonomy(0, 1)) == reduce(t))
print("Antisymmetry: flipping a vertex negates.")
print("  negated:", reduce(t.flip_vertex(1)) == reduce(t) * -1)

base = theta(beads=["t", "2 + t^3", "t^-1"])
loop = tadpole_on(base, 0, loop_bead="t")
print("\nA tadpole whose loop carries b equals half the tadpole with b - conj(b):")
half = tadpole_on(base, 0, loop_bead="t - t^-1")
print("  equal:", reduce(loop) == reduce(half) * Fraction(1, 2))
stick = tadpole_on(base, 0, loop_bead="t", stick_bead="3t^5 - t")
print("A stick bead P may be replaced by P(1) = 2:")
print("  equal:", reduce(stick) == reduce(loop) * 2)

print("\nWith loop bead 1 a tadpole vanishes:", reduce(tadpole_on(base, 0)).is_zero())
print("On the plain theta even a beaded loop vanishes, through an odd symmetry:",
      reduce(tadpole_on(theta(), 0, loop_bead="t^2")).is_zero())
