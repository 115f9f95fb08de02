"""Laurent polynomials, denominators and beads.

A bead is a Laurent polynomial divided by a fixed denominator delta.  This
script builds a few, conjugates them and evaluates them at t = 1.
"""

from beadedjacobi import Bead, LaurentPoly, conjugate_bead, log_derivative, validate_alexander

P = LaurentPoly.parse

print("Arithmetic is exact over the rationals:")
p = P("t^-1 - 1 + t")
q = P("1/2 t^2 + 3")
print(f"  ({p}) * ({q}) = {p * q}")
print(f"  value at t=1 of the product: {(p * q).value_at_one()}")

print("\nDenominators must satisfy delta(1) = 1 and delta(1/t) = t^-s delta(t), s in {0, 1}:")
for text in ["t - 1 + t^-1", "1/2 + 1/2 t"]:
    ctx = validate_alexander(P(text))
    print(f"  delta = {ctx.delta}: symmetry shift s = {ctx.s}")

ctx = validate_alexander(P("1/2 + 1/2 t"))
b = Bead(P("t^2"), ctx)
c = conjugate_bead(b)
print(f"\nConjugating t^2 / delta over delta = {ctx.delta} gives numerator {c.numerator}")
print(f"  and conjugating again returns {conjugate_bead(c).numerator}")

num, den = log_derivative(P("t - 1 + t^-1"))
print(f"\nThe symbol t delta'/delta for the trefoil is ({num}) / ({den})")
