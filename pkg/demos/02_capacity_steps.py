"""Capacity as a step function of the error budget.

The funnel family makes the point sharply: with zero error tolerance only
one symbol survives (every other symbol can leak into output 0), but each
time the budget crosses a leak probability another symbol becomes usable.
The closed form needs no search at all, and the generic engine lands on
exactly the same steps.
"""

from fractions import Fraction

from oneshotcap import (
    FunnelSpec,
    capacity_curve,
    funnel_closed_form,
    gen_funnel,
    max_capacity,
)

spec = FunnelSpec.make(5, ["1/10", "1/5", "3/10", "2/5"])
c = gen_funnel(spec)

print("funnel channel, leaks", [str(e) for e in spec.e])
for eps in map(Fraction, ["0", "1/20", "1/10", "1/4", "3/10", "1/2"]):
    k_engine = max_capacity(c, eps).codebook_size
    k_closed = funnel_closed_form(spec, eps)
    assert k_engine == k_closed
    print(f"  eps = {str(eps):>5}: codebook size {k_engine}")

# The curve recovers every breakpoint exactly; note they sit exactly at
# the leak probabilities, closed/open boundaries included.
curve = capacity_curve(c, "max")
print("\nexact breakpoints (threshold -> size):")
for threshold, k in curve.breakpoints:
    print(f"  {str(threshold):>5} -> {k}")

print("\nCSV form:")
print(curve.to_csv(), end="")

# Exactness matters at the boundary: 1/10 is a breakpoint, and one
# trillionth below it the answer is different.
at = Fraction(1, 10)
below = at - Fraction(1, 10**12)
print(f"\nk({at}) = {curve.value_at(at)}, k({below}) = {curve.value_at(below)}")
