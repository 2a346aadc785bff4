"""Independent sets in cubic graphs, disguised as channels.

Any 3-regular graph turns into a channel (inputs = vertices, outputs =
edges, mass 1/3 per incident edge).  For budgets below 1/3 an admissible
decoding set must grab all three incident edges, so packing decoding sets
is packing closed neighborhoods: the capacity's codebook size equals the
graph's independence number.  That makes the capacity problem at least as
hard as a classic NP-hard one; here we just watch the equality hold.
"""

from fractions import Fraction

from oneshotcap import (
    gen_random_cubic,
    named_cubic_graphs,
    serialize_channel,
    gen_from_cubic_graph,
    verify_reduction,
)

eps = Fraction(1, 4)

print("named corpus:")
for name, g in named_cubic_graphs().items():
    report = verify_reduction(g, eps)
    print(f"  {name:<9} alpha = {report.graph_alpha}  "
          f"channel k = {report.channel_capacity_k}  agree = {report.agree}")

print("\nrandom cubic graphs (pairing model, seeded):")
for n in (8, 10, 12):
    g = gen_random_cubic(n, seed=n)
    report = verify_reduction(g, eps)
    print(f"  n = {n:>2}: alpha = {report.graph_alpha}, agree = {report.agree}, "
          f"graph witness = {report.graph_witness}")

g = named_cubic_graphs()["k4"]
print("\nthe K4 channel itself:")
print(serialize_channel(gen_from_cubic_graph(g)), end="")
