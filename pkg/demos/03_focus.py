# Random damage vs. damage concentrated on a few nodes.
#
# Same number of edges removed either way; removing all edges of a handful
# of nodes should look like the bigger change.
from deltacon import random_graph
from deltacon.properties import run_p4

g = random_graph(1000, 5000, 8)
res = run_p4(g, fractions=[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8])
print("fraction  random  targeted   gap")
for f, r, t in zip(res.fractions, res.sim_random, res.sim_targeted):
    print(f"{f:8.1f}  {r:.4f}  {t:.4f}   {r - t:.4f}")
print("random >= targeted everywhere:", res.passed)
print("gap shrinks with damage:", res.converges)
