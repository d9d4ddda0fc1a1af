# Runtime against edge count, fixed g. Roughly doubling time per doubling
# of edges means linear scaling; jumps near a cache boundary are common.
from deltacon.cli import cmd_bench

rows = cmd_bench([2 ** k for k in range(14, 20)], g=5, repeats=3)
prev = None
for r in rows:
    ratio = "" if prev is None else f"x{r['runtime_s'] / prev:.2f}"
    print(f"m={r['m']:8d} n={r['n']:7d} {r['runtime_s']:.3f}s {ratio}")
    prev = r["runtime_s"]

# doubling g at fixed m roughly doubles the work
g5, g10 = cmd_bench([2 ** 18], g=5)[0], cmd_bench([2 ** 18], g=10)[0]
print("g 5 -> 10:", round(g10["runtime_s"] / g5["runtime_s"], 2))
