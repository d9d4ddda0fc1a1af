# Spotting the day a graph stream changes.
#
# Twenty daily snapshots: the first ten are noisy copies of one graph, the
# rest noisy copies of another. Consecutive similarity drops once, at the
# switch, and the moving-range chart flags only that step.
import tempfile
from pathlib import Path

from deltacon import random_graph, remove_edges_random, write_edge_list
from deltacon.anomaly import control_limits, load_snapshot_dir, similarity_timeline

before, after = random_graph(200, 1000, 11), random_graph(200, 1000, 12)
days = [remove_edges_random(before, 0.05, t) for t in range(10)]
days += [remove_edges_random(after, 0.05, t) for t in range(10, 20)]

with tempfile.TemporaryDirectory() as d:
    for t, g in enumerate(days):
        write_edge_list(g, Path(d) / f"day{t:02d}.edges")
    snaps = load_snapshot_dir(d)  # same as: python -m deltacon anomaly --dir d

scores = similarity_timeline(snaps, g=5, seeds=range(10))
rep = control_limits(scores)
print(f"median {rep.median:.4f}  sigma {rep.sigma_hat:.4f}  lower {rep.lower_limit:.4f}")
for t, s in enumerate(scores):
    mark = "  <-- anomaly" if t in rep.flagged else ""
    print(f"step {t:2d} {s:.4f}{mark}")
print(rep.to_csv().splitlines()[0])
