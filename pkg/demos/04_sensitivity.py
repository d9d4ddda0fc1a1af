# More corruption should mean lower similarity, and a coarse partition
# should rank corrupted copies the same way as the exact computation.
import time

import numpy as np

from deltacon import corrupt_percent, deltacon, deltacon0, random_graph

base = random_graph(500, 2500, 9)
levels = [2, 5, 10, 20, 40, 60, 80]
copies = [corrupt_percent(base, p, 9) for p in levels]

t0 = time.perf_counter()
exact = [deltacon0(base, c).similarity for c in copies]
print(f"dc0         {np.round(exact, 4)}  ({time.perf_counter() - t0:.1f}s)")
for g in (10, 100, 500):
    t0 = time.perf_counter()
    sims = [deltacon(base, c, g=g, rng_seed=0).similarity for c in copies]
    same = list(np.argsort(sims)) == list(np.argsort(exact))
    print(f"dc g={g:<4d}  {np.round(sims, 4)}  same ranking: {same}  ({time.perf_counter() - t0:.1f}s)")
