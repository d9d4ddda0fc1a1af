# Grouping graphs by structure.
#
# Ten noisy cliques and ten noisy cycles; Ward clustering of the pairwise
# similarity matrix separates them at k=2.
import numpy as np

from deltacon import corrupt_percent, from_name
from deltacon.cluster import cut, pairwise_similarity, ward_cluster

graphs = [corrupt_percent(from_name("K20"), 5, i) for i in range(10)]
graphs += [corrupt_percent(from_name("C20"), 5, 100 + i) for i in range(10)]

sim = pairwise_similarity(graphs, g=5, rng_seed=0)
np.set_printoptions(precision=2, linewidth=150)
print(sim[:4, :4], "...")
print("within cliques ~", sim[:10, :10][np.triu_indices(10, 1)].mean().round(3),
      " cliques vs cycles ~", sim[:10, 10:].mean().round(3))

tree = ward_cluster(sim)
print("last merges (a, b, height, size):", tree.merges[-3:])
print("labels at k=2:", cut(tree, 2))
