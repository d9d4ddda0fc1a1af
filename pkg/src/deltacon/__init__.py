"""Connectivity similarity between graphs that share a node set."""
from .affinity import (
    AffinityMatrix,
    Partition,
    full_affinity,
    random_partition,
    reduced_affinity,
    solve_affinity_column,
)
from .anomaly import AnomalyReport, control_limits, detect_anomalies, similarity_timeline
from .baselines import ged, lambda_distance, spectrum, veo
from .cluster import Dendrogram, cut, pairwise_similarity, ward_cluster
from .exceptions import ConvergenceError, ParseError, SizeError, ValidationError
from .generators import (
    corrupt_percent,
    from_name,
    generate,
    parse_name,
    random_graph,
    remove_edges_random,
    remove_edges_targeted,
)
from .graph import (
    Graph,
    epsilon,
    load_edge_list,
    matrix_view,
    shared_epsilon,
    union_node_space,
    write_edge_list,
)
from .similarity import (
    Method,
    SimilarityResult,
    deltacon,
    deltacon0,
    deltacon_mean,
    rooted,
    sim_from_distance,
)

__version__ = "0.1.0"
