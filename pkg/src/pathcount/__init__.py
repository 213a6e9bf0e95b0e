"""Counting and uniform sampling of graph labelings over path decompositions."""

from .cliques import count_cliques, sample_clique
from .decomposition import (NicePathDecomposition, PathDecomposition, decompose, find_decomposition,
                            parse_pd, to_nice, validate)
from .graph import Graph, parse_graph, serialize_graph
from .labeling import (count_extensions, count_valid_labelings, sample_labeling, sample_labeling_fast,
                       sample_labelings)
from .problems import LabelingProblem, coloring, downset, independent_set
from .stable import (SMInstance, build_rotation_digraph, count_stable_matchings, gale_shapley, parse_sm,
                     sample_stable_matching)

__version__ = "0.1.0"
