"""Colorings with small monochromatic components via balanced separators."""
from .graph import (Coloring, ComponentReport, Graph, GraphError, UnionFind, avg_degree, components,
                    edge_subgraph, is_connected, line_graph, line_graph_avg_degree, max_mono_component)
from .separators import (FallbackProvider, PlanarProvider, SeparatorError, SeparatorProfile, SeparatorResult,
                         TreeDecomposition, TreewidthProvider, fallback_separator, planar_separator,
                         treewidth_separator, verify_separator)
from .coloring import (FragmentationRun, audit_run, hamming_cube_edge_coloring, layer_coloring,
                       t_color_via_separators, threshold, two_color_via_separators)
from .exact import ExactResult, density_lower_bound, exact_mcc, naive_mcc
from .generators import InstanceSpec, build_instance

__version__ = "0.1.0"
