"""Hydrostructure of walks and safe-and-complete enumeration of walks for
arc-covering models on directed multigraphs."""

from .errors import (CycleGraphError, GraphParseError, HydrowalksError,
                     ModelError, OracleSizeError, WalkError)
from .graph import (Graph, GraphFile, SccDecomposition, format_graph,
                    node_centric_transform, parse_graph, scc_decompose,
                    st_sets_transform)
from .hydrostructure import (Hydrostructure, HydroSccView,
                             build_hydrostructure, build_visible_hydrostructure,
                             hydro_scc_view, hydro_to_json_dict,
                             restricted_backward_reachability,
                             restricted_forward_reachability, split_single_arc,
                             visible_adjacency)
from .walk_cover import (INF, StInducedView, WalkCoverResult, min_walk_cover,
                         st_restricted_reachability)
from .safety import (SafetyModel, Verdict, sequence_decomposition,
                     inter_scc_univocal_extension, split_k_circular,
                     suffix_prefix_covered, verify_circular,
                     verify_covering_circular, verify_covering_linear,
                     verify_linear, verify_linear_general, verify_model,
                     verify_visible)
from .enumeration import (IncrementalAnnotation, RiverStats, RiverStream,
                          WorstCaseFamily, candidate_circular_walk,
                          enumerate_maximal_circular, enumerate_maximal_linear,
                          incremental_annotation, river_property_stream,
                          two_pointer, worst_case_family)
from .oracle import (OracleEngine, enumerate_small_graphs, oracle_min_walk_cover,
                     oracle_safe, oracle_witness)
from .walks import (Walk, WalkAnatomy, format_walk, heart_and_wings,
                    is_subwalk, parse_walk, univocal_extension, validate_walk)

__all__ = [name for name in dir() if not name.startswith("_")]
