"""Search toolkit for edge and vertex Folkman number bounds."""

from .graph import (
    Graph,
    Graph6Error,
    add_vertex,
    complement,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    decode_graph6,
    duplicate_vertex,
    empty_graph,
    encode_graph6,
    from_edges,
    has_k4,
    is_maximal_k4_free,
    is_plus_k3,
    is_sperner,
    join,
    join_complete,
    path_graph,
    petersen_graph,
    relabel,
    remove_vertices,
)
from .invariants import (
    DegreeProfile,
    TriangleIndex,
    chromatic_at_least,
    chromatic_number,
    clique_number,
    degree_profile,
    independence_number,
    is_k3_free_subset,
    triangle_index,
)
from .canon import CanonicalForm, canonical_form, canonical_graph, dedup_stream
from .arrowing import (
    EdgeColoring,
    VertexColoring,
    arrows_edge_33,
    arrows_edge_33_joined,
    arrows_vertex_233,
    arrows_vertex_33,
    edge_33_witness,
    maximal_independent_sets,
    oracle_edge_33,
    oracle_vertex,
    vertex_233_witness,
    vertex_33_witness,
)
from .extender import (
    SearchParams,
    Selection,
    SetFamily,
    admissible_selections,
    build_candidate,
    maximal_k3_free_family,
    plus_k3_subgraphs,
    run_algorithm1,
    sperner_branch,
)
from .pipeline import (
    StageManifest,
    StatsTable,
    check_expectations,
    compute_stats,
    load_expectations,
    load_graphs,
    parse_filter,
    render_stats,
    run_ingest,
    run_stage,
    stream_graphs,
    write_graph6,
)
