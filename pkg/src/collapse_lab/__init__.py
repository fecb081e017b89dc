"""Graph contractibility classes, clique-complex homology and small-graph census."""

from .canon import automorphism_count, canonical_form, canonical_key, isomorphic
from .contract import (
    FRAGMENT_NOTE,
    AxiomReport,
    ClassificationRecord,
    DeleteEdge,
    DeleteVertex,
    GlueEdge,
    GlueVertex,
    Memo,
    MoveScript,
    PreconditionError,
    ReductionWitness,
    ScriptError,
    bounded_i_search,
    check_axiom,
    classify,
    dismantlable0,
    factor_edge_move,
    k_dismantlable,
    min_dismantle_level,
    order_matters_construct,
    order_sensitivity,
    sic_exact,
    sic_greedy,
    svic_exact,
    svic_greedy,
    verify_script,
)
from .enumeration import CensusResult, CensusSpec, enumerate_connected, ingest_graph6_stream, run_census
from .graph import (
    CapacityError,
    Graph,
    Graph6Error,
    closed_neighborhood,
    common_neighborhood,
    emit_edge_list,
    emit_graph6,
    induced_subgraph,
    open_neighborhood,
    parse_edge_list,
    parse_graph6,
)
from .homology import HomologyProfile, clique_complex, homology, is_trivial_homology, smith_normal_form

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
