"""Well-graded set systems, VC-dimension, duality and half-graph recognition."""

from .caps import Caps, caps_override, debug_asserts, get_caps, set_caps
from .classifiers import (
    Classification,
    classify,
    is_semitree,
    is_tree_distinct_labels,
    is_uniformly_directed_rooted_tree_after_flip,
    semitree_witness,
    sinks,
    sources,
    uniformly_directed_semitree_centres,
    verdict_self_and_dual,
)
from .duality import (
    DualSystem,
    classify_dual_properties,
    dual,
    ess_dual,
    r_values,
    second_dual_is_purification,
)
from .errors import *  # noqa: F401,F403
from .graphs import (
    Graph,
    HalfGraphDecomposition,
    between_full_union,
    clique_system,
    closed_neighbourhood_system,
    decompose_neighbourhood_wg,
    graph_complement,
    independent_set_system,
    make_co_half_graph,
    make_half_graph,
    neighbourhood_flags,
    neighbourhood_system,
    twin_analysis,
)
from .oneinclusion import (
    OneInclusionGraph,
    below,
    build_graph,
    cut_set,
    distance_table,
    is_well_graded,
    reverse,
    st_union,
    to_dot,
)
from .oracle import enumerate_graphs, enumerate_systems, recheck, run_all_checks
from .setsystem import (
    ElementId,
    SetSystem,
    additionality,
    complement_family,
    essential_domain,
    find_isomorphism,
    flip,
    is_isomorphic,
    purify,
    trace,
)
from .shattering import (
    ShatterReport,
    check_sandwich,
    is_extremal,
    is_maximum,
    shatter_report,
    vc_dimension,
)

__version__ = "0.1.0"
