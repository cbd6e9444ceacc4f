"""sparsedecomp: exact edge decompositions of sparse graphs.

Density measures over exact rationals, fractional edge orientations via
max-flow, a potential-driven orientation optimizer, spine construction,
certified forest and pseudoforest decompositions, and a driver that
2-colors a sparse graph's edges to avoid one pattern per color.
"""

from .allocation import (
    Allocation,
    AllocationViews,
    MoveRecord,
    Potential,
    compute_allocation,
    optimize,
    potential,
    shift_along_cycle,
)
from .decompose import (
    Decomposition,
    ViolatingSet,
    analyze_forest_violation,
    certify_m2_at_most,
    find_violating_set,
    forest_decompose_43,
    nash_williams_partition,
    pseudoforest_decompose,
)
from .density import (
    DensityCheck,
    DensityWitness,
    check_density_at_most,
    m1,
    m2,
    m43,
    max_density,
    mixed_m2,
    strictly_2_balanced_subgraph,
)
from .errors import (
    CertificationError,
    DiagnosticError,
    GoodArcNotFoundError,
    HypothesisError,
    InfeasibleError,
    InputFormatError,
    OptimizerBudgetError,
    SparseDecompError,
    UnboundedFlowError,
    UnsupportedCaseError,
    VerificationError,
)
from .flow import INF, FlowNetwork, FlowResult, allocation_network, max_flow
from .graphs import (
    ComponentPartition,
    Digraph,
    Graph,
    complete_graph,
    connected_components,
    contains_subgraph,
    count_k4,
    cycle_graph,
    empty_graph,
    is_forest,
    is_pseudoforest,
    path_graph,
    strong_components,
    underlying_graph,
)
from .ramsey import (
    ProblemInstance,
    RamseyColoring,
    order_patterns_by_density,
    ramsey_decompose,
    verify_coloring,
)
from .spine import (
    Spine,
    build_spine,
    choose_roots_good_arcs,
    extend_to_pseudospine,
    minimize_k4_reroot,
)

__version__ = "0.1.0"
