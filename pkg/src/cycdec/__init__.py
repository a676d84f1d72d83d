"""Cycle decompositions of complete bipartite multigraphs.

Constructions via twin-vertex edge switching and cycle joining, exact
small-instance search, and independent certificate verification.
"""

from .conditions import Verdict, check_constructive_hypotheses, check_necessary, nu_count
from .constructor import (
    BaseUnavailableError,
    ConstructiveGapError,
    InputError,
    MergePlan,
    NotCoveredError,
    PlanInfeasibleError,
    base_even,
    base_odd,
    decompose,
    plan_merges,
    simple_base,
)
from .certify import (
    CertifyResult,
    dump_certificate,
    load_certificate,
    verify_decomposition,
    verify_packing,
)
from .joining import (
    PathSplit,
    SplitOutcome,
    SurgeryDefectError,
    SurgeryPreconditionError,
    chain_split,
    close_component,
    concentrate_degree,
    extract_two_cycles,
    find_path_split,
    gather_to_chain,
    join_two_cycles,
    shift_degree,
    split_component,
)
from .model import (
    Cycle,
    EdgeMultiset,
    GraphSpec,
    LeaveComponent,
    LeaveStructure,
    LengthSeq,
    MalformedCycleError,
    ModelError,
    NotEvenError,
    OverfullError,
    Packing,
    Vertex,
    canonicalize_cycle,
    classify_leave,
    compute_leave,
    left,
    pair_of,
    right,
)
from .oracle import (
    KERNEL,
    OracleResult,
    decompose_multiset,
    decomposable_lengths,
    even_partitions,
    oracle_decide,
    oracle_enumerate,
)
from .switching import (
    InfeasibleSwitchError,
    InvalidTwinError,
    NoExcessError,
    SwitchLog,
    SwitchRecord,
    perform_switch,
    switch_edge_set,
)

__version__ = "0.1.0"
