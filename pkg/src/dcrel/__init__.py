"""Exact source-terminal network reliability under a hop budget."""

from .disjoint import DisjointPairResult, min_disjoint_pair
from .engine import FactorOutcome, factor, has_perfect_path, pivot_select
from .irrelevance import (
    IrrelevanceReport,
    exact_irrelevant,
    irrelevant_link_ids,
    relevance_threshold,
    sufficient_condition,
    sweep,
)
from .network import (
    Link,
    Network,
    ParseError,
    SystemState,
    UNREACHABLE,
    parse_network,
    phi,
    serialize_network,
)
from .oracles import (
    ENUM_MAX_LINKS,
    GuardError,
    IE_MAX_MINPATHS,
    McEstimate,
    MinpathSet,
    enum_exact,
    enumerate_minpaths,
    inclusion_exclusion,
    monte_carlo,
)
from .reductions import (
    DEFAULT_RULES,
    ReductionStep,
    ReductionTrace,
    apply_all,
    parallel_links,
    pending_node,
    perfect_neighbors,
    perfect_path,
    prune_dangling,
    prune_irrelevant,
    replay_trace,
)

__version__ = "0.1.0"

__all__ = [
    "DisjointPairResult",
    "min_disjoint_pair",
    "FactorOutcome",
    "factor",
    "has_perfect_path",
    "pivot_select",
    "IrrelevanceReport",
    "exact_irrelevant",
    "irrelevant_link_ids",
    "relevance_threshold",
    "sufficient_condition",
    "sweep",
    "Link",
    "Network",
    "ParseError",
    "SystemState",
    "UNREACHABLE",
    "parse_network",
    "phi",
    "serialize_network",
    "ENUM_MAX_LINKS",
    "GuardError",
    "IE_MAX_MINPATHS",
    "McEstimate",
    "MinpathSet",
    "enum_exact",
    "enumerate_minpaths",
    "inclusion_exclusion",
    "monte_carlo",
    "DEFAULT_RULES",
    "ReductionStep",
    "ReductionTrace",
    "apply_all",
    "parallel_links",
    "pending_node",
    "perfect_neighbors",
    "perfect_path",
    "prune_dangling",
    "prune_irrelevant",
    "replay_trace",
    "__version__",
]
