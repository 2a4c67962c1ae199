"""Upper bounds on topology-only link prediction performance."""

from ._linklimits import (
    DegenerateInputError,
    Graph,
    InputError,
    ResourceError,
    __version__,
    automorphism_group,
    average_precision,
    bounds,
    canonical_code,
    label_cells,
    load_edge_list,
    max_aupr,
    max_roc,
    partition,
    run_experiment,
)

__all__ = [
    "DegenerateInputError",
    "Graph",
    "InputError",
    "ResourceError",
    "__version__",
    "automorphism_group",
    "average_precision",
    "bounds",
    "canonical_code",
    "label_cells",
    "load_edge_list",
    "max_aupr",
    "max_roc",
    "partition",
    "run_experiment",
]
