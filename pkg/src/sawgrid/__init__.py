"""Topological graph features: saw signatures and multi-persistence grids."""

from .graph import (
    DatasetError,
    Graph,
    GraphDataset,
    connected_components,
    cycle_rank,
    induced_subgraph,
    load_tudataset,
    save_tudataset,
)
from .filtrations import FILTRATION_KINDS, compute_filtration
from .persistence import (
    BettiCurve,
    FiltrationSpec,
    PersistenceDiagram,
    PersistencePair,
    betti_curves,
    make_thresholds,
    oracle_counts,
    persistence_dim0,
    persistence_dim1,
    sublevel_subgraph,
)
from .saw import (
    SawFunction,
    birth_death_counts,
    default_lag,
    generator_value,
    l1_distance,
    l2_sobolev_distance,
    saw_function,
    signature,
    tension,
    wasserstein,
)
from .mpgf import (
    GridSpec2,
    MPGFGrid,
    MPGFGridD,
    compute_mpgf2,
    compute_mpgf_d,
    grid_l1_distance,
    mpgf_oracle,
    superlevel_mpgf2,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
