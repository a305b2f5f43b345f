"""Monte Carlo dependency estimation with the Mann-Whitney P statistic.

Quantifies how strongly a set of numeric columns depends on each other as a
score in [0, 1]: repeatedly slice the data on all but one dimension, test
whether the slice changes the remaining dimension's distribution, and
average the test confidences.  Independent data scores near 0.5, strong
dependencies near 1, and fully discrete (all-tied) data exactly 0.

Typical use::

    from mcde import contrast, load_csv

    score = contrast(load_csv("data.csv"), m=50, seed=42).score

Hot kernels are numba-compiled by default; set ``MCDE_NUMBA=0`` to force
the pure-numpy fallback.
"""

from ._kernels import backend_name
from .benchmark import (
    PowerResult,
    RuntimeResult,
    ScoreStats,
    independence_threshold,
    nearest_rank_percentile,
    power,
    results_csv,
    robustness_sweep,
    runtime_csv,
    runtime_profile,
    score_distribution,
    score_sample,
)
from .contrast import ContrastEstimate, contrast, hoeffding_bound, iterations_for
from .dataset import (
    DataError,
    Dataset,
    ParseError,
    StructureError,
    ValidationError,
    load_csv,
    read_csv,
    save_csv,
    select_subspace,
    write_csv,
)
from .generators import (
    DEPENDENCY_KINDS,
    DependencySpec,
    DiscretisationLevel,
    discretise,
    generate,
    noise_grid,
)
from .mwp import TestOutcome, half_normal_cdf, mwp_test
from .ranking import DimensionIndex, RankIndex, construct_index
from .slicing import SliceMask, draw_slice, slice_size
from .stream import (
    RowError,
    StreamFormatError,
    WindowConfig,
    WindowScore,
    monitor,
    window_seed,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    "ContrastEstimate",
    "contrast",
    "hoeffding_bound",
    "iterations_for",
    "DataError",
    "Dataset",
    "ParseError",
    "StructureError",
    "ValidationError",
    "load_csv",
    "read_csv",
    "save_csv",
    "select_subspace",
    "write_csv",
    "DEPENDENCY_KINDS",
    "DependencySpec",
    "DiscretisationLevel",
    "discretise",
    "generate",
    "noise_grid",
    "TestOutcome",
    "half_normal_cdf",
    "mwp_test",
    "DimensionIndex",
    "RankIndex",
    "construct_index",
    "SliceMask",
    "draw_slice",
    "slice_size",
    "PowerResult",
    "RuntimeResult",
    "ScoreStats",
    "independence_threshold",
    "nearest_rank_percentile",
    "power",
    "results_csv",
    "robustness_sweep",
    "runtime_csv",
    "runtime_profile",
    "score_distribution",
    "score_sample",
    "RowError",
    "StreamFormatError",
    "WindowConfig",
    "WindowScore",
    "monitor",
    "window_seed",
]
