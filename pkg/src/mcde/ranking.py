"""Per-dimension rank index: sorted row ids, tie-averaged ranks, corrections.

One sort per column, then a single pass that averages the 0-based ranks of
tied values and accumulates the ``t**3 - t`` tie-correction term used by the
test statistic's standard deviation.  Tie groups are detected by exact value
equality; discretised data is expected to produce exact duplicates.  The
correction is stored at every sorted position so a window's total can later
be read off as a difference in O(1).

Within a tie group the row order is pseudorandom, drawn from a fixed salt
and the column's position.  Tied rows carry identical ranks and corrections
either way, but slicing later keeps contiguous runs of sorted positions, so
the order in which tied rows appear decides which of them a run catches.  A
structured order (e.g. by row number) would repeat across columns and make
slices of heavily tied but independent columns look dependent; a per-column
random order keeps such slices statistically neutral.  The order is a pure
function of the data, so index construction stays deterministic.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from ._rng import iteration_rng
from .dataset import Dataset, check_dims

# salt for the within-tie ordering streams; arbitrary but frozen, changing
# it changes scores of tied data
_TIE_ORDER_SALT = 0x5B5E_1ED0


@dataclass(frozen=True)
class DimensionIndex:
    """Sorted view of one column.

    ``row_ids[j]`` is the row holding the j-th smallest value,
    ``adjusted_ranks[j]`` its 0-based rank with ties averaged, and
    ``cum_corrections[j]`` the running sum of ``t**3 - t`` over tie groups
    up to and including the group covering position j.
    """

    row_ids: np.ndarray
    adjusted_ranks: np.ndarray
    cum_corrections: np.ndarray

    @property
    def n(self) -> int:
        return self.row_ids.shape[0]


@dataclass(frozen=True)
class RankIndex:
    """One DimensionIndex per column; immutable and shareable."""

    dims: tuple[DimensionIndex, ...]
    n: int

    @property
    def d(self) -> int:
        return len(self.dims)

    def project(self, dims: Sequence[int]) -> "RankIndex":
        """Subspace view reusing the per-dimension structures untouched."""
        dims = check_dims(dims, self.d)
        return RankIndex(tuple(self.dims[j] for j in dims), self.n)


def _build_dimension(column: np.ndarray, position: int) -> DimensionIndex:
    column = np.ascontiguousarray(column, dtype=np.float64)
    tiebreak = iteration_rng(_TIE_ORDER_SALT, position).random(column.shape[0])
    order = np.lexsort((tiebreak, column))
    adjusted, corrections = _kernels.rank_scan(column, order)
    for arr in (order, adjusted, corrections):
        arr.setflags(write=False)
    return DimensionIndex(order, adjusted, corrections)


def construct_index(ds: Dataset, threads: int = 1) -> RankIndex:
    """Build the rank index for every column of ``ds``.

    Columns are independent, so ``threads > 1`` sorts them concurrently.
    """
    if threads > 1 and ds.d > 1:
        with ThreadPoolExecutor(max_workers=min(threads, ds.d)) as pool:
            dims = tuple(
                pool.map(lambda j: _build_dimension(ds.column(j), j), range(ds.d))
            )
    else:
        dims = tuple(_build_dimension(ds.column(j), j) for j in range(ds.d))
    return RankIndex(dims, ds.n)
