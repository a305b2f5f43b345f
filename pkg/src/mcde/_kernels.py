"""Hot numeric kernels with two interchangeable backends.

The three inner loops that dominate runtime (per-column rank construction,
masking rows outside a sorted-order window, and locally re-ranking a window
while summing member ranks) exist twice: a numba ``@njit`` version and a
vectorized pure-numpy version.  The active backend is chosen once at import time:
numba is used when it is importable and the environment variable
``MCDE_NUMBA`` is unset or truthy; setting ``MCDE_NUMBA=0`` forces the
numpy path.  Both backends produce bit-identical outputs: every float they
emit is either a multiple of 0.5 far below 2**52 (rank sums) or accumulated
in the same order (tie corrections), so no summation-order effects exist.

``benchmarks/kernel_bench.py`` times the two backends against each other.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_FLAG = "MCDE_NUMBA"

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def _env_wants_numba() -> bool:
    value = os.environ.get(_ENV_FLAG, "1").strip().lower()
    return value not in ("0", "false", "off", "no")


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------


def rank_scan_numpy(values: np.ndarray, order: np.ndarray):
    """Walk a sorted column once, averaging tied ranks and summing corrections.

    ``order`` must sort ``values`` ascending.  Returns ``(adjusted_ranks,
    cum_corrections)``: the 0-based average rank at each sorted position and
    the running sum of ``t**3 - t`` over tie groups.  All members of a tie
    group carry the group's own correction term, so a window difference
    ``b[end-1] - b[start-1]`` counts exactly the groups starting inside
    ``[start, end)``.
    """
    n = values.shape[0]
    sv = values[order]
    first = np.empty(n, dtype=np.bool_)
    first[0] = True
    np.not_equal(sv[1:], sv[:-1], out=first[1:])
    gid = np.cumsum(first) - 1
    starts = np.flatnonzero(first)
    counts = np.diff(np.append(starts, n))
    ends = starts + counts - 1
    adjusted = ((starts + ends) / 2.0)[gid]
    tf = counts.astype(np.float64)
    corrections = np.cumsum(tf * tf * tf - tf)[gid]
    return adjusted, corrections


def mask_outside_numpy(member: np.ndarray, order: np.ndarray, start: int, end: int) -> None:
    """Clear ``member`` for rows whose sorted position falls outside [start, end)."""
    member[order[:start]] = False
    member[order[end:]] = False


def window_stats_numpy(member, order, group_ids, start, end):
    """Rank the window [start, end) locally and sum member ranks.

    Positions share a tie group when their ``group_ids`` entries are equal.
    Each group contributes its window-local 0-based average rank to the
    members inside it; groups cut off by the window boundary are ranked
    among window rows only.  Returns ``(rank_sum, member_count,
    tie_correction)`` with the correction as an exact integer sum of
    ``g**3 - g`` over window-local group sizes.
    """
    width = end - start
    w_groups = group_ids[start:end]
    w_member = member[order[start:end]]
    first = np.empty(width, dtype=np.bool_)
    first[0] = True
    np.not_equal(w_groups[1:], w_groups[:-1], out=first[1:])
    gid = np.cumsum(first) - 1
    starts = np.flatnonzero(first)
    counts = np.diff(np.append(starts, width))
    local_mean = starts + (counts - 1) / 2.0
    per_group = np.bincount(gid[w_member], minlength=starts.size)
    r1 = float((per_group * local_mean).sum())
    n1 = int(np.count_nonzero(w_member))
    counts = counts.astype(np.int64)
    corr = int((counts * counts * counts - counts).sum())
    return r1, n1, corr


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def rank_scan_numba(values, order):
        n = values.shape[0]
        adjusted = np.empty(n, dtype=np.float64)
        corrections = np.empty(n, dtype=np.float64)
        total = 0.0
        j = 0
        while j < n:
            k = j
            while k + 1 < n and values[order[k]] == values[order[k + 1]]:
                k += 1
            if k > j:
                t = float(k - j + 1)
                rank = (j + k) / 2.0
                total += t * t * t - t
                for m in range(j, k + 1):
                    adjusted[m] = rank
                    corrections[m] = total
            else:
                adjusted[j] = j
                corrections[j] = total
            j = k + 1
        return adjusted, corrections

    @numba.njit(cache=True, nogil=True)
    def mask_outside_numba(member, order, start, end):
        for j in range(start):
            member[order[j]] = False
        for j in range(end, order.shape[0]):
            member[order[j]] = False

    @numba.njit(cache=True, nogil=True)
    def window_stats_numba(member, order, group_ids, start, end):
        r1 = 0.0
        n1 = 0
        corr = 0
        g_start = start
        g_in = 0
        for j in range(start, end):
            if j > g_start and group_ids[j] != group_ids[j - 1]:
                g = j - g_start
                corr += g * g * g - g
                if g_in > 0:
                    r1 += g_in * ((g_start - start) + (g - 1) / 2.0)
                g_start = j
                g_in = 0
            if member[order[j]]:
                g_in += 1
                n1 += 1
        g = end - g_start
        corr += g * g * g - g
        if g_in > 0:
            r1 += g_in * ((g_start - start) + (g - 1) / 2.0)
        return r1, n1, corr


USING_NUMBA = HAVE_NUMBA and _env_wants_numba()

if USING_NUMBA:
    rank_scan = rank_scan_numba
    mask_outside = mask_outside_numba
    window_stats = window_stats_numba
else:
    rank_scan = rank_scan_numpy
    mask_outside = mask_outside_numpy
    window_stats = window_stats_numpy


def backend_name() -> str:
    """Name of the active kernel backend, ``"numba"`` or ``"numpy"``."""
    return "numba" if USING_NUMBA else "numpy"
