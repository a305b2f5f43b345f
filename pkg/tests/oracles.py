"""Independent brute-force oracles the fast implementations are checked against.

Everything here is deliberately written from first principles (sorted lists,
groupby, O(n^2) counting) and shares no code with the package kernels.
"""

import itertools
import math

import numpy as np


def average_ranks_oracle(column):
    """O(n^2) 0-based average ranks: count smaller values plus half the ties."""
    column = list(column)
    n = len(column)
    ranks = []
    for v in column:
        smaller = sum(1 for w in column if w < v)
        equal = sum(1 for w in column if w == v)
        ranks.append(smaller + (equal - 1) / 2.0)
    return np.array(ranks)


def average_ranks_oracle_fast(column):
    """Same O(n^2) rank definition as above via numpy broadcasting."""
    col = np.asarray(column, dtype=np.float64)
    smaller = (col[None, :] < col[:, None]).sum(axis=1)
    equal = (col[None, :] == col[:, None]).sum(axis=1)
    return smaller + (equal - 1) / 2.0


def tie_corrections_oracle(column):
    """Step function of running t**3 - t sums over sorted tie groups.

    Position p carries the sum over all groups starting at or before p,
    matching the stored per-position corrections.
    """
    ordered = sorted(column)
    out = []
    running = 0.0
    for _, group in itertools.groupby(ordered):
        t = len(list(group))
        running += t**3 - t if t > 1 else 0.0
        out.extend([running] * t)
    return np.array(out)


def mann_whitney_pc_oracle(sample1, sample2):
    """Textbook two-sided Mann-Whitney confidence level.

    Pooled 0-based average ranks, U1 = R1 - n1(n1-1)/2, normal approximation
    with the tie-corrected standard deviation, folded two-sided via |Z|.
    Returns 0 when the variance vanishes (all values tied) and 1 when a
    sample is empty.
    """
    n1, n2 = len(sample1), len(sample2)
    n = n1 + n2
    if n1 == 0 or n2 == 0:
        return 1.0
    pooled = list(sample1) + list(sample2)
    ranks = average_ranks_oracle(pooled)
    r1 = float(ranks[:n1].sum())
    u1 = r1 - n1 * (n1 - 1) / 2.0
    mu = n1 * n2 / 2.0
    tie_sum = 0.0
    for _, group in itertools.groupby(sorted(pooled)):
        t = len(list(group))
        tie_sum += t**3 - t
    sigma_sq = (n1 * n2 / 12.0) * ((n + 1) - tie_sum / (n * (n - 1)))
    if sigma_sq <= 0.0:
        return 0.0
    z = abs(u1 - mu) / math.sqrt(sigma_sq)
    return 2.0 * 0.5 * math.erf(z / math.sqrt(2.0)) + 0.0  # 2*Phi(z) - 1


def local_window_stats_oracle(member, order, values, start, end):
    """Window-local rank sum, member count, and tie correction, brute force."""
    window_rows = [order[j] for j in range(start, end)]
    window_vals = [values[r] for r in window_rows]
    local_ranks = average_ranks_oracle(window_vals)
    r1 = sum(
        float(local_ranks[i]) for i, row in enumerate(window_rows) if member[row]
    )
    n1 = sum(1 for row in window_rows if member[row])
    corr = 0
    for _, group in itertools.groupby(sorted(window_vals)):
        t = len(list(group))
        corr += t**3 - t
    return r1, n1, corr


def ks_distance_to_uniform(values):
    """Exact Kolmogorov distance between an empirical sample and U[0,1]."""
    p = np.sort(np.asarray(values, dtype=np.float64))
    k = p.size
    upper = np.arange(1, k + 1) / k - p
    lower = p - np.arange(0, k) / k
    return float(max(upper.max(), lower.max()))
