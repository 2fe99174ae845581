"""The PITOS test: conditional order-statistic PIT values, per-pair p-values,
Cauchy combination, and the corrected p-value.

Given sorted data x_(1) <= ... <= x_(n) on [0, 1] and a pair sequence, each
pair (i, j) yields u_ij, the conditional CDF of the j-th order statistic
given the i-th evaluated at the data (the marginal CDF when i = j).  Under
the uniform null every u_ij is Uniform(0,1), so p_ij = 2 min(u_ij, 1 - u_ij)
is a valid p-value per pair.  The p_ij are aggregated with the Cauchy
combination and the result is inflated by the 1.15 dependence correction.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import special as _sp

from .pairs import PairSequence, generate_pairs

__all__ = [
    "OrderedSample",
    "PairDetail",
    "TestVerdict",
    "conditional_os_cdf",
    "pitos_p_value",
]

log = logging.getLogger(__name__)

# Per-pair p-values are clamped into [CLAMP_EPS, 1 - CLAMP_EPS] before the
# Cauchy quantile so ties and boundary data yield finite combination terms.
CLAMP_EPS = 1e-15

# Correction factor applied to the combined p-value; calibrated for the
# default pair sequence.
CORRECTION = 1.15

# Deduplicate repeated pairs only while the sequence is short enough for
# duplicates to matter; past this, pairs are essentially all distinct and
# the dedup sort costs more than it saves.
_DEDUP_LIMIT = 1_000_000


class OrderedSample:
    """A validated data vector on [0, 1] together with its order statistics.

    Rejects NaN and out-of-range values; ties are kept as-is.
    """

    __slots__ = ("values", "order_statistics", "n")

    def __init__(self, values):
        arr = np.ascontiguousarray(values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("sample must be a non-empty 1-D vector")
        if np.any(np.isnan(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError(
                "sample values must lie in [0, 1]; map data through the null "
                "CDF (or a Rosenblatt transform) before testing"
            )
        self.values = arr
        self.order_statistics = np.sort(arr)
        self.n = int(arr.size)

    def __len__(self):
        return self.n


class PairDetail(NamedTuple):
    """Per-pair diagnostics in sequence order."""

    i: np.ndarray
    j: np.ndarray
    u: np.ndarray
    p: np.ndarray


@dataclass(frozen=True)
class TestVerdict:
    """Outcome of one test run.

    For PITOS `statistic` is the combined Cauchy statistic, `p_value` the
    corrected p-value, and `p_uncorrected` the raw Cauchy combination.  For
    the classical tests `statistic` is the raw statistic and `p_value` the
    Monte Carlo p-value from an empirical null built with `b` replicates
    under `seed`.
    """

    test_name: str
    statistic: float
    p_value: float
    n: int
    m: int | None = None
    p_uncorrected: float | None = None
    b: int | None = None
    seed: int | None = None
    detail: PairDetail | None = None

    def __post_init__(self):
        if not (0.0 <= self.p_value <= 1.0):
            raise ValueError(f"p-value {self.p_value} outside [0, 1]")


def conditional_os_cdf(n, i, j, x, y):
    """CDF of the j-th order statistic given the i-th at (x, y), sample size n.

    With G the Beta CDF: i = j gives G(y, j, n-j+1); i < j gives
    G((y-x)/(1-x), j-i, n-j+1); i > j gives G(y/x, j, i-j).  Degenerate
    conditioning values (x = 1 with i < j, x = 0 with i > j) force the
    result to 1, since the conditioning event pins the j-th order statistic
    to the boundary.
    """
    if int(i) != i or int(j) != j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"indices must be integers in 1..{n}, got ({i}, {j})")
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValueError("x and y must lie in [0, 1]")
    i, j = int(i), int(j)
    if i == j:
        return float(_sp.betainc(j, n - j + 1, y))
    if i < j:
        if x >= 1.0:
            return 1.0
        ratio = (y - x) / (1.0 - x)
        return float(_sp.betainc(j - i, n - j + 1, min(max(ratio, 0.0), 1.0)))
    if x <= 0.0:
        return 1.0
    return float(_sp.betainc(j, i - j, min(max(y / x, 0.0), 1.0)))


# Pair evaluation streams through fixed-size blocks: temporaries stay cache
# resident at large m, and the block structure fixes the summation order.
_BLOCK = 1 << 20


def _conditional_u_block(sorted_x, i_idx, j_idx, n, out):
    """u values for one block of index pairs against one sorted sample.

    Branch cases (marginal, below-diagonal, above-diagonal) are evaluated on
    compacted subsets; boundary conditioning values produce u = 1 directly.
    """
    xi = sorted_x[i_idx - 1]
    xj = sorted_x[j_idx - 1]
    eq = i_idx == j_idx
    if eq.any():
        jj = j_idx[eq].astype(float)
        out[eq] = _sp.betainc(jj, n - jj + 1.0, xj[eq])
    lt = i_idx < j_idx
    if lt.any():
        a = (j_idx[lt] - i_idx[lt]).astype(float)
        b = (n - j_idx[lt] + 1).astype(float)
        xiv = xi[lt]
        # boundary x = 1 pins the conditional mass: set the argument to 1
        den = 1.0 - xiv
        bad = den <= 0.0
        if bad.any():
            den[bad] = 1.0
        ratio = xj[lt]
        np.subtract(ratio, xiv, out=ratio)
        np.divide(ratio, den, out=ratio)
        np.clip(ratio, 0.0, 1.0, out=ratio)
        if bad.any():
            ratio[bad] = 1.0
        out[lt] = _sp.betainc(a, b, ratio)
    gt = i_idx > j_idx
    if gt.any():
        a = j_idx[gt].astype(float)
        b = (i_idx[gt] - j_idx[gt]).astype(float)
        den = xi[gt]
        bad = den <= 0.0
        if bad.any():
            den[bad] = 1.0
        ratio = xj[gt]
        np.divide(ratio, den, out=ratio)
        np.clip(ratio, 0.0, 1.0, out=ratio)
        if bad.any():
            ratio[bad] = 1.0
        out[gt] = _sp.betainc(a, b, ratio)
    return out


def _conditional_u(sorted_x, i_idx, j_idx, n):
    """Vectorized u values for index pair arrays against one sorted sample."""
    u = np.empty(len(i_idx))
    for lo in range(0, len(i_idx), _BLOCK):
        hi = min(lo + _BLOCK, len(i_idx))
        _conditional_u_block(sorted_x, i_idx[lo:hi], j_idx[lo:hi], n, u[lo:hi])
    return u


def _combination_terms(u_block, out):
    """Cauchy-quantile terms tan(pi (1 - p - 1/2)) for a block of u values."""
    p = 2.0 * np.minimum(u_block, 1.0 - u_block)
    np.subtract(1.0, p, out=out)
    np.clip(out, CLAMP_EPS, 1.0 - CLAMP_EPS, out=out)
    np.subtract(out, 0.5, out=out)
    np.multiply(out, np.pi, out=out)
    np.tan(out, out=out)
    return out


def pitos_p_value(sample, pairs=None, *, detail=False, cache=True):
    """Run the test on a sample against the Uniform(0,1) null.

    Parameters
    ----------
    sample : OrderedSample or array-like
        Data on [0, 1]; array-likes are validated into an OrderedSample.
    pairs : PairSequence, optional
        Defaults to generate_pairs(n).  Must satisfy pairs.n == sample.n.
    detail : bool
        Attach per-pair (i, j, u, p) arrays to the verdict.  Off by default
        since the sequence holds ~10 n ln n entries.
    cache : bool
        Memoize repeated (i, j) pairs instead of recomputing them.  Applied
        while the sequence is short enough for duplicates to occur; the
        result is bitwise identical either way because values are gathered
        back into sequence order before summation.

    Returns
    -------
    TestVerdict
        statistic is the mean of the per-pair Cauchy quantiles, p_uncorrected
        the Cauchy combination 1 - F_Cauchy(statistic), and p_value the
        corrected min(1, 1.15 * p_uncorrected).

    Notes
    -----
    The combination sums the per-pair terms in sequence order, pairwise
    within fixed blocks of 2^20 and left to right across blocks, so results
    are reproducible run to run.
    """
    if not isinstance(sample, OrderedSample):
        sample = OrderedSample(sample)
    n = sample.n
    if pairs is None:
        pairs = generate_pairs(n)
    elif not isinstance(pairs, PairSequence):
        raise TypeError("pairs must be a PairSequence")
    if pairs.n != n:
        raise ValueError(f"pair sequence built for n={pairs.n}, sample has n={n}")
    if not pairs.is_default:
        log.warning(
            "non-default pair sequence: the 1.15 correction was calibrated "
            "for the default Beta(0.7,0.7) warp"
        )

    sorted_x = sample.order_statistics
    m = pairs.m
    scratch = np.empty(min(m, _BLOCK))
    if cache and m <= _DEDUP_LIMIT:
        ui, uj, inv = pairs.dedup()
        u_all = _conditional_u(sorted_x, ui, uj, n)[inv]
    elif detail:
        u_all = _conditional_u(sorted_x, pairs.i, pairs.j, n)
    else:
        # stream blocks straight into the combination sum
        u_all = None
        total = 0.0
        for lo in range(0, m, _BLOCK):
            hi = min(lo + _BLOCK, m)
            u_block = _conditional_u_block(
                sorted_x, pairs.i[lo:hi], pairs.j[lo:hi], n, np.empty(hi - lo)
            )
            total += float(_combination_terms(u_block, scratch[: hi - lo]).sum())
        statistic = total / m

    if u_all is not None:
        total = 0.0
        for lo in range(0, m, _BLOCK):
            hi = min(lo + _BLOCK, m)
            total += float(_combination_terms(u_all[lo:hi], scratch[: hi - lo]).sum())
        statistic = total / m

    # 1 - cauchy_cdf(statistic), written to avoid the cancellation in 1 - (1/2 + atan/pi)
    p = 0.5 - math.atan(statistic) / math.pi
    p_star = min(1.0, CORRECTION * p)

    if detail:
        p_pair = 2.0 * np.minimum(u_all, 1.0 - u_all)

    return TestVerdict(
        test_name="PITOS",
        statistic=statistic,
        p_value=p_star,
        n=n,
        m=m,
        p_uncorrected=p,
        detail=PairDetail(pairs.i, pairs.j, u_all, p_pair) if detail else None,
    )
