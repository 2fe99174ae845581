"""Deterministic Halton points and the index-pair sequence driving the test.

The pair sequence for sample size n has length m = ceil(10 n ln n) + n:
m - n pairs come from the 2-D Halton sequence (bases 2 and 3) warped through
the Beta(0.7, 0.7) inverse CDF and discretized to indices, and the final n
pairs are the diagonal (1,1), ..., (n,n).
"""

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .special import beta_inv_cdf

__all__ = ["PairSequence", "generate_pairs", "halton", "pair_count", "random_pairs"]

_BLOCK = 1 << 20  # chunk length for the vectorized radical inverse

DEFAULT_WARP = (0.7, 0.7)


def halton(index, base):
    """The `index`-th element of the 1-D Halton sequence with the given base.

    The radical inverse is accumulated as an exact integer fraction and
    rounded once in the final division, so the result is the correctly
    rounded double of the exact rational value.
    """
    if int(index) != index or index < 1:
        raise ValueError(f"halton index must be a positive integer, got {index!r}")
    if int(base) != base or base < 2:
        raise ValueError(f"halton base must be an integer >= 2, got {base!r}")
    i = int(index)
    num, denom = 0, 1
    while i > 0:
        num = num * base + i % base
        denom *= base
        i //= base
    return num / denom


def _radical_inverse_fill(out, first_index, base, ndigits, work):
    """Fill `out` with radical inverses of first_index..first_index+len-1."""
    c = len(out)
    idx, num, dig = (buf[:c] for buf in work)
    idx[:] = np.arange(first_index, first_index + c, dtype=np.int64)
    num[:] = 0
    if base & (base - 1) == 0:
        shift = base.bit_length() - 1
        for _ in range(ndigits):
            np.left_shift(num, shift, out=num)
            np.bitwise_and(idx, base - 1, out=dig)
            np.add(num, dig, out=num)
            np.right_shift(idx, shift, out=idx)
    else:
        for _ in range(ndigits):
            np.multiply(num, base, out=num)
            np.mod(idx, base, out=dig)
            np.add(num, dig, out=num)
            np.floor_divide(idx, base, out=idx)
    np.divide(num, float(base**ndigits), out=out)


def _digit_count(count, base):
    # trailing zero digits scale num and denom alike, so rounding up is safe
    ndigits = 1
    while base ** (ndigits + 1) <= count:
        ndigits += 1
    return ndigits + 1


def pair_count(n):
    """Sequence length m = ceil(10 n ln n) + n (natural log)."""
    if int(n) != n or n < 1:
        raise ValueError(f"sample size must be a positive integer, got {n!r}")
    n = int(n)
    return math.ceil(10.0 * n * math.log(n)) + n


@dataclass(eq=False)
class PairSequence:
    """Ordered index pairs (i_k, j_k), k = 1..m, all within {1, ..., n}.

    The last n entries are always the diagonal (1,1), ..., (n,n).
    """

    n: int
    i: np.ndarray
    j: np.ndarray
    warp: tuple = DEFAULT_WARP
    _dedup: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.i = np.ascontiguousarray(self.i, dtype=np.int64)
        self.j = np.ascontiguousarray(self.j, dtype=np.int64)
        if self.i.shape != self.j.shape or self.i.ndim != 1:
            raise ValueError("pair index arrays must be 1-D and equally long")
        if len(self.i) and (
            self.i.min() < 1 or self.i.max() > self.n or self.j.min() < 1 or self.j.max() > self.n
        ):
            raise ValueError("pair indices must lie in {1, ..., n}")
        self.i.setflags(write=False)
        self.j.setflags(write=False)

    @property
    def m(self):
        return len(self.i)

    @property
    def is_default(self):
        return self.warp == DEFAULT_WARP

    def __len__(self):
        return len(self.i)

    def __iter__(self):
        return zip(self.i.tolist(), self.j.tolist())

    def dedup(self):
        """(unique_i, unique_j, inverse) with inverse mapping sequence order back."""
        if self._dedup is None:
            code = self.i * np.int64(self.n + 1) + self.j
            ucode, inv = np.unique(code, return_inverse=True)
            ui = (ucode // (self.n + 1)).astype(np.int64)
            uj = (ucode % (self.n + 1)).astype(np.int64)
            self._dedup = (ui, uj, inv)
        return self._dedup


def _assemble(n, warp_inverse, warp_tag):
    # streamed in blocks so peak memory stays near the output arrays alone
    m = pair_count(n)
    k = m - n
    i = np.empty(m, dtype=np.int64)
    j = np.empty(m, dtype=np.int64)
    if k > 0:
        work = tuple(np.empty(min(k, _BLOCK), dtype=np.int64) for _ in range(3))
        u = np.empty(min(k, _BLOCK))
        for col, base in ((i, 2), (j, 3)):
            ndigits = _digit_count(k, base)
            for lo in range(0, k, _BLOCK):
                hi = min(lo + _BLOCK, k)
                u_blk = u[: hi - lo]
                _radical_inverse_fill(u_blk, lo + 1, base, ndigits, work)
                x = np.asarray(warp_inverse(u_blk), dtype=float)
                np.ceil(np.multiply(x, n, out=x), out=x)
                col[lo:hi] = x
    i[k:] = np.arange(1, n + 1, dtype=np.int64)
    j[k:] = i[k:]
    # warp underflow could round an index to 0; halton itself never hits 0
    np.maximum(i, 1, out=i)
    np.maximum(j, 1, out=j)
    return PairSequence(n=n, i=i, j=j, warp=warp_tag)


@functools.lru_cache(maxsize=16)
def _generate_pairs_beta(n, a, b):
    return _assemble(n, lambda u: np.asarray(beta_inv_cdf(u, a, b)), (a, b))


def generate_pairs(n, warp=DEFAULT_WARP):
    """Pair sequence for sample size n, deterministic in (n, warp).

    `warp` is the CDF whose inverse spreads the Halton points: either a
    (a, b) Beta shape pair (default Beta(0.7, 0.7), the only supported
    default) or a callable mapping uniforms in (0, 1) to [0, 1] for a
    custom inverse CDF.  Results for Beta warps are memoized per (n, a, b);
    use generate_pairs.cache_clear() to force regeneration.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"sample size must be a positive integer, got {n!r}")
    n = int(n)
    if callable(warp):
        return _assemble(n, lambda u: np.asarray(warp(u), dtype=float), ("custom", warp))
    a, b = warp
    return _generate_pairs_beta(n, float(a), float(b))


generate_pairs.cache_clear = _generate_pairs_beta.cache_clear


def random_pairs(n, seed):
    """Experimental alternative pair source: seeded uniform draws replace the
    Halton points before the same warp and discretization.

    Not a library default; the sequence loses the even coverage and the
    determinism-in-n of the low-discrepancy construction, and downstream
    code treats it as a non-default sequence (the dependence correction was
    calibrated for the default).
    """
    if int(n) != n or n < 1:
        raise ValueError(f"sample size must be a positive integer, got {n!r}")
    n = int(n)
    m = pair_count(n)
    k = m - n
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0xA17,)))
    i = np.empty(m, dtype=np.int64)
    j = np.empty(m, dtype=np.int64)
    a, b = DEFAULT_WARP
    for col in (i, j):
        if k > 0:
            x = np.asarray(beta_inv_cdf(rng.random(k), a, b))
            np.ceil(np.multiply(x, n, out=x), out=x)
            col[:k] = x
    i[k:] = np.arange(1, n + 1, dtype=np.int64)
    j[k:] = i[k:]
    np.maximum(i, 1, out=i)
    np.maximum(j, 1, out=j)
    return PairSequence(n=n, i=i, j=j, warp=("random-uniform", int(seed)))
