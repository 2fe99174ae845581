"""How the pair sequence is built.

One-dimensional Halton sequences in coprime bases fill (0,1) evenly; warping
them through the Beta(0.7, 0.7) inverse CDF pushes mass toward the ends, so
the discretized index pairs concentrate where tail departures live.  The
last n pairs are always the diagonal, covering the marginal order statistics.
"""

import numpy as np

from pitos import beta_inv_cdf, generate_pairs, halton

print("first Halton values, base 2:", [halton(k, 2) for k in range(1, 8)])
print("first Halton values, base 3:", [round(halton(k, 3), 4) for k in range(1, 8)])

print("\nwarp: u -> Beta(0.7,0.7) quantile")
for u in (0.05, 0.25, 0.5, 0.75, 0.95):
    print(f"  {u:4.2f} -> {beta_inv_cdf(u, 0.7, 0.7):.4f}")

n = 100
seq = generate_pairs(n)
print(f"\nn = {n}: m = {seq.m} pairs (= ceil(10 n ln n) + n)")
print("first five:", list(seq)[:5])
print("last three (diagonal):", list(seq)[-3:])

# edge concentration: count pairs whose row index sits within n/10 of a border
k = seq.m - n
near_edge = np.minimum(seq.i[:k], n - seq.i[:k] + 1) <= n / 10
print(
    f"\nwarped pairs with i within n/10 of an edge: {near_edge.mean():.1%}"
    " (a uniform draw would give 20.0%)"
)

# a coarse occupancy picture of the (i, j) square, 10x10 cells
grid, _, _ = np.histogram2d(seq.i[:k], seq.j[:k], bins=10, range=[[1, n], [1, n]])
print("\npair counts per 10x10 cell (row = i decile):")
for row in grid.astype(int):
    print("  " + " ".join(f"{c:4d}" for c in row))
