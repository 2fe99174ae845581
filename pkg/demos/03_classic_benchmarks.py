"""The classical benchmark tests and their empirical nulls.

Every benchmark statistic rejects for large values.  p-values come from
simulated null distributions with the add-one estimator
(1 + #{null >= observed}) / (B + 1), cached on disk keyed by
(test, n, B, seed).
"""

import numpy as np

from pitos import (
    ad_statistic,
    build_empirical_null,
    classic_test,
    cvm_statistic,
    empirical_p_value,
    ks_statistic,
    lrt_statistic,
    nb_statistic,
    zoo_lookup,
)

rng = np.random.default_rng(3)
data = rng.random(100)

print("statistics on one uniform sample:")
print(f"  AD  = {ad_statistic(data):.4f}")
print(f"  NB  = {nb_statistic(data):.4f}")
print(f"  KS  = {ks_statistic(data):.4f}")
print(f"  CvM = {cvm_statistic(data):.4f}")

# the oracle likelihood-ratio statistic needs the true alternative density
beta = zoo_lookup("beta(0.6,0.6)")
print(f"  LRT (Beta(0.6,0.6) alternative) = {lrt_statistic(data, beta.log_density):.4f}")

# one-call verdicts build (and cache) the null automatically
verdict = classic_test("ks", data, null_b=20_000, seed=0)
print(f"\nKS verdict: statistic = {verdict.statistic:.4f}, p = {verdict.p_value:.4f}")

# the machinery underneath
null = build_empirical_null("cvm", n=100, B=20_000, seed=0)
print(
    f"\nCvM null over B = {null.B}: median = {np.median(null.statistics):.4f}, "
    f"95th percentile = {np.quantile(null.statistics, 0.95):.4f}"
)
shifted = np.clip(data * 0.8, 0.0, 1.0)  # compressed toward zero
print(f"p-value for compressed data: {empirical_p_value(null, cvm_statistic(shifted)):.5f}")
