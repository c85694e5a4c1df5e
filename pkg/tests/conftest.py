"""Shared helpers: seeded random specs and slow independent oracles."""

from __future__ import annotations

import numpy as np

from tailbounds import make_exponential_spec, make_geometric_spec


def random_geom_specs(seed: int, count: int, n_max: int = 8, p_lo: float = 0.05):
    rng = np.random.default_rng(seed)
    specs = []
    for _ in range(count):
        n = int(rng.integers(1, n_max + 1))
        specs.append(make_geometric_spec(list(rng.uniform(p_lo, 1.0, n))))
    return specs


def random_exp_specs(seed: int, count: int, n_max: int = 6):
    rng = np.random.default_rng(seed)
    specs = []
    for _ in range(count):
        n = int(rng.integers(1, n_max + 1))
        specs.append(make_exponential_spec(list(rng.uniform(0.1, 10.0, n))))
    return specs


def brute_force_pmf(params, K: int) -> dict[int, float]:
    """O(n K^2) dict-based convolution, independent of the production path."""
    dist = {0: 1.0}
    for p in params:
        new: dict[int, float] = {}
        for k0, pr0 in dist.items():
            for k in range(1, K - k0 + 1):
                new[k0 + k] = new.get(k0 + k, 0.0) + pr0 * p * (1.0 - p) ** (k - 1)
        dist = new
    return dist


def brute_force_tail(params, x: float, K: int) -> float:
    """P(X >= x) by brute-force convolution, valid when P(X > K) is negligible."""
    import math

    pmf = brute_force_pmf(params, K)
    k0 = max(math.ceil(x), len(params))
    return sum(pr for k, pr in pmf.items() if k >= k0)
