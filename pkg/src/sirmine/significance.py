"""Randomization test for the sum-length of a discovered SIR.

One series of the pair is replaced by random series that keep its
full-length correlation with the other, the pair is re-mined, and the
p-value is the fraction of replicates whose sum-length reaches the observed
one (ties count against the observation).
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import MinerConfig, SirError, TimeSeries
from .measures import build_engine
from .pdp import solve_pdp


def _zscore(v: np.ndarray) -> np.ndarray:
    v = v - v.mean()
    return v / v.std()


def pearson(x: np.ndarray, y: np.ndarray) -> float:
    x = x - x.mean()
    y = y - y.mean()
    return float(x @ y / np.sqrt((x @ x) * (y @ y)))


def random_series_with_correlation(fixed: TimeSeries, rho: float, rng: np.random.Generator, id: str = "null") -> TimeSeries:
    """Z-scored random series whose sample correlation with ``fixed`` is exactly ``rho``."""
    if not -1.0 <= rho <= 1.0:
        raise SirError(f"correlation {rho} outside [-1, 1]")
    n = len(fixed)
    if n < 3:
        raise SirError("need at least 3 timestamps")
    if fixed.values.std() <= 1e-12 * max(1.0, np.abs(fixed.values).max()):
        raise SirError(f"series {fixed.id!r} has zero variance")
    z = _zscore(fixed.values)
    g = rng.standard_normal(n)
    # population-normalised z has z @ z == n
    w = _zscore(g - (g @ z / n) * z)
    w = _zscore(w - (w @ z / n) * z)
    out = rho * z + np.sqrt(max(0.0, 1.0 - rho * rho)) * w
    return TimeSeries(id, _zscore(out))


@dataclass(frozen=True)
class SignificanceReport:
    pair: tuple[str, str]
    observed_sum_length: int
    null_sum_lengths: tuple[int, ...]
    p_value: float
    num_randomizations: int
    rng_seed: int

    def to_record(self, verbose: bool = False) -> dict:
        rec = {
            "pair": list(self.pair),
            "observed_sum_length": self.observed_sum_length,
            "p_value": self.p_value,
            "num_randomizations": self.num_randomizations,
            "rng_seed": self.rng_seed,
        }
        if verbose:
            rec["null_sum_lengths"] = list(self.null_sum_lengths)
        return rec

    def to_json(self, verbose: bool = False) -> str:
        return json.dumps(self.to_record(verbose))


def p_value(observed: int, nulls) -> float:
    nulls = np.asarray(nulls)
    return float(np.count_nonzero(nulls >= observed) / nulls.size)


def _null_sum_lengths(fixed: TimeSeries, rho: float, fixed_first: bool, seeds, config: MinerConfig) -> list[int]:
    out = []
    for seed in seeds:
        null = random_series_with_correlation(fixed, rho, np.random.default_rng(seed))
        a, b = (fixed, null) if fixed_first else (null, fixed)
        engine = build_engine(a, b, config.measure)
        out.append(solve_pdp(engine, config.tau, config.l_min).sum_length)
    return out


def significance_test(
    t1: TimeSeries,
    t2: TimeSeries,
    config: MinerConfig,
    swap: bool = False,
    workers: int = 1,
) -> SignificanceReport:
    """Observed sum-length of ``(t1, t2)`` against correlation-preserving nulls.

    ``t1`` is replaced by nulls unless ``swap`` is set. Each replicate draws
    from its own child of ``SeedSequence(config.rng_seed)``, so the report
    does not depend on ``workers``.
    """
    if len(t1) != len(t2):
        raise SirError(f"length mismatch: {t1.id!r} has {len(t1)}, {t2.id!r} has {len(t2)}")
    observed = solve_pdp(build_engine(t1, t2, config.measure), config.tau, config.l_min).sum_length
    rho = float(np.clip(pearson(t1.values, t2.values), -1.0, 1.0))
    fixed = t1 if swap else t2
    seeds = np.random.SeedSequence(config.rng_seed).spawn(config.num_randomizations)

    if workers > 1 and len(seeds) > 1:
        chunks = [seeds[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_null_sum_lengths, *zip(*[(fixed, rho, swap, c, config) for c in chunks])))
        nulls = [0] * len(seeds)
        for w, part in enumerate(parts):
            nulls[w::workers] = part
    else:
        nulls = _null_sum_lengths(fixed, rho, swap, seeds, config)

    return SignificanceReport(
        pair=(t1.id, t2.id),
        observed_sum_length=observed,
        null_sum_lengths=tuple(int(v) for v in nulls),
        p_value=p_value(observed, nulls),
        num_randomizations=config.num_randomizations,
        rng_seed=config.rng_seed,
    )
