"""Exact optimal-SIR solving by weighted interval scheduling.

``SL[i]`` is the best sum-length over timestamps ``[1, i]``::

    SL[i] = max(SL[i-1], max_k (i - k + 1) + SL[k-1])

where ``k`` ranges over starts for which ``[k, i]`` is strong and at least
``l_min`` long. Weights are read from the engine on demand, so no N x N
matrix is ever built.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Interval, SirError, SirResult
from .measures import MeasureEngine

EXHAUSTIVE_MAX_N = 20


@dataclass
class SolveStats:
    """Instrumented operation counts (machine-independent cost model)."""

    scan_evals: int = 0
    dp_evals: int = 0
    segments: int = 0

    @property
    def total(self) -> int:
        return self.scan_evals + self.dp_evals


def dp_range(
    engine: MeasureEngine,
    tau: float,
    l_min: int,
    lo: int = 1,
    hi: int | None = None,
    stats: SolveStats | None = None,
) -> list[Interval]:
    """Optimal interval set restricted to timestamps ``[lo, hi]``.

    Ties: an equal score inherits ``S[i-1]``; among equally good starts the
    smallest (longest final interval) wins.
    """
    if hi is None:
        hi = engine.n
    n = hi - lo + 1
    if n < l_min:
        return []
    prefix = engine.prefix
    sl = np.zeros(n + 1, dtype=np.int64)
    back = np.zeros(n + 1, dtype=np.int64)
    # local start k -> global start lo+k-1; prefix index lo+k-2
    starts_prefix = prefix[lo - 1 : hi]
    evals = 0
    for i in range(1, n + 1):
        sl[i] = sl[i - 1]
        last_k = i - l_min + 1
        if last_k < 1:
            continue
        lengths = np.arange(i, i - last_k, -1)
        means = (prefix[lo + i - 1] - starts_prefix[:last_k]) / lengths
        evals += last_k
        strong = engine.strong_mask(means, tau)
        if not strong.any():
            continue
        cand = np.where(strong, lengths + sl[:last_k], -1)
        k = int(np.argmax(cand))
        if cand[k] > sl[i - 1]:
            sl[i] = cand[k]
            back[i] = k + 1
    if stats is not None:
        stats.dp_evals += evals
    out = []
    i = n
    while i > 0:
        k = int(back[i])
        if k:
            out.append(Interval(lo + k - 1, lo + i - 1))
            i = k - 1
        else:
            i -= 1
    out.reverse()
    return out


def solve_dp(
    engine: MeasureEngine,
    tau: float,
    l_min: int,
    pair: tuple[str, str] = ("x", "y"),
    stats: SolveStats | None = None,
) -> SirResult:
    if l_min < 1:
        raise SirError("l_min must be >= 1")
    if stats is not None:
        stats.segments += 1
    return SirResult.from_intervals(pair, dp_range(engine, tau, l_min, stats=stats), engine)


def solve_exhaustive(
    engine: MeasureEngine,
    tau: float,
    l_min: int,
    pair: tuple[str, str] = ("x", "y"),
) -> SirResult:
    """Test oracle: search every set of disjoint qualifying intervals.

    Depth-first over timestamps (skip ``t`` or open a qualifying interval at
    ``t``), pruning branches that cannot beat the best set found so far even
    if every remaining timestamp were covered.
    """
    n = engine.n
    if n > EXHAUSTIVE_MAX_N:
        raise SirError(f"exhaustive search refuses N={n} > {EXHAUSTIVE_MAX_N}")
    if l_min < 1:
        raise SirError("l_min must be >= 1")
    starting = {
        s: [e for e in range(n, s + l_min - 2, -1) if engine.is_strong(s, e, tau)]
        for s in range(1, n + 1)
    }
    best_len = 0
    best: list[Interval] = []
    chosen: list[Interval] = []

    def search(t: int, covered: int) -> None:
        nonlocal best_len, best
        if covered > best_len:
            best_len, best = covered, list(chosen)
        if t > n or covered + (n - t + 1) <= best_len:
            return
        for e in starting[t]:
            chosen.append(Interval(t, e))
            search(e + 1, covered + e - t + 1)
            chosen.pop()
        search(t + 1, covered)

    search(1, 0)
    return SirResult.from_intervals(pair, best, engine)
