"""Dataset-level mining: candidate pairs, batch solving, collective analytics."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import MinerConfig, SirError, SirResult, TimeSeries
from .measures import build_engine
from .pdp import solve_pdp


@dataclass(frozen=True)
class CandidatePair:
    id_a: str
    id_b: str
    full_corr: float

    @property
    def ids(self) -> tuple[str, str]:
        return (self.id_a, self.id_b)


@dataclass(frozen=True)
class AssociatedSirSet:
    pairs: tuple[tuple[str, str], ...]
    support: int

    def to_record(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs], "support": self.support}


def _by_id(dataset) -> dict[str, TimeSeries]:
    return {s.id: s for s in getattr(dataset, "series", dataset)}


def select_candidates(dataset: Sequence[TimeSeries], max_abs_corr: float = 0.25) -> list[CandidatePair]:
    """All unordered pairs with ``|corr| < max_abs_corr``, in lexicographic id order."""
    series = sorted(_by_id(dataset).values(), key=lambda s: s.id)
    if len(series) < 2:
        raise SirError("need at least two series to form pairs")
    corr = np.corrcoef(np.vstack([s.values for s in series]))
    out = []
    for i, j in itertools.combinations(range(len(series)), 2):
        c = float(corr[i, j])
        if abs(c) < max_abs_corr:
            out.append(CandidatePair(series[i].id, series[j].id, c))
    return out


def _ap(x: TimeSeries, y: TimeSeries) -> float:
    return float(np.mean(x.values * y.values))


def is_redundant(p: CandidatePair, q: CandidatePair, by_id: dict, threshold: float) -> bool:
    x1, y1 = by_id[p.id_a], by_id[p.id_b]
    x2, y2 = by_id[q.id_a], by_id[q.id_b]
    straight = min(_ap(x1, x2), _ap(y1, y2))
    crossed = min(_ap(x1, y2), _ap(y1, x2))
    return max(straight, crossed) >= threshold


def prune_redundant(pairs: Sequence[CandidatePair], dataset, threshold: float = 0.7) -> list[CandidatePair]:
    """Greedy scan: keep a pair unless its endpoints closely match an already-kept pair.

    Endpoints are matched both ways round; similarity is full-length AP.
    """
    if not 0.0 <= threshold <= 1.0:
        raise SirError("redundancy threshold must lie in [0, 1]")
    by_id = _by_id(dataset)
    kept: list[CandidatePair] = []
    for p in pairs:
        if not any(is_redundant(p, q, by_id, threshold) for q in kept):
            kept.append(p)
    return kept


def _mine_chunk(jobs, config: MinerConfig) -> list[SirResult]:
    out = []
    for x, y in jobs:
        engine = build_engine(x, y, config.measure)
        out.append(solve_pdp(engine, config.tau, config.l_min, pair=(x.id, y.id)))
    return out


def mine_all(pairs: Sequence[CandidatePair], dataset, config: MinerConfig, workers: int = 1) -> list[SirResult]:
    """One SirResult per pair, in input order, regardless of ``workers``."""
    by_id = _by_id(dataset)
    jobs = [(by_id[p.id_a], by_id[p.id_b]) for p in pairs]
    if workers <= 1 or len(jobs) <= 1:
        return _mine_chunk(jobs, config)
    workers = min(workers, len(jobs))
    chunks = [jobs[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_mine_chunk, chunks, [config] * workers))
    out: list = [None] * len(jobs)
    for w, part in enumerate(parts):
        out[w::workers] = part
    return out


def activity_matrix(results: Sequence[SirResult], n: int, drop_empty: bool = True) -> tuple[list[tuple[str, str]], np.ndarray]:
    """Rows are pairs, columns timestamps ``1..n``; a cell is set inside the pair's SIR."""
    rows = [r for r in results if r.intervals or not drop_empty]
    mat = np.zeros((len(rows), n), dtype=bool)
    for i, r in enumerate(rows):
        for iv in r.intervals:
            if iv.end > n:
                raise SirError(f"interval {iv} exceeds series length {n}")
            mat[i, iv.start - 1 : iv.end] = True
    return [r.pair for r in rows], mat


def score_anomalous_intervals(results: Sequence[SirResult], window: int, n: int) -> np.ndarray:
    """Fraction of results with window ``[s, s+window-1]`` inside one selected interval.

    Element ``s-1`` of the returned array holds the score of start ``s``.
    """
    if window < 1:
        raise SirError("window must be >= 1")
    if window > n:
        raise SirError(f"window {window} longer than series length {n}")
    m = n - window + 1
    if not results:
        return np.zeros(m)
    diff = np.zeros(m + 1)
    for r in results:
        for iv in r.intervals:
            last = iv.end - window + 1
            if last >= iv.start:
                diff[iv.start - 1] += 1
                diff[last] -= 1
    return np.cumsum(diff[:m]) / len(results)


def find_associated_sirs(
    results: Sequence[SirResult],
    min_support: int,
    min_set_size: int = 2,
    maximal: bool = True,
    n: int | None = None,
) -> list[AssociatedSirSet]:
    """Sets of pairs simultaneously active on at least ``min_support`` timestamps.

    Items are pairs, transactions are timestamps. Frequent itemsets are
    enumerated depth-first over bitset tidlists (Eclat). With ``maximal``
    only sets without a frequent superset are kept.
    """
    if min_support < 1:
        raise SirError("min_support must be >= 1")
    if min_set_size < 2:
        raise SirError("min_set_size must be >= 2")
    if n is None:
        n = max((iv.end for r in results for iv in r.intervals), default=0)
    pairs, mat = activity_matrix(results, n)
    tids = {}
    for pair, row in zip(pairs, mat):
        bits = int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
        tids[pair] = tids.get(pair, 0) | bits
    items = sorted(p for p, b in tids.items() if b.bit_count() >= min_support)

    frequent: dict[frozenset, int] = {}

    def grow(prefix: tuple, prefix_bits: int, rest: list) -> None:
        for i, item in enumerate(rest):
            bits = prefix_bits & tids[item]
            support = bits.bit_count()
            if support < min_support:
                continue
            itemset = prefix + (item,)
            frequent[frozenset(itemset)] = support
            grow(itemset, bits, rest[i + 1 :])

    grow((), (1 << n) - 1, items)

    out = []
    for itemset, support in frequent.items():
        if len(itemset) < min_set_size:
            continue
        if maximal and any(itemset | {i} in frequent for i in items if i not in itemset):
            continue
        out.append(AssociatedSirSet(tuple(sorted(itemset)), support))
    out.sort(key=lambda a: (-a.support, a.pairs))
    return out
