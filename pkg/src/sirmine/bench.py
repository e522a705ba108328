"""DP vs PDP scaling on synthetic noise pairs."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .dp import SolveStats, solve_dp
from .measures import MeasureEngine
from .pdp import solve_pdp


@dataclass(frozen=True)
class BenchRow:
    solver: str
    length: int
    pairs: int
    mean_ops: float
    mean_seconds: float

    def to_line(self) -> str:
        return f"{self.solver}\t{self.length}\t{self.pairs}\t{self.mean_ops:.1f}\t{self.mean_seconds:.6f}"


HEADER = "solver\tlength\tpairs\tmean_ops\tmean_seconds"


def noise_engine(n: int, rng: np.random.Generator, kind: str = "ap") -> MeasureEngine:
    x = rng.standard_normal(n)
    y = rng.standard_normal(n)
    x = (x - x.mean()) / x.std()
    y = (y - y.mean()) / y.std()
    if kind == "mse":
        return MeasureEngine((x - y) ** 2, kind)
    return MeasureEngine(x * y if kind == "ap" else -(x * y), kind)


def run_bench(
    lengths,
    pairs_per_length: int = 10,
    seed: int = 0,
    tau: float = 1.0,
    l_min: int = 6,
    solvers=("dp", "pdp"),
    kind: str = "ap",
) -> list[BenchRow]:
    """Mean operation counts and wall time per solver and length.

    The same engines are fed to every solver at a given length.
    """
    fns = {"dp": solve_dp, "pdp": solve_pdp}
    rng = np.random.default_rng(seed)
    rows = []
    for n in lengths:
        engines = [noise_engine(int(n), rng, kind) for _ in range(pairs_per_length)]
        for name in solvers:
            ops = 0
            elapsed = 0.0
            for engine in engines:
                stats = SolveStats()
                t0 = time.perf_counter()
                fns[name](engine, tau, l_min, stats=stats)
                elapsed += time.perf_counter() - t0
                ops += stats.total
            rows.append(BenchRow(name, int(n), pairs_per_length, ops / pairs_per_length, elapsed / pairs_per_length))
    return rows


def polyfit_r2(x, y, degree: int) -> float:
    """Coefficient of determination of a least-squares polynomial fit."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    coef = np.polyfit(x, y, degree)
    resid = y - np.polyval(coef, x)
    total = ((y - y.mean()) ** 2).sum()
    return 1.0 - (resid @ resid) / total if total > 0 else 1.0
