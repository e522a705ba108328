"""Lock-step relationship measures answered in O(1) from kernel prefix sums.

Every measure here is the mean of a per-timestamp kernel over the interval:

* ``ap``  average product, kernel ``x*y`` (similarity)
* ``nap`` negated average product, kernel ``-x*y`` (similarity)
* ``mse`` mean squared error, kernel ``(x-y)**2`` (distance)

Means of adjacent blocks always lie between the two block means, which is
what makes the partitioned solver safe.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import MEASURES, Interval, IntervalBoundsError, SirError, TimeSeries, check_bounds

SIMILARITY = "similarity"
DISTANCE = "distance"

ORIENTATION = {"ap": SIMILARITY, "nap": SIMILARITY, "mse": DISTANCE}


def kernel(x: np.ndarray, y: np.ndarray, kind: str) -> np.ndarray:
    if kind == "ap":
        return x * y
    if kind == "nap":
        return -(x * y)
    if kind == "mse":
        return (x - y) ** 2
    raise SirError(f"unknown measure {kind!r}; choose from {MEASURES}")


def compensated_prefix(values: Sequence[float]) -> np.ndarray:
    """Prefix sums with Neumaier error compensation; ``out[0] == 0``."""
    out = np.empty(len(values) + 1)
    out[0] = 0.0
    total = 0.0
    comp = 0.0
    for i, v in enumerate(values, 1):
        v = float(v)
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
        out[i] = total + comp
    return out


class MeasureEngine:
    """Constant-time ``rel[s, e]`` queries for one pair of series.

    Intervals use 1-based inclusive timestamps.
    """

    __slots__ = ("kind", "orientation", "prefix", "n", "_p")

    def __init__(self, kernel_values, kind: str = "ap"):
        if kind not in ORIENTATION:
            raise SirError(f"unknown measure {kind!r}; choose from {MEASURES}")
        k = np.asarray(kernel_values, dtype=float)
        if k.ndim != 1 or k.size == 0:
            raise SirError("kernel must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(k)):
            raise SirError("kernel contains non-finite values")
        self.kind = kind
        self.orientation = ORIENTATION[kind]
        self.prefix = compensated_prefix(k)
        self.prefix.setflags(write=False)
        self.n = k.size
        # plain floats index faster than numpy scalars in the scalar scans
        self._p = self.prefix.tolist()

    @classmethod
    def from_kernel(cls, kernel_values, kind: str = "ap") -> "MeasureEngine":
        """Engine over precomputed kernel values (e.g. products ``x*y`` for ``ap``).

        For ``nap`` the values are still products; they are negated here.
        """
        k = np.asarray(kernel_values, dtype=float)
        return cls(-k if kind == "nap" else k, kind)

    def __getstate__(self):
        return (self.kind, self.prefix)

    def __setstate__(self, state):
        self.kind, prefix = state
        self.orientation = ORIENTATION[self.kind]
        self.prefix = prefix
        self.n = prefix.size - 1
        self._p = prefix.tolist()

    @property
    def similarity(self) -> bool:
        return self.orientation == SIMILARITY

    def rel(self, s: int, e: int) -> float:
        if not (1 <= s <= e <= self.n):
            raise IntervalBoundsError(f"interval [{s},{e}] outside [1,{self.n}]")
        p = self._p
        return (p[e] - p[s - 1]) / (e - s + 1)

    def is_strong(self, s: int, e: int, tau: float) -> bool:
        r = self.rel(s, e)
        return r >= tau if self.similarity else r <= tau

    def strong_mask(self, means: np.ndarray, tau: float) -> np.ndarray:
        return means >= tau if self.similarity else means <= tau

    def rel_interval(self, iv: Interval) -> float:
        check_bounds(iv, self.n)
        return self.rel(iv.start, iv.end)


def build_engine(x: TimeSeries, y: TimeSeries, kind: str = "ap") -> MeasureEngine:
    if len(x) != len(y):
        raise SirError(f"length mismatch: {x.id!r} has {len(x)}, {y.id!r} has {len(y)}")
    return MeasureEngine(kernel(x.values, y.values, kind), kind)


def rel(engine: MeasureEngine, iv: Interval) -> float:
    return engine.rel_interval(iv)


def is_strong(engine: MeasureEngine, iv: Interval, tau: float) -> bool:
    check_bounds(iv, engine.n)
    return engine.is_strong(iv.start, iv.end, tau)
