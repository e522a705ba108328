"""Domain types shared across the package and the SIR validity check."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple, Sequence

import numpy as np

if TYPE_CHECKING:
    from .measures import MeasureEngine


class SirError(ValueError):
    """Base class for input errors raised by this package."""


class IntervalBoundsError(SirError):
    """An interval does not fit inside the series it refers to."""


@dataclass(frozen=True)
class TimeSeries:
    """A named sequence of regularly sampled, finite observations."""

    id: str
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise SirError(f"series {self.id!r} must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(values)):
            raise SirError(f"series {self.id!r} contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    def with_values(self, values) -> "TimeSeries":
        return TimeSeries(self.id, values)


class Interval(NamedTuple):
    """Closed range of 1-based timestamps ``[start, end]``."""

    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def __str__(self) -> str:
        return f"{self.start}-{self.end}"

    @classmethod
    def parse(cls, token: str) -> "Interval":
        try:
            s, e = token.split("-")
            iv = cls(int(s), int(e))
        except ValueError:
            raise SirError(f"bad interval token {token!r}, expected 's-e'") from None
        if iv.start < 1 or iv.end < iv.start:
            raise SirError(f"bad interval token {token!r}")
        return iv

    def contains(self, other: "Interval") -> bool:
        return self.start <= other.start and other.end <= self.end


def check_bounds(iv: Interval, n: int) -> None:
    if not (1 <= iv.start <= iv.end <= n):
        raise IntervalBoundsError(f"interval [{iv.start},{iv.end}] outside [1,{n}]")


def _sig6(x: float) -> float:
    return float(f"{x:.6g}")


@dataclass(frozen=True)
class SirResult:
    """Optimal set of disjoint strong intervals for one pair of series."""

    pair: tuple[str, str]
    intervals: tuple[Interval, ...] = ()
    sum_length: int = 0
    strengths: tuple[float, ...] = ()

    @classmethod
    def from_intervals(cls, pair, intervals: Sequence[Interval], engine: "MeasureEngine") -> "SirResult":
        ivs = tuple(sorted(Interval(*iv) for iv in intervals))
        return cls(
            pair=tuple(pair),
            intervals=ivs,
            sum_length=sum(iv.length for iv in ivs),
            strengths=tuple(engine.rel(iv.start, iv.end) for iv in ivs),
        )

    def to_record(self) -> dict:
        return {
            "pair": list(self.pair),
            "intervals": [str(iv) for iv in self.intervals],
            "sum_length": self.sum_length,
            "strengths": [_sig6(s) for s in self.strengths],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def from_record(cls, record: dict) -> "SirResult":
        intervals = tuple(Interval.parse(tok) for tok in record["intervals"])
        return cls(
            pair=tuple(record["pair"]),
            intervals=intervals,
            sum_length=int(record["sum_length"]),
            strengths=tuple(float(s) for s in record["strengths"]),
        )


MEASURES = ("ap", "nap", "mse")


@dataclass(frozen=True)
class MinerConfig:
    """Mining thresholds. Defaults follow the climate setting (tau=1, l_min=6)."""

    tau: float = 1.0
    l_min: int = 6
    measure: str = "ap"
    num_randomizations: int = 1000
    rng_seed: int = 0
    max_abs_full_corr: float = 0.25
    redundancy_threshold: float = 0.7

    def __post_init__(self):
        if self.l_min < 1:
            raise SirError("l_min must be >= 1")
        if self.num_randomizations < 1:
            raise SirError("num_randomizations must be >= 1")
        if self.measure not in MEASURES:
            raise SirError(f"unknown measure {self.measure!r}; choose from {MEASURES}")
        if not math.isfinite(self.tau):
            raise SirError("tau must be finite")
        for name in ("max_abs_full_corr", "redundancy_threshold"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise SirError(f"{name} must lie in [0, 1]")


def validate_sir(result: SirResult, engine: "MeasureEngine", config: MinerConfig) -> bool:
    """Return True iff ``result`` is a valid SIR under ``config`` for ``engine``'s pair.

    Raises IntervalBoundsError if an interval falls outside the series.
    """
    for iv in result.intervals:
        check_bounds(iv, engine.n)
    ivs = list(result.intervals)
    if ivs != sorted(ivs):
        return False
    for a in range(len(ivs)):
        for b in range(a + 1, len(ivs)):
            if ivs[a].end >= ivs[b].start and ivs[b].end >= ivs[a].start:
                return False
    if any(iv.length < config.l_min for iv in ivs):
        return False
    if not all(engine.is_strong(iv.start, iv.end, config.tau) for iv in ivs):
        return False
    if result.sum_length != sum(iv.length for iv in ivs):
        return False
    if len(result.strengths) != len(ivs):
        return False
    return all(
        math.isclose(s, engine.rel(iv.start, iv.end), rel_tol=1e-5, abs_tol=1e-9)
        for s, iv in zip(result.strengths, ivs)
    )
