"""CSV loading and preprocessing (detrend, climatology removal, z-scoring)."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import Interval, SirError, TimeSeries


class DataError(SirError):
    """Malformed input table or sidecar."""


@dataclass(frozen=True)
class Dataset:
    series: tuple[TimeSeries, ...]
    period: int | None = None
    segments: tuple[Interval, ...] | None = None
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        ids = [s.id for s in self.series]
        if len(set(ids)) != len(ids):
            raise DataError("series ids must be unique")
        if len({len(s) for s in self.series}) > 1:
            raise DataError("all series must have the same length")
        self._index.update({s.id: s for s in self.series})

    @property
    def names(self) -> list[str]:
        return [s.id for s in self.series]

    @property
    def n(self) -> int:
        return len(self.series[0]) if self.series else 0

    def __getitem__(self, key: str) -> TimeSeries:
        try:
            return self._index[key]
        except KeyError:
            raise DataError(f"unknown series {key!r}") from None

    def __contains__(self, key: str) -> bool:
        return key in self._index

    def __len__(self) -> int:
        return len(self.series)

    def map(self, fn) -> "Dataset":
        return Dataset(tuple(fn(s) for s in self.series), self.period, self.segments)


def load_sidecar(path) -> dict:
    """Read ``{"period": 12, "segments": ["1-120", "121-240"]}``-style metadata."""
    try:
        meta = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read sidecar {path}: {exc}") from None
    out = {}
    if meta.get("period") is not None:
        out["period"] = int(meta["period"])
        if out["period"] < 1:
            raise DataError("period must be >= 1")
    if meta.get("segments") is not None:
        out["segments"] = tuple(Interval.parse(tok) for tok in meta["segments"])
    return out


def load_csv(path, sidecar=None, delimiter: str = ",") -> Dataset:
    """One series per column; header row holds the ids; one row per timestamp."""
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh, delimiter=delimiter))
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    rows = [r for r in rows if r and any(c.strip() for c in r)]
    if not rows:
        raise DataError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if len(rows) == 1:
        raise DataError(f"{path}: no data rows")
    body = np.empty((len(rows) - 1, len(header)))
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise DataError(f"{path}: row {i} has {len(row)} cells, header has {len(header)}")
        for j, cell in enumerate(row):
            try:
                v = float(cell)
            except ValueError:
                v = math.nan
            if not math.isfinite(v):
                raise DataError(f"{path}: row {i}, column {header[j]!r}: bad value {cell.strip()!r}")
            body[i - 2, j] = v
    meta = load_sidecar(sidecar) if sidecar else {}
    segments = meta.get("segments")
    if segments:
        _check_segments(segments, body.shape[0])
    return Dataset(
        tuple(TimeSeries(name, body[:, j]) for j, name in enumerate(header)),
        period=meta.get("period"),
        segments=segments,
    )


def _check_segments(segments, n: int) -> None:
    pos = 1
    for seg in segments:
        if seg.start != pos:
            raise DataError(f"segments must tile [1,{n}] contiguously; gap or overlap at {seg}")
        pos = seg.end + 1
    if pos != n + 1:
        raise DataError(f"segments must tile [1,{n}] contiguously")


def _zscore(values: np.ndarray, what: str) -> np.ndarray:
    sd = values.std()
    if not sd > 1e-12 * max(1.0, np.abs(values).max()):
        raise SirError(f"zero variance {what}")
    out = (values - values.mean()) / sd
    # one refinement pass tightens mean/variance to rounding level
    return (out - out.mean()) / out.std()


def zscore(series: TimeSeries) -> TimeSeries:
    """Population z-score (divides by N), so the full-length AP of a series with itself is 1."""
    return series.with_values(_zscore(series.values, f"series {series.id!r}"))


def zscore_segments(series: TimeSeries, boundaries) -> TimeSeries:
    values = np.array(series.values)
    for seg in boundaries:
        seg = Interval(*seg)
        sl = slice(seg.start - 1, seg.end)
        values[sl] = _zscore(values[sl], f"segment {seg} of {series.id!r}")
    return series.with_values(values)


def detrend_linear(series: TimeSeries) -> TimeSeries:
    """Subtract the least-squares line over the time index."""
    y = series.values
    t = np.arange(1, y.size + 1, dtype=float)
    design = np.column_stack([np.ones_like(t), t - t.mean()])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return series.with_values(y - design @ coef)


def deseasonalize(series: TimeSeries, period: int) -> TimeSeries:
    """Remove the per-phase mean (climatology) for the given period."""
    if period < 1:
        raise SirError("period must be >= 1")
    values = np.array(series.values)
    for phase in range(period):
        values[phase::period] -= values[phase::period].mean()
    return series.with_values(values)


PRESETS = {
    "none": (),
    "zscore": ("zscore",),
    "climate": ("deseasonalize", "detrend", "zscore"),
    "fmri": ("zscore_segments",),
}


def preprocess(dataset: Dataset, steps="zscore") -> Dataset:
    """Apply a preset name or an explicit sequence of step names in order."""
    if isinstance(steps, str):
        try:
            steps = PRESETS[steps]
        except KeyError:
            raise SirError(f"unknown preset {steps!r}; choose from {sorted(PRESETS)}") from None
    for step in steps:
        if step == "zscore":
            dataset = dataset.map(zscore)
        elif step == "detrend":
            dataset = dataset.map(detrend_linear)
        elif step == "deseasonalize":
            if dataset.period is None:
                raise SirError("deseasonalize needs a period (set it in the sidecar)")
            dataset = dataset.map(lambda s: deseasonalize(s, dataset.period))
        elif step == "zscore_segments":
            if not dataset.segments:
                raise SirError("zscore_segments needs segment boundaries (set them in the sidecar)")
            dataset = dataset.map(lambda s: zscore_segments(s, dataset.segments))
        else:
            raise SirError(f"unknown preprocessing step {step!r}")
    return dataset
