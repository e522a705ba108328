import json

import numpy as np
import pytest

from sirmine import SirError, TimeSeries
from sirmine.ingest import (
    DataError,
    deseasonalize,
    detrend_linear,
    load_csv,
    preprocess,
    zscore,
    zscore_segments,
)


def write(tmp_path, text, name="data.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_load_table(tmp_path):
    data = load_csv(write(tmp_path, "a,b\n1,2\n3,4\n5,6\n"))
    assert data.names == ["a", "b"]
    assert data.n == 3
    assert data["b"].values.tolist() == [2, 4, 6]


def test_header_only(tmp_path):
    with pytest.raises(DataError, match="no data rows"):
        load_csv(write(tmp_path, "a,b\n"))


def test_empty_file(tmp_path):
    with pytest.raises(DataError, match="empty"):
        load_csv(write(tmp_path, ""))


def test_nan_cell_named(tmp_path):
    with pytest.raises(DataError, match=r"row 3, column 'b'"):
        load_csv(write(tmp_path, "a,b\n1,2\n3,NaN\n"))


def test_ragged_row(tmp_path):
    with pytest.raises(DataError, match="row 2"):
        load_csv(write(tmp_path, "a,b\n1\n"))


def test_unknown_series(tmp_path):
    data = load_csv(write(tmp_path, "a,b\n1,2\n"))
    with pytest.raises(DataError, match="unknown series"):
        data["c"]


def test_sidecar(tmp_path):
    csv = write(tmp_path, "a\n" + "\n".join(str(i) for i in range(6)) + "\n")
    side = write(tmp_path, json.dumps({"period": 3, "segments": ["1-3", "4-6"]}), "meta.json")
    data = load_csv(csv, sidecar=side)
    assert data.period == 3
    assert [str(s) for s in data.segments] == ["1-3", "4-6"]
    bad = write(tmp_path, json.dumps({"segments": ["1-3", "5-6"]}), "bad.json")
    with pytest.raises(DataError):
        load_csv(csv, sidecar=bad)


def test_detrend_exact_line():
    t = np.arange(1, 21)
    np.testing.assert_allclose(detrend_linear(TimeSeries("s", 2 * t + 3)).values, 0, atol=1e-12)


def test_detrend_constant():
    np.testing.assert_allclose(detrend_linear(TimeSeries("s", [4.0] * 9)).values, 0, atol=1e-12)


def test_detrend_residual_orthogonal(rng):
    v = rng.standard_normal(300) + 0.05 * np.arange(300)
    out = detrend_linear(TimeSeries("s", v)).values
    t = np.arange(1, 301)
    assert abs(out @ (t - t.mean())) <= 1e-9 * np.linalg.norm(out) * np.linalg.norm(t - t.mean())
    assert abs(np.corrcoef(out, t)[0, 1]) <= 1e-9


def test_deseasonalize_examples(rng):
    np.testing.assert_allclose(deseasonalize(TimeSeries("s", [1, 2, 3] * 4), 3).values, 0, atol=1e-12)
    v = rng.standard_normal(30)
    np.testing.assert_allclose(deseasonalize(TimeSeries("s", v), 1).values, v - v.mean(), atol=1e-12)
    out = deseasonalize(TimeSeries("s", rng.standard_normal(432) + np.tile(np.arange(12), 36)), 12).values
    for phase in range(12):
        assert abs(out[phase::12].mean()) <= 1e-12


def test_zscore(rng):
    out = zscore(TimeSeries("s", [1, 2, 3])).values
    assert abs(out.mean()) <= 1e-12 and abs(out.var() - 1) <= 1e-9
    np.testing.assert_allclose(out, [-np.sqrt(1.5), 0, np.sqrt(1.5)], atol=1e-12)
    again = zscore(TimeSeries("s", out)).values
    np.testing.assert_allclose(again, out, atol=1e-9)
    v = rng.standard_normal(1000) * 40 + 7
    out = zscore(TimeSeries("s", v)).values
    assert abs(out.mean()) <= 1e-12 and abs(out.var() - 1) <= 1e-9
    assert np.mean(out * out) == pytest.approx(1.0, abs=1e-12)


def test_zscore_zero_variance():
    with pytest.raises(SirError):
        zscore(TimeSeries("s", [2.0] * 5))


def test_zscore_segments():
    v = np.array([1.0, 2, 3, 11, 12, 13])
    out = zscore_segments(TimeSeries("s", v), [(1, 3), (4, 6)]).values
    for seg in (out[:3], out[3:]):
        assert abs(seg.mean()) <= 1e-12 and abs(seg.var() - 1) <= 1e-9
    with pytest.raises(SirError):
        zscore_segments(TimeSeries("s", [1.0, 1, 1, 2, 3, 4]), [(1, 3), (4, 6)])


def test_climate_preset(tmp_path, rng):
    t = np.arange(120)
    cols = [np.sin(2 * np.pi * t / 12) + 0.01 * t + rng.standard_normal(120) for _ in range(2)]
    csv = write(tmp_path, "a,b\n" + "\n".join(f"{x},{y}" for x, y in zip(*cols)) + "\n")
    side = write(tmp_path, json.dumps({"period": 12}), "meta.json")
    data = preprocess(load_csv(csv, sidecar=side), "climate")
    for s in data.series:
        assert len(s) == 120
        assert abs(s.values.mean()) <= 1e-12 and abs(s.values.var() - 1) <= 1e-9
    with pytest.raises(SirError):
        preprocess(load_csv(csv), "climate")
