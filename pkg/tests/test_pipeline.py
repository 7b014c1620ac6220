import json

import numpy as np
import pandas as pd
import pytest
from pytest_mock import MockerFixture

from pyradical import JobConfig, PiecewiseTransform, emit_samples, run_pipeline, write_outputs
from pyradical.core import ParametricCurve, ParseError, Partition
from pyradical import Pipeline


@pytest.fixture(scope="module")
def cubic_output():
    return run_pipeline(JobConfig(["t", "t^3"], samples=21))


def test_cubic_report(cubic_output):
    report = cubic_output.report()
    assert report["mu_p"] == pytest.approx(1.249, abs=5e-3)
    assert report["u_p"] == pytest.approx(0.846, abs=5e-3)
    assert report["u_phi_star"] == pytest.approx(0.932, abs=5e-3)
    assert report["u_final"] == pytest.approx(0.997, abs=3e-3)
    assert report["u_final_quadrature"] == pytest.approx(report["u_final"], abs=1e-6)
    assert report["T"] == pytest.approx([0.0, 0.439, 1.0], abs=1e-3)
    assert report["multiplicities"] == [1, 0, 0]
    assert report["S"] == pytest.approx([0.0, 0.406, 1.0], abs=1e-3)
    assert report["Z"] == pytest.approx([0.0, 0.419, 1.0], abs=1e-3)
    assert report["alpha"] == pytest.approx([0.536, 0.643], abs=5e-3)
    assert report["quadrature_error"] < 1e-7


def test_phi_closed_form_matches_quadrature(cubic_output):
    phi = PiecewiseTransform.build_radical(cubic_output.partition, cubic_output.optimization.S_star)
    assert phi.uniformity(cubic_output.curve).uniformity == pytest.approx(
        cubic_output.optimization.u_after_phi, abs=1e-6
    )


def test_samples(cubic_output):
    samples = cubic_output.samples
    assert list(samples.columns) == ["z", "t", "x1", "x2"]
    assert len(samples) == 21
    assert samples["z"].iloc[0] == 0.0 and samples["z"].iloc[-1] == 1.0
    assert samples["t"].iloc[0] == 0.0 and samples["t"].iloc[-1] == 1.0
    assert np.all(np.abs(samples["x2"] - samples["x1"] ** 3) <= 1e-9)

    original = cubic_output.original_samples
    assert np.allclose(original["t"], original["z"])

    profile = cubic_output.omega_profile
    assert list(profile.columns) == ["parameter", "omega_p", "omega_reparameterized"]
    assert profile["omega_reparameterized"].min() > 0
    assert profile["omega_p"].iloc[0] == 0.0


def test_equi_sampling_is_more_uniform(cubic_output):
    def spread(table):
        points = table[["x1", "x2"]].to_numpy()
        tangents = np.diff(points, axis=0)
        angles = np.unwrap(np.arctan2(tangents[:, 1], tangents[:, 0]))
        return np.var(np.diff(angles))

    assert spread(cubic_output.samples) < spread(cubic_output.original_samples)


def test_emit_samples():
    curve = ParametricCurve.from_expressions(["t", "t^3"])
    r = run_pipeline(JobConfig(["t", "t^3"], samples=2)).transform

    table = emit_samples(curve, r, 2)
    assert table["z"].tolist() == [0.0, 1.0]
    assert table[["x1", "x2"]].to_numpy().tolist() == [[0.0, 0.0], [1.0, 1.0]]

    table = emit_samples(curve, r, 3)
    t = r.evaluate(0.5)
    assert table["t"].iloc[1] == t
    assert table["x2"].iloc[1] == pytest.approx(t**3)

    with pytest.raises(ValueError):
        emit_samples(curve, r, 1)


def test_line():
    output = run_pipeline(JobConfig(["t", "2*t"]))
    assert output.transform.is_identity
    report = output.report()
    assert report["u_p"] == report["u_phi_star"] == report["u_final"] == 1.0
    assert output.transform.describe()[0]["kind"] == "affine"


def test_curve_without_zeros():
    output = run_pipeline(JobConfig(["t", "t^2", "t^3"]))
    report = output.report()
    assert report["multiplicities"] == [0] * len(report["T"])
    assert report["u_final"] >= report["u_phi_star"] >= report["u_p"] - 1e-9


@pytest.mark.parametrize(
    "coordinates",
    [
        ["t", "t^3"],
        ["t", "t^4"],
        ["t", "t^5"],
        ["t", "(t - 2/5)^3"],
        ["t", "(t - 1/2)^4"],
        ["t", "(t - 1)^3"],
        ["t", "t^4 - 3*t^2"],
        ["t", "t^3 - t^2"],
        ["t", "25*t^4 - 50*t^3 + 24*t^2"],
        ["t", "t^3", "t^3"],
    ],
)
def test_uniformity_improves(coordinates):
    report = run_pipeline(JobConfig(coordinates, samples=5)).report()
    assert report["u_final"] > report["u_p"]
    assert report["u_final"] >= 0.95
    assert report["u_final"] >= report["u_phi_star"]
    assert report["u_final_quadrature"] == pytest.approx(report["u_final"], abs=1e-6)


def test_extra_breakpoints(mocker: MockerFixture):
    build = mocker.spy(Partition, "build")
    output = run_pipeline(JobConfig(["t", "t^3"], samples=5, extra_breakpoints=1))
    assert build.call_args.kwargs["extra_breakpoints"] == 1
    assert len(output.partition.t_points) == 5


def test_write_outputs(cubic_output, tmp_path):
    first = write_outputs(cubic_output, tmp_path / "a")
    second = write_outputs(cubic_output, tmp_path / "b")
    assert [p.name for p in first] == [
        "report.json",
        "transform.json",
        "samples_reparameterized.csv",
        "samples_original.csv",
        "omega_profile.csv",
    ]
    for a, b in zip(first, second):
        assert a.read_bytes() == b.read_bytes()

    report = json.loads((tmp_path / "a" / "report.json").read_text())
    assert set(report) >= {"u_p", "u_phi_star", "u_final", "T", "multiplicities", "S", "Z", "alpha", "mu_p", "quadrature_error"}
    transform = json.loads((tmp_path / "a" / "transform.json").read_text())
    assert [piece["domain"] for piece in transform][0][0] == 0.0
    assert transform[0]["radical_index"] == 2

    table = pd.read_csv(tmp_path / "a" / "samples_reparameterized.csv")
    assert list(table.columns) == ["z", "t", "x1", "x2"]

    only = write_outputs(cubic_output, tmp_path / "c", {"report"})
    assert [p.name for p in only] == ["report.json"]


def test_job_config(tmp_path):
    cfg = JobConfig.from_json({"coordinates": ["t", "t^3"], "samples": 10, "emit": ["report"]})
    assert cfg.coordinates == ("t", "t^3")
    assert cfg.samples == 10
    assert cfg.emit == frozenset({"report"})
    assert cfg.tolerance == 1e-9

    path = tmp_path / "job.json"
    path.write_text(json.dumps({"coordinates": ["t", "t^3"], "tolerance": 1e-8}))
    assert JobConfig.from_json(path).tolerance == 1e-8
    assert JobConfig.from_json(str(path)).emit == Pipeline.EMIT_CHOICES

    overridden = cfg.with_overrides(tolerance=1e-7, samples=None)
    assert overridden.tolerance == 1e-7
    assert overridden.samples == 10

    path.write_text("{not json")
    with pytest.raises(ParseError):
        JobConfig.from_json(path)
    with pytest.raises(ParseError):
        JobConfig.from_json({"tolerance": 1e-9})
    with pytest.raises(ParseError):
        JobConfig.from_json({"coordinates": ["t", "t"], "color": "red"})
    with pytest.raises(ParseError):
        JobConfig(["t"])
    with pytest.raises(ValueError):
        JobConfig(["t", "t^3"], samples=1)
    with pytest.raises(ValueError):
        JobConfig(["t", "t^3"], tolerance=0)
    with pytest.raises(ValueError):
        JobConfig(["t", "t^3"], emit=["plots"])
    with pytest.raises(ValueError):
        JobConfig(["t", "t^3"], extra_breakpoints=-1)


def test_parse_errors():
    with pytest.raises(ParseError):
        run_pipeline(JobConfig(["t", "x^2"]))
