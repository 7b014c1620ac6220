"""
The end-to-end job: parse a curve, partition it, optimise phi and m, and emit the results
"""

import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

import numpy as np
import pandas as pd

from .core import (
    OptimizationResult,
    ParametricCurve,
    ParseError,
    Partition,
    PiecewiseTransform,
    RadicalOptimizer,
    UniformityReport,
)

logger = logging.getLogger(__name__)

EMIT_CHOICES = frozenset({"report", "transform", "samples", "omega_profile"})
SIGNIFICANT_DIGITS = 12


@dataclass(frozen=True)
class JobConfig:
    """
    One reparameterization job

    Properties
    ----------
    coordinates : Tuple[str]
        one expression in t per coordinate
    tolerance : float = 1e-9
        quadrature tolerance
    samples : int = 200
        points per sample table, at least 2
    emit : FrozenSet[str]
        a subset of report, transform, samples, omega_profile
    extra_breakpoints : int = 0
        evenly spaced breakpoints added inside every interval of T
    root_tolerance : float = 1e-12
        bracket width for root isolation
    """

    coordinates: Tuple[str, ...]
    tolerance: float = 1e-9
    samples: int = 200
    emit: FrozenSet[str] = EMIT_CHOICES
    extra_breakpoints: int = 0
    root_tolerance: float = 1e-12

    def __post_init__(self) -> None:
        if isinstance(self.coordinates, str) or len(self.coordinates) < 2:
            raise ParseError("JobConfig@coordinates must list at least 2 expressions")
        object.__setattr__(self, "coordinates", tuple(self.coordinates))
        object.__setattr__(self, "emit", frozenset(self.emit))
        if not self.tolerance > 0:
            raise ValueError("JobConfig@tolerance must be positive")
        if not self.root_tolerance > 0:
            raise ValueError("JobConfig@root_tolerance must be positive")
        if int(self.samples) != self.samples or self.samples < 2:
            raise ValueError("JobConfig@samples must be an int of at least 2")
        if int(self.extra_breakpoints) != self.extra_breakpoints or self.extra_breakpoints < 0:
            raise ValueError("JobConfig@extra_breakpoints must be a nonnegative int")
        unknown = self.emit - EMIT_CHOICES
        if unknown:
            raise ValueError(f"JobConfig@emit has unknown entries {sorted(unknown)}")

    @classmethod
    def from_json(cls, source: Union[str, Path, Mapping[str, Any]]) -> "JobConfig":
        """
        Reads a job from a JSON file or an already decoded mapping

        Raises
        ------
        ParseError
            if the document is not valid JSON or misses "coordinates"
        """
        if isinstance(source, Mapping):
            document = dict(source)
        else:
            try:
                document = json.loads(Path(source).read_text())
            except json.JSONDecodeError as e:
                raise ParseError(f"JobConfig.from_json@source is not valid JSON: {e}")
        if not isinstance(document, dict) or "coordinates" not in document:
            raise ParseError('JobConfig.from_json@source must be an object with "coordinates"')

        known = {"coordinates", "tolerance", "samples", "emit", "extra_breakpoints", "root_tolerance"}
        unknown = set(document) - known
        if unknown:
            raise ParseError(f"JobConfig.from_json@source has unknown keys {sorted(unknown)}")
        return cls(**document)

    def with_overrides(self, **overrides: Any) -> "JobConfig":
        """Returns a copy with every override that is not None applied"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


@dataclass
class PipelineOutput:
    """
    Everything a job produces

    Properties
    ----------
    curve : ParametricCurve
    base : UniformityReport
        omega_p before reparameterization
    final : UniformityReport
        omega of p o r by quadrature, a check on u_final
    partition : Partition
    optimization : OptimizationResult
    transform : PiecewiseTransform
        r = phi o m
    samples : pd.DataFrame
        z, t = r(z), x1..xn on a uniform z grid
    original_samples : pd.DataFrame
        the same columns for p itself, t = z
    omega_profile : pd.DataFrame
        parameter, omega_p, omega_reparameterized
    """

    curve: ParametricCurve
    base: UniformityReport
    final: UniformityReport
    partition: Partition
    optimization: OptimizationResult
    transform: PiecewiseTransform
    samples: pd.DataFrame = field(repr=False)
    original_samples: pd.DataFrame = field(repr=False)
    omega_profile: pd.DataFrame = field(repr=False)

    def report(self) -> Dict[str, Any]:
        """The report document, reals rounded to 12 significant digits"""
        result = self.optimization
        return _round(
            {
                "u_p": self.base.uniformity,
                "u_phi_star": result.u_after_phi,
                "u_final": result.u_after_m,
                "u_final_quadrature": self.final.uniformity,
                "mu_p": self.base.mu,
                "T": list(self.partition.t_points),
                "multiplicities": list(self.partition.multiplicities),
                "S": list(result.S_star),
                "Z": list(result.Z_star),
                "alpha": list(result.alpha_star),
                "eta_phi": result.eta_phi,
                "eta_m": result.eta_m,
                "quadrature_error": self.base.quad_error_bound + self.final.quad_error_bound,
            }
        )


def _round(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _round(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round(v) for v in value]
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.{SIGNIFICANT_DIGITS}g}")
    return value


def emit_samples(curve: ParametricCurve, r: PiecewiseTransform, count: int) -> pd.DataFrame:
    """
    Samples p o r at @count uniform parameters z in [0, 1], endpoints included

    Returns
    -------
    pd.DataFrame
        columns z, t, x1, ..., xn
    """
    if count < 2:
        raise ValueError("emit_samples@count must be at least 2")
    z = np.linspace(0.0, 1.0, count)
    t = np.array([r.evaluate(float(x)) for x in z])
    points = np.array([curve.evaluate(float(x)) for x in t])
    table = pd.DataFrame({"z": z, "t": t})
    for k in range(curve.dimension):
        table[f"x{k + 1}"] = points[:, k]
    return table


def omega_profile(curve: ParametricCurve, r: PiecewiseTransform, count: int) -> pd.DataFrame:
    """omega_p(t) and omega of p o r at z, both on the same uniform grid"""
    grid = np.linspace(0.0, 1.0, count)
    return pd.DataFrame(
        {
            "parameter": grid,
            "omega_p": [curve.evaluate_omega(float(x)) for x in grid],
            "omega_reparameterized": [r.reparameterized_omega(curve, float(x)) for x in grid],
        }
    )


def _line_output(cfg: JobConfig, curve: ParametricCurve) -> PipelineOutput:
    identity = PiecewiseTransform.identity()
    uniform = UniformityReport.uniform()
    result = OptimizationResult(
        S_star=(0.0, 1.0),
        Z_star=(0.0, 1.0),
        alpha_star=(0.5,),
        u_after_phi=1.0,
        u_after_m=1.0,
        eta_phi=0.0,
        eta_m=0.0,
    )
    return PipelineOutput(
        curve=curve,
        base=uniform,
        final=uniform,
        partition=Partition((0.0, 1.0), (0, 0)),
        optimization=result,
        transform=identity,
        samples=emit_samples(curve, identity, cfg.samples),
        original_samples=emit_samples(curve, identity, cfg.samples),
        omega_profile=omega_profile(curve, identity, cfg.samples),
    )


def run_pipeline(cfg: JobConfig) -> PipelineOutput:
    """
    Runs one job

    1. parse p and compute omega_p, mu_p and u_p
    2. partition [0, 1] at the zeros and extrema of omega_p
    3. optimal S, then phi
    4. optimal alpha and Z, then m
    5. r = phi o m
    6. sample p, p o r and both angular speeds

    A straight line gets the identity transform and u = 1

    Raises
    ------
    ParseError
    SingularCurve
    QuadratureError
    """
    curve = ParametricCurve.from_expressions(cfg.coordinates, root_tolerance=cfg.root_tolerance)
    if curve.is_line:
        logger.info("the curve is a straight line, returning the identity")
        return _line_output(cfg, curve)

    base = curve.uniformity(cfg.tolerance)
    logger.info("mu_p = %.9f, u_p = %.6f", base.mu, base.uniformity)

    partition = Partition.build(
        curve, extra_breakpoints=cfg.extra_breakpoints, tolerance=cfg.root_tolerance
    )
    logger.info("T = %s", [round(t, 6) for t in partition.t_points])

    result = RadicalOptimizer(curve, partition, cfg.tolerance).optimize(mu_p=base.mu)
    phi = PiecewiseTransform.build_radical(partition, result.S_star)
    m = PiecewiseTransform.build_moebius(result.S_star, result.Z_star, result.alpha_star)
    r = PiecewiseTransform.compose(phi, m)
    final = r.uniformity(curve, cfg.tolerance)

    return PipelineOutput(
        curve=curve,
        base=base,
        final=final,
        partition=partition,
        optimization=result,
        transform=r,
        samples=emit_samples(curve, r, cfg.samples),
        original_samples=emit_samples(curve, PiecewiseTransform.identity(), cfg.samples),
        omega_profile=omega_profile(curve, r, cfg.samples),
    )


def write_outputs(
    output: PipelineOutput,
    directory: Union[str, Path],
    emit: Optional[FrozenSet[str]] = None,
) -> List[Path]:
    """
    Writes the selected artifacts into @directory, creating it if needed

    report         report.json
    transform      transform.json
    samples        samples_reparameterized.csv and samples_original.csv
    omega_profile  omega_profile.csv

    Returns
    -------
    List[Path]
        the files written, in that order
    """
    emit = EMIT_CHOICES if emit is None else frozenset(emit)
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    float_format = f"%.{SIGNIFICANT_DIGITS}g"
    written = []

    def dump(name: str, document: Any) -> None:
        path = directory / name
        path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n")
        written.append(path)

    def table(name: str, frame: pd.DataFrame) -> None:
        path = directory / name
        frame.to_csv(path, index=False, float_format=float_format)
        written.append(path)

    if "report" in emit:
        dump("report.json", output.report())
    if "transform" in emit:
        dump("transform.json", _round(output.transform.describe()))
    if "samples" in emit:
        table("samples_reparameterized.csv", output.samples)
        table("samples_original.csv", output.original_samples)
    if "omega_profile" in emit:
        table("omega_profile.csv", output.omega_profile)

    logger.info("wrote %d file(s) to %s", len(written), directory)
    return written
