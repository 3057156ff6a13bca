"""Randomized verification campaigns over bound evaluators and invariants.

Each instance is generated from (spec, trial) alone, so campaigns can run
instance-parallel and still produce byte-identical reports: workers return
results keyed by instance id and the merge is a deterministic sort.  Every
instance also runs a small suite of cheap structural invariants (seminorm
equivalence, spectral domination, comparison-matrix inequalities, blockwise
versus lifted adjoint) whose failures count as violations.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .blockops import BlockMatrix, block_sharp, flatten, hat_matrix
from .bounds import BOUND_KEYS, BoundReport, evaluate_all
from .config import DEFAULT_TOL, ToleranceConfig
from .core import Operator, a_adjoint, a_op_norm, spectral_norm
from .generators import GenSpec, gen_block_matrix
from .radii import a_spectral_radius, classical_spectral_radius
from .serialize import reports_to_csv_text, reports_to_json_text

__all__ = ["CampaignConfig", "CampaignResult", "run_campaign", "instance_invariants"]


@dataclass(frozen=True)
class CampaignConfig:
    """A verification campaign: trials per generation spec plus output routing."""

    trials: int
    gens: tuple[GenSpec, ...]
    tol: ToleranceConfig = DEFAULT_TOL
    output_path: str | None = None
    output_format: str = "json"
    parallelism: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")
        object.__setattr__(self, "gens", tuple(self.gens))


@dataclass
class CampaignResult:
    reports: list[BoundReport]
    invariant_failures: dict[str, list[str]]
    summary: dict


def instance_invariants(bm: BlockMatrix, report: BoundReport, tol: ToleranceConfig) -> list[str]:
    """Cheap per-instance structural checks; returns the names that failed."""
    failures = []
    flat = flatten(bm)
    norm = a_op_norm(flat, tol)
    slack = tol.cmp_atol * (1.0 + norm)
    omega = report.omega

    if omega > norm + slack:
        failures.append("radius_above_seminorm")
    if omega < 0.5 * norm - slack:
        failures.append("radius_below_half_seminorm")

    spectral = a_spectral_radius(flat, tol)
    if spectral > omega + slack:
        failures.append("spectral_above_radius")

    hat = hat_matrix(bm, tol)
    if spectral > classical_spectral_radius(hat) + slack:
        failures.append("hat_spectral_domination")
    if norm > spectral_norm(hat) + slack:
        failures.append("hat_norm_domination")

    squared = Operator(flat.t @ flat.t, bm.lifted_ctx)
    power_bound = 0.5 * (norm + np.sqrt(a_op_norm(squared, tol)))
    if omega > power_bound + slack:
        failures.append("power_refinement")

    blockwise = block_sharp(bm, tol)
    lifted = a_adjoint(flat, tol)
    if spectral_norm(flatten(blockwise).t - lifted.t) > 1e-10 * (1.0 + norm):
        failures.append("sharp_route_agreement")
    return failures


def _instance_id(gi: int, spec: GenSpec, seed: int) -> str:
    return f"g{gi:02d}-d{spec.d}n{spec.n}r{spec.rank}-{spec.ensemble}-s{seed:06d}"


def _run_instance(payload) -> tuple[str, BoundReport, list[str]]:
    gi, spec, trial, tol, corrupt_bound = payload
    seed = spec.seed + trial
    instance_id = _instance_id(gi, spec, seed)
    bm = gen_block_matrix(replace(spec, seed=seed), tol)
    report = evaluate_all(bm, tol, instance_id=instance_id)
    failures = instance_invariants(bm, report, tol)
    if corrupt_bound is not None:
        report = _corrupt(report, corrupt_bound, tol)
    return instance_id, report, failures


def _corrupt(report: BoundReport, key: str, tol: ToleranceConfig) -> BoundReport:
    """Test-only hook: force one bound below the radius to exercise the plumbing."""
    bounds = dict(report.bounds)
    bounds[key] = report.omega / 2.0 - 1.0
    slack = tol.cmp_atol * (1.0 + report.omega)
    gaps = {k: v - report.omega for k, v in bounds.items()}
    holds = {k: report.omega <= v + slack for k, v in bounds.items()}
    return BoundReport(
        instance_id=report.instance_id,
        omega=report.omega,
        bounds=bounds,
        gaps=gaps,
        holds=holds,
        refinement_ok=bounds["B3_th2"] <= bounds["B7_prior"] + tol.cmp_atol,
        timing=report.timing,
    )


def run_campaign(cfg: CampaignConfig, corrupt_bound: str | None = None) -> CampaignResult:
    """Generate, evaluate and summarize trials x gens instances.

    Writes per-instance reports (and a summary) when an output path is
    configured.  The summary counts violations per bound and per invariant;
    the campaign is considered failed when any count is nonzero.
    """
    if corrupt_bound is not None and corrupt_bound not in BOUND_KEYS:
        raise ValueError(f"unknown bound key {corrupt_bound!r}")
    t_start = time.perf_counter()
    payloads = [
        (gi, spec, trial, cfg.tol, corrupt_bound)
        for gi, spec in enumerate(cfg.gens)
        for trial in range(cfg.trials)
    ]
    if cfg.parallelism > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            rows = list(pool.map(_run_instance, payloads, chunksize=16))
    else:
        rows = [_run_instance(p) for p in payloads]
    rows.sort(key=lambda r: r[0])

    reports = [r[1] for r in rows]
    invariant_failures = {r[0]: r[2] for r in rows if r[2]}

    bound_violations = {k: 0 for k in BOUND_KEYS}
    refinement_failures = 0
    min_gap = {k: float("inf") for k in BOUND_KEYS}
    for rep in reports:
        for k in BOUND_KEYS:
            if not rep.holds[k]:
                bound_violations[k] += 1
            min_gap[k] = min(min_gap[k], rep.gaps[k])
        if not rep.refinement_ok:
            refinement_failures += 1
    invariant_violations: dict[str, int] = {}
    for names in invariant_failures.values():
        for name in names:
            invariant_violations[name] = invariant_violations.get(name, 0) + 1

    violations = (
        sum(bound_violations.values())
        + refinement_failures
        + sum(invariant_violations.values())
    )
    summary = {
        "instances": len(reports),
        "violations": violations,
        "bound_violations": bound_violations,
        "refinement_failures": refinement_failures,
        "invariant_violations": invariant_violations,
        "min_gap": min_gap,
        "wall_time_s": time.perf_counter() - t_start,
    }

    if cfg.output_path is not None:
        _write_outputs(cfg, reports, summary)
    return CampaignResult(reports=reports, invariant_failures=invariant_failures, summary=summary)


def _write_outputs(cfg: CampaignConfig, reports: list[BoundReport], summary: dict) -> None:
    out = Path(cfg.output_path)
    out.mkdir(parents=True, exist_ok=True)
    if cfg.output_format == "json":
        (out / "reports.json").write_text(reports_to_json_text(reports))
    else:
        (out / "reports.csv").write_text(reports_to_csv_text(reports))
    (out / "summary.json").write_text(json.dumps(summary, indent=1, sort_keys=True) + "\n")
