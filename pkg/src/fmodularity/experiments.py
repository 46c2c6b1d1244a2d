"""Contraction experiments: theory/baseline/estimator curves and their export."""

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from typing import List, Optional

import numpy as np

from .blockmodel import initial_groups, run_schedule, sample_frequency, sbm_distribution
from .families import available_families, get_family
from .fileio import write_matrix_csv
from .information import f_divergence, f_mutual_information
from .modularity import f_modularity
from .network import null_model

__all__ = [
    "DEFAULT_SCHEDULE",
    "ExperimentConfig",
    "StageResult",
    "TrialError",
    "theoretical_mi",
    "baseline_mi",
    "iter_experiment",
    "run_experiment",
    "export",
    "export_csv",
    "export_json",
    "export_heatmaps",
    "load_results",
]

# merge positions reproducing (12)(3)(4)(5) -> (12)(34)(5) -> (12)(345) -> (12345)
DEFAULT_SCHEDULE = [[0, 1], [1, 2], [1, 2], [0, 1]]

CSV_COLUMNS = [
    "family",
    "alpha",
    "stage",
    "theory",
    "baseline_mean",
    "baseline_std",
    "estimator_mean",
    "estimator_std",
]


class TrialError(RuntimeError):
    """A single trial failed; results up to that point are still usable."""

    def __init__(self, family, alpha, stage, trial, cause):
        self.family = family
        self.alpha = alpha
        self.stage = stage
        self.trial = trial
        self.cause = cause
        super().__init__(
            f"trial {trial} failed (family={family}, alpha={alpha}, "
            f"stage={stage}): {cause}"
        )


@dataclass
class ExperimentConfig:
    """Parameters for one contraction-experiment sweep."""

    families: List[str] = field(default_factory=lambda: ["js"])
    alphas: List[float] = field(default_factory=lambda: [0.1])
    m: int = 5
    n: int = 40
    edges: int = 40000
    trials: int = 100
    theta: float = 0.9
    epsilon: float = 1e-9
    method: str = "auto"
    schedule: List[List[int]] = field(
        default_factory=lambda: [list(s) for s in DEFAULT_SCHEDULE]
    )
    seed: int = 0
    baseline_null: str = "empirical"
    nmf_max_iter: int = 500
    nmf_tol: float = 1e-6
    n_jobs: int = 1

    def canonical(self) -> "ExperimentConfig":
        """Validated copy with families/alphas in their reporting order."""
        fams = sorted({get_family(f).name for f in self.families})
        alphas = sorted({float(a) for a in self.alphas})
        if not fams or not alphas:
            raise ValueError("need at least one family and one alpha")
        for a in alphas:
            if not 0.0 <= a <= 1.0:
                raise ValueError(f"alpha {a} outside [0, 1]")
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be >= 1")
        if self.edges < 1 or self.trials < 1:
            raise ValueError("edges and trials must be >= 1")
        if not 0.0 < self.theta <= 1.0:
            raise ValueError("theta must lie in (0, 1]")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.method not in ("auto", "svd", "nmf"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.baseline_null not in ("empirical", "unbiased"):
            raise ValueError(
                f"baseline_null must be 'empirical' or 'unbiased', "
                f"got {self.baseline_null!r}"
            )
        for step in self.schedule:
            if len(step) != 2:
                raise ValueError(f"merge step {step!r} must name two groups")
        if self.n_jobs < 1:
            raise ValueError("n_jobs must be >= 1")
        out = ExperimentConfig(**{**self.to_dict(), "families": fams, "alphas": alphas})
        return out

    def to_dict(self):
        return {
            "families": list(self.families),
            "alphas": [float(a) for a in self.alphas],
            "m": self.m,
            "n": self.n,
            "edges": self.edges,
            "trials": self.trials,
            "theta": self.theta,
            "epsilon": self.epsilon,
            "method": self.method,
            "schedule": [list(s) for s in self.schedule],
            "seed": self.seed,
            "baseline_null": self.baseline_null,
            "nmf_max_iter": self.nmf_max_iter,
            "nmf_tol": self.nmf_tol,
            "n_jobs": self.n_jobs,
        }

    @classmethod
    def from_dict(cls, data) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**data)


@dataclass
class StageResult:
    """Theory value plus baseline/estimator statistics for one stage."""

    family: str
    alpha: float
    stage: int
    theory: float
    baseline_mean: float
    baseline_std: float
    estimator_mean: float
    estimator_std: float
    baseline_values: List[float] = field(default_factory=list, repr=False)
    estimator_values: List[float] = field(default_factory=list, repr=False)

    def to_dict(self):
        return {
            "family": self.family,
            "alpha": self.alpha,
            "stage": self.stage,
            "theory": self.theory,
            "baseline_mean": self.baseline_mean,
            "baseline_std": self.baseline_std,
            "estimator_mean": self.estimator_mean,
            "estimator_std": self.estimator_std,
            "baseline_values": list(self.baseline_values),
            "estimator_values": list(self.estimator_values),
        }


def theoretical_mi(P, family) -> float:
    """Mutual information of the true distribution (no sampling noise)."""
    return f_mutual_information(family, P)


def baseline_mi(fm, family, null="empirical") -> float:
    """Plug-in estimate from the raw frequency matrix.

    null="empirical" measures F against the product of its own marginals;
    null="unbiased" measures it against the configuration null instead.
    """
    if null == "empirical":
        return f_mutual_information(family, fm.F, validate=False)
    if null == "unbiased":
        return f_divergence(family, fm.F, null_model(fm), validate=False)
    raise ValueError(f"null must be 'empirical' or 'unbiased', got {null!r}")


def _run_trial(args):
    P, family, cfg_dict, sample_seed, est_seed = args
    fm = sample_frequency(P, cfg_dict["edges"], sample_seed)
    baseline = baseline_mi(fm, family, cfg_dict["baseline_null"])
    report = f_modularity(
        fm,
        family,
        theta=cfg_dict["theta"],
        epsilon=cfg_dict["epsilon"],
        method=cfg_dict["method"],
        nmf_max_iter=cfg_dict["nmf_max_iter"],
        nmf_tol=cfg_dict["nmf_tol"],
        seed=est_seed,
    )
    return baseline, report.value


def _stage_trials(P, family, alpha, cfg, fam_i, alpha_i, stage_i):
    cfg_dict = cfg.to_dict()
    jobs = []
    for t in range(cfg.trials):
        base = [int(cfg.seed), fam_i, alpha_i, stage_i, t]
        jobs.append((P, family, cfg_dict, base + [0], base + [1]))
    outcomes = []
    if cfg.n_jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.n_jobs) as pool:
            futures = [pool.submit(_run_trial, job) for job in jobs]
            for t, fut in enumerate(futures):
                try:
                    outcomes.append(fut.result())
                except Exception as exc:
                    raise TrialError(family, alpha, stage_i, t, exc) from exc
    else:
        for t, job in enumerate(jobs):
            try:
                outcomes.append(_run_trial(job))
            except Exception as exc:
                raise TrialError(family, alpha, stage_i, t, exc) from exc
    baselines = [b for b, _ in outcomes]
    estimates = [e for _, e in outcomes]
    return baselines, estimates


def _std(values) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1))


def iter_experiment(cfg: ExperimentConfig):
    """Yield StageResults in (family, alpha, stage) order as they finish."""
    cfg = cfg.canonical()
    for fam_i, family in enumerate(cfg.families):
        for alpha_i, alpha in enumerate(cfg.alphas):
            P0 = sbm_distribution(cfg.m, cfg.n, alpha)
            stages = run_schedule(P0, initial_groups(cfg.m, cfg.n), cfg.schedule)
            for stage_i, P in enumerate(stages):
                theory = theoretical_mi(P, family)
                baselines, estimates = _stage_trials(
                    P, family, alpha, cfg, fam_i, alpha_i, stage_i
                )
                yield StageResult(
                    family=family,
                    alpha=alpha,
                    stage=stage_i,
                    theory=theory,
                    baseline_mean=float(np.mean(baselines)),
                    baseline_std=_std(baselines),
                    estimator_mean=float(np.mean(estimates)),
                    estimator_std=_std(estimates),
                    baseline_values=[float(b) for b in baselines],
                    estimator_values=[float(e) for e in estimates],
                )


def run_experiment(cfg: ExperimentConfig) -> List[StageResult]:
    """Full sweep as a list, sorted by (family, alpha, stage)."""
    return list(iter_experiment(cfg))


def _sorted_results(results):
    return sorted(results, key=lambda r: (r.family, r.alpha, r.stage))


def _fmt(x) -> str:
    return repr(float(x))


def export_csv(results, path):
    """Write the per-stage summary table (floats in shortest repr form)."""
    if not results:
        raise ValueError("no results to export")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for r in _sorted_results(results):
            fh.write(
                ",".join(
                    [
                        r.family,
                        _fmt(r.alpha),
                        str(int(r.stage)),
                        _fmt(r.theory),
                        _fmt(r.baseline_mean),
                        _fmt(r.baseline_std),
                        _fmt(r.estimator_mean),
                        _fmt(r.estimator_std),
                    ]
                )
                + "\n"
            )


def export_json(results, path):
    """Write full results, per-trial values included."""
    if not results:
        raise ValueError("no results to export")
    payload = {"results": [r.to_dict() for r in _sorted_results(results)]}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def export(results, fmt, path):
    if fmt == "csv":
        return export_csv(results, path)
    if fmt == "json":
        return export_json(results, path)
    raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")


def load_results(path) -> List[StageResult]:
    """Read back a JSON export."""
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    return [StageResult(**entry) for entry in payload["results"]]


def export_heatmaps(cfg: ExperimentConfig, directory):
    """One CSV per contraction stage and alpha: alpha_<a>/stage_<t>.csv."""
    cfg = cfg.canonical()
    written = []
    for alpha in cfg.alphas:
        sub = os.path.join(directory, f"alpha_{alpha:g}")
        os.makedirs(sub, exist_ok=True)
        P0 = sbm_distribution(cfg.m, cfg.n, alpha)
        stages = run_schedule(P0, initial_groups(cfg.m, cfg.n), cfg.schedule)
        for t, P in enumerate(stages):
            target = os.path.join(sub, f"stage_{t}.csv")
            write_matrix_csv(target, P)
            written.append(target)
    return written
