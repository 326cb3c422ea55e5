"""Batch execution and the analysis commands behind the CLI."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .. import __version__
from ..clustering import k_medoids
from ..domains import make_domain
from ..domains.toy_media import constants_dict, topic_posterior
from ..metrics import auc, diversity
from ..run import METHODS, run
from ..stats import rank_sum_test
from .config import ExperimentConfig
from .serialize import (
    config_hash,
    load_archive,
    load_metrics,
    save_archive,
    save_metrics,
    write_json,
)

AUC_NOTE = "AUC: left Riemann sum over per-selection metric samples (unit step)."


def run_experiment(
    config: ExperimentConfig,
    out_dir: str | Path | None = None,
    progress: Callable[[str], None] | None = None,
) -> dict:
    """Execute every (label, method, run) cell and persist the results.

    Both methods for the same (label, run index) share a seed, so their
    initial populations match. The manifest is written even when a run
    fails, with complete=false, and carries the resolved config so the
    experiment can be reproduced from the manifest alone.
    """
    target = out_dir if out_dir is not None else config.output_dir
    if target is None:
        raise ValueError("no output directory: pass out_dir or set output_dir in the config")
    out = Path(target)
    out.mkdir(parents=True, exist_ok=True)

    digest = config_hash(config.to_dict())
    if config.run_template["domain"] == "toy_media":
        write_json(out / "constants.json", constants_dict())

    runs: list[dict] = []
    complete = False
    try:
        for label in config.labels:
            for method in METHODS:
                (out / method).mkdir(exist_ok=True)
                for index in range(config.runs_per_method):
                    rc = config.run_config(label, index, method)
                    domain = make_domain(rc.domain, rc.domain_params)
                    record = run(domain, rc, np.random.default_rng(rc.seed))

                    stem = f"{method}/{label.name}_run{index}"
                    save_metrics(out / f"{stem}_metrics.csv", record.samples)
                    save_archive(out / f"{stem}_archive.json", record.archive, digest)
                    entry = {
                        "label": label.name,
                        "method": method,
                        "run_index": index,
                        "seed": rc.seed,
                        "metrics_path": f"{stem}_metrics.csv",
                        "archive_path": f"{stem}_archive.json",
                    }
                    if record.snapshots:
                        snapshot_paths = []
                        for step, snapshot in record.snapshots:
                            rel = f"{stem}_snapshot{step}_archive.json"
                            save_archive(out / rel, snapshot, digest)
                            snapshot_paths.append(rel)
                        entry["snapshot_paths"] = snapshot_paths
                    runs.append(entry)
                    if progress is not None:
                        final = record.samples[-1] if record.samples else None
                        tail = (
                            f" coverage={final.coverage:.3f} mean_fitness={final.mean_fitness:.4f}"
                            if final
                            else ""
                        )
                        progress(f"{label.name} {method} run {index}: done{tail}")
        complete = True
    finally:
        manifest = {
            "library": "melita",
            "version": __version__,
            "complete": complete,
            "config_hash": digest,
            "experiment": config.to_dict(),
            "runs": runs,
        }
        write_json(out / "manifest.json", manifest)
    return manifest


_METRICS_FILE = re.compile(r"^(?P<label>.+)_run(?P<index>\d+)_metrics\.csv$")

FINAL_METRICS = ("final_mean_fitness", "final_max_fitness", "final_coverage", "final_qd_score")
AUC_METRICS = ("auc_mean_fitness", "auc_max_fitness", "auc_coverage", "auc_qd_score")
COMPARE_METRICS = FINAL_METRICS + AUC_METRICS


def _run_quantities(path: Path) -> dict[str, float]:
    samples = load_metrics(path)
    if not samples:
        raise ValueError(f"{path}: empty metric series")
    final = samples[-1]
    return {
        "final_mean_fitness": final.mean_fitness,
        "final_max_fitness": final.max_fitness,
        "final_coverage": final.coverage,
        "final_qd_score": final.qd_score,
        "auc_mean_fitness": auc([s.mean_fitness for s in samples]),
        "auc_max_fitness": auc([s.max_fitness for s in samples]),
        "auc_coverage": auc([s.coverage for s in samples]),
        "auc_qd_score": auc([s.qd_score for s in samples]),
    }


def _collect(directory: Path) -> dict[str, list[dict[str, float]]]:
    by_label: dict[str, list[tuple[int, dict[str, float]]]] = {}
    for path in sorted(directory.iterdir()):
        match = _METRICS_FILE.match(path.name)
        if match is None:
            continue
        by_label.setdefault(match["label"], []).append(
            (int(match["index"]), _run_quantities(path))
        )
    if not by_label:
        raise ValueError(f"{directory}: no metrics files matching *_run<N>_metrics.csv")
    return {
        label: [q for _, q in sorted(entries)] for label, entries in by_label.items()
    }


@dataclass(frozen=True)
class CompareRow:
    label: str
    metric: str
    mean_a: float
    mean_b: float
    statistic: float
    p_two_tail: float
    significant: bool


@dataclass(frozen=True)
class CompareReport:
    rows: tuple[CompareRow, ...]
    warnings: tuple[str, ...]
    note: str = AUC_NOTE


def compare(a_dir: str | Path, b_dir: str | Path) -> CompareReport:
    """Rank-sum comparison of two methods' metric files, per label and
    per final/AUC quantity."""
    a_runs = _collect(Path(a_dir))
    b_runs = _collect(Path(b_dir))

    warnings = []
    shared = sorted(set(a_runs) & set(b_runs))
    if not shared:
        raise ValueError("no labels in common between the two directories")
    for label in sorted(set(a_runs) ^ set(b_runs)):
        warnings.append(f"label {label!r} present on one side only; skipped")

    rows = []
    for label in shared:
        qa, qb = a_runs[label], b_runs[label]
        if len(qa) < 2 or len(qb) < 2:
            raise ValueError(
                f"label {label!r}: insufficient samples ({len(qa)} vs {len(qb)} runs; need >= 2 each)"
            )
        if len(qa) != len(qb):
            warnings.append(f"label {label!r}: unequal run counts ({len(qa)} vs {len(qb)})")
        for metric in COMPARE_METRICS:
            va = [q[metric] for q in qa]
            vb = [q[metric] for q in qb]
            result = rank_sum_test(va, vb)
            rows.append(
                CompareRow(
                    label=label,
                    metric=metric,
                    mean_a=math.fsum(va) / len(va),
                    mean_b=math.fsum(vb) / len(vb),
                    statistic=result.statistic,
                    p_two_tail=result.p_value,
                    significant=result.p_value < 0.05,
                )
            )
    return CompareReport(tuple(rows), tuple(warnings))


def compare_table(report: CompareReport) -> str:
    lines = [f"# {report.note}"]
    lines.append("label,metric,mean_a,mean_b,u_statistic,p_two_tail,significant")
    for r in report.rows:
        lines.append(
            f"{r.label},{r.metric},{r.mean_a:.9g},{r.mean_b:.9g},"
            f"{r.statistic:.9g},{r.p_two_tail:.9g},{str(r.significant).lower()}"
        )
    return "\n".join(lines) + "\n"


def compare_summary(report: CompareReport) -> str:
    lines = [report.note]
    for warning in report.warnings:
        lines.append(f"warning: {warning}")
    width = max(len(m) for m in COMPARE_METRICS)
    for r in report.rows:
        flag = " *" if r.significant else ""
        lines.append(
            f"{r.label:>8}  {r.metric:<{width}}  a={r.mean_a:<12.6g} b={r.mean_b:<12.6g} "
            f"U={r.statistic:<8.6g} p={r.p_two_tail:.4g}{flag}"
        )
    lines.append("* two-tailed rank-sum p < 0.05")
    return "\n".join(lines) + "\n"


def _euclidean(a: np.ndarray, b: np.ndarray) -> float:
    return float(
        np.linalg.norm(np.asarray(a, dtype=np.float64).ravel() - np.asarray(b, dtype=np.float64).ravel())
    )


def _posterior_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(topic_posterior(a) - topic_posterior(b)))


DISTANCES: dict[str, Callable[[np.ndarray, np.ndarray], float]] = {
    "euclidean": _euclidean,
    "topic_posterior": _posterior_distance,
}


def analyze_diversity(archive_path: str | Path, modality: int, distance_name: str) -> dict:
    """Per-elite mean and nearest-neighbour payload distances for one
    modality of a stored archive."""
    if distance_name not in DISTANCES:
        raise ValueError(
            f"unknown distance {distance_name!r}; available: {sorted(DISTANCES)}"
        )
    archive = load_archive(archive_path)
    coords = archive.occupied()
    if not coords:
        raise ValueError(f"{archive_path}: archive holds no elites")
    solutions = [archive.cells[c].solution for c in coords]
    if not 0 <= modality < len(solutions[0].artefacts):
        raise ValueError(f"modality {modality} out of range")
    payloads = [s.artefacts[modality].payload for s in solutions]
    report = diversity(payloads, DISTANCES[distance_name])
    return {
        "archive": str(archive_path),
        "modality": modality,
        "distance": distance_name,
        "elites": len(coords),
        "single_elite": report.single_elite,
        "mean_distance": report.mean_distance,
        "mean_nearest": report.mean_nearest,
        "per_elite": [
            {
                "coords": list(c),
                "mean": report.per_elite_mean[i],
                "nearest": report.per_elite_nearest[i],
            }
            for i, c in enumerate(coords)
        ],
    }


def medoid_exemplars(
    archive_path: str | Path,
    k: int,
    weights: tuple[float, ...] | None = None,
    seed: int = 0,
) -> dict:
    """k representative elites under a weighted per-modality Euclidean
    distance: d = sqrt(sum_m w_m * d_m^2)."""
    archive = load_archive(archive_path)
    coords = archive.occupied()
    if not coords:
        raise ValueError(f"{archive_path}: archive holds no elites")
    solutions = [archive.cells[c].solution for c in coords]
    modalities = len(solutions[0].artefacts)
    if weights is None:
        weights = (1.0,) * modalities
    if len(weights) != modalities:
        raise ValueError(f"expected {modalities} weights, got {len(weights)}")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be non-negative")

    def combined(a, b):
        parts = [
            w * _euclidean(pa.payload, pb.payload) ** 2
            for w, pa, pb in zip(weights, a.artefacts, b.artefacts)
        ]
        return math.sqrt(math.fsum(parts))

    result = k_medoids(solutions, combined, k, np.random.default_rng(seed))
    sizes = [0] * k
    for cluster in result.labels:
        sizes[cluster] += 1
    return {
        "archive": str(archive_path),
        "k": k,
        "weights": list(weights),
        "total_cost": result.cost,
        "medoids": [
            {
                "coords": list(coords[m]),
                "fitness": solutions[m].fitness,
                "cluster_size": sizes[i],
            }
            for i, m in enumerate(result.medoids)
        ],
        "assignments": [
            {"coords": list(c), "cluster": int(result.labels[i])}
            for i, c in enumerate(coords)
        ],
    }
