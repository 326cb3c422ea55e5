"""Archive-level quality and diversity measurements.

Sums use math.fsum over elites in sorted-coordinate order, so a metric
recomputed from a serialized archive reproduces the value recorded
during the run bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .archive import Archive


@dataclass(frozen=True)
class MetricsSample:
    step: int
    coverage: float
    mean_fitness: float
    max_fitness: float
    qd_score: float


def archive_metrics(archive: Archive, step: int = 0) -> MetricsSample:
    """Coverage, mean/max fitness, and QD score (sum of elite fitness).

    An empty archive reports zeros so time series stay total.
    """
    occupied = archive.occupied()
    if not occupied:
        return MetricsSample(step, 0.0, 0.0, 0.0, 0.0)
    fitnesses = [archive.cells[c].solution.fitness for c in occupied]
    qd = math.fsum(fitnesses)
    return MetricsSample(
        step=step,
        coverage=len(occupied) / archive.cell_count,
        mean_fitness=qd / len(occupied),
        max_fitness=max(fitnesses),
        qd_score=qd,
    )


def auc(series: Sequence[float]) -> float:
    """Area under a per-step series: left Riemann sum with unit step."""
    return math.fsum(series)


@dataclass(frozen=True)
class DistanceReport:
    per_elite_mean: tuple[float, ...]
    per_elite_nearest: tuple[float, ...]
    mean_distance: float
    mean_nearest: float
    single_elite: bool


def diversity(items: Sequence, distance: Callable[[object, object], float]) -> DistanceReport:
    """Mean and nearest-neighbour distance per item, plus their averages.

    The distance must be a symmetric non-negative dissimilarity; symmetry
    is spot-checked on adjacent pairs and violations raise ValueError. A
    single item yields zeros with the single_elite flag set.
    """
    n = len(items)
    if n == 0:
        raise ValueError("diversity requires at least one item")
    if n == 1:
        return DistanceReport((0.0,), (0.0,), 0.0, 0.0, True)

    matrix = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = float(distance(items[i], items[j]))
            if d < 0.0 or not math.isfinite(d):
                raise ValueError(f"invalid distance {d!r} between items {i} and {j}")
            matrix[i][j] = matrix[j][i] = d
    for i in range(min(n - 1, 8)):
        back = float(distance(items[i + 1], items[i]))
        if not math.isclose(back, matrix[i][i + 1], rel_tol=1e-9, abs_tol=1e-12):
            raise ValueError(f"asymmetric distance between items {i} and {i + 1}")

    per_mean = tuple(math.fsum(matrix[i][j] for j in range(n) if j != i) / (n - 1) for i in range(n))
    per_nearest = tuple(min(matrix[i][j] for j in range(n) if j != i) for i in range(n))
    return DistanceReport(
        per_elite_mean=per_mean,
        per_elite_nearest=per_nearest,
        mean_distance=math.fsum(per_mean) / n,
        mean_nearest=math.fsum(per_nearest) / n,
        single_elite=False,
    )
