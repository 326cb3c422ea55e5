"""Configuration and the top-level run loop.

A run seeds an empty archive, executes a fixed budget of step calls
(every call counts, including rejected and invalid offspring), and
records archive metrics after each one. All stochasticity flows through
the single generator passed in, so (domain, config, seed) determines the
RunRecord exactly.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .archive import Archive
from .binding import DomainBinding
from .metrics import MetricsSample, archive_metrics
from .selection import select_ucb, select_uniform
from .steps import SelectFn, melita_step, seed_archive, vanilla_step
from .types import StepReport

METHODS = ("mapelites", "melita")
_METHOD_ALIASES = {"vanilla": "mapelites"}
SELECTIONS = ("uniform", "ucb")


@dataclass(frozen=True)
class RunConfig:
    domain: str
    seed: int
    method: str = "mapelites"
    selection: str = "uniform"
    ucb_c: float = 1.0
    axis_sizes: tuple[int, ...] = (16, 16)
    init_count: int = 100
    steps: int = 2000
    snapshot_every: int = 0
    domain_params: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        method = _METHOD_ALIASES.get(self.method, self.method)
        if method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        object.__setattr__(self, "method", method)
        if self.selection not in SELECTIONS:
            raise ValueError(f"selection must be one of {SELECTIONS}, got {self.selection!r}")
        if not self.domain:
            raise ValueError("domain name must be non-empty")
        if not (0 <= self.seed < 2**64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.ucb_c < 0:
            raise ValueError(f"ucb_c must be non-negative, got {self.ucb_c}")
        if not self.axis_sizes or any(s < 1 for s in self.axis_sizes):
            raise ValueError(f"axis_sizes must be positive, got {self.axis_sizes}")
        object.__setattr__(self, "axis_sizes", tuple(int(s) for s in self.axis_sizes))
        for name in ("init_count", "steps", "snapshot_every"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")
        object.__setattr__(self, "domain_params", dict(self.domain_params))


@dataclass(frozen=True)
class RunRecord:
    config: RunConfig
    samples: tuple[MetricsSample, ...]
    archive: Archive
    reports: tuple[StepReport, ...]
    snapshots: tuple[tuple[int, Archive], ...] = ()


def _select_fn(config: RunConfig) -> SelectFn:
    if config.selection == "ucb":
        c = config.ucb_c
        return lambda archive, rng: select_ucb(archive, rng, c=c)
    return select_uniform


def run(domain: DomainBinding, config: RunConfig, rng: np.random.Generator) -> RunRecord:
    """Execute one full seeded run and return its complete trace."""
    if domain.name != config.domain:
        raise ValueError(f"config names domain {config.domain!r} but got {domain.name!r}")
    if tuple(config.axis_sizes) != tuple(domain.axis_sizes):
        raise ValueError(
            f"config axis_sizes {config.axis_sizes} do not match the domain's {domain.axis_sizes}"
        )
    archive = Archive(config.axis_sizes)
    seed_archive(archive, domain, config.init_count, rng)

    select = _select_fn(config)
    step = melita_step if config.method == "melita" else vanilla_step

    samples: list[MetricsSample] = []
    reports: list[StepReport] = []
    snapshots: list[tuple[int, Archive]] = []
    for i in range(1, config.steps + 1):
        reports.append(step(archive, domain, rng, select))
        samples.append(archive_metrics(archive, step=i))
        if config.snapshot_every and i % config.snapshot_every == 0:
            snapshots.append((i, copy.deepcopy(archive)))
    return RunRecord(config, tuple(samples), archive, tuple(reports), tuple(snapshots))
