"""Experiment configuration: strict JSON schema with defaults.

A config names a set of labels (each a seed base), a run template shared
by both methods, and a run count. Method and seed are never part of the
template: the harness runs both methods per label, and per-run seeds are
derived as label seed + run index so paired runs start from identical
populations.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..domains import make_domain
from ..run import RunConfig

_LABEL_NAME = re.compile(r"^[A-Za-z0-9_-]+$")

_RUN_DEFAULTS = {
    "domain_params": {},
    "selection": "uniform",
    "ucb_c": 1.0,
    "axis_sizes": [16, 16],
    "init_count": 100,
    "steps": 2000,
    "snapshot_every": 0,
}


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


def _fail(path: str, message: str) -> None:
    raise ConfigError(f"{path}: {message}")


def _require_mapping(value: object, path: str) -> dict:
    if not isinstance(value, dict):
        _fail(path, f"expected an object, got {type(value).__name__}")
    return value


def _require_int(value: object, path: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        _fail(path, f"must be >= {minimum}, got {value}")
    return value


def _require_number(value: object, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {value!r}")
    return float(value)


def _require_str(value: object, path: str) -> str:
    if not isinstance(value, str) or not value:
        _fail(path, f"expected a non-empty string, got {value!r}")
    return value


def _reject_unknown(data: dict, known: set[str], path: str) -> None:
    for key in data:
        if key not in known:
            where = f"{path}.{key}" if path else key
            _fail(where, "unknown key")


@dataclass(frozen=True)
class Label:
    name: str
    seed: int


@dataclass(frozen=True)
class ExperimentConfig:
    labels: tuple[Label, ...]
    run_template: dict = field(default_factory=dict)
    runs_per_method: int = 10
    output_dir: str | None = None

    def run_config(self, label: Label, run_index: int, method: str) -> RunConfig:
        template = dict(self.run_template)
        template["axis_sizes"] = tuple(template["axis_sizes"])
        return RunConfig(seed=label.seed + run_index, method=method, **template)

    def to_dict(self) -> dict:
        """Fully resolved, output-dir-independent form; hashing this
        identifies the experiment."""
        run = {key: self.run_template[key] for key in sorted(self.run_template)}
        return {
            "labels": [{"name": l.name, "seed": l.seed} for l in self.labels],
            "runs_per_method": self.runs_per_method,
            "run": run,
        }

    @classmethod
    def from_dict(cls, data: object) -> ExperimentConfig:
        data = _require_mapping(data, "config")
        _reject_unknown(data, {"labels", "runs_per_method", "output_dir", "run"}, "")

        raw_labels = data.get("labels")
        if not isinstance(raw_labels, list) or not raw_labels:
            _fail("labels", "expected a non-empty list")
        labels = []
        for i, entry in enumerate(raw_labels):
            path = f"labels[{i}]"
            entry = _require_mapping(entry, path)
            _reject_unknown(entry, {"name", "seed"}, path)
            name = _require_str(entry.get("name"), f"{path}.name")
            if not _LABEL_NAME.match(name):
                _fail(f"{path}.name", f"must match {_LABEL_NAME.pattern}, got {name!r}")
            seed = _require_int(entry.get("seed"), f"{path}.seed", minimum=0)
            labels.append(Label(name, seed))
        if len({l.name for l in labels}) != len(labels):
            _fail("labels", "label names must be unique")

        runs_per_method = _require_int(data.get("runs_per_method", 10), "runs_per_method", minimum=1)
        for label in labels:
            if label.seed + runs_per_method - 1 >= 2**64:
                _fail("labels", f"seed base {label.seed} overflows 64 bits with {runs_per_method} runs")

        output_dir = data.get("output_dir")
        if output_dir is not None:
            output_dir = _require_str(output_dir, "output_dir")

        raw_run = _require_mapping(data.get("run"), "run")
        known = {"domain"} | set(_RUN_DEFAULTS)
        _reject_unknown(raw_run, known, "run")
        if "method" in raw_run or "seed" in raw_run:
            _fail("run", "method and seed are derived by the harness, not configured")
        template: dict = {"domain": _require_str(raw_run.get("domain"), "run.domain")}
        for key, default in _RUN_DEFAULTS.items():
            template[key] = raw_run.get(key, default)

        template["selection"] = _require_str(template["selection"], "run.selection")
        template["ucb_c"] = _require_number(template["ucb_c"], "run.ucb_c")
        template["init_count"] = _require_int(template["init_count"], "run.init_count", minimum=1)
        template["steps"] = _require_int(template["steps"], "run.steps", minimum=0)
        template["snapshot_every"] = _require_int(template["snapshot_every"], "run.snapshot_every", minimum=0)
        axes = template["axis_sizes"]
        if not isinstance(axes, list) or not axes:
            _fail("run.axis_sizes", f"expected a non-empty list, got {axes!r}")
        template["axis_sizes"] = [_require_int(a, "run.axis_sizes", minimum=1) for a in axes]
        params = _require_mapping(template["domain_params"], "run.domain_params")
        for key in params:
            _require_str(key, "run.domain_params key")
        template["domain_params"] = dict(params)

        try:
            domain = make_domain(template["domain"], template["domain_params"])
        except ValueError as exc:
            raise ConfigError(f"run.domain: {exc}") from None
        except TypeError as exc:
            raise ConfigError(f"run.domain_params: {exc}") from None
        if tuple(template["axis_sizes"]) != domain.axis_sizes:
            _fail(
                "run.axis_sizes",
                f"must match the domain's bins {list(domain.axis_sizes)}, got {template['axis_sizes']}",
            )
        try:
            RunConfig(seed=0, method="mapelites", **{**template, "axis_sizes": tuple(template["axis_sizes"])})
        except ValueError as exc:
            raise ConfigError(f"run: {exc}") from None

        return cls(
            labels=tuple(labels),
            run_template=template,
            runs_per_method=runs_per_method,
            output_dir=output_dir,
        )


def load_config(path: str | Path) -> ExperimentConfig:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    return ExperimentConfig.from_dict(data)
