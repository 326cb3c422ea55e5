"""Core value types shared across the archive and step procedures."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

Coords = tuple[int, ...]


@dataclass(frozen=True)
class Artefact:
    """One single-modality payload, tagged with its modality index.

    The payload is opaque to the archive machinery; only the owning
    domain binding knows how to vary, describe, or score it.
    """

    modality: int
    payload: Any


@dataclass(frozen=True)
class Solution:
    """An ordered collection of artefacts, one per modality.

    Fitness and per-axis bin coordinates are cached at construction and
    never recomputed, so a Solution is immutable by design.
    """

    artefacts: tuple[Artefact, ...]
    fitness: float
    coords: Coords

    def __post_init__(self) -> None:
        modalities = tuple(a.modality for a in self.artefacts)
        if modalities != tuple(range(len(self.artefacts))):
            raise ValueError(f"artefacts must cover modalities 0..N-1 in order, got {modalities}")
        if len(self.coords) != len(self.artefacts):
            raise ValueError("coords must have one entry per modality")
        if not 0.0 <= self.fitness <= 1.0:
            raise ValueError(f"fitness must lie in [0, 1], got {self.fitness}")

    def payloads(self) -> tuple[Any, ...]:
        return tuple(a.payload for a in self.artefacts)


def payloads_equal(a: Solution, b: Solution) -> bool:
    """True when two solutions carry identical payloads in every modality."""
    if len(a.artefacts) != len(b.artefacts):
        return False
    return all(
        np.array_equal(np.asarray(x.payload), np.asarray(y.payload))
        for x, y in zip(a.artefacts, b.artefacts)
    )


# Outcome kinds for archive insertions and evolutionary steps.
INSERTED_EMPTY = "inserted_empty"
REPLACED = "replaced"
REJECTED = "rejected"
OFFSPRING_INVALID = "offspring_invalid"


@dataclass(frozen=True)
class Outcome:
    """What a single insertion attempt (or whole step) did to the archive.

    At most one cell is named: ``coords`` is set for inserted_empty and
    replaced outcomes, and the fitness pair is set for replacements only.
    """

    kind: str
    coords: Coords | None = None
    old_fitness: float | None = None
    new_fitness: float | None = None


@dataclass(frozen=True)
class StepReport:
    """Observability record for one evolutionary step."""

    parent_coords: Coords
    mutated_modality: int
    candidate_count: int
    evaluations: int
    outcome: Outcome
