"""Contract a problem domain must satisfy to plug into the search."""
from __future__ import annotations

import abc
from typing import Any

import numpy as np

from .types import Artefact, Solution


class DomainBinding(abc.ABC):
    """Bundle of generator, per-modality variation, per-modality
    behavioural descriptors, and the cross-modality coherence function.

    ``describe`` and ``cohere`` must be pure functions of the payloads.
    ``vary`` and ``generate`` draw only from the rng handle they are given.
    Invalid results are signalled with ``None``; malformed payloads are a
    contract violation and raise.
    """

    name: str = "domain"

    @property
    @abc.abstractmethod
    def modality_count(self) -> int: ...

    @property
    @abc.abstractmethod
    def axis_sizes(self) -> tuple[int, ...]: ...

    @abc.abstractmethod
    def generate(self, rng: np.random.Generator) -> Solution | None:
        """Sample a fresh solution; None when it cannot be characterised."""

    @abc.abstractmethod
    def vary(self, modality: int, parent: Solution, rng: np.random.Generator) -> Artefact | None:
        """Mutate the parent's artefact of the given modality."""

    @abc.abstractmethod
    def describe(self, modality: int, payload: Any) -> int | None:
        """Behavioural bin for one payload; None means unclassified."""

    @abc.abstractmethod
    def cohere(self, payloads: tuple[Any, ...]) -> float:
        """Coherence across modalities, in [0, 1]."""
