"""Evolutionary step procedures: the plain MAP-Elites cycle and the
transverse-assessment variant that cross-pollinates a freshly mutated
artefact with every elite sharing its behavioural bin.

Each step consumes rng draws in a fixed order (one selection draw, one
modality draw, then whatever the variation operator needs), after which
everything is deterministic. That makes a step replayable by independent
code from the same rng state.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from .archive import Archive
from .binding import DomainBinding
from .selection import select_uniform
from .types import (
    INSERTED_EMPTY,
    OFFSPRING_INVALID,
    REJECTED,
    REPLACED,
    Artefact,
    Coords,
    Outcome,
    Solution,
    StepReport,
    payloads_equal,
)

SelectFn = Callable[[Archive, np.random.Generator], Coords]


def characterize(domain: DomainBinding, artefacts: tuple[Artefact, ...]) -> Solution | None:
    """Score and bin a full set of artefacts.

    Returns None (the death penalty) when any modality's descriptor is
    unclassified; such a solution never enters the archive.
    """
    if tuple(a.modality for a in artefacts) != tuple(range(domain.modality_count)):
        raise ValueError("expected exactly one artefact per modality, in order")
    coords = []
    for artefact in artefacts:
        bin_index = domain.describe(artefact.modality, artefact.payload)
        if bin_index is None:
            return None
        coords.append(int(bin_index))
    fitness = float(domain.cohere(tuple(a.payload for a in artefacts)))
    return Solution(tuple(artefacts), fitness, tuple(coords))


def _invalid_report(parent_coords: Coords, modality: int) -> StepReport:
    return StepReport(
        parent_coords=parent_coords,
        mutated_modality=modality,
        candidate_count=0,
        evaluations=0,
        outcome=Outcome(OFFSPRING_INVALID),
    )


def _make_offspring(
    archive: Archive,
    domain: DomainBinding,
    rng: np.random.Generator,
    select: SelectFn,
) -> tuple[Coords, int, Solution | None]:
    """Shared stochastic prefix of both step procedures.

    Selects a parent, mutates one uniformly chosen modality, and builds
    the direct offspring with cached descriptors carried over for the
    unchanged modalities (one coherence evaluation). The offspring is
    None when variation failed or the new artefact is unclassified.
    """
    parent_coords = select(archive, rng)
    parent = archive.cells[parent_coords].solution
    modality = int(rng.integers(domain.modality_count))

    new_artefact = domain.vary(modality, parent, rng)
    if new_artefact is None:
        return parent_coords, modality, None
    if new_artefact.modality != modality:
        raise ValueError(
            f"variation operator for modality {modality} returned modality {new_artefact.modality}"
        )
    new_bin = domain.describe(modality, new_artefact.payload)
    if new_bin is None:
        return parent_coords, modality, None

    artefacts = tuple(
        new_artefact if i == modality else a for i, a in enumerate(parent.artefacts)
    )
    coords = tuple(
        int(new_bin) if i == modality else c for i, c in enumerate(parent.coords)
    )
    fitness = float(domain.cohere(tuple(a.payload for a in artefacts)))
    return parent_coords, modality, Solution(artefacts, fitness, coords)


def vanilla_step(
    archive: Archive,
    domain: DomainBinding,
    rng: np.random.Generator,
    select: SelectFn = select_uniform,
) -> StepReport:
    """One steady-state MAP-Elites cycle: the offspring competes only at
    its own cell."""
    parent_coords, modality, offspring = _make_offspring(archive, domain, rng, select)
    if offspring is None:
        return _invalid_report(parent_coords, modality)
    outcome = archive.insert(offspring)
    if outcome.kind in (INSERTED_EMPTY, REPLACED):
        archive.credit_insertion(parent_coords)
    return StepReport(
        parent_coords=parent_coords,
        mutated_modality=modality,
        candidate_count=1,
        evaluations=1,
        outcome=outcome,
    )


def transverse_candidates(
    archive: Archive,
    domain: DomainBinding,
    new_artefact: Artefact,
    parent: Solution,
) -> list[Solution]:
    """Pair a mutated artefact with every elite sharing its bin.

    For each elite whose coordinate on the mutated axis equals the new
    artefact's bin, builds the candidate that keeps the elite's other
    artefacts (so it maps to the elite's own cell, with cached bins) and
    re-scores coherence. The direct offspring — the new artefact joined
    with the parent's other artefacts — is not a member; candidates
    payload-identical to it are dropped so it appears exactly once in
    the caller's ordered list.
    """
    m = new_artefact.modality
    new_bin = domain.describe(m, new_artefact.payload)
    if new_bin is None:
        raise ValueError("transverse_candidates requires a classifiable artefact")
    offspring_artefacts = tuple(
        new_artefact if i == m else a for i, a in enumerate(parent.artefacts)
    )
    offspring_stub = Solution(offspring_artefacts, 0.0, parent.coords)
    candidates: list[Solution] = []
    for coords in archive.occupied():
        if coords[m] != int(new_bin):
            continue
        elite = archive.cells[coords].solution
        artefacts = tuple(
            new_artefact if i == m else a for i, a in enumerate(elite.artefacts)
        )
        if payloads_equal(Solution(artefacts, 0.0, elite.coords), offspring_stub):
            continue
        fitness = float(domain.cohere(tuple(a.payload for a in artefacts)))
        candidates.append(Solution(artefacts, fitness, elite.coords))
    return candidates


def melita_step(
    archive: Archive,
    domain: DomainBinding,
    rng: np.random.Generator,
    select: SelectFn = select_uniform,
    transverse: bool = True,
) -> StepReport:
    """One transverse-assessment cycle.

    The direct offspring and all transverse candidates are sorted by
    fitness (descending; ties put the direct offspring first, then
    ascending cell coordinates) and walked in order: the first member
    whose cell is empty is inserted, otherwise the first member strictly
    fitter than its cell's occupant replaces it; at most one cell
    changes. With ``transverse=False`` the candidate list degenerates to
    the direct offspring and the step is exactly the plain cycle.
    """
    parent_coords, modality, offspring = _make_offspring(archive, domain, rng, select)
    if offspring is None:
        return _invalid_report(parent_coords, modality)

    candidates: list[Solution] = []
    if transverse:
        parent = archive.cells[parent_coords].solution
        new_artefact = offspring.artefacts[modality]
        candidates = transverse_candidates(archive, domain, new_artefact, parent)

    ordered = [offspring] + candidates
    ordered.sort(key=lambda s: (-s.fitness, 0 if s is offspring else 1, s.coords))

    outcome = Outcome(REJECTED)
    for candidate in ordered:
        cell = archive.cells.get(candidate.coords)
        if cell is None or candidate.fitness > cell.solution.fitness:
            outcome = archive.insert(candidate)
            break
    if outcome.kind in (INSERTED_EMPTY, REPLACED):
        archive.credit_insertion(parent_coords)
    return StepReport(
        parent_coords=parent_coords,
        mutated_modality=modality,
        candidate_count=len(ordered),
        evaluations=len(ordered),
        outcome=outcome,
    )


def seed_archive(
    archive: Archive,
    domain: DomainBinding,
    count: int,
    rng: np.random.Generator,
) -> int:
    """Fill an empty archive with generated solutions.

    Performs ``count`` generation attempts, discards unclassifiable ones,
    and inserts the rest under normal competition. Returns the number of
    occupied cells.
    """
    if archive.cells:
        raise ValueError("seed_archive requires an empty archive")
    for _ in range(count):
        solution = domain.generate(rng)
        if solution is not None:
            archive.insert(solution)
    return len(archive)
