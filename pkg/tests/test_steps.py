import numpy as np
import pytest

from melita import (
    INSERTED_EMPTY,
    OFFSPRING_INVALID,
    REJECTED,
    REPLACED,
    Archive,
    Artefact,
    VectorPairDomain,
    characterize,
    melita_step,
    seed_archive,
    transverse_candidates,
    vanilla_step,
)
from melita.harness.serialize import archive_to_dict

import oracles
from conftest import ScriptedDomain, scripted_solution


def find_seed(n_occupied, parent_index, modality, max_seed=100000):
    """First seed whose (selection, modality) draws hit the wanted pair."""
    for seed in range(max_seed):
        rng = np.random.default_rng(seed)
        if int(rng.integers(n_occupied)) == parent_index and int(rng.integers(2)) == modality:
            return seed
    raise AssertionError("no matching seed found")


def test_characterize_builds_solution():
    domain = ScriptedDomain(fitness_table={(1.0, 2.0): 0.8})
    solution = scripted_solution(domain, 1, 2)
    assert solution.coords == (1, 2)
    assert solution.fitness == 0.8


def test_characterize_death_penalty():
    domain = ScriptedDomain()
    artefacts = (Artefact(0, np.array([-1.0])), Artefact(1, np.array([2.0])))
    assert characterize(domain, artefacts) is None


def test_characterize_rejects_misordered_artefacts():
    domain = ScriptedDomain()
    artefacts = (Artefact(1, np.array([1.0])), Artefact(0, np.array([2.0])))
    with pytest.raises(ValueError):
        characterize(domain, artefacts)


def test_vanilla_replaces_own_cell():
    # Parent with fitness 0.6 mutates onto its own cell with fitness 0.7.
    table = {(1.0, 1.0): 0.6, (1.0, 1.5): 0.7}
    domain = ScriptedDomain(fitness_table=table)
    archive = Archive(domain.axis_sizes)
    archive.insert(scripted_solution(domain, 1, 1))

    domain.push(1, 1.5)  # still bin 1 on the visual axis
    seed = find_seed(1, 0, 1)
    report = vanilla_step(archive, domain, np.random.default_rng(seed))
    assert report.outcome.kind == REPLACED
    assert report.outcome.coords == (1, 1)
    assert report.candidate_count == 1
    assert report.evaluations == 1
    assert archive.cells[(1, 1)].solution.fitness == 0.7
    assert archive.cells[(1, 1)].offspring_inserted == 1


def test_vanilla_fills_empty_cell_regardless_of_parent_fitness():
    table = {(1.0, 1.0): 0.9, (1.0, 3.0): 0.1}
    domain = ScriptedDomain(fitness_table=table)
    archive = Archive(domain.axis_sizes)
    archive.insert(scripted_solution(domain, 1, 1))

    domain.push(1, 3.0)
    report = vanilla_step(archive, domain, np.random.default_rng(find_seed(1, 0, 1)))
    assert report.outcome.kind == INSERTED_EMPTY
    assert report.outcome.coords == (1, 3)
    assert archive.cells[(1, 1)].offspring_inserted == 1


def test_vanilla_invalid_offspring():
    domain = ScriptedDomain(fitness_table={(1.0, 1.0): 0.5})
    archive = Archive(domain.axis_sizes)
    archive.insert(scripted_solution(domain, 1, 1))

    domain.push(1, -1.0)  # unclassifiable
    report = vanilla_step(archive, domain, np.random.default_rng(find_seed(1, 0, 1)))
    assert report.outcome.kind == OFFSPRING_INVALID
    assert report.candidate_count == 0
    assert report.evaluations == 0
    assert len(archive) == 1


def test_transverse_candidates_empty_row():
    domain = ScriptedDomain(fitness_table={(1.0, 1.0): 0.5})
    archive = Archive(domain.axis_sizes)
    parent = scripted_solution(domain, 1, 1)
    archive.insert(parent)
    # Mutated visual artefact lands in bin 3: no elite has visual bin 3.
    candidates = transverse_candidates(archive, domain, Artefact(1, np.array([3.0])), parent)
    assert candidates == []


def test_transverse_candidates_dedups_direct_offspring():
    # The parent itself sits in the mutated artefact's row; its candidate
    # is payload-identical to the direct offspring and must be dropped.
    domain = ScriptedDomain(fitness_table={(1.0, 1.0): 0.5})
    archive = Archive(domain.axis_sizes)
    parent = scripted_solution(domain, 1, 1)
    archive.insert(parent)
    candidates = transverse_candidates(archive, domain, Artefact(1, np.array([1.5])), parent)
    assert candidates == []


def test_transverse_candidates_two_foreign_elites():
    table = {
        (0.0, 1.0): 0.5,  # parent
        (2.0, 1.2): 0.6,  # elite R1 at (2, 1)
        (3.0, 1.4): 0.7,  # elite R2 at (3, 1)
        (2.0, 1.5): 0.65,  # R1's artefacts with the new visual payload
        (3.0, 1.5): 0.75,  # R2's artefacts with the new visual payload
    }
    domain = ScriptedDomain(fitness_table=table)
    archive = Archive(domain.axis_sizes)
    parent = scripted_solution(domain, 0, 1.0)
    archive.insert(parent)
    archive.insert(scripted_solution(domain, 2, 1.2))
    archive.insert(scripted_solution(domain, 3, 1.4))

    new_artefact = Artefact(1, np.array([1.5]))
    candidates = transverse_candidates(archive, domain, new_artefact, parent)
    assert [c.coords for c in candidates] == [(2, 1), (3, 1)]
    assert [c.fitness for c in candidates] == [0.65, 0.75]
    for candidate in candidates:
        assert float(candidate.artefacts[1].payload[0]) == 1.5


def test_transverse_candidates_map_to_borrowed_cells():
    # Soundness: each candidate targets the cell of the elite whose
    # artefacts it borrowed, with the mutated axis already matching.
    domain = VectorPairDomain()
    rng = np.random.default_rng(42)
    archive = Archive(domain.axis_sizes)
    seed_archive(archive, domain, 60, rng)
    parent = archive.cells[archive.occupied()[0]].solution
    new_artefact = domain.vary(1, parent, rng)
    new_bin = domain.describe(1, new_artefact.payload)
    for candidate in transverse_candidates(archive, domain, new_artefact, parent):
        assert candidate.coords in archive.cells
        assert candidate.coords[1] == new_bin
        elite = archive.cells[candidate.coords].solution
        assert np.array_equal(candidate.artefacts[0].payload, elite.artefacts[0].payload)


def test_melita_replaces_row_elite():
    # Staged two-row scenario: the mutated artefact recombined with a
    # row elite beats that elite, and that candidate tops the list, so
    # the row elite's cell changes while the offspring's own empty cell
    # stays empty.
    table = {
        (0.0, 1.0): 0.50,  # parent E at (0, 1)
        (2.0, 1.2): 0.60,  # R1 at (2, 1)
        (3.0, 1.4): 0.70,  # R2 at (3, 1)
        (0.0, 1.5): 0.55,  # direct offspring E' -> empty (0, 1)... same cell
        (2.0, 1.5): 0.58,  # R1' loses to R1
        (3.0, 1.5): 0.90,  # R2' beats R2 and tops L
    }
    domain = ScriptedDomain(fitness_table=table)
    archive = Archive(domain.axis_sizes)
    archive.insert(scripted_solution(domain, 0, 1.0))
    archive.insert(scripted_solution(domain, 2, 1.2))
    archive.insert(scripted_solution(domain, 3, 1.4))

    domain.push(1, 1.5)
    seed = find_seed(3, 0, 1)  # parent E is first in sorted order
    report = melita_step(archive, domain, np.random.default_rng(seed))
    assert report.outcome.kind == REPLACED
    assert report.outcome.coords == (3, 1)
    assert report.candidate_count == 3
    assert archive.cells[(3, 1)].solution.fitness == 0.90
    # E' was payload-identical to the parent's cell content only on the
    # text side; its own cell keeps the parent.
    assert archive.cells[(0, 1)].solution.fitness == 0.50
    assert archive.cells[(0, 1)].offspring_inserted == 1


def test_melita_falls_back_to_empty_cell():
    # Same stage, but every recombination loses to its row elite; the
    # direct offspring lands in an empty cell.
    table = {
        (1.0, 1.0): 0.50,  # parent at (1, 1)
        (2.0, 1.2): 0.60,
        (3.0, 1.4): 0.70,
        (1.0, 2.5): 0.40,  # direct offspring E' -> empty (1, 2)
    }
    domain = ScriptedDomain(fitness_table=table)
    archive = Archive(domain.axis_sizes)
    archive.insert(scripted_solution(domain, 1, 1.0))
    archive.insert(scripted_solution(domain, 2, 1.2))
    archive.insert(scripted_solution(domain, 3, 1.4))

    domain.push(1, 2.5)
    seed = find_seed(3, 0, 1)
    report = melita_step(archive, domain, np.random.default_rng(seed))
    assert report.outcome.kind == INSERTED_EMPTY
    assert report.outcome.coords == (1, 2)
    assert report.candidate_count == 1  # row at visual bin 2 is empty
    assert archive.cells[(1, 2)].solution.fitness == 0.40


def test_melita_walk_is_single_pass():
    # A replacement earlier in the list stops the walk even though a
    # later candidate could have filled an empty cell.
    table = {
        (0.0, 1.0): 0.50,  # parent at (0, 1)
        (2.0, 1.2): 0.60,  # R1 at (2, 1)
        (0.0, 1.5): 0.20,  # E' -> its own occupied cell (0, 1), loses
        (2.0, 1.5): 0.80,  # R1' beats R1, tops L
    }
    domain = ScriptedDomain(fitness_table=table)
    archive = Archive(domain.axis_sizes)
    archive.insert(scripted_solution(domain, 0, 1.0))
    archive.insert(scripted_solution(domain, 2, 1.2))

    domain.push(1, 1.5)
    seed = find_seed(2, 0, 1)
    report = melita_step(archive, domain, np.random.default_rng(seed))
    assert report.outcome.kind == REPLACED
    assert report.outcome.coords == (2, 1)
    assert len(archive) == 2  # no second insertion happened


def test_melita_rejects_when_every_candidate_loses():
    table = {
        (0.0, 1.0): 0.90,
        (0.0, 1.5): 0.10,  # E' targets its own cell and loses
    }
    domain = ScriptedDomain(fitness_table=table)
    archive = Archive(domain.axis_sizes)
    archive.insert(scripted_solution(domain, 0, 1.0))

    domain.push(1, 1.5)
    seed = find_seed(1, 0, 1)
    report = melita_step(archive, domain, np.random.default_rng(seed))
    assert report.outcome.kind == REJECTED
    assert archive.cells[(0, 1)].solution.fitness == 0.90
    assert archive.cells[(0, 1)].offspring_inserted == 0


def test_melita_tie_order_prefers_offspring_then_coords():
    # Three list members share one fitness; the offspring is tried
    # first, then candidates by ascending coords. The offspring loses at
    # its occupied cell, and the (1, 1) candidate wins before (3, 1).
    table = {
        (0.0, 1.0): 0.70,  # parent at (0, 1); E' will tie at 0.6 below it
        (1.0, 1.2): 0.50,  # R1 at (1, 1)
        (3.0, 1.4): 0.50,  # R2 at (3, 1)
        (0.0, 1.5): 0.60,  # E' at (0, 1): rejected, parent is fitter
        (1.0, 1.5): 0.60,  # R1' at (1, 1): wins
        (3.0, 1.5): 0.60,  # R2' at (3, 1): never reached
    }
    domain = ScriptedDomain(fitness_table=table)
    archive = Archive(domain.axis_sizes)
    archive.insert(scripted_solution(domain, 0, 1.0))
    archive.insert(scripted_solution(domain, 1, 1.2))
    archive.insert(scripted_solution(domain, 3, 1.4))

    domain.push(1, 1.5)
    seed = find_seed(3, 0, 1)
    report = melita_step(archive, domain, np.random.default_rng(seed))
    assert report.outcome.kind == REPLACED
    assert report.outcome.coords == (1, 1)
    assert archive.cells[(3, 1)].solution.fitness == 0.50


def test_seed_archive():
    domain = VectorPairDomain()
    archive = Archive(domain.axis_sizes)
    assert seed_archive(archive, domain, 0, np.random.default_rng(0)) == 0
    assert len(archive) == 0

    count = seed_archive(archive, domain, 100, np.random.default_rng(3))
    assert 0 < count <= 100
    assert count == len(archive)

    again = Archive(domain.axis_sizes)
    seed_archive(again, domain, 100, np.random.default_rng(3))
    assert archive_to_dict(archive) == archive_to_dict(again)

    with pytest.raises(ValueError):
        seed_archive(archive, domain, 1, np.random.default_rng(0))


def test_vanilla_equivalence_with_transverse_disabled():
    # melita_step(transverse=False) must walk the same trajectory as
    # vanilla_step from the same seed.
    domain = VectorPairDomain()
    rng_a = np.random.default_rng(99)
    rng_b = np.random.default_rng(99)
    archive_a = Archive(domain.axis_sizes)
    archive_b = Archive(domain.axis_sizes)
    seed_archive(archive_a, domain, 50, rng_a)
    seed_archive(archive_b, domain, 50, rng_b)

    for _ in range(400):
        report_a = vanilla_step(archive_a, domain, rng_a)
        report_b = melita_step(archive_b, domain, rng_b, transverse=False)
        assert report_a == report_b
    assert archive_to_dict(archive_a) == archive_to_dict(archive_b)


def test_vanilla_thousand_step_oracle():
    # A seeded 1000-step vector-pair run must equal an independent
    # straight-line reimplementation of selection, mutation, binning,
    # coherence, and insertion.
    domain = VectorPairDomain()
    rng = np.random.default_rng(2024)
    archive = Archive(domain.axis_sizes)
    seed_archive(archive, domain, 100, rng)
    for _ in range(1000):
        vanilla_step(archive, domain, rng)

    oracle_rng = np.random.default_rng(2024)
    cells: dict = {}
    oracles.seed(cells, oracle_rng, 100)
    for _ in range(1000):
        oracles.vanilla_step(cells, oracle_rng)

    oracles.assert_same_archive(archive, cells)
