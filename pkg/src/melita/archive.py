"""Grid archive of elites with per-occupant selection statistics."""
from __future__ import annotations

from dataclasses import dataclass, field

from .types import INSERTED_EMPTY, REJECTED, REPLACED, Coords, Outcome, Solution


@dataclass
class Cell:
    """One occupied grid cell.

    Selection statistics describe the *current* occupant: they are reset
    whenever a new solution takes the cell, and the selections of the
    evicted elite are folded into the archive-level counter.
    """

    solution: Solution
    birth_step: int
    times_selected: int = 0
    offspring_inserted: int = 0


@dataclass
class Archive:
    """N-dimensional grid holding at most one elite per cell.

    Replacement uses strict fitness inequality, so per-cell occupant
    fitness never decreases over a run.
    """

    axis_sizes: tuple[int, ...]
    cells: dict[Coords, Cell] = field(default_factory=dict)
    total_selections: int = 0
    evicted_selections: int = 0

    def __post_init__(self) -> None:
        self.axis_sizes = tuple(int(s) for s in self.axis_sizes)
        if not self.axis_sizes or any(s < 1 for s in self.axis_sizes):
            raise ValueError(f"axis sizes must be positive, got {self.axis_sizes}")

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def cell_count(self) -> int:
        total = 1
        for s in self.axis_sizes:
            total *= s
        return total

    def occupied(self) -> list[Coords]:
        """Occupied coordinates in ascending lexicographic order."""
        return sorted(self.cells)

    def solutions(self) -> list[Solution]:
        return [self.cells[c].solution for c in self.occupied()]

    def check_coords(self, coords: Coords) -> None:
        if len(coords) != len(self.axis_sizes) or any(
            not 0 <= c < s for c, s in zip(coords, self.axis_sizes)
        ):
            raise ValueError(f"coords {coords} out of range for axes {self.axis_sizes}")

    def insert(self, candidate: Solution) -> Outcome:
        """Place a candidate at its own coordinates if the cell is empty
        or the candidate is strictly fitter than the occupant."""
        self.check_coords(candidate.coords)
        cell = self.cells.get(candidate.coords)
        if cell is None:
            self.cells[candidate.coords] = Cell(candidate, birth_step=self.total_selections)
            return Outcome(INSERTED_EMPTY, coords=candidate.coords)
        if candidate.fitness > cell.solution.fitness:
            old = cell.solution.fitness
            self.evicted_selections += cell.times_selected
            self.cells[candidate.coords] = Cell(candidate, birth_step=self.total_selections)
            return Outcome(
                REPLACED,
                coords=candidate.coords,
                old_fitness=old,
                new_fitness=candidate.fitness,
            )
        return Outcome(REJECTED)

    def record_selection(self, coords: Coords) -> None:
        self.cells[coords].times_selected += 1
        self.total_selections += 1

    def credit_insertion(self, parent_coords: Coords) -> None:
        """Credit the parent's cell with a successful offspring insertion.

        If the parent was just evicted by its own offspring, the credit
        lands on the cell's new occupant.
        """
        cell = self.cells.get(parent_coords)
        if cell is not None:
            cell.offspring_inserted += 1
