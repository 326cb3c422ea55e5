"""Parent selection policies over the archive.

Both policies consume exactly one ``rng.integers`` draw per call and scan
occupied cells in ascending lexicographic coordinate order, so a given
archive state and rng state always yield the same parent.
"""
from __future__ import annotations

import math

import numpy as np

from .archive import Archive
from .types import Coords


class NoElitesError(RuntimeError):
    """Raised when a parent is requested from an empty archive."""


def select_uniform(archive: Archive, rng: np.random.Generator) -> Coords:
    """Pick an occupied cell uniformly at random and update its counters."""
    occupied = archive.occupied()
    if not occupied:
        raise NoElitesError("cannot select a parent from an empty archive")
    coords = occupied[int(rng.integers(len(occupied)))]
    archive.record_selection(coords)
    return coords


def select_ucb(archive: Archive, rng: np.random.Generator, c: float = 1.0) -> Coords:
    """UCB1 parent selection.

    Score per occupied cell: insertion success rate plus
    ``c * sqrt(2 ln T / n)`` where ``n`` is how often the occupant was
    selected and ``T`` the archive-wide selection count. Never-selected
    occupants score infinite and are chosen first; exact score ties are
    broken uniformly at random.
    """
    occupied = archive.occupied()
    if not occupied:
        raise NoElitesError("cannot select a parent from an empty archive")

    unvisited = [coords for coords in occupied if archive.cells[coords].times_selected == 0]
    if unvisited:
        coords = unvisited[int(rng.integers(len(unvisited)))]
    else:
        t = max(archive.total_selections, 1)
        best_score = -math.inf
        best: list[Coords] = []
        for coords in occupied:
            cell = archive.cells[coords]
            n = cell.times_selected
            score = cell.offspring_inserted / max(1, n) + c * math.sqrt(2.0 * math.log(t) / n)
            if score > best_score:
                best_score = score
                best = [coords]
            elif score == best_score:
                best.append(coords)
        coords = best[int(rng.integers(len(best)))]
    archive.record_selection(coords)
    return coords
