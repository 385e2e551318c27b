"""Feasibility of every list assignment over a small color universe, two ways.

Lists are encoded as bit masks ``1..2^u - 1`` (bit ``j`` set means color
``j + 1`` is allowed).  Both functions return a boolean array with one axis
per vertex, indexed by ``mask - 1``.
"""

from __future__ import annotations

import itertools

import numpy as np

from distcolor.window_dp import DLC_START, dlc_step, prune_lists


def mask_colors(mask: int) -> frozenset[int]:
    return frozenset(j + 1 for j in range(mask.bit_length()) if mask >> j & 1)


def brute_feasibility(n: int, d: int, universe: int) -> np.ndarray:
    """Superset closure of the valid colorings: an assignment is feasible iff it covers one."""
    full = 1 << universe
    covered = np.zeros((full,) * n, dtype=bool)
    for word in itertools.product(range(universe), repeat=n):
        if all(word[i] != word[j] for i in range(n) for j in range(i + 1, min(n, i + d + 1))):
            covered[tuple(1 << x for x in word)] = True
    for axis in range(n):
        view = np.moveaxis(covered, axis, 0)
        for bit in range(universe):
            low = [m for m in range(full) if not m >> bit & 1]
            high = [m | 1 << bit for m in low]
            view[high] |= view[low]
    return covered[(slice(1, None),) * n]


def library_feasibility(n: int, d: int, universe: int, *, prune: bool = True) -> np.ndarray:
    """Run the window DP step over the prefix tree of all assignments, sharing equal frontiers."""
    masks = range(1, 1 << universe)
    options = [prune_lists([mask_colors(m)], d)[0] if prune else mask_colors(m) for m in masks]
    ids: dict[frozenset, int] = {}
    reps: list[dict] = []
    table: list[list[int]] = []

    def intern(layer: dict) -> int:
        key = frozenset(layer)
        if key not in ids:
            ids[key] = len(reps)
            reps.append(layer)
            table.append([])
        return ids[key]

    level = np.array([intern(DLC_START)])
    for _ in range(n):
        for fid in np.unique(level):
            if not table[fid]:
                table[fid] = [intern(dlc_step(reps[fid], opts, d)) for opts in options]
        lookup = np.array([row or [0] * len(options) for row in table])
        level = lookup[level].reshape(-1)
    nonempty = np.array([bool(layer) for layer in reps])
    return nonempty[level].reshape((len(options),) * n)
