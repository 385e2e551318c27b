"""Sliding-window dynamic programs on a single path.

``solve_dped_dp`` tracks the last ``d`` colors together with how often each
color has been used so far; it is exact for DPED and polynomial for fixed
``c`` and ``d``.  ``solve_dlc_dp`` tracks only the last ``d`` colors and solves
list coloring without demands; lists can be cut to ``2d + 1`` colors first
because a vertex never loses more than ``2d`` colors to its neighbours.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from . import _kernels
from .errors import BudgetExceeded, DemandsUnsupported, InvalidInstance, NotSinglePath
from .model import Coloring, DPEDInstance, LCDInstance

DEFAULT_STATE_CAP = 2_000_000


@dataclass(frozen=True)
class WindowSignature:
    """Colors of the rightmost ``min(i, d)`` vertices plus per-color usage after stage ``i``."""

    window: tuple[int, ...]
    counts: tuple[int, ...]


def solve_dped_dp(instance: DPEDInstance, *, state_cap: int = DEFAULT_STATE_CAP) -> Coloring | None:
    """Exact DPED on a single path.

    Usage counts are capped by the lifted demands (demand plus precolored
    occurrences), and a state is dropped as soon as it cannot absorb the
    precolored vertices still ahead.

    Raises:
        NotSinglePath: more than one path; concatenate first or use another solver.
        BudgetExceeded: some stage holds more than ``state_cap`` signatures.
    """
    if instance.demands is None:
        raise InvalidInstance("this solver needs demands")
    if instance.topology.num_paths > 1:
        raise NotSinglePath("the window DP takes a single path")
    if not instance.is_demand_consistent():
        return None
    out = _kernels.window_dp(
        instance.n,
        instance.num_colors,
        instance.d,
        list(instance.precolor),
        list(instance.lifted_demands()),
        state_cap,
    )
    return None if out is None else tuple(out)


def dped_signatures(instance: DPEDInstance) -> Iterator[frozenset[WindowSignature]]:
    """Yield the reachable signatures after each stage, without demand pruning.

    Meant for inspecting small instances; it keeps whole layers as sets.
    """
    if instance.topology.num_paths > 1:
        raise NotSinglePath("the window DP takes a single path")
    d, c = instance.d, instance.num_colors
    layer = {WindowSignature((), (0,) * c)}
    for col_fixed in instance.precolor:
        nxt = set()
        for sig in layer:
            for col in (col_fixed,) if col_fixed else range(1, c + 1):
                if col in sig.window:
                    continue
                counts = list(sig.counts)
                counts[col - 1] += 1
                window = (sig.window + (col,))[-d:] if d else ()
                nxt.add(WindowSignature(window, tuple(counts)))
        layer = nxt
        yield frozenset(layer)


def prune_lists(lists: Sequence[frozenset[int]], d: int) -> tuple[frozenset[int], ...]:
    """Keep the ``2d + 1`` smallest colors of every list."""
    keep = 2 * d + 1
    return tuple(frozenset(sorted(lst)[:keep]) for lst in lists)


Frontier = dict[tuple[int, ...], tuple[tuple[int, ...], int]]


def dlc_step(layer: Frontier, options: Iterable[int], d: int) -> Frontier:
    """Extend every window in ``layer`` by one vertex whose list is ``options``.

    The result maps each new window to ``(parent window, color)``, keeping the
    first parent found when colors are tried in increasing order.
    """
    nxt: Frontier = {}
    ordered = sorted(options)
    for window in layer:
        for col in ordered:
            if col in window:
                continue
            key = (window + (col,))[-d:] if d else ()
            if key not in nxt:
                nxt[key] = (window, col)
    return nxt


DLC_START: Frontier = {(): ((), 0)}


def dlc_frontiers(
    lists: Sequence[frozenset[int]], d: int, *, state_cap: int = DEFAULT_STATE_CAP
) -> list[Frontier]:
    """Frontier sets for one path: entry ``i`` maps each window coloring of the
    last ``min(i + 1, d)`` vertices to ``(parent window, color of v_{i+1})``.

    Windows are kept in insertion order, so the first entry is the
    lexicographically first reachable coloring's window.  A frontier that
    empties stays empty: every later frontier is empty too.
    """
    frontiers: list[Frontier] = []
    layer = DLC_START
    for lst in lists:
        layer = dlc_step(layer, lst, d)
        if len(layer) > state_cap:
            raise BudgetExceeded(f"DLC frontier holds {len(layer)} windows (cap {state_cap})")
        frontiers.append(layer)
    return frontiers


def _dlc_path(lists: Sequence[frozenset[int]], d: int, state_cap: int) -> list[int] | None:
    frontiers = dlc_frontiers(lists, d, state_cap=state_cap)
    if not frontiers:
        return []
    if not frontiers[-1]:
        return None
    out = [0] * len(lists)
    key = next(iter(frontiers[-1]))
    for i in range(len(lists) - 1, -1, -1):
        key, out[i] = frontiers[i][key]
    return out


def solve_dlc_dp(
    instance: LCDInstance, *, prune: bool = True, state_cap: int = DEFAULT_STATE_CAP
) -> Coloring | None:
    """Distance list coloring without demands; paths are solved independently.

    Raises:
        DemandsUnsupported: the instance carries demands.
    """
    if instance.demands is not None:
        raise DemandsUnsupported("distance list coloring takes no demands; strip them first")
    lists = prune_lists(instance.lists, instance.d) if prune else instance.lists
    out: list[int] = []
    for path in instance.topology.paths():
        part = _dlc_path(lists[path.start - 1:path.stop - 1], instance.d, state_cap)
        if part is None:
            return None
        out += part
    return tuple(out)


__all__ = [
    "DEFAULT_STATE_CAP",
    "DLC_START",
    "WindowSignature",
    "dlc_frontiers",
    "dlc_step",
    "dped_signatures",
    "prune_lists",
    "solve_dlc_dp",
    "solve_dped_dp",
]
