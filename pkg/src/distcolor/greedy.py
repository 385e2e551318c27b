"""Greedy exact solver for DPED on end-precolored single paths.

Free vertices are colored left to right.  Each one takes the feasible color
with the largest remaining demand; ties go to the color whose first occurrence
in the precolored suffix is earliest, then to the smallest color index.  A
color is infeasible at ``v_i`` when it already sits on ``v_{i-d}..v_{i+d}``;
to the right only the precolored suffix can contribute.
"""

from __future__ import annotations

import heapq
import math
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import InvalidInstance, NotEndPrecolored, NotSinglePath
from .model import Coloring, DPEDInstance, verify_d_distance


@dataclass(frozen=True)
class EndPrecoloredView:
    """Split of a single path into precolored prefix, free middle and precolored suffix.

    Attributes:
        s: the prefix is ``v_1..v_s`` (``s = 0`` when empty).
        t: the suffix is ``v_t..v_n`` (``t = n + 1`` when empty).
        pos: ``pos[a - 1]`` is the first suffix index holding color ``a``, or ``inf``.
    """

    s: int
    t: int
    pos: tuple[float, ...]

    @classmethod
    def of(cls, instance: DPEDInstance) -> EndPrecoloredView:
        """Raises NotSinglePath or NotEndPrecolored when the shape does not fit."""
        if instance.topology.num_paths > 1:
            raise NotSinglePath("the greedy solver takes a single path")
        pre = instance.precolor
        n = len(pre)
        s = 0
        while s < n and pre[s]:
            s += 1
        t = n + 1
        while t - 1 > s and pre[t - 2]:
            t -= 1
        if any(pre[s:t - 1]):
            raise NotEndPrecolored("precolored vertices must form a prefix and a suffix")
        pos = [math.inf] * instance.num_colors
        for j in range(n, t - 1, -1):
            pos[pre[j - 1] - 1] = j
        return cls(s, t, tuple(pos))


def greedy_pass(
    n: int,
    num_colors: int,
    d: int,
    fixed: Sequence[int],
    demands: Sequence[int],
    pos: Sequence[float],
    *,
    relaxed: bool = False,
) -> list[int] | None:
    """One left-to-right greedy sweep over the zero entries of ``fixed``.

    ``fixed`` holds 0 for vertices to color; nonzero entries count toward the
    feasibility window wherever they are.  With ``relaxed`` a vertex whose
    feasible colors all have exhausted demand still gets the feasible color of
    largest (possibly negative) remaining demand, smallest index on ties;
    without it the sweep returns ``None`` there.  Returns ``None`` as well when
    no color at all is feasible.
    """
    gamma = list(fixed)
    demand = [0, *demands]
    heap = [(-demand[a], pos[a - 1], a) for a in range(1, num_colors + 1) if demand[a] > 0]
    heapq.heapify(heap)
    for i in range(n):
        if gamma[i]:
            continue
        blocked = {x for x in gamma[max(0, i - d):min(n, i + d + 1)] if x}
        stash = []
        choice = 0
        while heap:
            key = heapq.heappop(heap)
            a = key[2]
            if -key[0] != demand[a]:
                continue  # stale entry
            if a in blocked:
                stash.append(key)
                continue
            choice = a
            break
        for key in stash:
            heapq.heappush(heap, key)
        if not choice:
            if not relaxed:
                return None
            best = None
            for a in range(1, num_colors + 1):
                if a not in blocked and (best is None or demand[a] > demand[best]):
                    best = a
            if best is None:
                return None
            choice = best
        gamma[i] = choice
        demand[choice] -= 1
        if demand[choice] > 0:
            heapq.heappush(heap, (-demand[choice], pos[choice - 1], choice))
    return gamma


def solve_greedy(instance: DPEDInstance) -> Coloring | None:
    """Solve an end-precolored single-path DPED instance exactly.

    Raises:
        NotSinglePath: more than one path.
        NotEndPrecolored: a precolored vertex sits strictly inside the free middle.
    """
    if instance.demands is None:
        raise InvalidInstance("the greedy solver needs demands")
    view = EndPrecoloredView.of(instance)
    # free vertices get distinct negative placeholders so only precolors can clash
    if not verify_d_distance(instance.topology, [x or -v for v, x in enumerate(instance.precolor, 1)], instance.d):
        return None
    if not instance.is_demand_consistent():
        return None
    out = greedy_pass(
        instance.n, instance.num_colors, instance.d, instance.precolor, instance.demands, view.pos
    )
    return None if out is None else tuple(out)


__all__ = ["EndPrecoloredView", "greedy_pass", "solve_greedy"]
