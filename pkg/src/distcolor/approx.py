"""Additive-error approximation for DPED with few precolored vertices.

Pipeline:

1. Color the whole path greedily for the lifted demands, ignoring the
   precoloring.  On a feasible instance this meets every count exactly.
2. Erase everything within ``b = 2(d+1)^2`` of a precolored vertex.  Precolored
   vertices closer than ``2b + d + 2`` share one cluster.
3. Per cluster, fill the *core* (first precolored vertex up to ``d`` past the
   last one) with a demand-aware search.
4. Repair the left and right zones between core and greedy coloring.  The
   block morph walks from the greedy block to the core block one substitution
   at a time; a demand-aware fill is computed as well and the one that strays
   less from the erased colors wins.

Zones that run into a path end have no greedy block on that side and are
always filled.  The reported error is the exact deviation from the demands.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field

from .errors import Infeasible, InvalidInstance, NotSinglePath, TooFewColors
from .greedy import greedy_pass
from .model import Coloring, DPEDInstance, demand_deviation, distance_conflict


def error_bound(p: int, d: int) -> int:
    """Guaranteed ceiling on the additive error: ``p (2b + 1)`` with ``b = 2(d+1)^2``."""
    return 4 * p * (d + 1) ** 2 + p


@dataclass(frozen=True)
class Zone:
    """A repaired interval ``[start, end]`` (1-based, inclusive) and how it was colored."""

    kind: str  # "core", "left" or "right"
    start: int
    end: int
    method: str  # "fill" or "morph"
    error: int


@dataclass(frozen=True)
class RepairPlan:
    """Geometry of the repair: radius, precolored positions, clusters and zones."""

    d: int
    n: int
    precolored: tuple[int, ...]
    clusters: tuple[tuple[int, int], ...] = ()
    zones: tuple[Zone, ...] = ()

    @property
    def b(self) -> int:
        return 2 * (self.d + 1) ** 2

    @property
    def cluster_gap(self) -> int:
        """Precolored vertices at most this far apart are repaired together."""
        return 2 * self.b + self.d + 1

    def left_blocks(self, w: int) -> list[range]:
        """Blocks ``B_0..B_{2d+3}`` of ``d + 1`` vertices around the left neighbourhood of ``w``.

        ``B_1..B_{2d+2}`` tile the ``b`` vertices before ``w``, ``B_0`` precedes
        them and ``B_{2d+3}`` starts at ``w``.  Ranges may stick out of ``1..n``
        near the path ends.
        """
        size = self.d + 1
        first = w - self.b - size
        return [range(first + k * size, first + (k + 1) * size) for k in range(2 * self.d + 4)]


@dataclass(frozen=True)
class ErrorReport:
    """Achieved additive error, its ceiling and the signed per-color deviation.

    ``bound`` holds whenever the greedy phase meets the lifted demands exactly,
    which it does on every instance that stays feasible without its
    precoloring.  In general ``achieved_error <= baseline_error + bound``, where
    ``baseline_error`` is the greedy phase's own deviation.
    """

    achieved_error: int
    bound: int
    deviations: dict[int, int]
    baseline_error: int = 0
    plan: RepairPlan | None = field(default=None, compare=False)

    def to_text(self) -> str:
        lines = [
            f"achieved_error {self.achieved_error}",
            f"bound {self.bound}",
            f"baseline_error {self.baseline_error}",
        ]
        lines += [f"deviation {col} {dev}" for col, dev in sorted(self.deviations.items())]
        return "\n".join(lines) + "\n"


# -- block morph ------------------------------------------------------------


def morph_steps(start: Sequence[int], target: Sequence[int], num_colors: int) -> list[tuple[int, ...]]:
    """Blocks after each single-slot substitution turning ``start`` into ``target``.

    Every step writes a color absent from the current block, which keeps the
    concatenation of consecutive blocks a valid coloring.  A target color that
    already sits in the wrong slot is first displaced by a fresh color.  At
    most ``floor(1.5 (d + 1))`` steps are needed when a color outside both
    blocks exists.
    """
    cur = list(start)
    size = len(cur)
    if len(set(cur)) != size or len(set(target)) != size or len(target) != size:
        raise ValueError("morph blocks must be injective and of equal length")
    spare = [x for x in range(1, num_colors + 1) if x not in cur and x not in target]
    out: list[tuple[int, ...]] = []
    while cur != list(target):
        wrong = [s for s in range(size) if cur[s] != target[s]]
        direct = next((s for s in wrong if target[s] not in cur), None)
        if direct is not None:
            cur[direct] = target[direct]
        else:
            # every missing color is parked elsewhere: displace one of them
            s2 = cur.index(target[wrong[0]])
            fresh = next((x for x in spare if x not in cur), None)
            if fresh is None:
                fresh = next(x for x in range(1, num_colors + 1) if x not in cur)
            cur[s2] = fresh
        out.append(tuple(cur))
    return out


def morph_blocks(
    start: Sequence[int], target: Sequence[int], count: int, num_colors: int
) -> list[tuple[int, ...]]:
    """``count`` blocks bridging ``start`` to ``target``.

    In the chain ``start, B_1, ..., B_count, target`` consecutive blocks differ
    in at most one position.  Copies of ``start`` go first.

    Raises:
        ValueError: the ``count + 1`` transitions cannot hold all steps.
    """
    steps = morph_steps(start, target, num_colors)
    if len(steps) > count + 1:
        raise ValueError(f"{len(steps)} morph steps do not fit into {count + 1} transitions")
    # the last step equals ``target`` and rides on the final transition
    inner = steps[:-1]
    return [tuple(start)] * (count - len(inner)) + inner


# -- demand-aware fill ------------------------------------------------------


def _fill(
    colors: list[int],
    positions: Sequence[int],
    d: int,
    num_colors: int,
    wanted: Counter,
) -> bool:
    """Assign every 0-based index in ``positions`` so the array stays d-valid.

    Candidates are tried by largest remaining ``wanted`` count, then smallest
    color.  Failed ``(depth, window)`` states are remembered; feasibility does
    not depend on the soft counts, so the memo is exact.  Nonzero entries
    elsewhere in ``colors`` act as fixed context.  Returns ``False`` when no
    completion exists (``colors`` is then left unchanged at ``positions``).
    """
    n = len(colors)
    remaining = Counter(wanted)
    dead: set[tuple[int, tuple[int, ...]]] = set()
    order: list[list[int]] = []
    k = 0
    total = len(positions)
    while 0 <= k < total:
        i = positions[k]
        if len(order) == k:
            key = (k, tuple(colors[max(0, i - d):i]))
            if key in dead:
                k -= 1
                if k >= 0:
                    col = colors[positions[k]]
                    colors[positions[k]] = 0
                    remaining[col] += 1
                continue
            blocked = {x for x in colors[max(0, i - d):min(n, i + d + 1)] if x}
            cand = [x for x in range(1, num_colors + 1) if x not in blocked]
            cand.sort(key=lambda x: (-remaining[x], x))
            order.append(cand[::-1])
        if order[k]:
            col = order[k].pop()
            colors[i] = col
            remaining[col] -= 1
            k += 1
        else:
            dead.add((k, tuple(colors[max(0, i - d):i])))
            order.pop()
            k -= 1
            if k >= 0:
                col = colors[positions[k]]
                colors[positions[k]] = 0
                remaining[col] += 1
    return k == total


def _zone_error(erased: Counter, colors: Sequence[int], lo: int, hi: int) -> int:
    got = Counter(colors[lo:hi + 1])
    return sum(abs(erased[x] - got[x]) for x in set(erased) | set(got))


# -- driver -----------------------------------------------------------------


def _clusters(positions: Sequence[int], gap: int) -> list[tuple[int, int]]:
    out: list[list[int]] = []
    for w in positions:
        if out and w - out[-1][1] <= gap:
            out[-1][1] = w
        else:
            out.append([w, w])
    return [(a, z) for a, z in out]


REPAIR_MODES = ("best", "morph", "fill")


def solve_approx(instance: DPEDInstance, *, repair: str = "best") -> tuple[Coloring, ErrorReport]:
    """Valid coloring extending the precoloring with small additive demand error.

    Args:
        instance: single-path DPED instance with demands.
        repair: ``"best"`` keeps the lower-error repair per zone, ``"morph"``
            morphs every zone that has greedy blocks on both sides, ``"fill"``
            never morphs.

    Raises:
        NotSinglePath: more than one path.
        TooFewColors: fewer than ``d + 2`` colors.
        Infeasible: some repair zone admits no valid coloring at all.
    """
    if instance.demands is None:
        raise InvalidInstance("the approximation needs demands")
    if instance.topology.num_paths > 1:
        raise NotSinglePath("the approximation takes a single path")
    n, c, d = instance.n, instance.num_colors, instance.d
    if repair not in REPAIR_MODES:
        raise ValueError(f"repair must be one of {REPAIR_MODES}")
    if c < d + 2:
        raise TooFewColors(f"need at least d + 2 = {d + 2} colors, got {c}")
    pre = instance.precolor
    positions = [v for v in range(1, n + 1) if pre[v - 1]]
    p = len(positions)

    greedy = greedy_pass(n, c, d, [0] * n, instance.lifted_demands(), [math.inf] * c, relaxed=True)
    if greedy is None:  # cannot happen with c >= d + 2
        raise Infeasible("greedy phase got stuck")
    lifted = instance.lifted_demands()
    got = Counter(greedy)
    baseline = sum(abs(want - got[col]) for col, want in enumerate(lifted, start=1))
    plan = RepairPlan(d, n, tuple(positions))
    b, size = plan.b, d + 1
    colors = list(greedy)
    zones: list[Zone] = []
    clusters = _clusters(positions, plan.cluster_gap)

    # erase every cluster's whole neighbourhood first so fills never lean on stale colors
    spans = []
    for first, last in clusters:
        lo, hi = max(1, first - b), min(n, last + b)
        # reach a path end instead of leaving a greedy sliver shorter than a block
        if lo - size < 1:
            lo = 1
        if hi + size > n:
            hi = n
        spans.append((lo, hi))
        for v in range(lo, hi + 1):
            colors[v - 1] = pre[v - 1]

    for (first, last), (lo, hi) in zip(clusters, spans):
        core_hi = min(n, last + d)
        core = [v - 1 for v in range(first, core_hi + 1) if not pre[v - 1]]
        wanted = Counter(greedy[first - 1:core_hi]) - Counter(x for x in pre[first - 1:core_hi] if x)
        if not _fill(colors, core, d, c, wanted):
            raise Infeasible(f"no valid coloring around precolored vertices {first}..{last}")
        zones.append(Zone("core", first, core_hi, "fill", _zone_error(Counter(greedy[first - 1:core_hi]), colors, first - 1, core_hi - 1)))
        if lo <= first - 1:
            zones.append(_repair_zone(colors, greedy, lo, first - 1, "left", c, d, repair, regular=lo > 1 and first + d <= n))
        if core_hi + 1 <= hi:
            zones.append(_repair_zone(colors, greedy, core_hi + 1, hi, "right", c, d, repair, regular=hi < n and core_hi - first + 1 >= size))

    clash = distance_conflict(instance.topology, colors, d)
    if clash is not None or any(x and colors[v] != x for v, x in enumerate(pre)):
        raise Infeasible(f"repair produced an invalid coloring (conflict {clash})")
    plan = RepairPlan(d, n, tuple(positions), tuple(clusters), tuple(zones))
    dev = demand_deviation(instance, colors)
    report = ErrorReport(sum(abs(x) for x in dev.values()), error_bound(p, d), dev, baseline, plan)
    return tuple(colors), report


def _repair_zone(
    colors: list[int],
    greedy: Sequence[int],
    lo: int,
    hi: int,
    kind: str,
    c: int,
    d: int,
    repair: str,
    *,
    regular: bool,
) -> Zone:
    """Color ``[lo, hi]`` (1-based) by morph or fill, whichever deviates less."""
    i0, i1 = lo - 1, hi - 1
    erased = Counter(greedy[i0:i1 + 1])
    idx = list(range(i0, i1 + 1))
    filled = list(colors)
    if not _fill(filled, idx, d, c, erased):
        raise Infeasible(f"no valid coloring for the {kind} zone {lo}..{hi}")
    fill_err = _zone_error(erased, filled, i0, i1)
    morphed = _morph_zone(colors, i0, i1, c, d) if regular and repair != "fill" else None
    if morphed is not None:
        morph_err = _zone_error(erased, morphed, i0, i1)
        if repair == "morph" or morph_err <= fill_err:
            colors[i0:i1 + 1] = morphed[i0:i1 + 1]
            return Zone(kind, lo, hi, "morph", morph_err)
    colors[i0:i1 + 1] = filled[i0:i1 + 1]
    return Zone(kind, lo, hi, "fill", fill_err)


def _morph_zone(colors: list[int], i0: int, i1: int, c: int, d: int) -> list[int] | None:
    """Periodic block morph across ``[i0, i1]`` between the fixed blocks on either side."""
    size = d + 1
    n = len(colors)
    if i0 - size < 0 or i1 + size >= n:
        return None
    start = colors[i0 - size:i0]
    target = colors[i1 + 1:i1 + 1 + size]
    if 0 in start or 0 in target:
        return None
    length = i1 - i0 + 1
    m, r = divmod(length, size)
    # rotate the target so its periodic continuation lands exactly on the fixed block
    rotated = [target[(s - r) % size] for s in range(size)]
    try:
        if r == 0:
            blocks = morph_blocks(start, rotated, m, c)
        elif m >= 1:
            blocks = morph_blocks(start, rotated, m - 1, c) + [tuple(rotated)]
        else:
            return None
    except ValueError:
        return None
    out = list(colors)
    seq = [x for blk in blocks for x in blk] + rotated[:r]
    out[i0:i1 + 1] = seq
    return out


__all__ = [
    "ErrorReport",
    "REPAIR_MODES",
    "RepairPlan",
    "Zone",
    "error_bound",
    "morph_blocks",
    "morph_steps",
    "solve_approx",
]
