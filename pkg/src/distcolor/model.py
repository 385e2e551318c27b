"""Instance types and the verification predicates every solver is checked against.

Vertices are numbered ``1..n`` consecutively, path by path, and colors are
``1..c``.  A coloring is a plain tuple whose entry ``i`` is the color of vertex
``i + 1``.  Two equal colors conflict when they sit on the same path at distance
at most ``d``; ``d = 0`` therefore imposes nothing.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidInstance

Coloring = tuple[int, ...]


@dataclass(frozen=True)
class PathTopology:
    """A disjoint union of paths given by their vertex counts."""

    path_lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        lengths = tuple(int(x) for x in self.path_lengths)
        if any(x < 1 for x in lengths):
            raise InvalidInstance(f"path lengths must be positive, got {lengths}")
        object.__setattr__(self, "path_lengths", lengths)

    @property
    def n(self) -> int:
        return sum(self.path_lengths)

    @property
    def num_paths(self) -> int:
        return len(self.path_lengths)

    @property
    def is_single_path(self) -> bool:
        return len(self.path_lengths) == 1

    @cached_property
    def starts(self) -> tuple[int, ...]:
        """First vertex of every path."""
        out, v = [], 1
        for length in self.path_lengths:
            out.append(v)
            v += length
        return tuple(out)

    @cached_property
    def path_index(self) -> tuple[int, ...]:
        """Path number (0-based) of every vertex, indexed by ``vertex - 1``."""
        out: list[int] = []
        for k, length in enumerate(self.path_lengths):
            out.extend([k] * length)
        return tuple(out)

    def path_range(self, k: int) -> range:
        start = self.starts[k]
        return range(start, start + self.path_lengths[k])

    def paths(self) -> list[range]:
        return [self.path_range(k) for k in range(self.num_paths)]

    def dist(self, u: int, v: int) -> int | None:
        """Path distance, or ``None`` when the vertices lie on different paths."""
        if self.path_index[u - 1] != self.path_index[v - 1]:
            return None
        return abs(u - v)


def _as_topology(paths: PathTopology | Sequence[int]) -> PathTopology:
    return paths if isinstance(paths, PathTopology) else PathTopology(tuple(paths))


def _demand_tuple(demands, num_colors: int) -> tuple[int, ...] | None:
    if demands is None:
        return None
    if isinstance(demands, Mapping):
        for col in demands:
            if not 1 <= col <= num_colors:
                raise InvalidInstance(f"demand given for unknown color {col}")
        out = tuple(int(demands.get(col, 0)) for col in range(1, num_colors + 1))
    else:
        out = tuple(int(x) for x in demands)
        if len(out) != num_colors:
            raise InvalidInstance(f"expected {num_colors} demands, got {len(out)}")
    if any(x < 0 for x in out):
        raise InvalidInstance("demands must be non-negative")
    return out


@dataclass(frozen=True)
class DPEDInstance:
    """Distance precoloring extension with demands on a union of paths.

    ``precolor`` is a flat array over the vertices with ``0`` marking a free
    vertex.  ``demands[c - 1]`` is the exact number of *free* vertices that must
    receive color ``c``; ``demands is None`` encodes the demand-free variant.
    """

    topology: PathTopology
    num_colors: int
    d: int
    precolor: tuple[int, ...]
    demands: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.num_colors < 0:
            raise InvalidInstance("number of colors must be non-negative")
        if self.d < 0:
            raise InvalidInstance(f"distance must be non-negative, got {self.d}")
        pre = tuple(int(x) for x in self.precolor)
        if len(pre) != self.topology.n:
            raise InvalidInstance(f"precolor array has {len(pre)} entries for {self.topology.n} vertices")
        if any(not 0 <= x <= self.num_colors for x in pre):
            raise InvalidInstance("precolored vertex uses a color outside 1..c")
        object.__setattr__(self, "precolor", pre)
        object.__setattr__(self, "demands", _demand_tuple(self.demands, self.num_colors))

    @classmethod
    def build(
        cls,
        paths: PathTopology | Sequence[int],
        num_colors: int,
        d: int,
        precoloring: Mapping[int, int] | None = None,
        demands: Sequence[int] | Mapping[int, int] | None = None,
    ) -> DPEDInstance:
        topology = _as_topology(paths)
        pre = [0] * topology.n
        for v, col in (precoloring or {}).items():
            if not 1 <= v <= topology.n:
                raise InvalidInstance(f"precolored vertex {v} outside 1..{topology.n}")
            if not 1 <= col <= num_colors:
                raise InvalidInstance(f"vertex {v} precolored with unknown color {col}")
            pre[v - 1] = col
        return cls(topology, num_colors, d, tuple(pre), demands)

    @property
    def n(self) -> int:
        return self.topology.n

    @property
    def precoloring(self) -> dict[int, int]:
        return {v: col for v, col in enumerate(self.precolor, start=1) if col}

    @property
    def free_vertices(self) -> list[int]:
        return [v for v, col in enumerate(self.precolor, start=1) if not col]

    @property
    def num_precolored(self) -> int:
        return sum(1 for col in self.precolor if col)

    def lifted_demands(self) -> tuple[int, ...]:
        """Total occurrences every color must have: demand plus precolored count."""
        if self.demands is None:
            raise InvalidInstance("instance has no demands")
        used = Counter(col for col in self.precolor if col)
        return tuple(self.demands[c - 1] + used[c] for c in range(1, self.num_colors + 1))

    def is_demand_consistent(self) -> bool:
        return self.demands is not None and sum(self.demands) == self.n - self.num_precolored

    def without_demands(self) -> DPEDInstance:
        return DPEDInstance(self.topology, self.num_colors, self.d, self.precolor, None)


@dataclass(frozen=True)
class LCDInstance:
    """List coloring (optionally with demands) under the distance-``d`` rule."""

    topology: PathTopology
    num_colors: int
    lists: tuple[frozenset[int], ...]
    demands: tuple[int, ...] | None = None
    d: int = 1

    def __post_init__(self) -> None:
        if self.d < 0:
            raise InvalidInstance(f"distance must be non-negative, got {self.d}")
        lists = tuple(frozenset(int(c) for c in lst) for lst in self.lists)
        if len(lists) != self.topology.n:
            raise InvalidInstance(f"got {len(lists)} lists for {self.topology.n} vertices")
        for v, lst in enumerate(lists, start=1):
            if not lst:
                raise InvalidInstance(f"vertex {v} has an empty list")
            if any(not 1 <= c <= self.num_colors for c in lst):
                raise InvalidInstance(f"list of vertex {v} mentions a color outside 1..{self.num_colors}")
        object.__setattr__(self, "lists", lists)
        object.__setattr__(self, "demands", _demand_tuple(self.demands, self.num_colors))

    @classmethod
    def build(
        cls,
        paths: PathTopology | Sequence[int],
        num_colors: int,
        lists: Iterable[Iterable[int]],
        demands: Sequence[int] | Mapping[int, int] | None = None,
        d: int = 1,
    ) -> LCDInstance:
        return cls(_as_topology(paths), num_colors, tuple(frozenset(x) for x in lists), demands, d)

    @property
    def n(self) -> int:
        return self.topology.n

    def without_demands(self) -> LCDInstance:
        return LCDInstance(self.topology, self.num_colors, self.lists, None, self.d)


# -- verification ----------------------------------------------------------


def distance_conflict(topology: PathTopology, coloring: Sequence[int], d: int) -> tuple[int, int] | None:
    """Return the first pair ``(u, v)`` of equal colors within distance ``d``."""
    if d <= 0:
        return None
    for path in topology.paths():
        last: dict[int, int] = {}
        for v in path:
            col = coloring[v - 1]
            u = last.get(col)
            if u is not None and v - u <= d:
                return (u, v)
            last[col] = v
    return None


def verify_d_distance(topology: PathTopology, coloring: Sequence[int], d: int) -> bool:
    return distance_conflict(topology, coloring, d) is None


def _shape_problem(n: int, num_colors: int, coloring: Sequence[int]) -> str | None:
    if len(coloring) != n:
        return f"coloring has {len(coloring)} entries, expected {n}"
    for v, col in enumerate(coloring, start=1):
        if not 1 <= col <= num_colors:
            return f"vertex {v} has color {col} outside 1..{num_colors}"
    return None


def _demand_problem(
    demands: tuple[int, ...] | None, coloring: Sequence[int], free: Iterable[int]
) -> str | None:
    if demands is None:
        return None
    got = Counter(coloring[v - 1] for v in free)
    for col, want in enumerate(demands, start=1):
        if got[col] != want:
            return f"color {col} used {got[col]} times on free vertices, demand is {want}"
    return None


def explain_dped(instance: DPEDInstance, coloring: Sequence[int]) -> str | None:
    """Describe the first reason ``coloring`` fails ``instance``; ``None`` if it solves it."""
    problem = _shape_problem(instance.n, instance.num_colors, coloring)
    if problem:
        return problem
    for v, col in enumerate(instance.precolor, start=1):
        if col and coloring[v - 1] != col:
            return f"vertex {v} is precolored {col} but colored {coloring[v - 1]}"
    clash = distance_conflict(instance.topology, coloring, instance.d)
    if clash:
        u, v = clash
        return f"vertices {u} and {v} share color {coloring[u - 1]} at distance {v - u} <= {instance.d}"
    return _demand_problem(instance.demands, coloring, instance.free_vertices)


def verify_dped_solution(instance: DPEDInstance, coloring: Sequence[int]) -> bool:
    return explain_dped(instance, coloring) is None


def explain_lcd(instance: LCDInstance, coloring: Sequence[int]) -> str | None:
    problem = _shape_problem(instance.n, instance.num_colors, coloring)
    if problem:
        return problem
    for v, (col, lst) in enumerate(zip(coloring, instance.lists), start=1):
        if col not in lst:
            return f"vertex {v} colored {col}, not in its list {sorted(lst)}"
    clash = distance_conflict(instance.topology, coloring, instance.d)
    if clash:
        u, v = clash
        return f"vertices {u} and {v} share color {coloring[u - 1]} at distance {v - u} <= {instance.d}"
    return _demand_problem(instance.demands, coloring, range(1, instance.n + 1))


def verify_lcd_solution(instance: LCDInstance, coloring: Sequence[int]) -> bool:
    return explain_lcd(instance, coloring) is None


def is_non_alternating(instance: LCDInstance) -> bool:
    """True iff no color is missing from a list while present on both neighbours."""
    lists = instance.lists
    for path in instance.topology.paths():
        for v in path[1:-1]:
            left, mid, right = lists[v - 2], lists[v - 1], lists[v]
            if (left & right) - mid:
                return False
    return True


def is_demand_consistent(instance: DPEDInstance) -> bool:
    return instance.is_demand_consistent()


def demand_deviation(instance: DPEDInstance, coloring: Sequence[int]) -> dict[int, int]:
    """Per color, demand minus the number of free vertices actually given that color."""
    if instance.demands is None:
        raise InvalidInstance("instance has no demands")
    got = Counter(coloring[v - 1] for v in instance.free_vertices)
    return {col: want - got[col] for col, want in enumerate(instance.demands, start=1)}


__all__ = [
    "Coloring",
    "DPEDInstance",
    "LCDInstance",
    "PathTopology",
    "demand_deviation",
    "distance_conflict",
    "explain_dped",
    "explain_lcd",
    "is_demand_consistent",
    "is_non_alternating",
    "verify_d_distance",
    "verify_dped_solution",
    "verify_lcd_solution",
]
