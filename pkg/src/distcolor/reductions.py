"""Instance transformers from the hardness constructions.

Each ``reduce_*`` maps a source instance to an equivalent target instance
(yes maps to yes, no to no).  Color numbering in every image is canonical:
the source colors keep their numbers and auxiliary colors come after them, so
stripping auxiliaries is a matter of comparing against the source color count.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    InvalidInstance,
    InvalidRepresentation,
    NotNonAlternating,
    NotNormalized,
)
from .model import Coloring, DPEDInstance, LCDInstance, PathTopology, is_non_alternating

DEFAULT_MSS_MAX_VERTICES = 100_000


# -- multidimensional subset sum -> list coloring with demands --------------


@dataclass(frozen=True)
class MssInstance:
    """Multidimensional subset sum: pick items summing exactly to ``target``."""

    k: int
    items: tuple[tuple[int, ...], ...]
    target: tuple[int, ...]

    def __post_init__(self) -> None:
        items = tuple(tuple(int(x) for x in r) for r in self.items)
        target = tuple(int(x) for x in self.target)
        if self.k < 0:
            raise InvalidInstance("dimension must be non-negative")
        if len(target) != self.k or any(len(r) != self.k for r in items):
            raise InvalidInstance(f"every vector must have {self.k} coordinates")
        if any(x < 0 for r in (*items, target) for x in r):
            raise InvalidInstance("entries must be non-negative")
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "target", target)


def mss_colors(k: int) -> dict[str, int]:
    """Color numbers of the image: targets ``1..k``, then ``a``, ``b``, ``b'`` and ``*``."""
    return {"a": k + 1, "b": k + 2, "b'": k + 3, "star": k + 4}


def _gadget_lists(r: Sequence[int], k: int) -> list[frozenset[int]]:
    col = mss_colors(k)
    a, b, b2, star = col["a"], col["b"], col["b'"], col["star"]
    seq = [j for j in range(1, k + 1) for _ in range(r[j - 1])]
    out: list[frozenset[int]] = []
    for j in seq:
        out += [
            frozenset({a, j}),
            frozenset({a, b}),
            frozenset({a, b2}),
            frozenset({a, star}),
            frozenset({a, b}),
            frozenset({a, b2}),
        ]
    return out


def reduce_mss_to_lcd(mss: MssInstance, *, max_vertices: int = DEFAULT_MSS_MAX_VERTICES) -> LCDInstance:
    """One path of ``6 * sum(r)`` vertices per nonzero item, with demands forcing a subset choice.

    Zero items contribute no vertices (they never affect a sum).  When the
    items cannot even cover ``|target|``, the auxiliary demand would be
    negative, and a fixed one-vertex instance with no solution is returned.

    Raises:
        BudgetExceeded: the image would exceed ``max_vertices``.
    """
    k = mss.k
    total = sum(sum(r) for r in mss.items)
    if 6 * total > max_vertices:
        raise BudgetExceeded(f"image would have {6 * total} vertices (cap {max_vertices})")
    num_colors = k + 4
    star_demand = total - sum(mss.target)
    if star_demand < 0:
        return canonical_infeasible_lcd(num_colors)
    lengths, lists = [], []
    for r in mss.items:
        if sum(r):
            lengths.append(6 * sum(r))
            lists += _gadget_lists(r, k)
    demands = (*mss.target, 3 * total, total, total, star_demand)
    return LCDInstance(PathTopology(tuple(lengths)), num_colors, tuple(lists), demands, 1)


def canonical_infeasible_lcd(num_colors: int) -> LCDInstance:
    """A single vertex whose demands sum to zero: trivially unsolvable."""
    return LCDInstance(PathTopology((1,)), num_colors, (frozenset({num_colors - 3}),), (0,) * num_colors, 1)


def classify_gadget(colors: Sequence[int], k: int) -> str | None:
    """Which of the two extremal patterns a gadget coloring follows.

    Returns ``"chosen"`` when ``a`` sits on every even position, ``"skipped"``
    when it sits on every odd position, and ``None`` otherwise.
    """
    a = mss_colors(k)["a"]
    even = all((colors[i] == a) == (i % 2 == 1) for i in range(len(colors)))
    odd = all((colors[i] == a) == (i % 2 == 0) for i in range(len(colors)))
    return "chosen" if even else "skipped" if odd else None


# -- edge forbidden sets ------------------------------------------------------


@dataclass(frozen=True)
class EdgeForbidAssignment:
    """Forbidden colors per edge; ``forbidden[i - 1]`` belongs to edge ``v_i v_{i+1}``."""

    num_colors: int
    forbidden: tuple[frozenset[int], ...]

    def lists(self) -> tuple[frozenset[int], ...]:
        """Vertex lists implied by the edges: all colors minus those of incident edges."""
        every = frozenset(range(1, self.num_colors + 1))
        f = self.forbidden
        if not f:
            return ()
        out = [every - f[0]]
        out += [every - (f[i - 1] | f[i]) for i in range(1, len(f))]
        out.append(every - f[-1])
        return tuple(out)

    def has_triple(self) -> bool:
        """True iff some color is forbidden on three consecutive edges."""
        f = self.forbidden
        return any(f[i - 1] & f[i] & f[i + 1] for i in range(1, len(f) - 1))


def compute_edge_forbidden_sets(lcd: LCDInstance) -> EdgeForbidAssignment:
    """Rewrite vertex lists of a normalized non-alternating path as edge forbidden sets.

    Raises:
        NotNormalized: not one path of at least two vertices whose end lists match their neighbours.
        NotNonAlternating: some color skips a vertex while present on both its neighbours.
    """
    lists = lcd.lists
    n = lcd.n
    if lcd.topology.num_paths != 1 or n < 2:
        raise NotNormalized("need a single path with at least two vertices")
    if lists[0] != lists[1] or lists[-2] != lists[-1]:
        raise NotNormalized("end vertices must share their neighbour's list")
    if not is_non_alternating(lcd):
        raise NotNonAlternating("lists alternate")
    every = frozenset(range(1, lcd.num_colors + 1))
    # 0-based: f[i] is the edge between lists[i] and lists[i + 1]
    f: list[frozenset[int]] = [frozenset()] * (n - 1)
    f[0] = every - lists[0]
    for i in range(1, n - 2):
        outside = every - (lists[i] | lists[i + 1])
        f[i] = frozenset(c for c in outside if c not in f[i - 1] or c in lists[i + 2])
    f[n - 2] = every - lists[n - 1]
    return EdgeForbidAssignment(lcd.num_colors, tuple(f))


# -- list coloring with demands -> DPED --------------------------------------


def normalize_lcd(lcd: LCDInstance) -> tuple[LCDInstance, tuple[int, ...]]:
    """Chain all paths into one, with two ``{a, b}`` buffer vertices at both ends and between paths.

    ``a`` and ``b`` are new colors ``c + 1`` and ``c + 2``, added to every list;
    each gets demand ``p + 1`` for ``p`` paths.  Returns the new instance and,
    per original vertex, its number in the new path.
    """
    if lcd.d != 1:
        raise InvalidInstance("normalization is defined for plain list coloring (d = 1)")
    c = lcd.num_colors
    a, b = c + 1, c + 2
    pad = frozenset({a, b})
    lists: list[frozenset[int]] = [pad, pad]
    where: list[int] = []
    for path in lcd.topology.paths():
        for v in path:
            lists.append(lcd.lists[v - 1] | pad)
            where.append(len(lists))
        lists += [pad, pad]
    p = lcd.topology.num_paths
    demands = None if lcd.demands is None else (*lcd.demands, p + 1, p + 1)
    out = LCDInstance(PathTopology((len(lists),)), c + 2, tuple(lists), demands, 1)
    return out, tuple(where)


def lcd_to_dped_distance(lcd: LCDInstance) -> int:
    """The distance ``2t + 1`` of the image, ``t`` counted after normalization."""
    return 2 * (lcd.num_colors + 2) + 1


def reduce_lcd_to_dped(lcd: LCDInstance) -> DPEDInstance:
    """Path of ``n d + 1`` vertices whose main vertices ``x_k = (k - 1) d + 1`` replay the lists.

    Every auxiliary vertex is precolored, either with the cyclic auxiliary
    palette or, to block a color near a main vertex, with that color itself.

    Raises:
        InvalidInstance: the source has no demands.  Demands are what keep
            main vertices off the auxiliary colors.
        NotNonAlternating: the source lists alternate.
    """
    if lcd.demands is None:
        raise InvalidInstance("the reduction needs demands; without them main vertices may take auxiliary colors")
    if not is_non_alternating(lcd):
        raise NotNonAlternating("lists alternate")
    norm, _ = normalize_lcd(lcd)
    t = norm.num_colors
    d = 2 * t + 1
    n = norm.n
    forbid = compute_edge_forbidden_sets(norm).forbidden
    size = n * d + 1

    def star(i: int) -> int:  # cyclic auxiliary color of vertex v'_i
        return t + 1 + i % (d + 1)

    pre = [0] * size
    for i in range(1, n):
        f_here = forbid[i - 1]
        f_prev = forbid[i - 2] if i >= 2 else frozenset()
        for j in range(1, t + 1):
            y1 = (i - 1) * d + 2 * j
            y2 = y1 + 1
            pre[y1 - 1] = j if j in f_here and j not in f_prev else star(y1)
            pre[y2 - 1] = j if j in f_here and j in f_prev else star(y2)
    # the d vertices after x_n are auxiliary too and carry no forbidden color
    for v in range((n - 1) * d + 2, size + 1):
        pre[v - 1] = star(v)
    demands = (*norm.demands, *([0] * (d + 1)))
    return DPEDInstance(PathTopology((size,)), t + d + 1, d, tuple(pre), demands)


def lift_lcd_solution(lcd: LCDInstance, coloring: Sequence[int]) -> Coloring:
    """Read a source coloring off the main vertices of an image solution."""
    _, where = normalize_lcd(lcd)
    d = lcd_to_dped_distance(lcd)
    return tuple(coloring[(u - 1) * d] for u in where)


# -- unit interval precoloring extension -> DPE -------------------------------


@dataclass(frozen=True)
class UnitIntervalPce:
    """Precoloring extension on a unit interval graph given by its representation.

    Interval ``v`` (1-based) is ``[lefts[v - 1], lefts[v - 1] + n]``.  All ``2n``
    endpoints are distinct integers in ``0..n^2``.
    """

    lefts: tuple[int, ...]
    num_colors: int
    precoloring: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        lefts = tuple(int(x) for x in self.lefts)
        pre = tuple(sorted((int(v), int(c)) for v, c in dict(self.precoloring).items()))
        object.__setattr__(self, "lefts", lefts)
        object.__setattr__(self, "precoloring", pre)
        n = len(lefts)
        ends = [*lefts, *(x + n for x in lefts)]
        if len(set(ends)) != len(ends):
            raise InvalidRepresentation("interval endpoints must be pairwise distinct")
        if any(not 0 <= x <= n * n for x in ends):
            raise InvalidRepresentation(f"endpoints must lie in 0..{n * n}")
        if self.num_colors < 0:
            raise InvalidRepresentation("number of colors must be non-negative")
        for v, col in pre:
            if not 1 <= v <= n or not 1 <= col <= self.num_colors:
                raise InvalidRepresentation(f"bad precolored pair {(v, col)}")

    @property
    def n(self) -> int:
        return len(self.lefts)

    def edges(self) -> list[tuple[int, int]]:
        """Pairs ``u < v`` of overlapping intervals."""
        n, lefts = self.n, self.lefts
        return [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if abs(lefts[u - 1] - lefts[v - 1]) <= n]

    def representative(self, v: int) -> int:
        """Vertex number (1-based) of interval ``v``'s representative in the image path."""
        return 3 * self.lefts[v - 1] + 3 * self.n + 1


def reduce_pce_to_dpe(pce: UnitIntervalPce) -> DPEDInstance:
    """Path ``w_0..w_l`` with ``d = 3n`` and ``l = 3n^2 + 2d``; intervals become representatives.

    All non-representative vertices are precolored by cycling through ``d + 1``
    auxiliary colors; representatives of precolored intervals keep their color.
    The image carries no demands.
    """
    n, c = pce.n, pce.num_colors
    d = 3 * n
    ell = 3 * n * n + 2 * d
    size = ell + 1
    reps = {pce.representative(v): v for v in range(1, n + 1)}
    given = dict(pce.precoloring)
    pre = [0] * size
    k = 0
    for vertex in range(1, size + 1):
        if vertex in reps:
            pre[vertex - 1] = given.get(reps[vertex], 0)
        else:
            k += 1
            pre[vertex - 1] = c + 1 + k % (d + 1)
    return DPEDInstance(PathTopology((size,)), c + d + 1, d, tuple(pre), None)


# -- demand-free -> with demands, and path concatenation -----------------------


def concatenate_paths(instance: DPEDInstance) -> tuple[DPEDInstance, tuple[int, ...]]:
    """Join all paths into one, separated by ``d`` precolored buffer vertices.

    Buffers use ``2d + 1`` new colors (numbers after the originals) with zero
    demand, each buffer vertex taking the smallest one unused in the previous
    ``d`` positions.  Returns the joined instance and the new number of every
    original vertex.

    Raises:
        InvalidInstance: the instance has no demands (free vertices could
            otherwise take buffer colors).
    """
    if instance.demands is None:
        raise InvalidInstance("concatenation needs demands to keep buffer colors off free vertices")
    c, d = instance.num_colors, instance.d
    aux = range(c + 1, c + 2 * d + 2)
    pre: list[int] = []
    where: list[int] = []
    for k, path in enumerate(instance.topology.paths()):
        if k:
            for _ in range(d):
                recent = set(pre[-d:])
                pre.append(next(x for x in aux if x not in recent))
        for v in path:
            pre.append(instance.precolor[v - 1])
            where.append(len(pre))
    lengths = (len(pre),) if pre else ()
    demands = (*instance.demands, *([0] * (2 * d + 1)))
    joined = DPEDInstance(PathTopology(lengths), c + 2 * d + 1, d, tuple(pre), demands)
    return joined, tuple(where)


def reduce_dpe_to_dped(dpe: DPEDInstance) -> DPEDInstance:
    """Add ``(c - 1) n`` isolated vertices, ask for ``n`` occurrences of every color, then concatenate.

    Demands count free vertices only, so color ``a`` gets ``n`` minus its
    precolored occurrences; with nothing precolored that is ``n`` throughout.

    Raises:
        InvalidInstance: the source already has demands.
    """
    if dpe.demands is not None:
        raise InvalidInstance("source must be demand-free")
    n, c = dpe.n, dpe.num_colors
    extra = max(c - 1, 0) * n
    padded = DPEDInstance(
        PathTopology(dpe.topology.path_lengths + (1,) * extra),
        c,
        dpe.d,
        dpe.precolor + (0,) * extra,
        tuple(n - dpe.precolor.count(a) for a in range(1, c + 1)),
    )
    return concatenate_paths(padded)[0]


def lift_dpe_solution(dpe: DPEDInstance, coloring: Sequence[int]) -> Coloring:
    """Restrict an image solution to the source vertices (they come first, in order)."""
    d = dpe.d
    out: list[int] = []
    pos = 0
    for k, length in enumerate(dpe.topology.path_lengths):
        if k:
            pos += d
        out += coloring[pos:pos + length]
        pos += length
    return tuple(out)


__all__ = [
    "EdgeForbidAssignment",
    "MssInstance",
    "UnitIntervalPce",
    "canonical_infeasible_lcd",
    "classify_gadget",
    "compute_edge_forbidden_sets",
    "concatenate_paths",
    "lcd_to_dped_distance",
    "lift_dpe_solution",
    "lift_lcd_solution",
    "mss_colors",
    "normalize_lcd",
    "reduce_dpe_to_dped",
    "reduce_lcd_to_dped",
    "reduce_mss_to_lcd",
    "reduce_pce_to_dpe",
]
