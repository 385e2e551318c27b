"""Seeded random instance generators.

All functions take a ``random.Random`` so callers control reproducibility.
"""

from __future__ import annotations

import random

from .model import DPEDInstance, LCDInstance
from .reductions import MssInstance


def _paths(n: int) -> list[int]:
    return [n] if n else []


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    """Uniformly random split of ``total`` into ``parts`` non-negative integers."""
    if parts == 0:
        return []
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    return [hi - lo for lo, hi in zip([0, *cuts], [*cuts, total])]


def random_coloring(rng: random.Random, n: int, c: int, d: int) -> list[int]:
    """A uniformly chosen continuation at every step of a d-valid coloring of one path.

    Requires ``c >= d + 1``.
    """
    out: list[int] = []
    for i in range(n):
        recent = set(out[max(0, i - d):])
        out.append(rng.choice([x for x in range(1, c + 1) if x not in recent]))
    return out


def random_dped(rng: random.Random, n: int, c: int, d: int, p: int = 0) -> DPEDInstance:
    """Single path, ``p`` uniform precolored positions with uniform colors, consistent demands."""
    if c < 1:
        raise ValueError("need at least one color")
    pre = [0] * n
    for v in rng.sample(range(n), min(p, n)):
        pre[v] = rng.randint(1, c)
    free = n - sum(1 for x in pre if x)
    demands = _composition(rng, free, c)
    return DPEDInstance.build(_paths(n), c, d, {v + 1: x for v, x in enumerate(pre) if x}, demands)


def planted_dped(rng: random.Random, n: int, c: int, d: int, p: int = 0) -> tuple[DPEDInstance, tuple[int, ...]]:
    """Feasible single-path instance read off a random d-valid coloring, plus that coloring.

    Requires ``c >= d + 1``.
    """
    hidden = random_coloring(rng, n, c, d)
    chosen = set(rng.sample(range(n), min(p, n)))
    demands = [0] * c
    for v, col in enumerate(hidden):
        if v not in chosen:
            demands[col - 1] += 1
    inst = DPEDInstance.build(_paths(n), c, d, {v + 1: hidden[v] for v in chosen}, demands)
    return inst, tuple(hidden)


def random_lcd(rng: random.Random, n: int, c: int, d: int) -> LCDInstance:
    """Single path with uniformly random non-empty lists and no demands."""
    if c < 1:
        raise ValueError("need at least one color")
    lists = []
    for _ in range(n):
        lst = [x for x in range(1, c + 1) if rng.random() < 0.5]
        lists.append(lst or [rng.randint(1, c)])
    return LCDInstance.build(_paths(n), c, lists, None, d)


def random_mss(rng: random.Random, items: int, max_entry: int, k: int) -> MssInstance:
    """``items`` vectors in ``{0..max_entry}^k``; the target sums a random subset."""
    rows = [tuple(rng.randint(0, max_entry) for _ in range(k)) for _ in range(items)]
    pick = [r for r in rows if rng.random() < 0.5]
    target = tuple(sum(r[j] for r in pick) for j in range(k))
    return MssInstance(k, tuple(rows), target)


__all__ = ["planted_dped", "random_coloring", "random_dped", "random_lcd", "random_mss"]
