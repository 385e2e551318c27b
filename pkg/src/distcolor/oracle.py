"""Exhaustive reference solvers.

These exist to be obviously correct, not fast.  Each one runs a depth-first
search in index order with candidates in ascending order, so the first solution
found is the lexicographically smallest; tests snapshot that output.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from . import _kernels
from .errors import BudgetExceeded, InvalidInstance
from .model import Coloring, DPEDInstance, LCDInstance
from .parikh import Nfa, normalize_constraints

DEFAULT_FREE_BUDGET = 16
DEFAULT_WORD_BUDGET = 14


def oracle_dped(instance: DPEDInstance, *, budget: int = DEFAULT_FREE_BUDGET) -> Coloring | None:
    """Lexicographically first solution of a DPED (or DPE, if demands are absent) instance.

    Raises:
        BudgetExceeded: more than ``budget`` free vertices.
    """
    free = instance.n - instance.num_precolored
    if free > budget:
        raise BudgetExceeded(f"{free} free vertices exceed the oracle budget of {budget}")
    every = tuple(range(1, instance.num_colors + 1))
    remaining = None if instance.demands is None else [0, *instance.demands]
    out = _kernels.extension_search(
        list(instance.topology.path_index),
        list(instance.precolor),
        [every] * instance.n,
        instance.d,
        remaining,
    )
    return None if out is None else tuple(out)


def oracle_lcd(
    instance: LCDInstance,
    *,
    budget: int = DEFAULT_FREE_BUDGET,
    ignore_demands: bool = False,
) -> Coloring | None:
    """Lexicographically first list coloring; demands are honoured unless absent or ignored.

    Raises:
        BudgetExceeded: more than ``budget`` vertices.
    """
    if instance.n > budget:
        raise BudgetExceeded(f"{instance.n} vertices exceed the oracle budget of {budget}")
    use = instance.demands is not None and not ignore_demands
    out = _kernels.extension_search(
        list(instance.topology.path_index),
        [0] * instance.n,
        [tuple(sorted(lst)) for lst in instance.lists],
        instance.d,
        [0, *instance.demands] if use else None,
    )
    return None if out is None else tuple(out)


def oracle_cmpl(
    nfa: Nfa,
    target: Sequence[int],
    constraints: Iterable[tuple[int, int]] = (),
    *,
    budget: int = DEFAULT_WORD_BUDGET,
) -> tuple[int, ...] | None:
    """Lexicographically smallest constrained word of ``nfa`` with letter counts ``target``.

    Raises:
        BudgetExceeded: the word length ``sum(target)`` exceeds ``budget``.
        InconsistentConstraints: one position is fixed to two letters
            (the same exception class as ``ConstraintConflict``).
    """
    k = nfa.alphabet_size
    residual = [int(x) for x in target]
    if len(residual) != k or min(residual, default=0) < 0:
        raise InvalidInstance(f"target must be {k} non-negative counts")
    fixed = normalize_constraints(constraints, k)
    m = sum(residual)
    if m > budget:
        raise BudgetExceeded(f"target length {m} exceeds the oracle budget of {budget}")
    if any(pos > m for pos in fixed):
        return None

    word: list[int] = []

    def dfs(states: frozenset[int]) -> bool:
        if len(word) == m:
            return bool(states & nfa.accepting)
        pos = len(word) + 1
        letters = (fixed[pos],) if pos in fixed else range(1, k + 1)
        for a in letters:
            if residual[a - 1] == 0:
                continue
            nxt = nfa.step(states, a)
            if not nxt:
                continue
            residual[a - 1] -= 1
            word.append(a)
            if dfs(nxt):
                return True
            word.pop()
            residual[a - 1] += 1
        return False

    return tuple(word) if dfs(frozenset({nfa.initial})) else None


__all__ = [
    "DEFAULT_FREE_BUDGET",
    "DEFAULT_WORD_BUDGET",
    "oracle_cmpl",
    "oracle_dped",
    "oracle_lcd",
]
