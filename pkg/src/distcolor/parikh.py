"""Exact DPED through constrained Parikh membership of a distance automaton.

Colorings of a path with no repeat inside a window of ``d`` are exactly the
words of the automaton :func:`build_distance_nfa`.  Precolored vertices become
positional letter constraints; :func:`build_cmpl_automaton` folds those into an
enlarged automaton plus an enlarged target vector, after which a plain
Parikh-membership search finds a witness.

The membership search here is a memoised depth-first search over
``(state set, residual counts)``.  It is exact and exponential only in the
target length, which suits the desk-scale instances this package targets.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations

from .errors import (
    BudgetExceeded,
    ConstraintConflict,
    InvalidInstance,
    NotSinglePath,
    PositionOutOfRange,
)
from .model import Coloring, DPEDInstance

DEFAULT_TARGET_BUDGET = 128
DEFAULT_MEMO_CAP = 2_000_000


class _AutomatonOps:
    """Shared behaviour; subclasses provide ``successors`` and ``transitions``."""

    alphabet_size: int
    num_states: int
    initial: int
    accepting: frozenset[int]

    def successors(self, state: int, letter: int) -> tuple[int, ...]:
        raise NotImplementedError

    def step(self, states: Iterable[int], letter: int) -> frozenset[int]:
        out: set[int] = set()
        for q in states:
            out.update(self.successors(q, letter))
        return frozenset(out)

    def run(self, word: Iterable[int]) -> frozenset[int]:
        states = frozenset({self.initial})
        for letter in word:
            states = self.step(states, letter)
            if not states:
                break
        return states

    def accepts(self, word: Iterable[int]) -> bool:
        return bool(self.run(word) & self.accepting)

    def state_name(self, state: int) -> str:
        return str(state)

    def dump(self) -> str:
        """Line-based listing: a header, then one ``state letter state`` triple per line."""
        lines = [
            f"# alphabet {self.alphabet_size} states {self.num_states} initial {self.initial}",
            "# accepting " + " ".join(str(q) for q in sorted(self.accepting)),
        ]
        lines += [f"{p} {a} {q}" for p, a, q in sorted(self.transitions)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Nfa(_AutomatonOps):
    """Finite automaton over letters ``1..alphabet_size`` with states ``0..num_states-1``."""

    alphabet_size: int
    num_states: int
    initial: int
    accepting: frozenset[int]
    transitions: frozenset[tuple[int, int, int]]
    labels: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))
        if self.alphabet_size < 0 or self.num_states < 1:
            raise InvalidInstance("automaton needs a non-negative alphabet and at least one state")
        ok = range(self.num_states)
        if self.initial not in ok or any(q not in ok for q in self.accepting):
            raise InvalidInstance("initial or accepting state out of range")
        for p, a, q in self.transitions:
            if p not in ok or q not in ok or not 1 <= a <= self.alphabet_size:
                raise InvalidInstance(f"bad transition {(p, a, q)}")

    @cached_property
    def _delta(self) -> dict[tuple[int, int], tuple[int, ...]]:
        table: dict[tuple[int, int], list[int]] = {}
        for p, a, q in self.transitions:
            table.setdefault((p, a), []).append(q)
        return {key: tuple(sorted(v)) for key, v in table.items()}

    def successors(self, state: int, letter: int) -> tuple[int, ...]:
        return self._delta.get((state, letter), ())

    def state_name(self, state: int) -> str:
        if self.labels is None:
            return str(state)
        return "".join(map(str, self.labels[state])) or "eps"


@lru_cache(maxsize=64)
def build_distance_nfa(alphabet_size: int, t: int) -> Nfa:
    """Deterministic automaton of the words with no letter repeated within ``t`` positions.

    States are the repeat-free words of length at most ``t`` (the most recent
    letters), ordered by length and then lexicographically; state 0 is the
    empty word.  Every state accepts.
    """
    if alphabet_size < 1 or t < 0:
        raise InvalidInstance("need alphabet_size >= 1 and t >= 0")
    letters = range(1, alphabet_size + 1)
    labels: list[tuple[int, ...]] = []
    for length in range(min(t, alphabet_size) + 1):
        labels.extend(permutations(letters, length))
    index = {w: i for i, w in enumerate(labels)}
    trans = set()
    for w, i in index.items():
        for a in letters:
            if a in w:
                continue
            nxt = w + (a,)
            if len(w) == t:
                nxt = nxt[1:]
            trans.add((i, a, index[nxt]))
    return Nfa(alphabet_size, len(labels), 0, frozenset(range(len(labels))), frozenset(trans), tuple(labels))


# -- constrained membership ------------------------------------------------


def normalize_constraints(constraints: Iterable[tuple[int, int]], alphabet_size: int) -> dict[int, int]:
    """Map position to letter, rejecting bad entries and contradictory pairs.

    Raises:
        ConstraintConflict: one position is fixed to two different letters.
    """
    fixed: dict[int, int] = {}
    for pos, letter in constraints:
        if pos < 1:
            raise InvalidInstance(f"constraint position {pos} must be >= 1")
        if not 1 <= letter <= alphabet_size:
            raise InvalidInstance(f"constraint letter {letter} outside 1..{alphabet_size}")
        if fixed.setdefault(pos, letter) != letter:
            raise ConstraintConflict(f"position {pos} fixed to both {fixed[pos]} and {letter}")
    return fixed


@dataclass(frozen=True)
class ParikhQuery:
    """Target letter counts plus positional constraints ``(position, letter)``."""

    target: tuple[int, ...]
    constraints: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "target", tuple(int(x) for x in self.target))
        object.__setattr__(self, "constraints", frozenset((int(i), int(a)) for i, a in self.constraints))
        if any(x < 0 for x in self.target):
            raise InvalidInstance("target counts must be non-negative")
        if any(i < 1 for i, _ in self.constraints):
            raise InvalidInstance("constraint positions start at 1")

    @property
    def length(self) -> int:
        """Length ``m`` of every word matching the target."""
        return sum(self.target)

    def segments(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        """Sorted positions ``i_1..i_p``, letters ``beta_1..beta_p`` and gaps ``m_1..m_{p+1}``.

        ``m_j = i_j - i_{j-1}`` with ``i_0 = 1`` and ``i_{p+1} = m + 1``.

        Raises:
            ConstraintConflict: one position carries two letters.
            PositionOutOfRange: a gap would be negative.
        """
        fixed = _fixed_unchecked(self.constraints)
        positions = tuple(sorted(fixed))
        letters = tuple(fixed[i] for i in positions)
        bounds = (1, *positions, self.length + 1)
        gaps = tuple(bounds[j] - bounds[j - 1] for j in range(1, len(bounds)))
        if any(g < 0 for g in gaps):
            raise PositionOutOfRange(
                f"constraint at position {positions[-1]} lies beyond word length {self.length}"
            )
        return positions, letters, gaps


def _fixed_unchecked(constraints: Iterable[tuple[int, int]]) -> dict[int, int]:
    fixed: dict[int, int] = {}
    for pos, letter in constraints:
        if fixed.setdefault(pos, letter) != letter:
            raise ConstraintConflict(f"position {pos} fixed to both {fixed[pos]} and {letter}")
    return fixed


class CmplAutomaton(_AutomatonOps):
    """The interleaved multi-copy automaton for a constrained query.

    Every base state ``q`` has an in-copy and an out-copy in each of the
    ``p + 1`` layers, numbered ``((layer - 1) * 2 + is_out) * N + q``.  An
    original letter moves from an out-state to an in-state of the same layer,
    or jumps one layer up when it is that layer's fixed letter.  Layer ``j``'s
    counter letter ``k + j`` moves an in-state to its own out-state.

    The initial base state also gets an in-copy so that base transitions
    returning to it (self-loops at window 0) survive the doubling.
    """

    def __init__(self, base: Nfa, jump_letters: Sequence[int]):
        self.base = base
        self.jump_letters = tuple(jump_letters)
        self.layers = len(self.jump_letters) + 1
        self.k = base.alphabet_size
        self.alphabet_size = self.k + self.layers
        self.num_states = 2 * self.layers * base.num_states
        self.initial = self.encode(base.initial, True, 1)
        self.accepting = frozenset(self.encode(q, True, self.layers) for q in base.accepting)

    def encode(self, q: int, is_out: bool, layer: int) -> int:
        return ((layer - 1) * 2 + int(is_out)) * self.base.num_states + q

    def decode(self, state: int) -> tuple[int, bool, int]:
        """Inverse of :meth:`encode`: ``(base_state, is_out, layer)``."""
        block, q = divmod(state, self.base.num_states)
        layer, is_out = divmod(block, 2)
        return q, bool(is_out), layer + 1

    def successors(self, state: int, letter: int) -> tuple[int, ...]:
        q, is_out, layer = self.decode(state)
        if not is_out:
            return (self.encode(q, True, layer),) if letter == self.k + layer else ()
        if not 1 <= letter <= self.k:
            return ()
        targets = self.base.successors(q, letter)
        out = [self.encode(r, False, layer) for r in targets]
        if layer < self.layers and letter == self.jump_letters[layer - 1]:
            out += [self.encode(r, False, layer + 1) for r in targets]
        return tuple(out)

    @property
    def transitions(self) -> frozenset[tuple[int, int, int]]:
        out = set()
        for state in range(self.num_states):
            for a in range(1, self.alphabet_size + 1):
                out.update((state, a, r) for r in self.successors(state, a))
        return frozenset(out)

    def materialize(self) -> Nfa:
        return Nfa(self.alphabet_size, self.num_states, self.initial, self.accepting, self.transitions)

    def state_name(self, state: int) -> str:
        q, is_out, layer = self.decode(state)
        return f"{'out' if is_out else 'in'}({self.base.state_name(q)})@{layer}"


def build_cmpl_automaton(nfa: Nfa, query: ParikhQuery) -> tuple[CmplAutomaton, tuple[int, ...]]:
    """Fold the constraints of ``query`` into an automaton and an expanded target.

    The target keeps the original counts and appends ``m_j`` occurrences of
    each counter letter ``k + j``, so it sums to twice the word length.

    Raises:
        ConstraintConflict: one position carries two letters.
        PositionOutOfRange: a constraint lies past position ``m + 1``.
    """
    if len(query.target) != nfa.alphabet_size:
        raise InvalidInstance(f"target has {len(query.target)} entries for alphabet {nfa.alphabet_size}")
    normalize_constraints(query.constraints, nfa.alphabet_size)
    _, letters, gaps = query.segments()
    return CmplAutomaton(nfa, letters), query.target + gaps


def decide_parikh_membership(
    nfa: _AutomatonOps,
    target: Sequence[int],
    *,
    budget: int = DEFAULT_TARGET_BUDGET,
    memo_cap: int = DEFAULT_MEMO_CAP,
) -> tuple[int, ...] | None:
    """Lexicographically smallest accepted word whose letter counts equal ``target``.

    Raises:
        BudgetExceeded: ``sum(target) > budget`` or the failure memo outgrows ``memo_cap``.
    """
    k = nfa.alphabet_size
    target = tuple(int(x) for x in target)
    if len(target) != k or min(target, default=0) < 0:
        raise InvalidInstance(f"target must be {k} non-negative counts")
    total = sum(target)
    if total > budget:
        raise BudgetExceeded(f"target length {total} exceeds the search budget of {budget}")

    dead: set[tuple[frozenset[int], tuple[int, ...]]] = set()
    word: list[int] = []
    accepting = nfa.accepting

    def dfs(states: frozenset[int], residual: tuple[int, ...], left: int) -> bool:
        if left == 0:
            return not accepting.isdisjoint(states)
        key = (states, residual)
        if key in dead:
            return False
        for a in range(1, k + 1):
            if not residual[a - 1]:
                continue
            nxt = nfa.step(states, a)
            if not nxt:
                continue
            word.append(a)
            if dfs(nxt, residual[: a - 1] + (residual[a - 1] - 1,) + residual[a:], left - 1):
                return True
            word.pop()
        dead.add(key)
        if len(dead) > memo_cap:
            raise BudgetExceeded(f"membership search memo exceeded {memo_cap} entries")
        return False

    return tuple(word) if dfs(frozenset({nfa.initial}), target, total) else None


def solve_cmpl(
    nfa: Nfa,
    query: ParikhQuery,
    *,
    budget: int = DEFAULT_TARGET_BUDGET,
) -> tuple[int, ...] | None:
    """Constrained membership through the folded automaton; returns the base word.

    Raises:
        ConstraintConflict: one position carries two letters.
    """
    try:
        auto, expanded = build_cmpl_automaton(nfa, query)
    except PositionOutOfRange:
        return None
    word = decide_parikh_membership(auto, expanded, budget=2 * budget)
    return None if word is None else word[0::2]


def explain_cmpl_word(nfa: Nfa, query: ParikhQuery, word: Sequence[int]) -> str | None:
    """First reason ``word`` fails the constrained query; ``None`` if it is a solution."""
    k = nfa.alphabet_size
    if any(not 1 <= a <= k for a in word):
        return f"word uses a letter outside 1..{k}"
    counts = tuple(sum(1 for a in word if a == x) for x in range(1, k + 1))
    if counts != query.target:
        return f"letter counts {counts} differ from target {query.target}"
    for pos, letter in sorted(query.constraints):
        if pos > len(word) or word[pos - 1] != letter:
            return f"position {pos} must carry letter {letter}"
    if not nfa.accepts(word):
        return "the automaton rejects the word"
    return None


def solve_dped_fpt(instance: DPEDInstance, *, budget: int = DEFAULT_TARGET_BUDGET) -> Coloring | None:
    """Exact DPED via the distance automaton and the folded constraint automaton.

    Multi-path input is first concatenated into one path with precolored
    buffers, and the answer is restricted back to the original vertices.

    Raises:
        BudgetExceeded: the path is longer than ``budget``.
    """
    if instance.demands is None:
        raise InvalidInstance("this solver needs demands")
    if not instance.topology.is_single_path:
        from .reductions import concatenate_paths

        joined, keep = concatenate_paths(instance)
        if not joined.topology.is_single_path:
            raise NotSinglePath("concatenation did not produce a single path")
        out = solve_dped_fpt(joined, budget=budget)
        return None if out is None else tuple(out[v - 1] for v in keep)
    if not instance.is_demand_consistent():
        return None
    if instance.num_colors == 0:
        return () if instance.n == 0 else None
    nfa = build_distance_nfa(instance.num_colors, instance.d)
    query = ParikhQuery(instance.lifted_demands(), frozenset(instance.precoloring.items()))
    word = solve_cmpl(nfa, query, budget=budget)
    return None if word is None else tuple(word)


__all__ = [
    "CmplAutomaton",
    "Nfa",
    "ParikhQuery",
    "build_cmpl_automaton",
    "build_distance_nfa",
    "decide_parikh_membership",
    "explain_cmpl_word",
    "normalize_constraints",
    "solve_cmpl",
    "solve_dped_fpt",
]
