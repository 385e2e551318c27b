"""Line-oriented text formats for instances, colorings and words.

Every file starts with a kind line (``DPED``, ``LCD``, ``MSS``, ``PCE`` or
``NFAQ``) followed by keyword lines.  ``#`` starts a comment, blank lines are
ignored and tokens are separated by whitespace.  A DPED file looks like::

    DPED
    paths 1 5
    colors 3
    d 2
    precolor 1
    4 2
    demands
    1 2
    2 1
    3 1

``demands none`` marks the demand-free variant.  ``serialize_instance`` emits
the canonical form and ``parse_instance`` inverts it exactly.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from typing import Union

from .errors import DistColorError, ParseError, SemanticError
from .model import DPEDInstance, LCDInstance, PathTopology
from .parikh import Nfa, ParikhQuery
from .reductions import MssInstance, UnitIntervalPce


@dataclass(frozen=True)
class NfaQuery:
    """An automaton together with a constrained Parikh query against it."""

    nfa: Nfa
    query: ParikhQuery


Instance = Union[DPEDInstance, LCDInstance, MssInstance, UnitIntervalPce, NfaQuery]

KINDS = ("DPED", "LCD", "MSS", "PCE", "NFAQ")


def kind_of(instance: Instance) -> str:
    for kind, cls in _CLASSES.items():
        if isinstance(instance, cls):
            return kind
    raise TypeError(f"not an instance type: {type(instance).__name__}")


# -- reading ----------------------------------------------------------------


class _Lines:
    """Cursor over the non-blank, comment-stripped lines of a file."""

    def __init__(self, text: str):
        self._rows: list[tuple[int, list[str]]] = []
        for num, raw in enumerate(text.splitlines(), start=1):
            tokens = raw.split("#", 1)[0].split()
            if tokens:
                self._rows.append((num, tokens))
        self._at = 0
        self.line = 0

    def at_end(self) -> bool:
        return self._at >= len(self._rows)

    def row(self, what: str) -> list[str]:
        if self.at_end():
            last = self._rows[-1][0] if self._rows else 0
            raise ParseError(last + 1, f"unexpected end of file, expected {what}")
        self.line, tokens = self._rows[self._at]
        self._at += 1
        return tokens

    def ints(self, tokens: Sequence[str]) -> list[int]:
        try:
            return [int(tok) for tok in tokens]
        except ValueError:
            raise ParseError(self.line, f"expected integers, got {' '.join(tokens)!r}") from None

    def keyword(self, name: str, count: int | None = None) -> list[int]:
        """Read ``name v1 v2 ...``; ``count`` fixes how many values follow."""
        tokens = self.row(f"'{name}'")
        if tokens[0] != name:
            raise ParseError(self.line, f"expected '{name}', got '{tokens[0]}'")
        values = self.ints(tokens[1:])
        if count is not None and len(values) != count:
            raise ParseError(self.line, f"'{name}' takes {count} value(s), got {len(values)}")
        return values

    def single(self, name: str) -> int:
        return self.keyword(name, 1)[0]

    def counted(self, name: str) -> list[int]:
        """Read ``name <m> v_1 .. v_m``."""
        values = self.keyword(name)
        if not values:
            raise ParseError(self.line, f"'{name}' needs a count")
        m, rest = values[0], values[1:]
        if m < 0 or len(rest) != m:
            raise ParseError(self.line, f"'{name}' announces {m} value(s) but lists {len(rest)}")
        return rest

    def pairs(self, m: int, what: str) -> list[tuple[int, int, int]]:
        """Read ``m`` lines of two integers; returns ``(line, a, b)`` triples."""
        out = []
        for _ in range(m):
            values = self.ints(self.row(what))
            if len(values) != 2:
                raise ParseError(self.line, f"expected '{what}'")
            out.append((self.line, values[0], values[1]))
        return out

    def finish(self) -> None:
        if not self.at_end():
            self.row("")
            raise ParseError(self.line, "trailing content after the instance")


def _nonneg(lines: _Lines, value: int, name: str) -> int:
    if value < 0:
        raise SemanticError(lines.line, f"{name} must be non-negative, got {value}")
    return value


def _header(lines: _Lines) -> tuple[PathTopology, int, int]:
    lengths = lines.counted("paths")
    line = lines.line
    if any(x < 1 for x in lengths):
        raise SemanticError(line, "path lengths must be positive")
    c = _nonneg(lines, lines.single("colors"), "number of colors")
    d = _nonneg(lines, lines.single("d"), "distance d")
    return PathTopology(tuple(lengths)), c, d


def _demands(lines: _Lines, c: int) -> tuple[int, ...] | None:
    tokens = lines.row("'demands'")
    if tokens[0] != "demands":
        raise ParseError(lines.line, f"expected 'demands', got '{tokens[0]}'")
    if tokens[1:] == ["none"]:
        return None
    if len(tokens) != 1:
        raise ParseError(lines.line, "'demands' is followed by 'none' or by one line per color")
    rows = []
    while not lines.at_end():
        rows.append(lines.pairs(1, "color count")[0])
    if len(rows) != c:
        raise ParseError(lines.line, f"expected {c} demand lines, got {len(rows)}")
    out = [0] * c
    seen = set()
    for line, col, count in rows:
        if not 1 <= col <= c or col in seen:
            raise SemanticError(line, f"demand line for invalid or repeated color {col}")
        if count < 0:
            raise SemanticError(line, f"negative demand {count}")
        seen.add(col)
        out[col - 1] = count
    return tuple(out)


def _parse_dped(lines: _Lines) -> DPEDInstance:
    topology, c, d = _header(lines)
    m = _nonneg(lines, lines.single("precolor"), "precolor count")
    pre = [0] * topology.n
    for line, v, col in lines.pairs(m, "vertex color"):
        if not 1 <= v <= topology.n or not 1 <= col <= c:
            raise SemanticError(line, f"precolored pair ({v}, {col}) out of range")
        if pre[v - 1]:
            raise SemanticError(line, f"vertex {v} precolored twice")
        pre[v - 1] = col
    demands = _demands(lines, c)
    return DPEDInstance(topology, c, d, tuple(pre), demands)


def _parse_lcd(lines: _Lines) -> LCDInstance:
    topology, c, d = _header(lines)
    lines.keyword("lists", 0)
    lists = []
    for v in range(1, topology.n + 1):
        values = lines.ints(lines.row(f"list of vertex {v}"))
        if not values or values[0] != v:
            raise ParseError(lines.line, f"expected the list of vertex {v}")
        if not values[1:] or any(not 1 <= x <= c for x in values[1:]):
            raise SemanticError(lines.line, f"list of vertex {v} must be a non-empty subset of 1..{c}")
        lists.append(frozenset(values[1:]))
    demands = _demands(lines, c)
    return LCDInstance(topology, c, tuple(lists), demands, d)


def _parse_mss(lines: _Lines) -> MssInstance:
    k = _nonneg(lines, lines.single("k"), "dimension k")
    m = _nonneg(lines, lines.single("items"), "item count")
    items = [tuple(lines.keyword("item", k)) for _ in range(m)]
    target = tuple(lines.keyword("target", k))
    return MssInstance(k, tuple(items), target)


def _parse_pce(lines: _Lines) -> UnitIntervalPce:
    c = _nonneg(lines, lines.single("colors"), "number of colors")
    lefts = tuple(lines.counted("lefts"))
    m = _nonneg(lines, lines.single("precolor"), "precolor count")
    pre = lines.pairs(m, "interval color")
    if len({v for _, v, _ in pre}) != m:
        raise SemanticError(lines.line, "an interval is precolored twice")
    return UnitIntervalPce(lefts, c, tuple((v, col) for _, v, col in pre))


def _parse_nfaq(lines: _Lines) -> NfaQuery:
    k = _nonneg(lines, lines.single("alphabet"), "alphabet size")
    states = lines.single("states")
    initial = lines.single("initial")
    accepting = lines.counted("accepting")
    t = _nonneg(lines, lines.single("transitions"), "transition count")
    trans = []
    for _ in range(t):
        values = lines.ints(lines.row("p a q"))
        if len(values) != 3:
            raise ParseError(lines.line, "expected 'p a q'")
        trans.append(tuple(values))
    target = tuple(lines.keyword("target", k))
    r = _nonneg(lines, lines.single("constraints"), "constraint count")
    cons = frozenset((i, a) for _, i, a in lines.pairs(r, "position letter"))
    nfa = Nfa(k, states, initial, frozenset(accepting), frozenset(trans))
    return NfaQuery(nfa, ParikhQuery(target, cons))


_PARSERS: dict[str, Callable[[_Lines], Instance]] = {
    "DPED": _parse_dped,
    "LCD": _parse_lcd,
    "MSS": _parse_mss,
    "PCE": _parse_pce,
    "NFAQ": _parse_nfaq,
}


def parse_instance(text: str) -> Instance:
    """Parse any instance file.

    Raises:
        ParseError: malformed text, with the offending line number.
        SemanticError: well-formed text describing an invalid instance.
    """
    lines = _Lines(text)
    tokens = lines.row("an instance kind")
    if len(tokens) != 1 or tokens[0] not in _PARSERS:
        raise ParseError(lines.line, f"unknown instance kind {' '.join(tokens)!r}; expected one of {', '.join(KINDS)}")
    header = lines.line
    try:
        instance = _PARSERS[tokens[0]](lines)
    except (ParseError, SemanticError):
        raise
    except DistColorError as exc:
        raise SemanticError(header, str(exc)) from None
    lines.finish()
    return instance


# -- writing ----------------------------------------------------------------


def _demand_lines(demands: tuple[int, ...] | None) -> list[str]:
    if demands is None:
        return ["demands none"]
    return ["demands", *(f"{col} {count}" for col, count in enumerate(demands, start=1))]


def _paths_line(topology: PathTopology) -> str:
    return " ".join(map(str, ["paths", topology.num_paths, *topology.path_lengths]))


def _emit(instance: Instance) -> Iterator[str]:
    kind = kind_of(instance)
    yield kind
    if isinstance(instance, DPEDInstance):
        yield _paths_line(instance.topology)
        yield f"colors {instance.num_colors}"
        yield f"d {instance.d}"
        pre = instance.precoloring
        yield f"precolor {len(pre)}"
        yield from (f"{v} {col}" for v, col in pre.items())
        yield from _demand_lines(instance.demands)
    elif isinstance(instance, LCDInstance):
        yield _paths_line(instance.topology)
        yield f"colors {instance.num_colors}"
        yield f"d {instance.d}"
        yield "lists"
        yield from (" ".join(map(str, [v, *sorted(lst)])) for v, lst in enumerate(instance.lists, start=1))
        yield from _demand_lines(instance.demands)
    elif isinstance(instance, MssInstance):
        yield f"k {instance.k}"
        yield f"items {len(instance.items)}"
        yield from (" ".join(map(str, ["item", *r])) for r in instance.items)
        yield " ".join(map(str, ["target", *instance.target]))
    elif isinstance(instance, UnitIntervalPce):
        yield f"colors {instance.num_colors}"
        yield " ".join(map(str, ["lefts", instance.n, *instance.lefts]))
        yield f"precolor {len(instance.precoloring)}"
        yield from (f"{v} {col}" for v, col in instance.precoloring)
    else:
        nfa, query = instance.nfa, instance.query
        yield f"alphabet {nfa.alphabet_size}"
        yield f"states {nfa.num_states}"
        yield f"initial {nfa.initial}"
        yield " ".join(map(str, ["accepting", len(nfa.accepting), *sorted(nfa.accepting)]))
        yield f"transitions {len(nfa.transitions)}"
        yield from (f"{p} {a} {q}" for p, a, q in sorted(nfa.transitions))
        yield " ".join(map(str, ["target", *query.target]))
        yield f"constraints {len(query.constraints)}"
        yield from (f"{i} {a}" for i, a in sorted(query.constraints))


def serialize_instance(instance: Instance) -> str:
    """Canonical text of ``instance``; ``parse_instance`` gives it back unchanged."""
    return "\n".join(_emit(instance)) + "\n"


# -- colorings and words ----------------------------------------------------


def format_assignment(values: Sequence[int]) -> str:
    """One ``index value`` line per entry, indices from 1."""
    return "".join(f"{i} {x}\n" for i, x in enumerate(values, start=1))


def parse_assignment(text: str, length: int | None = None) -> tuple[int, ...]:
    """Inverse of ``format_assignment``; every index ``1..m`` must appear exactly once.

    Raises:
        ParseError: malformed line, repeated or missing index, or wrong length.
    """
    lines = _Lines(text)
    found: dict[int, int] = {}
    while not lines.at_end():
        values = lines.ints(lines.row("index value"))
        if len(values) != 2:
            raise ParseError(lines.line, "expected 'index value'")
        i, x = values
        if i in found:
            raise ParseError(lines.line, f"index {i} assigned twice")
        found[i] = x
    m = len(found) if length is None else length
    missing = sorted(set(range(1, m + 1)) - set(found))
    extra = sorted(set(found) - set(range(1, m + 1)))
    if missing or extra:
        raise ParseError(lines.line, f"indices must be exactly 1..{m} (missing {missing[:3]}, unexpected {extra[:3]})")
    return tuple(found[i] for i in range(1, m + 1))


_CLASSES = {
    "DPED": DPEDInstance,
    "LCD": LCDInstance,
    "MSS": MssInstance,
    "PCE": UnitIntervalPce,
    "NFAQ": NfaQuery,
}

__all__ = [
    "KINDS",
    "Instance",
    "NfaQuery",
    "format_assignment",
    "kind_of",
    "parse_assignment",
    "parse_instance",
    "serialize_instance",
]
