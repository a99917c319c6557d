"""Finite turn-based safety games, explicit or generated on the fly.

A game is bipartite between A-vertices and B-vertices, has one initial
vertex (owned by A in well-formed games) and a set of bad vertices that
player A tries to avoid.  Vertex ids are interned to dense integer
indices at load or first sight; the solver modules work on those indices,
the public accessors speak vertex names.

Explicit games enumerate all vertices and edges and support the full set
of operations.  Implicit games only expose ``owner``, ``bad``, ``initial``
and a successor generator; operations that need the whole arena raise
:class:`CapabilityError`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Hashable, Iterable, Mapping

from .errors import (
    CapabilityError,
    InvalidStrategyError,
    InvalidVertexError,
    ParseError,
    StargameError,
    UnknownSymbolError,
)


class Player(Enum):
    A = "A"
    B = "B"

    @property
    def opponent(self) -> "Player":
        return Player.B if self is Player.A else Player.A


@dataclass(frozen=True)
class Violation:
    """One well-formedness defect; ``subjects`` names the offending items."""

    kind: str
    subjects: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class Labeling:
    """Total edge labeling over a finite alphabet."""

    alphabet: frozenset[str]
    edge_labels: Mapping[tuple[str, str], str]

    def label(self, src: str, dst: str) -> str:
        try:
            return self.edge_labels[(src, dst)]
        except KeyError:
            raise InvalidVertexError(f"no labeled edge {src} -> {dst}") from None


@dataclass
class _ImplicitSpec:
    owner: Callable[[Hashable], Player]
    bad: Callable[[Hashable], bool]
    successors: Callable[[Hashable], Iterable[Hashable]]
    display: Callable[[Hashable], str]


class SafetyGame:
    """Arena plus bad-set; see the module docstring for the two forms."""

    def __init__(self, name: str = "", _spec: _ImplicitSpec | None = None):
        self.name = name
        self._spec = _spec
        self._states: list[Hashable] = []
        self._index: dict[Hashable, int] = {}
        self._names: list[str] = []
        self._name_index: dict[str, int] = {}
        self._owners: list[Player] = []
        self._bad: list[bool] = []
        self._succ: list[list[int] | None] = []
        self._labels: dict[tuple[int, int], str] = {}
        self._edge_set: set[tuple[int, int]] = set()
        self._edge_order: list[tuple[int, int]] = []
        self._initial: int | None = None

    # -- construction ------------------------------------------------

    @classmethod
    def implicit(
        cls,
        name: str,
        initial_state: Hashable,
        owner: Callable[[Hashable], Player],
        bad: Callable[[Hashable], bool],
        successors: Callable[[Hashable], Iterable[Hashable]],
        display: Callable[[Hashable], str] = str,
    ) -> "SafetyGame":
        """Wrap a successor generator; states may be any hashable values."""
        game = cls(name, _spec=_ImplicitSpec(owner, bad, successors, display))
        game._initial = game._intern(initial_state)
        return game

    def add_vertex(self, vid: str, owner: Player, bad: bool = False) -> None:
        if self._spec is not None:
            raise CapabilityError("cannot add vertices to an implicit game")
        if not vid or any(c.isspace() for c in vid):
            raise ParseError(f"vertex id {vid!r} must be a non-empty token")
        if vid in self._name_index:
            raise ParseError(f"duplicate vertex id {vid!r}")
        idx = len(self._states)
        self._states.append(vid)
        self._index[vid] = idx
        self._names.append(vid)
        self._name_index[vid] = idx
        self._owners.append(owner)
        self._bad.append(bad)
        self._succ.append([])

    def add_edge(self, src: str, dst: str, label: str | None = None) -> None:
        if self._spec is not None:
            raise CapabilityError("cannot add edges to an implicit game")
        i, j = self._resolve(src), self._resolve(dst)
        if (i, j) in self._edge_set:
            raise ParseError(f"duplicate edge {src} -> {dst}")
        self._edge_set.add((i, j))
        self._edge_order.append((i, j))
        self._succ[i].append(j)  # type: ignore[union-attr]
        if label is not None:
            self._labels[(i, j)] = label

    def set_initial(self, vid: str) -> None:
        if self._spec is not None:
            raise CapabilityError("implicit games fix their initial state")
        self._initial = self._resolve(vid)

    # -- interning ---------------------------------------------------

    def _intern(self, state: Hashable) -> int:
        idx = self._index.get(state)
        if idx is not None:
            return idx
        spec = self._spec
        if spec is None:
            raise InvalidVertexError(f"unknown vertex {state!r}")
        idx = len(self._states)
        name = spec.display(state)
        self._states.append(state)
        self._index[state] = idx
        self._names.append(name)
        self._name_index.setdefault(name, idx)
        self._owners.append(spec.owner(state))
        self._bad.append(bool(spec.bad(state)))
        self._succ.append(None)
        return idx

    def _resolve(self, v: Hashable) -> int:
        if isinstance(v, str):
            idx = self._name_index.get(v)
            if idx is not None:
                return idx
        idx = self._index.get(v)
        if idx is not None:
            return idx
        if self._spec is not None and not isinstance(v, str):
            return self._intern(v)
        raise InvalidVertexError(f"unknown vertex {v!r}")

    # -- dense-index surface used by the solvers ----------------------

    @property
    def explicit(self) -> bool:
        return self._spec is None

    @property
    def initial_index(self) -> int:
        if self._initial is None:
            raise StargameError("game has no initial vertex")
        return self._initial

    def interned_count(self) -> int:
        return len(self._states)

    def name_of(self, idx: int) -> str:
        return self._names[idx]

    def owner_idx(self, idx: int) -> Player:
        return self._owners[idx]

    def bad_idx(self, idx: int) -> bool:
        return self._bad[idx]

    def succ_idx(self, idx: int) -> list[int]:
        succ = self._succ[idx]
        if succ is None:
            spec = self._spec
            assert spec is not None
            state = self._states[idx]
            succ = []
            seen = set()
            for target in spec.successors(state):
                j = self._intern(target)
                if j in seen:
                    continue
                seen.add(j)
                if self._owners[j] is self._owners[idx]:
                    raise StargameError(
                        f"generator broke the bipartite split at edge "
                        f"{self._names[idx]} -> {self._names[j]}")
                succ.append(j)
            self._succ[idx] = succ
        return succ

    # -- public name-based operations ---------------------------------

    @property
    def initial(self) -> str:
        return self._names[self.initial_index]

    def vertices(self) -> list[str]:
        self._require_explicit("vertex enumeration")
        return list(self._names)

    def edges(self) -> list[tuple[str, str]]:
        self._require_explicit("edge enumeration")
        return [(self._names[i], self._names[j]) for i, j in self._edge_order]

    def edge_count(self) -> int:
        self._require_explicit("edge enumeration")
        return len(self._edge_order)

    def owner(self, v: Hashable) -> Player:
        return self._owners[self._resolve(v)]

    def is_bad(self, v: Hashable) -> bool:
        return self._bad[self._resolve(v)]

    def succ(self, v: Hashable) -> list[str]:
        """All E-successors of ``v`` in the game's deterministic order."""
        return [self._names[j] for j in self.succ_idx(self._resolve(v))]

    def reach(self, v: Hashable) -> set[str]:
        """Reflexive-transitive closure of the edge relation from ``v``."""
        self._require_explicit("unbounded reachability")
        seen = {self._resolve(v)}
        frontier = deque(seen)
        while frontier:
            i = frontier.popleft()
            for j in self.succ_idx(i):
                if j not in seen:
                    seen.add(j)
                    frontier.append(j)
        return {self._names[i] for i in seen}

    def label(self, src: str, dst: str) -> str | None:
        self._require_explicit("edge labels")
        return self._labels.get((self._resolve(src), self._resolve(dst)))

    def labeling(self) -> Labeling:
        """Package the stored edge labels; requires every edge labeled."""
        self._require_explicit("edge labels")
        missing = [e for e in self._edge_order if e not in self._labels]
        if missing:
            i, j = missing[0]
            raise StargameError(
                f"labeling is partial, e.g. edge {self._names[i]} -> "
                f"{self._names[j]} has no label")
        edge_labels = {
            (self._names[i], self._names[j]): lab
            for (i, j), lab in self._labels.items()
        }
        return Labeling(frozenset(edge_labels.values()), edge_labels)

    def succ_by_label(self, lab: Labeling, v: str, a: str) -> list[str]:
        """The a-labeled successors of ``v``, in successor order."""
        self._require_explicit("label queries")
        if a not in lab.alphabet:
            raise UnknownSymbolError(f"symbol {a!r} outside the alphabet")
        src = self._names[self._resolve(v)]
        return [w for w in self.succ(v) if lab.edge_labels.get((src, w)) == a]

    def restrict_by_strategy(self, strategy) -> "SafetyGame":
        """Keep only the chosen move at each supported A-vertex.

        A-vertices outside the support keep all their moves; B-vertices
        are never restricted.
        """
        self._require_explicit("strategy restriction")
        support: Mapping[str, str] = getattr(strategy, "support", strategy)
        for v, w in support.items():
            i = self._resolve(v)
            if self._owners[i] is not Player.A:
                raise InvalidStrategyError(f"support vertex {v} is not an A-vertex")
            if self._resolve(w) not in self.succ_idx(i):
                raise InvalidStrategyError(f"chosen move {v} -> {w} is not an edge")
        out = SafetyGame(self.name)
        for idx, name in enumerate(self._names):
            out.add_vertex(name, self._owners[idx], self._bad[idx])
        for i, j in self._edge_order:
            src, dst = self._names[i], self._names[j]
            if self._owners[i] is Player.A and src in support and support[src] != dst:
                continue
            out.add_edge(src, dst, self._labels.get((i, j)))
        out.set_initial(self.initial)
        return out

    def validate(self) -> list[Violation]:
        """Check bipartiteness, A-owned initial vertex and id uniqueness."""
        self._require_explicit("validation")
        out: list[Violation] = []
        if len(set(self._names)) != len(self._names):
            out.append(Violation("duplicate-id", (), "vertex ids are not unique"))
        for i, j in self._edge_order:
            if self._owners[i] is self._owners[j]:
                out.append(Violation(
                    "bipartite",
                    (self._names[i], self._names[j]),
                    f"edge {self._names[i]} -> {self._names[j]} joins two "
                    f"{self._owners[i].value}-vertices"))
        if self._initial is None:
            out.append(Violation("initial-owner", (), "no initial vertex"))
        elif self._owners[self._initial] is not Player.A:
            out.append(Violation(
                "initial-owner", (self.initial,),
                f"initial vertex {self.initial} is owned by B"))
        return out

    def _require_explicit(self, what: str) -> None:
        if self._spec is not None:
            raise CapabilityError(f"{what} needs an explicit game")

    def __repr__(self) -> str:
        kind = "explicit" if self.explicit else "implicit"
        return f"<SafetyGame {self.name!r} {kind} interned={len(self._states)}>"


# -- module-level operation aliases -----------------------------------

def succ(g: SafetyGame, v: Hashable) -> list[str]:
    return g.succ(v)


def reach(g: SafetyGame, v: Hashable) -> set[str]:
    return g.reach(v)


def restrict_by_strategy(g: SafetyGame, strategy) -> SafetyGame:
    return g.restrict_by_strategy(strategy)


def validate(g: SafetyGame) -> list[Violation]:
    return g.validate()


def succ_by_label(g: SafetyGame, lab: Labeling, v: str, a: str) -> list[str]:
    return g.succ_by_label(lab, v, a)


# -- text format -------------------------------------------------------
#
# game <name>
# v <id> <A|B> [bad]
# e <src> <dst> [<label>]
# init <id>
#
# '#' starts a comment, tokens are whitespace-separated, all v lines
# precede all e lines, init appears exactly once.

def parse_game(text: str, name: str = "") -> SafetyGame:
    game = SafetyGame(name)
    seen_edge = False
    seen_init = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        try:
            if kind == "game":
                if len(args) != 1:
                    raise ParseError("game line takes exactly one name")
                game.name = args[0]
            elif kind == "v":
                if seen_edge:
                    raise ParseError("vertex line after an edge line")
                if len(args) not in (2, 3) or (len(args) == 3 and args[2] != "bad"):
                    raise ParseError("expected: v <id> <A|B> [bad]")
                if args[1] not in ("A", "B"):
                    raise ParseError(f"unknown owner {args[1]!r}")
                game.add_vertex(args[0], Player(args[1]), bad=len(args) == 3)
            elif kind == "e":
                if len(args) not in (2, 3):
                    raise ParseError("expected: e <src> <dst> [<label>]")
                seen_edge = True
                game.add_edge(args[0], args[1], args[2] if len(args) == 3 else None)
            elif kind == "init":
                if seen_init:
                    raise ParseError("multiple init lines")
                if len(args) != 1:
                    raise ParseError("expected: init <id>")
                seen_init = True
                game.set_initial(args[0])
            else:
                raise ParseError(f"unknown directive {kind!r}")
        except (ParseError, InvalidVertexError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not seen_init:
        raise ParseError("missing init line")
    return game


def emit_game(g: SafetyGame) -> str:
    g._require_explicit("serialization")
    lines = [f"game {g.name}" if g.name else "game unnamed"]
    for idx, name in enumerate(g._names):
        suffix = " bad" if g._bad[idx] else ""
        lines.append(f"v {name} {g._owners[idx].value}{suffix}")
    for i, j in g._edge_order:
        label = g._labels.get((i, j))
        suffix = f" {label}" if label is not None else ""
        lines.append(f"e {g._names[i]} {g._names[j]}{suffix}")
    lines.append(f"init {g.initial}")
    return "\n".join(lines) + "\n"


def load_game(path) -> SafetyGame:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_game(fh.read())


def save_game(g: SafetyGame, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_game(g))
