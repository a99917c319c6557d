"""Partial orders on same-owner vertices, antichains, simulation checkers.

An order instance is bound to one game: comparisons run on the game's
dense vertex indices, with per-vertex keys computed once from the vertex
description (its name for the built-ins).  Antichains store pairwise
incomparable vertices and answer closure-membership queries by a linear
scan, which beats indexing at the sizes these stay at.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

from .arena import Labeling, Player, SafetyGame, Violation
from .errors import OrderError, ParseError

Cmp = Enum("Cmp", ["GE", "LE", "EQ", "INCOMPARABLE"])


class PartialOrder:
    """Decidable comparison between same-owner vertices of one game.

    ``ge(i, j)`` answers "does i dominate j" on dense indices and is the
    only method subclasses must provide; it must be reflexive, transitive
    and antisymmetric, and false across owners.
    """

    kind = "abstract"

    def __init__(self, game: SafetyGame):
        self.game = game

    def ge(self, i: int, j: int) -> bool:
        raise NotImplementedError

    def cmp(self, v1, v2) -> Cmp:
        i, j = self.game._resolve(v1), self.game._resolve(v2)
        fwd, bwd = self.ge(i, j), self.ge(j, i)
        if fwd and bwd:
            return Cmp.EQ
        if fwd:
            return Cmp.GE
        if bwd:
            return Cmp.LE
        return Cmp.INCOMPARABLE


class EqualityOrder(PartialOrder):
    """Identity: every vertex is comparable only to itself."""

    kind = "equality"

    def ge(self, i: int, j: int) -> bool:
        return i == j


class KeyOrder(PartialOrder):
    """Order computed from per-vertex keys parsed off the vertex names."""

    def __init__(self, game: SafetyGame, kind: str,
                 key_fn: Callable[[str], object | None],
                 ge_keys: Callable[[object, object], bool]):
        super().__init__(game)
        self.kind = kind
        self._key_fn = key_fn
        self._ge_keys = ge_keys
        self._keys: list[object] = []

    def _key(self, i: int) -> object:
        while len(self._keys) <= i:
            idx = len(self._keys)
            name = self.game.name_of(idx)
            key = self._key_fn(name)
            if key is None:
                raise OrderError(
                    f"order {self.kind!r} cannot interpret vertex {name!r}")
            self._keys.append(key)
        return self._keys[i]

    def ge(self, i: int, j: int) -> bool:
        if self.game.owner_idx(i) is not self.game.owner_idx(j):
            return False
        return self._ge_keys(self._key(i), self._key(j))


_NIM_NAME = re.compile(r"^[ab](\d+)$")


def nim_mod3_order(game: SafetyGame) -> KeyOrder:
    """Ball counts compare by >= within the same residue class mod 3."""

    def key(name: str):
        m = _NIM_NAME.match(name)
        return int(m.group(1)) if m else None

    def ge(k1, k2) -> bool:
        return k1 >= k2 and k1 % 3 == k2 % 3

    return KeyOrder(game, "nim-mod3", key, ge)


_VEC_NAME = re.compile(r"^[ab](_\d+)+$")


def vector_order(game: SafetyGame) -> KeyOrder:
    """Pointwise >= on same-length coordinate vectors."""

    def key(name: str):
        if not _VEC_NAME.match(name):
            return None
        return tuple(int(p) for p in name.split("_")[1:])

    def ge(k1, k2) -> bool:
        return len(k1) == len(k2) and all(a >= b for a, b in zip(k1, k2))

    return KeyOrder(game, "vector", key, ge)


def equality_order(game: SafetyGame) -> EqualityOrder:
    return EqualityOrder(game)


class TableOrder(PartialOrder):
    """Order given by an explicit set of (dominant, dominated) name pairs.

    The constructor stores the pairs as-is so defective tables can be
    built and then diagnosed with :func:`check_partial_order`; use
    :func:`order_from_pairs` to get the closed, validated form.
    """

    kind = "table"

    def __init__(self, game: SafetyGame, pairs: Iterable[tuple[str, str]]):
        super().__init__(game)
        self._pairs = {(game._resolve(a), game._resolve(b)) for a, b in pairs}

    def ge(self, i: int, j: int) -> bool:
        return i == j or (i, j) in self._pairs


def _transitive_closure(pairs: set[tuple[int, int]]) -> set[tuple[int, int]]:
    closure = set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(closure):
            for (c, d) in list(closure):
                if b == c and (a, d) not in closure:
                    closure.add((a, d))
                    changed = True
    return closure


def order_from_pairs(game: SafetyGame,
                     pairs: Iterable[tuple[str, str]]) -> TableOrder:
    """Build a table order from ``ge`` pairs, closing under transitivity.

    Antisymmetry breaches and cross-owner pairs are rejected here, at
    load time, so downstream code can rely on the partial-order laws.
    """
    resolved = set()
    for a, b in pairs:
        i, j = game._resolve(a), game._resolve(b)
        if game.owner_idx(i) is not game.owner_idx(j):
            raise OrderError(f"pair {a} > {b} relates vertices of both players")
        if i != j:
            resolved.add((i, j))
    closed = _transitive_closure(resolved)
    for (i, j) in closed:
        if i != j and (j, i) in closed:
            raise OrderError(
                f"antisymmetry breach between {game.name_of(i)} "
                f"and {game.name_of(j)}")
    order = TableOrder(game, [])
    order._pairs = closed
    return order


def parse_order(text: str, game: SafetyGame) -> TableOrder:
    """Read ``ge <v1> <v2>`` lines ('#' comments) into a table order."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] != "ge" or len(tokens) != 3:
            raise ParseError(f"line {lineno}: expected 'ge <v1> <v2>'")
        pairs.append((tokens[1], tokens[2]))
    try:
        return order_from_pairs(game, pairs)
    except OrderError as exc:
        raise OrderError(f"order file: {exc}") from None


def load_order(path, game: SafetyGame) -> TableOrder:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_order(fh.read(), game)


def emit_order(order: PartialOrder, game: SafetyGame) -> str:
    """Write all non-reflexive dominations of an explicit game."""
    game._require_explicit("order serialization")
    lines = []
    n = game.interned_count()
    for i in range(n):
        for j in range(n):
            if i != j and order.ge(i, j):
                lines.append(f"ge {game.name_of(i)} {game.name_of(j)}")
    return "\n".join(lines) + ("\n" if lines else "")


def make_order(spec: str, game: SafetyGame) -> PartialOrder:
    """Resolve a CLI order spec: a built-in name or ``file:<path>``."""
    if spec == "equality":
        return equality_order(game)
    if spec == "nim-mod3":
        return nim_mod3_order(game)
    if spec == "vector":
        return vector_order(game)
    if spec.startswith("file:"):
        return load_order(spec[5:], game)
    raise OrderError(f"unknown order spec {spec!r}")


# -- antichains --------------------------------------------------------

MAX = "max"
MIN = "min"


class Antichain:
    """Pairwise-incomparable vertices with insertion-pruning.

    ``max`` mode keeps maximal elements and represents the downward
    closure of everything ever inserted; ``min`` mode is the dual.
    Iteration order is deterministic: surviving elements keep their
    insertion order.
    """

    def __init__(self, order: PartialOrder, mode: str = MAX,
                 elements: Iterable = (), check: bool = False):
        if mode not in (MAX, MIN):
            raise ValueError(f"mode must be 'max' or 'min', got {mode!r}")
        self.order = order
        self.mode = mode
        self.check = check
        self._elems: list[int] = []
        for v in elements:
            self.insert(v)

    # internal index-based core

    def _insert_idx(self, i: int) -> bool:
        ge = self.order.ge
        if self.mode == MAX:
            if any(ge(m, i) for m in self._elems):
                return False
            self._elems = [m for m in self._elems if not ge(i, m)]
        else:
            if any(ge(i, m) for m in self._elems):
                return False
            self._elems = [m for m in self._elems if not ge(m, i)]
        self._elems.append(i)
        if self.check:
            self._assert_antichain()
        return True

    def _down_idx(self, i: int) -> bool:
        ge = self.order.ge
        return any(ge(m, i) for m in self._elems)

    def _up_idx(self, i: int) -> bool:
        ge = self.order.ge
        return any(ge(i, m) for m in self._elems)

    def _member_idx(self, i: int) -> bool:
        return i in self._elems

    def first_dominator_idx(self, i: int) -> int:
        for m in self._elems:
            if self.order.ge(m, i):
                return m
        raise KeyError(f"no element dominates index {i}")

    def _assert_antichain(self) -> None:
        for x in self._elems:
            for y in self._elems:
                if x != y and self.order.ge(x, y):
                    raise AssertionError(
                        f"antichain breach: {self.order.game.name_of(x)} "
                        f"dominates {self.order.game.name_of(y)}")

    # public name-based surface

    def insert(self, v) -> bool:
        return self._insert_idx(self.order.game._resolve(v))

    def in_down_closure(self, v) -> bool:
        if self.mode != MAX:
            raise OrderError("downward-closure query needs a max antichain")
        return self._down_idx(self.order.game._resolve(v))

    def in_up_closure(self, v) -> bool:
        if self.mode != MIN:
            raise OrderError("upward-closure query needs a min antichain")
        return self._up_idx(self.order.game._resolve(v))

    @property
    def elements(self) -> list[str]:
        return [self.order.game.name_of(i) for i in self._elems]

    def copy(self) -> "Antichain":
        out = Antichain(self.order, self.mode, check=self.check)
        out._elems = list(self._elems)
        return out

    def __len__(self) -> int:
        return len(self._elems)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, v) -> bool:
        return self._member_idx(self.order.game._resolve(v))

    def __repr__(self) -> str:
        return f"<Antichain {self.mode} {self.elements}>"


def in_down_closure(a: Antichain, v) -> bool:
    return a.in_down_closure(v)


def in_up_closure(a: Antichain, v) -> bool:
    return a.in_up_closure(v)


def insert_max(a: Antichain, v) -> Antichain:
    out = a.copy()
    out.insert(v)
    return out


def insert_min(a: Antichain, v) -> Antichain:
    out = a.copy()
    out.insert(v)
    return out


def max_antichain(vertices: Iterable, order: PartialOrder) -> Antichain:
    """The unique maximal antichain of a vertex set."""
    return Antichain(order, MAX, vertices)


def min_antichain(vertices: Iterable, order: PartialOrder) -> Antichain:
    """The unique minimal antichain of a vertex set."""
    return Antichain(order, MIN, vertices)


def _minimal_indices(order: PartialOrder, indices: Sequence[int]) -> list[int]:
    out: list[int] = []
    for i in indices:
        if any(order.ge(i, m) for m in out):
            continue
        out = [m for m in out if not order.ge(m, i)]
        out.append(i)
    return out


def _maximal_indices(order: PartialOrder, indices: Sequence[int]) -> list[int]:
    out: list[int] = []
    for i in indices:
        if any(order.ge(m, i) for m in out):
            continue
        out = [m for m in out if not order.ge(i, m)]
        out.append(i)
    return out


# -- checkers ----------------------------------------------------------

def check_partial_order(order: PartialOrder, g: SafetyGame) -> list[Violation]:
    """Exhaustive reflexivity/antisymmetry/transitivity/owner check."""
    g._require_explicit("order validation")
    n = g.interned_count()
    out: list[Violation] = []
    by_owner: dict[Player, list[int]] = {Player.A: [], Player.B: []}
    for i in range(n):
        by_owner[g.owner_idx(i)].append(i)
        if not order.ge(i, i):
            out.append(Violation("reflexivity", (g.name_of(i),),
                                 f"{g.name_of(i)} does not dominate itself"))
    for i in range(n):
        for j in range(n):
            if i != j and order.ge(i, j):
                if g.owner_idx(i) is not g.owner_idx(j):
                    out.append(Violation(
                        "owner-mismatch", (g.name_of(i), g.name_of(j)),
                        f"{g.name_of(i)} and {g.name_of(j)} belong to "
                        "different players"))
                if order.ge(j, i):
                    out.append(Violation(
                        "antisymmetry", (g.name_of(i), g.name_of(j)),
                        f"{g.name_of(i)} and {g.name_of(j)} dominate "
                        "each other"))
    for members in by_owner.values():
        for i in members:
            for j in members:
                if not order.ge(i, j):
                    continue
                for k in members:
                    if order.ge(j, k) and not order.ge(i, k):
                        out.append(Violation(
                            "transitivity",
                            (g.name_of(i), g.name_of(j), g.name_of(k)),
                            f"{g.name_of(i)} > {g.name_of(j)} > "
                            f"{g.name_of(k)} but the outer pair is missing"))
    return out


def _ordered_pairs(order: PartialOrder, g: SafetyGame):
    n = g.interned_count()
    for i in range(n):
        for j in range(n):
            if i != j and order.ge(i, j):
                yield i, j


def check_simulation(order: PartialOrder, g: SafetyGame) -> list[Violation]:
    """Dominants must answer every move of the dominated vertex, staying
    above it, and must not be safer than the dominated one on badness."""
    g._require_explicit("simulation checking")
    out: list[Violation] = []
    for i, j in _ordered_pairs(order, g):
        if g.bad_idx(i):
            continue
        if g.bad_idx(j):
            out.append(Violation(
                "simulation-bad", (g.name_of(i), g.name_of(j)),
                f"{g.name_of(j)} is bad but its dominant {g.name_of(i)} "
                "is not"))
        for jj in g.succ_idx(j):
            if not any(order.ge(ii, jj) for ii in g.succ_idx(i)):
                out.append(Violation(
                    "simulation-move",
                    (g.name_of(i), g.name_of(j), g.name_of(jj)),
                    f"no successor of {g.name_of(i)} dominates "
                    f"{g.name_of(jj)}, a successor of {g.name_of(j)}"))
    return out


def check_tba_simulation(order: PartialOrder, g: SafetyGame) -> list[Violation]:
    """Turn-based alternating variant: at A-pairs the dominant's moves
    must be matched from below by the dominated vertex, at B-pairs the
    dominated vertex's moves must be matched from above."""
    g._require_explicit("tba-simulation checking")
    out: list[Violation] = []
    for i, j in _ordered_pairs(order, g):
        if g.bad_idx(i):
            continue
        if g.bad_idx(j):
            out.append(Violation(
                "tba-bad", (g.name_of(i), g.name_of(j)),
                f"{g.name_of(j)} is bad but its dominant {g.name_of(i)} "
                "is not"))
        if g.owner_idx(i) is Player.A:
            for ii in g.succ_idx(i):
                if not any(order.ge(ii, jj) for jj in g.succ_idx(j)):
                    out.append(Violation(
                        "tba-move-a",
                        (g.name_of(i), g.name_of(j), g.name_of(ii)),
                        f"successor {g.name_of(ii)} of {g.name_of(i)} "
                        f"dominates no successor of {g.name_of(j)}"))
        else:
            for jj in g.succ_idx(j):
                if not any(order.ge(ii, jj) for ii in g.succ_idx(i)):
                    out.append(Violation(
                        "tba-move-b",
                        (g.name_of(i), g.name_of(j), g.name_of(jj)),
                        f"no successor of {g.name_of(i)} dominates "
                        f"{g.name_of(jj)}, a successor of {g.name_of(j)}"))
    return out


@dataclass
class ADeterminism:
    """Outcome of the uniform-action check over A-vertices."""

    action_set: frozenset[str] | None
    problems: list[Violation] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.action_set is not None


def check_a_deterministic(g: SafetyGame, lab: Labeling) -> ADeterminism:
    """Look for one action set offered exactly once at every A-vertex."""
    g._require_explicit("determinism checking")
    problems: list[Violation] = []
    candidate: frozenset[str] | None = None
    first_vertex = None
    for v in g.vertices():
        if g.owner(v) is not Player.A:
            continue
        labels = [lab.edge_labels[(v, w)] for w in g.succ(v)]
        if len(set(labels)) != len(labels):
            dup = next(a for a in labels if labels.count(a) > 1)
            problems.append(Violation(
                "a-determinism", (v, dup),
                f"action {dup!r} has several successors at {v}"))
            continue
        offered = frozenset(labels)
        if candidate is None:
            candidate, first_vertex = offered, v
        elif offered != candidate:
            diff = ",".join(sorted(offered ^ candidate))
            problems.append(Violation(
                "a-determinism", (v, diff),
                f"{v} offers a different action set than {first_vertex} "
                f"(difference: {diff})"))
    if problems:
        return ADeterminism(None, problems)
    return ADeterminism(candidate if candidate is not None else frozenset())


def check_monotonic_labeling(order: PartialOrder, g: SafetyGame,
                             lab: Labeling) -> list[Violation]:
    """Same-action moves of a dominated vertex must be matched from above."""
    g._require_explicit("monotonicity checking")
    out: list[Violation] = []
    for i, j in _ordered_pairs(order, g):
        vi, vj = g.name_of(i), g.name_of(j)
        for jj in g.succ_idx(j):
            a = lab.edge_labels[(vj, g.name_of(jj))]
            matched = any(
                lab.edge_labels[(vi, g.name_of(ii))] == a and order.ge(ii, jj)
                for ii in g.succ_idx(i))
            if not matched:
                out.append(Violation(
                    "label-monotonicity", (vi, vj, a, g.name_of(jj)),
                    f"no {a!r}-successor of {vi} dominates the "
                    f"{a!r}-successor {g.name_of(jj)} of {vj}"))
    return out


@dataclass
class TbaDerivation:
    """Result of deriving the alternating property from a plain simulation
    plus A-determinism plus a monotonic labeling."""

    simulation_violations: list[Violation]
    a_determinism: ADeterminism | None
    monotonicity_violations: list[Violation]

    @property
    def tba_by_criterion(self) -> bool:
        return (not self.simulation_violations
                and self.a_determinism is not None
                and bool(self.a_determinism)
                and not self.monotonicity_violations)

    def failed_checks(self) -> list[str]:
        out = []
        if self.simulation_violations:
            out.append("simulation")
        if self.a_determinism is not None and not self.a_determinism:
            out.append("a-determinism")
        if self.monotonicity_violations:
            out.append("monotonic-labeling")
        return out


def derive_tba(order: PartialOrder, g: SafetyGame, lab: Labeling) -> TbaDerivation:
    """Sufficient criterion: simulation + A-determinism + monotone labels."""
    sim = check_simulation(order, g)
    if sim:
        return TbaDerivation(sim, None, [])
    adet = check_a_deterministic(g, lab)
    mono = check_monotonic_labeling(order, g, lab)
    return TbaDerivation([], adet, mono)
