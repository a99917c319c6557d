"""Fixture and family generators.

* urn-filling Nim with its ball-count order,
* monotone vector games whose pointwise order is alternating by
  construction (the labeling criterion applies out of the box),
* two pitfall games showing why a plain simulation is not enough for
  the antichain solver,
* seeded random bipartite games for cross-solver oracle runs.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from .arena import Labeling, Player, SafetyGame
from .errors import DegenerateSpecError, OrderError
from .order import (
    PartialOrder,
    TableOrder,
    nim_mod3_order,
    order_from_pairs,
    vector_order,
)

_EXTRA_EDGES = (("b7", "a6", "-1"), ("b7", "a5", "-2"), ("b6", "a5", "-1"))


def gen_nim(n: int, extra_edges: bool | None = None
            ) -> tuple[SafetyGame, PartialOrder, Labeling]:
    """Urn-filling game over ``n`` balls: players alternate adding one or
    two balls, whoever fills the urn loses.

    A-states carry counts {0} u {2..n-1} (count 1 only ever occurs on
    B's turn), B-states carry {1..n}; the two top states are bad for A.
    ``extra_edges`` adds three give-back moves that exist only in the
    8-ball variant (they leave the winning set unchanged there but give
    the top states successors); the default enables them exactly at
    ``n == 8``.
    """
    if n < 3:
        raise DegenerateSpecError(f"need at least 3 balls, got {n}")
    extras = n == 8 if extra_edges is None else extra_edges
    if extras and n != 8:
        raise DegenerateSpecError("the extra edges reproduce the 8-ball arena")
    game = SafetyGame(f"nim{n}")
    a_counts = [0] + list(range(2, n))
    for k in a_counts:
        game.add_vertex(f"a{k}", Player.A, bad=(k == n - 1))
    for k in range(1, n + 1):
        game.add_vertex(f"b{k}", Player.B, bad=(k == n))
    for k in a_counts:
        for d in (1, 2):
            if k + d <= n:
                game.add_edge(f"a{k}", f"b{k + d}", f"+{d}")
    for k in range(1, n + 1):
        for d in (1, 2):
            if k + d <= n - 1:
                game.add_edge(f"b{k}", f"a{k + d}", f"+{d}")
    if extras:
        for src, dst, label in _EXTRA_EDGES:
            game.add_edge(src, dst, label)
    game.set_initial("a0")
    return game, nim_mod3_order(game), game.labeling()


def gen_nim_implicit(n: int, extra_edges: bool | None = None
                     ) -> tuple[SafetyGame, PartialOrder]:
    """The same game as a successor generator, for on-the-fly solving."""
    if n < 3:
        raise DegenerateSpecError(f"need at least 3 balls, got {n}")
    extras = n == 8 if extra_edges is None else extra_edges
    if extras and n != 8:
        raise DegenerateSpecError("the extra edges reproduce the 8-ball arena")
    extra_map: dict[tuple, list[tuple]] = {}
    if extras:
        extra_map = {("b", 7): [("a", 6), ("a", 5)], ("b", 6): [("a", 5)]}

    def owner(state):
        return Player.A if state[0] == "a" else Player.B

    def bad(state):
        kind, k = state
        return k == (n - 1 if kind == "a" else n)

    def successors(state):
        kind, k = state
        other = "b" if kind == "a" else "a"
        top = n if other == "b" else n - 1
        out = [(other, k + d) for d in (1, 2) if k + d <= top]
        out.extend(extra_map.get(state, ()))
        return out

    game = SafetyGame.implicit(
        f"nim{n}", ("a", 0), owner, bad, successors,
        display=lambda s: f"{s[0]}{s[1]}")
    return game, nim_mod3_order(game)


# -- monotone vector games ----------------------------------------------

MoveTable = dict[tuple, tuple]


def _grid(dims: int, bound: int):
    return itertools.product(range(bound + 1), repeat=dims)


def delta_move_table(dims: int, bound: int, deltas: tuple) -> MoveTable:
    """Coordinate-wise delta clamped to [0, bound]; always monotone."""
    if len(deltas) != dims:
        raise OrderError(f"delta arity {len(deltas)} != dims {dims}")
    return {
        vec: tuple(min(bound, max(0, c + d)) for c, d in zip(vec, deltas))
        for vec in _grid(dims, bound)
    }


@dataclass
class VectorGameSpec:
    """Shape of a monotone vector game.

    Move tables map every grid vector to a successor vector and must be
    monotone (pointwise larger inputs give pointwise larger outputs);
    the bad predicate over vectors must be monotone upward.  Defaults:
    one saturating decrement per coordinate for A, one saturating
    increment per coordinate for B, bad when any coordinate sits at the
    bound.
    """

    dims: int
    bound: int
    a_moves: list[tuple[str, MoveTable]] | None = None
    b_moves: list[tuple[str, MoveTable]] | None = None
    bad: Callable[[tuple], bool] | None = None

    def resolved_moves(self):
        def unit(i, sign):
            return tuple(sign if j == i else 0 for j in range(self.dims))

        a_moves = self.a_moves
        if a_moves is None:
            a_moves = [(f"down{i}", delta_move_table(self.dims, self.bound, unit(i, -1)))
                       for i in range(self.dims)]
        b_moves = self.b_moves
        if b_moves is None:
            b_moves = [(f"up{i}", delta_move_table(self.dims, self.bound, unit(i, +1)))
                       for i in range(self.dims)]
        return a_moves, b_moves

    def resolved_bad(self) -> Callable[[tuple], bool]:
        if self.bad is not None:
            return self.bad
        bound = self.bound
        return lambda vec: any(c == bound for c in vec)


def _validate_moves(spec: VectorGameSpec, name: str, table: MoveTable) -> None:
    grid = list(_grid(spec.dims, spec.bound))
    for vec in grid:
        if vec not in table:
            raise OrderError(f"move {name!r} is undefined at {vec}")
        target = table[vec]
        if len(target) != spec.dims or any(
                not 0 <= c <= spec.bound for c in target):
            raise OrderError(f"move {name!r} leaves the grid at {vec}")
    for u in grid:
        for v in grid:
            if all(a >= b for a, b in zip(u, v)):
                if not all(a >= b for a, b in zip(table[u], table[v])):
                    raise OrderError(
                        f"move {name!r} is not monotone at {u} >= {v}")


def _validate_bad(spec: VectorGameSpec, bad: Callable[[tuple], bool]) -> None:
    grid = list(_grid(spec.dims, spec.bound))
    for u in grid:
        for v in grid:
            if all(a >= b for a, b in zip(u, v)) and bad(v) and not bad(u):
                raise OrderError(f"bad predicate is not monotone at {u} >= {v}")


def gen_vector(spec: VectorGameSpec
               ) -> tuple[SafetyGame, PartialOrder, Labeling]:
    """Explicit game over move-tagged vectors.

    States are (owner, vector, producing-move-index); carrying the move
    index keeps same-source moves distinct, so the labeling offers every
    A-action exactly once per A-state and stays monotone.  The order is
    pointwise >= over the coordinates including the move index.
    """
    if spec.dims < 1 or spec.bound < 1:
        raise DegenerateSpecError("need dims >= 1 and bound >= 1")
    a_moves, b_moves = spec.resolved_moves()
    for name, table in a_moves + b_moves:
        _validate_moves(spec, name, table)
    bad = spec.resolved_bad()
    _validate_bad(spec, bad)

    def vname(owner: str, vec: tuple, m: int) -> str:
        return owner + "_" + "_".join(str(c) for c in vec + (m,))

    game = SafetyGame(f"vector-d{spec.dims}-b{spec.bound}")
    a_states = [(vec, m) for vec in _grid(spec.dims, spec.bound)
                for m in range(len(b_moves))]
    b_states = [(vec, m) for vec in _grid(spec.dims, spec.bound)
                for m in range(len(a_moves))]
    for vec, m in a_states:
        game.add_vertex(vname("a", vec, m), Player.A, bad=bad(vec))
    for vec, m in b_states:
        game.add_vertex(vname("b", vec, m), Player.B, bad=bad(vec))
    for vec, m in a_states:
        for k, (label, table) in enumerate(a_moves):
            game.add_edge(vname("a", vec, m), vname("b", table[vec], k), label)
    for vec, m in b_states:
        for i, (label, table) in enumerate(b_moves):
            game.add_edge(vname("b", vec, m), vname("a", table[vec], i), label)
    game.set_initial(vname("a", (0,) * spec.dims, 0))
    return game, vector_order(game), game.labeling()


def gen_vector_implicit(spec: VectorGameSpec) -> tuple[SafetyGame, PartialOrder]:
    """On-the-fly form of :func:`gen_vector` (moves validated the same)."""
    if spec.dims < 1 or spec.bound < 1:
        raise DegenerateSpecError("need dims >= 1 and bound >= 1")
    a_moves, b_moves = spec.resolved_moves()
    for name, table in a_moves + b_moves:
        _validate_moves(spec, name, table)
    bad = spec.resolved_bad()
    _validate_bad(spec, bad)

    def owner(state):
        return Player.A if state[0] == "a" else Player.B

    def is_bad(state):
        return bad(state[1])

    def successors(state):
        kind, vec, _ = state
        moves = a_moves if kind == "a" else b_moves
        other = "b" if kind == "a" else "a"
        return [(other, table[vec], k) for k, (_, table) in enumerate(moves)]

    def display(state):
        kind, vec, m = state
        return kind + "_" + "_".join(str(c) for c in vec + (m,))

    game = SafetyGame.implicit(
        f"vector-d{spec.dims}-b{spec.bound}", ("a", (0,) * spec.dims, 0),
        owner, is_bad, successors, display)
    return game, vector_order(game)


# -- pitfall fixtures ----------------------------------------------------

def gen_nonclosed_sim_game() -> tuple[SafetyGame, TableOrder]:
    """A plain simulation whose winning set is not downward closed.

    v1 dominates v2 and wins (it can sidestep into the dead-end v1pp),
    while v2 is stuck with its bad successor; closure-based pruning
    would wrongly treat v2 as winning.
    """
    game = SafetyGame("pitfall-nonclosed")
    for vid in ("v0", "v1", "v2"):
        game.add_vertex(vid, Player.A)
    for vid in ("v3", "v4", "v1pp"):
        game.add_vertex(vid, Player.B)
    game.add_vertex("v1p", Player.B, bad=True)
    game.add_vertex("v2p", Player.B, bad=True)
    for src, dst in (("v0", "v3"), ("v0", "v4"), ("v3", "v1"), ("v4", "v2"),
                     ("v1", "v1pp"), ("v1", "v1p"), ("v2", "v2p")):
        game.add_edge(src, dst)
    game.set_initial("v0")
    order = order_from_pairs(game, [("v1", "v2"), ("v1p", "v2p")])
    return game, order


def gen_nontba_sim_game() -> tuple[SafetyGame, TableOrder]:
    """The order relates v to v' but fails the alternating condition at
    that A-pair, so the antichain solver postpones v' forever and claims
    a win although no winning strategy exists.  Permanent regression for
    running the pruned solver with an unvetted order.
    """
    game = SafetyGame("pitfall-nontba")
    game.add_vertex("v", Player.A)
    game.add_vertex("vp", Player.A)
    game.add_vertex("vpp", Player.B)
    game.add_vertex("b1", Player.B, bad=True)
    game.add_vertex("b2", Player.B, bad=True)
    for src, dst in (("v", "vpp"), ("v", "b1"), ("vpp", "vp"), ("vp", "b2")):
        game.add_edge(src, dst)
    game.set_initial("v")
    order = order_from_pairs(game, [("v", "vp")])
    return game, order


# -- random games --------------------------------------------------------

def gen_random(vertices: int, density: float, seed: int,
               allow_deadends: bool = False) -> SafetyGame:
    """Seeded bipartite game; every draw comes from one local generator
    so equal parameters give byte-identical emissions."""
    if vertices < 2:
        raise DegenerateSpecError("need at least 2 vertices")
    rng = random.Random(seed)
    n_a = max(1, vertices // 2)
    n_b = vertices - n_a
    game = SafetyGame(f"random-n{vertices}-s{seed}")
    bad_flags = [rng.random() < 0.25 for _ in range(n_b)]
    if not any(bad_flags):
        bad_flags[rng.randrange(n_b)] = True
    for i in range(n_a):
        game.add_vertex(f"a{i}", Player.A)
    for j in range(n_b):
        game.add_vertex(f"b{j}", Player.B, bad=bad_flags[j])
    for i in range(n_a):
        for j in range(n_b):
            if rng.random() < density:
                game.add_edge(f"a{i}", f"b{j}")
    for j in range(n_b):
        for i in range(n_a):
            if rng.random() < density:
                game.add_edge(f"b{j}", f"a{i}")
    if not allow_deadends:
        for i in range(n_a):
            if not game.succ(f"a{i}"):
                game.add_edge(f"a{i}", f"b{rng.randrange(n_b)}")
        for j in range(n_b):
            if not game.succ(f"b{j}"):
                game.add_edge(f"b{j}", f"a{rng.randrange(n_a)}")
    game.set_initial("a0")
    return game
