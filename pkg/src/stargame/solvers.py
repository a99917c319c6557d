"""Three safety-game solvers.

``solve_attractor``
    Round-based least fixpoint of the bad-attractor; the ground truth on
    explicit games, also the supplier of per-round sets for property
    tests.

``solve_otfur``
    On-the-fly forward exploration with backward propagation of losing
    information through a ``Depend`` map; works on implicit games.

``solve_otfur_antichain``
    The same skeleton pruned with a turn-based alternating simulation:
    surely-losing states live in a minimal antichain, possibly-winning
    states in a maximal one, and edges whose endpoint is covered by a
    possibly-winning dominant are postponed instead of explored.  On a
    win it extracts a star-strategy supported on the maximal antichain.

The three agree on the winner whenever the order really is a
tba-simulation; the pitfall fixtures in :mod:`stargame.gamegen` document
what breaks when it is not.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .arena import Player, SafetyGame
from .errors import CapabilityError, InvariantError
from .order import MAX, MIN, Antichain, PartialOrder, _maximal_indices, _minimal_indices
from .strategy import StarStrategy


@dataclass
class AttractorResult:
    attractor: frozenset[str]
    win: frozenset[str]
    rounds: int
    per_round: list[frozenset[str]] | None = None


@dataclass
class SolveStats:
    vertices_explored: int = 0
    edges_popped: int = 0
    reevaluations: int = 0
    postponements: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "vertices_explored": self.vertices_explored,
            "edges_popped": self.edges_popped,
            "reevaluations": self.reevaluations,
            "postponements": self.postponements,
        }


@dataclass
class SolveResult:
    a_wins: bool
    strategy: StarStrategy | None
    stats: SolveStats
    anti_maybe: list[str] | None = None
    anti_losing: list[str] | None = None

    @property
    def winner(self) -> str:
        return "A" if self.a_wins else "B"


@dataclass
class OtfurState:
    """Mutable solver state, exposed so the invariant probe can inspect
    it (and tests can build defective states on purpose)."""

    game: SafetyGame
    order: PartialOrder | None = None
    passed: list[int] = field(default_factory=list)
    passed_set: set[int] = field(default_factory=set)
    waiting: deque = field(default_factory=deque)
    depend: dict[int, list[tuple[int, int]]] = field(default_factory=dict)
    losing: dict[int, bool] | None = None
    anti_maybe: Antichain | None = None
    anti_losing: Antichain | None = None
    visited_debug: set[int] | None = None
    iteration: int = 0

    def push(self, edges: Iterable[tuple[int, int]]) -> None:
        for e in edges:
            self.waiting.append(e)
            if self.visited_debug is not None:
                self.visited_debug.add(e[0])
                self.visited_debug.add(e[1])

    def park(self, keeper: int, edge: tuple[int, int]) -> None:
        bucket = self.depend.setdefault(keeper, [])
        if edge not in bucket:
            bucket.append(edge)


def _lost_at_discovery(g: SafetyGame, idx: int) -> bool:
    # A-vertex with no moves loses (it must move and cannot); the
    # reevaluation machinery can never fire for it, so decide here.
    if g.bad_idx(idx):
        return True
    return g.owner_idx(idx) is Player.A and not g.succ_idx(idx)


def solve_attractor(g: SafetyGame, per_round: bool = False) -> AttractorResult:
    """Least fixpoint: bad vertices, then B-vertices with an attracted
    successor and A-vertices with only attracted successors."""
    g._require_explicit("attractor solving")
    n = g.interned_count()
    indices = range(n)
    attr = {i for i in indices if g.bad_idx(i)}
    history = [frozenset(attr)]
    while True:
        new = set(attr)
        for i in indices:
            if i in attr:
                continue
            succ = g.succ_idx(i)
            if g.owner_idx(i) is Player.B:
                if any(j in attr for j in succ):
                    new.add(i)
            elif all(j in attr for j in succ):
                new.add(i)
        if new == attr:
            break
        attr = new
        history.append(frozenset(attr))
    names = g.vertices()
    attractor = frozenset(names[i] for i in attr)
    win = frozenset(names[i] for i in indices if i not in attr)
    per = None
    if per_round:
        per = [frozenset(names[i] for i in layer) for layer in history]
    return AttractorResult(attractor, win, rounds=len(history) - 1, per_round=per)


def _pop(waiting: deque, discipline: str):
    return waiting.popleft() if discipline == "fifo" else waiting.pop()


def _iteration_cap(g: SafetyGame) -> int | None:
    if not g.explicit:
        return None
    return g.edge_count() * (g.interned_count() + 1)


def solve_otfur(g: SafetyGame, waiting: str = "fifo") -> SolveResult:
    """Forward exploration with a boolean losing flag per vertex."""
    state = OtfurState(g, losing={})
    init = g.initial_index
    state.passed.append(init)
    state.passed_set.add(init)
    state.depend[init] = []
    losing = state.losing
    losing[init] = _lost_at_discovery(g, init)
    if not losing[init]:
        state.push((init, w) for w in g.succ_idx(init))
    stats = SolveStats()
    cap = _iteration_cap(g)
    while state.waiting and not losing[init]:
        v, v2 = _pop(state.waiting, waiting)
        stats.edges_popped += 1
        if cap is not None and stats.edges_popped > cap:
            raise InvariantError("iteration cap exceeded", stats.edges_popped)
        if v2 not in state.passed_set:
            state.passed.append(v2)
            state.passed_set.add(v2)
            losing[v2] = _lost_at_discovery(g, v2)
            state.depend[v2] = [(v, v2)]
            if losing[v2]:
                state.push([(v, v2)])  # reevaluate the source
            else:
                state.push((v2, w) for w in g.succ_idx(v2))
        else:
            stats.reevaluations += 1
            succ = g.succ_idx(v)
            if g.owner_idx(v) is Player.A:
                now_losing = all(losing.get(w, False) for w in succ)
            else:
                now_losing = any(losing.get(w, False) for w in succ)
            if now_losing and not losing.get(v, False):
                losing[v] = True
                state.push(state.depend.get(v, []))  # back propagation
            if not losing.get(v2, False):
                state.park(v2, (v, v2))
    stats.vertices_explored = len(state.passed)
    a_wins = not losing[init]
    strategy = None
    if a_wins:
        support = {}
        for i in state.passed:
            if g.owner_idx(i) is not Player.A or losing.get(i, False):
                continue
            if not g.succ_idx(i):
                continue
            for w in g.succ_idx(i):
                if w in state.passed_set and not losing.get(w, False):
                    support[g.name_of(i)] = g.name_of(w)
                    break
        strategy = StarStrategy(support)
    return SolveResult(a_wins, strategy, stats)


def solve_otfur_antichain(
    g: SafetyGame,
    order: PartialOrder,
    waiting: str = "fifo",
    check_invariants: bool = False,
) -> SolveResult:
    """Antichain-pruned forward exploration.

    The order must be a tba-simulation for the game; that is the
    caller's contract (check it, or trust it knowingly — a wrong order
    can make this solver claim a win that does not exist).
    """
    if check_invariants and not g.explicit:
        raise CapabilityError("invariant checking needs an explicit game")
    state = OtfurState(
        g,
        order,
        anti_maybe=Antichain(order, MAX, check=check_invariants),
        anti_losing=Antichain(order, MIN, check=check_invariants),
        visited_debug=set() if check_invariants else None,
    )
    am, al = state.anti_maybe, state.anti_losing
    init = g.initial_index
    state.passed.append(init)
    state.passed_set.add(init)
    state.depend[init] = []
    stats = SolveStats()
    cap = _iteration_cap(g)
    probe_losing: set[int] | None = None
    if check_invariants:
        attr = solve_attractor(g)
        probe_losing = {g._resolve(v) for v in attr.attractor}
        state.visited_debug.add(init)
    if _lost_at_discovery(g, init):
        al._insert_idx(init)
    else:
        am._insert_idx(init)
        targets = (_minimal_indices(order, g.succ_idx(init))
                   if g.owner_idx(init) is Player.A
                   else _maximal_indices(order, g.succ_idx(init)))
        state.push((init, w) for w in targets)

    while state.waiting and not al._up_idx(init):
        state.iteration += 1
        if check_invariants:
            _assert_invariants(state, probe_losing)
        v, v2 = _pop(state.waiting, waiting)
        stats.edges_popped += 1
        if cap is not None and stats.edges_popped > cap:
            raise InvariantError("iteration cap exceeded", state.iteration)
        if al._up_idx(v):
            continue  # the source is surely losing, the edge is moot
        if am._down_idx(v) and not am._member_idx(v):
            state.park(am.first_dominator_idx(v), (v, v2))
            stats.postponements += 1
            continue
        if am._down_idx(v2):
            # Covered target: park the edge on its dominant (on the
            # target itself when it is the antichain member) so that the
            # dominant's death reschedules this edge.
            state.park(am.first_dominator_idx(v2), (v, v2))
            stats.postponements += 1
            continue
        if v2 not in state.passed_set:
            state.passed.append(v2)
            state.passed_set.add(v2)
            if not al._up_idx(v2):
                if _lost_at_discovery(g, v2):
                    al._insert_idx(v2)
                    state.push([(v, v2)])  # reevaluate the source
                else:
                    state.depend[v2] = [(v, v2)]
                    am._insert_idx(v2)
                    targets = (_minimal_indices(order, g.succ_idx(v2))
                               if g.owner_idx(v2) is Player.A
                               else _maximal_indices(order, g.succ_idx(v2)))
                    state.push((v2, w) for w in targets)
            else:
                state.push([(v, v2)])  # reevaluate the source
        else:
            stats.reevaluations += 1
            succ = g.succ_idx(v)
            if g.owner_idx(v) is Player.A:
                now_losing = all(al._up_idx(w)
                                 for w in _minimal_indices(order, succ))
            else:
                now_losing = any(al._up_idx(w)
                                 for w in _maximal_indices(order, succ))
            if now_losing:
                al._insert_idx(v)
                rebuilt = Antichain(order, MAX, check=check_invariants)
                for i in state.passed:
                    if not al._up_idx(i):
                        rebuilt._insert_idx(i)
                state.anti_maybe = am = rebuilt
                state.push(state.depend.get(v, []))  # back propagation
            elif not al._up_idx(v2):
                # Vestigial in practice: a reevaluated target is always
                # surely losing by the time it gets here.
                state.park(v2, (v, v2))
    if check_invariants:
        _assert_invariants(state, probe_losing)

    stats.vertices_explored = len(state.passed)
    a_wins = not al._up_idx(init)
    strategy = None
    if a_wins:
        support = {}
        for i in am._elems:
            if g.owner_idx(i) is not Player.A:
                continue
            for w in g.succ_idx(i):
                if am._down_idx(w):
                    support[g.name_of(i)] = g.name_of(w)
                    break
        strategy = StarStrategy(support)
    return SolveResult(
        a_wins,
        strategy,
        stats,
        anti_maybe=am.elements,
        anti_losing=al.elements,
    )


# -- runtime invariants --------------------------------------------------

def invariant_probe(state: OtfurState, g: SafetyGame,
                    order: PartialOrder,
                    losing: set[int] | None = None) -> list[str]:
    """Evaluate the five loop invariants of the antichain solver.

    Quantifications over "every possibly-winning vertex" range over the
    explored (passed) vertices: covered-but-unexplored vertices have no
    pending edges of their own by design, their obligations ride on
    their dominants.  The progress invariants track the solver's pushed
    frontier: minimal successors at A-vertices (an existence check makes
    any successor a valid witness), maximal successors at B-vertices.
    Needs an explicit game; the surely-losing check compares against the
    attractor, passed in or computed here.
    """
    g._require_explicit("invariant probing")
    am, al = state.anti_maybe, state.anti_losing
    if am is None or al is None:
        raise CapabilityError("probe needs the antichain solver state")
    violations: list[str] = []
    waiting_edges = set(state.waiting)
    state_waiting = {v for e in waiting_edges for v in e}

    if state.visited_debug is not None:
        for i in sorted(state.visited_debug - state_waiting):
            if not (am._down_idx(i) or al._up_idx(i)):
                violations.append(
                    f"inv1: visited {g.name_of(i)} is neither possibly "
                    "winning nor surely losing")

    parked = set(waiting_edges)
    for keeper, edges in state.depend.items():
        if am._down_idx(keeper):
            parked.update(edges)

    for i in state.passed:
        if not am._down_idx(i):
            continue
        succ = g.succ_idx(i)
        if g.owner_idx(i) is Player.A:
            if not succ:
                continue
            ok = any(am._down_idx(w) or (i, w) in parked for w in succ)
            if not ok:
                violations.append(
                    f"inv2: possibly-winning {g.name_of(i)} has no live "
                    "successor and no pending edge")
        else:
            for w in _maximal_indices(order, succ):
                if not (am._down_idx(w) or (i, w) in parked):
                    violations.append(
                        f"inv3: successor {g.name_of(w)} of possibly-"
                        f"winning {g.name_of(i)} is uncovered and not "
                        "pending")

    if losing is None:
        attr = solve_attractor(g)
        losing = {g._resolve(v) for v in attr.attractor}
    for i in al._elems:
        if i not in losing:
            violations.append(
                f"inv4: {g.name_of(i)} is marked surely losing but wins")

    for keeper, edges in state.depend.items():
        for (v, w) in edges:
            if not (order.ge(keeper, w) or (order.ge(keeper, v) and keeper != v)):
                violations.append(
                    f"inv5: edge {g.name_of(v)} -> {g.name_of(w)} parked "
                    f"on unrelated {g.name_of(keeper)}")
    return violations


def _assert_invariants(state: OtfurState, losing: set[int] | None) -> None:
    violations = invariant_probe(state, state.game, state.order, losing)
    if violations:
        raise InvariantError("; ".join(violations), state.iteration)
