"""Star-strategies: partial memoryless strategies with 'don't care' gaps.

A star-strategy stores decisions for a subset of A-vertices (its support)
and leaves the rest unconstrained.  It is winning when every total
strategy agreeing with it is winning, and order-winning when every
order-compatible completion is: at an undecided vertex that is dominated
by a support vertex, a compatible completion must mimic the dominating
decision up to the order.

Winning-ness is decided by reachability in a restricted graph; any path
to a bad vertex can be shortened to a simple path, which induces a
consistent memoryless completion, so the reachability check is exact.
Exhaustive completion enumeration exists as a test oracle only.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .arena import Player, SafetyGame
from .errors import (
    IncompleteStrategyError,
    InvalidStrategyError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
)
from .order import Antichain, PartialOrder, max_antichain


@dataclass(frozen=True)
class StarStrategy:
    """Map from supported A-vertices to their chosen successors."""

    support: dict[str, str]

    @property
    def size(self) -> int:
        return len(self.support)

    def decision(self, v: str) -> str | None:
        return self.support.get(v)

    def __contains__(self, v: str) -> bool:
        return v in self.support


def restrict(sigma: Mapping[str, str], vertices: Iterable[str]) -> StarStrategy:
    """Keep sigma's decisions on ``vertices`` only, star elsewhere."""
    support = {}
    for v in vertices:
        if v not in sigma:
            raise PreconditionError(f"strategy has no decision at {v}")
        support[v] = sigma[v]
    return StarStrategy(support)


def _validate_support(g: SafetyGame, support: Mapping[str, str]) -> None:
    for v, w in support.items():
        if g.owner(v) is not Player.A:
            raise InvalidStrategyError(f"support vertex {v} is not an A-vertex")
        if w not in g.succ(v):
            raise InvalidStrategyError(f"chosen move {v} -> {w} is not an edge")


def is_winning_total(g: SafetyGame, sigma: Mapping[str, str]) -> bool:
    """Walk the strategy-restricted graph; no bad vertex may be reachable.

    The strategy must decide every reachable A-vertex that has moves
    (vertices without moves end the play and need no decision).
    """
    g._require_explicit("strategy verification")
    seen = {g.initial}
    frontier = deque(seen)
    while frontier:
        v = frontier.popleft()
        if g.is_bad(v):
            return False
        moves = g.succ(v)
        if g.owner(v) is Player.A and moves:
            if v not in sigma:
                raise IncompleteStrategyError(f"no decision at reachable {v}")
            if sigma[v] not in moves:
                raise InvalidStrategyError(
                    f"chosen move {v} -> {sigma[v]} is not an edge")
            moves = [sigma[v]]
        for w in moves:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return True


def is_winning_star(g: SafetyGame, s: StarStrategy) -> bool:
    """True iff every completion of the star-strategy is winning."""
    g._require_explicit("strategy verification")
    _validate_support(g, s.support)
    restricted = g.restrict_by_strategy(s)
    return not any(g.is_bad(v) for v in restricted.reach(restricted.initial))


def order_allowed_successors(g: SafetyGame, s: StarStrategy,
                             order: PartialOrder, v: str) -> list[str]:
    """Moves an order-compatible completion may take at A-vertex ``v``."""
    if g.owner(v) is not Player.A:
        raise InvalidStrategyError(f"{v} is not an A-vertex")
    chosen = s.decision(v)
    if chosen is not None:
        return [chosen]
    dominators = [u for u in s.support
                  if order.cmp(u, v).name in ("GE", "EQ")]
    if not dominators:
        return g.succ(v)
    allowed = []
    for w in g.succ(v):
        for u in dominators:
            if order.cmp(s.support[u], w).name in ("GE", "EQ"):
                allowed.append(w)
                break
    return allowed


@dataclass
class OrderWinningReport:
    """Detailed outcome of the order-compatible winning check.

    ``no_completion_at`` lists reachable undecided A-vertices whose moves
    exist but are all order-incompatible; there the star-strategy admits
    no order-compatible completion at all, so a bare "no bad vertex
    reached" would be vacuous and the check reports not-winning.
    """

    winning: bool
    bad_reached: str | None = None
    no_completion_at: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.winning


def check_order_winning(g: SafetyGame, s: StarStrategy,
                        order: PartialOrder) -> OrderWinningReport:
    g._require_explicit("strategy verification")
    _validate_support(g, s.support)
    allowed_cache: dict[str, list[str]] = {}
    vacuous: list[str] = []
    bad_hit: str | None = None
    seen = {g.initial}
    frontier = deque(seen)
    while frontier:
        v = frontier.popleft()
        if g.is_bad(v):
            bad_hit = v
            break
        moves = g.succ(v)
        if g.owner(v) is Player.A and moves:
            allowed = allowed_cache.get(v)
            if allowed is None:
                allowed = order_allowed_successors(g, s, order, v)
                allowed_cache[v] = allowed
            if not allowed:
                vacuous.append(v)
            moves = allowed
        for w in moves:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    winning = bad_hit is None and not vacuous
    return OrderWinningReport(winning, bad_hit, tuple(vacuous))


def is_order_winning_star(g: SafetyGame, s: StarStrategy,
                          order: PartialOrder) -> bool:
    """True iff the order-compatible completions exist and all win."""
    return check_order_winning(g, s, order).winning


def enumerate_order_concretisations(g: SafetyGame, s: StarStrategy,
                                    order: PartialOrder,
                                    limit: int = 10000) -> list[dict[str, str]]:
    """All total strategies choosing an allowed move at every A-vertex.

    Test oracle only: the product of the allowed-set sizes must stay
    within ``limit``.
    """
    g._require_explicit("strategy enumeration")
    _validate_support(g, s.support)
    a_vertices = [v for v in g.vertices()
                  if g.owner(v) is Player.A and g.succ(v)]
    choice_lists = [order_allowed_successors(g, s, order, v)
                    for v in a_vertices]
    total = 1
    for choices in choice_lists:
        total *= len(choices)
        if total > limit:
            raise ResourceLimitError(
                f"more than {limit} completions; use the reachability check")
    out = []
    for combo in itertools.product(*choice_lists):
        out.append(dict(zip(a_vertices, combo)))
    return out


_COVER_CONDITIONS = ("no-bad-in-cover", "initial-covered", "successors-covered")


@dataclass
class CoverCheck:
    """Which of the three cover-set conditions failed, if any."""

    ok: bool
    failed: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def check_cover_conditions(g: SafetyGame, sigma: Mapping[str, str],
                           cover: Iterable[str],
                           order: PartialOrder) -> CoverCheck:
    """A cover set S supports an order-winning restriction of sigma when:
    (i) S and sigma(S) avoid bad vertices, (ii) the initial vertex lies
    below S, and (iii) every successor of sigma(S) lies below S."""
    g._require_explicit("cover checking")
    cover = list(cover)
    for v in cover:
        if v not in sigma:
            raise PreconditionError(f"strategy has no decision at {v}")
    failed = []
    targets = [sigma[v] for v in cover]
    if any(g.is_bad(v) for v in cover) or any(g.is_bad(w) for w in targets):
        failed.append("no-bad-in-cover")
    below = Antichain(order, "max", cover)
    if not below.in_down_closure(g.initial):
        failed.append("initial-covered")
    if any(not below.in_down_closure(w)
           for t in targets for w in g.succ(t)):
        failed.append("successors-covered")
    return CoverCheck(not failed, tuple(failed))


def reachable_antichain_strategy(g: SafetyGame, sigma: Mapping[str, str],
                                 order: PartialOrder) -> StarStrategy:
    """Restrict a winning strategy to the maximal antichain of the
    A-vertices it can reach; the result is order-winning."""
    if not is_winning_total(g, sigma):
        raise PreconditionError("strategy is not winning")
    restricted = g.restrict_by_strategy(sigma)
    reached_a = [v for v in restricted.reach(restricted.initial)
                 if g.owner(v) is Player.A]
    reached_a.sort()  # stable input order for the antichain
    antichain = max_antichain(reached_a, order)
    return restrict(sigma, antichain.elements)


def strategy_from_win(g: SafetyGame, win: Iterable[str]) -> dict[str, str]:
    """Classic extraction: at every winning A-vertex take the first
    winning successor."""
    win_set = set(win)
    sigma = {}
    for v in g.vertices():
        if g.owner(v) is not Player.A or v not in win_set:
            continue
        for w in g.succ(v):
            if w in win_set:
                sigma[v] = w
                break
    return sigma


# -- strategy file format ----------------------------------------------
#
# map <vertex-id> <successor-id>   one line per support entry, '#' comments,
# emitted in support-key sorted order.

def parse_strategy(text: str) -> StarStrategy:
    support: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] != "map" or len(tokens) != 3:
            raise ParseError(f"line {lineno}: expected 'map <vertex> <successor>'")
        if tokens[1] in support:
            raise ParseError(f"line {lineno}: duplicate entry for {tokens[1]}")
        support[tokens[1]] = tokens[2]
    return StarStrategy(support)


def emit_strategy(s: StarStrategy) -> str:
    lines = [f"map {v} {s.support[v]}" for v in sorted(s.support)]
    return "\n".join(lines) + ("\n" if lines else "")


def load_strategy(path) -> StarStrategy:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_strategy(fh.read())


def save_strategy(s: StarStrategy, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_strategy(s))
