"""Minimum-size winning star-strategies, exactly, at desk scale.

The decision problem "is there a winning star-strategy with at most k
decisions" is NP-complete, so the search here is a counterexample-guided
branch over supports: find a shortest path to a bad vertex in the
star-restricted graph, then branch over redirecting one undecided
A-vertex on that path.  Every witness is re-verified by the polynomial
reachability check before it is reported.

The companion reduction turns a CNF into a game whose minimal winning
star-strategy has size 2m+n exactly when the formula is satisfiable
(m variables, n clauses); both directions of that equivalence are
implemented as executable converters.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .arena import Player, SafetyGame
from .errors import ParseError, PreconditionError, StargameError
from .solvers import solve_attractor
from .strategy import StarStrategy, is_winning_star


@dataclass(frozen=True)
class CnfFormula:
    """Clauses are tuples of signed 1-based variable indices."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for clause in self.clauses:
            if not clause:
                raise ParseError("empty clause")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ParseError(f"literal {lit} outside 1..{self.num_vars}")

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return all(
            any(assignment[abs(lit)] == (lit > 0) for lit in clause)
            for clause in self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"bad problem line {line!r}")
            num_vars = int(parts[2])
            continue
        for token in line.split():
            lit = int(token)
            if lit == 0:
                if not current:
                    raise ParseError("empty clause")
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        raise ParseError("clause not terminated by 0")
    if num_vars is None:
        raise ParseError("missing 'p cnf' header")
    return CnfFormula(num_vars, tuple(clauses))


def load_dimacs(path) -> CnfFormula:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dimacs(fh.read())


# -- reduction -----------------------------------------------------------

@dataclass
class ReductionOutput:
    """Game built from a CNF plus the 2m+n threshold and name indexes."""

    game: SafetyGame
    k: int
    formula: CnfFormula
    var_vertices: dict[int, dict[str, str]] = field(default_factory=dict)
    clause_vertices: dict[int, str] = field(default_factory=dict)


def _lit_b(lit: int) -> str:
    return f"x{lit}B" if lit > 0 else f"nx{-lit}B"


def _lit_a(lit: int) -> str:
    return f"x{lit}A" if lit > 0 else f"nx{-lit}A"


def reduce_sat(phi: CnfFormula) -> ReductionOutput:
    """Gadget game: a hub lets B probe every variable and clause; each
    probe target must hold a decision steering away from the bad sink,
    and variable B-vertices bounce to their A-twins, forcing the chosen
    literals to be covered consistently."""
    m, n = phi.num_vars, len(phi.clauses)
    game = SafetyGame(f"satgame-m{m}-n{n}")
    game.add_vertex("initA", Player.A)
    game.add_vertex("initB", Player.B)
    game.add_vertex("bad", Player.B, bad=True)
    out = ReductionOutput(game, 2 * m + n, phi)
    for i in range(1, m + 1):
        game.add_vertex(f"X{i}", Player.A)
        game.add_vertex(f"x{i}B", Player.B)
        game.add_vertex(f"nx{i}B", Player.B)
        game.add_vertex(f"x{i}A", Player.A)
        game.add_vertex(f"nx{i}A", Player.A)
        out.var_vertices[i] = {
            "choice": f"X{i}",
            "posB": f"x{i}B", "negB": f"nx{i}B",
            "posA": f"x{i}A", "negA": f"nx{i}A",
        }
    for j in range(1, n + 1):
        game.add_vertex(f"C{j}", Player.A)
        out.clause_vertices[j] = f"C{j}"
    game.add_edge("initA", "initB")
    for i in range(1, m + 1):
        game.add_edge("initB", f"X{i}")
    for j in range(1, n + 1):
        game.add_edge("initB", f"C{j}")
    for i in range(1, m + 1):
        game.add_edge(f"X{i}", f"x{i}B")
        game.add_edge(f"X{i}", f"nx{i}B")
        game.add_edge(f"x{i}B", f"x{i}A")
        game.add_edge(f"nx{i}B", f"nx{i}A")
        game.add_edge(f"x{i}A", "initB")
        game.add_edge(f"nx{i}A", "initB")
    for i in range(1, m + 1):
        game.add_edge(f"X{i}", "bad")
        game.add_edge(f"x{i}A", "bad")
        game.add_edge(f"nx{i}A", "bad")
    for j in range(1, n + 1):
        game.add_edge(f"C{j}", "bad")
    for j, clause in enumerate(phi.clauses, start=1):
        seen = set()
        for lit in clause:
            target = _lit_b(lit)
            if target not in seen:
                seen.add(target)
                game.add_edge(f"C{j}", target)
    game.set_initial("initA")
    return out


# -- exact search --------------------------------------------------------

FOUND = "found"
NO_WINNING = "no-winning-strategy"
ABOVE_BOUND = "above-bound"
BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass
class MinSizeOutcome:
    status: str
    size: int | None = None
    witness: StarStrategy | None = None


class _Budget:
    def __init__(self, nodes: int):
        self.left = nodes

    def spend(self) -> bool:
        self.left -= 1
        return self.left >= 0


def _bad_path(g: SafetyGame, support: dict[str, str]) -> list[str] | None:
    """Shortest path from the initial vertex to a bad vertex in the
    star-restricted graph, or None if bad vertices are unreachable."""
    start = g.initial
    parents: dict[str, str | None] = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if g.is_bad(v):
            path = [v]
            while parents[path[-1]] is not None:
                path.append(parents[path[-1]])
            return path[::-1]
        moves = g.succ(v)
        if g.owner(v) is Player.A and v in support:
            moves = [support[v]]
        for w in moves:
            if w not in parents:
                parents[w] = v
                queue.append(w)
    return None


def _search_at_size(g: SafetyGame, size_limit: int,
                    budget: _Budget) -> dict[str, str] | None:
    memo: set[frozenset] = set()

    def dfs(support: dict[str, str]) -> dict[str, str] | None:
        if not budget.spend():
            raise _BudgetExhausted
        path = _bad_path(g, support)
        if path is None:
            return support
        if len(support) >= size_limit:
            return None
        for pos, v in enumerate(path[:-1]):
            if g.owner(v) is not Player.A or v in support:
                continue
            path_succ = path[pos + 1]
            for w in g.succ(v):
                if w == path_succ:
                    continue  # keeping the path's move cannot win
                extended = dict(support)
                extended[v] = w
                key = frozenset(extended.items())
                if key in memo:
                    continue
                memo.add(key)
                hit = dfs(extended)
                if hit is not None:
                    return hit
        return None

    return dfs({})


class _BudgetExhausted(Exception):
    pass


def min_star_strategy_size(g: SafetyGame, budget: int = 500_000,
                           max_size: int | None = None) -> MinSizeOutcome:
    """Smallest support size of any winning star-strategy, with witness.

    ``budget`` caps the number of explored candidate supports across all
    sizes; exhausting it is reported distinctly from "A cannot win".
    """
    g._require_explicit("exact search")
    if g.initial in solve_attractor(g).attractor:
        return MinSizeOutcome(NO_WINNING)
    a_decidable = sum(1 for v in g.vertices()
                      if g.owner(v) is Player.A and g.succ(v))
    top = a_decidable if max_size is None else min(max_size, a_decidable)
    tracker = _Budget(budget)
    for size in range(top + 1):
        try:
            support = _search_at_size(g, size, tracker)
        except _BudgetExhausted:
            return MinSizeOutcome(BUDGET_EXHAUSTED)
        if support is not None:
            witness = StarStrategy(support)
            if not is_winning_star(g, witness):
                raise StargameError("search returned an unverified witness")
            return MinSizeOutcome(FOUND, size=len(support), witness=witness)
    return MinSizeOutcome(ABOVE_BOUND)


def decide_min_size(g: SafetyGame, k: int,
                    budget: int = 500_000) -> MinSizeOutcome:
    """Search limited to supports of size at most k; status ``found``
    means yes, ``above-bound`` means A wins but not within k."""
    return min_star_strategy_size(g, budget=budget, max_size=k)


# -- both directions of the equivalence -----------------------------------

def strategy_from_assignment(r: ReductionOutput,
                             assignment: Mapping[int, bool]) -> StarStrategy:
    """The canonical size-2m+n winning star-strategy of a satisfying
    assignment: pick each variable's literal, answer each clause with
    its first true literal, route the chosen literal A-twins back to
    the hub."""
    phi = r.formula
    for i in range(1, phi.num_vars + 1):
        if i not in assignment:
            raise PreconditionError(f"assignment misses variable {i}")
    if not phi.satisfied_by(assignment):
        raise PreconditionError("assignment does not satisfy the formula")
    support: dict[str, str] = {}
    for i in range(1, phi.num_vars + 1):
        names = r.var_vertices[i]
        if assignment[i]:
            support[names["choice"]] = names["posB"]
            support[names["posA"]] = "initB"
        else:
            support[names["choice"]] = names["negB"]
            support[names["negA"]] = "initB"
    for j, clause in enumerate(phi.clauses, start=1):
        true_lit = next(lit for lit in clause
                        if assignment[abs(lit)] == (lit > 0))
        support[r.clause_vertices[j]] = _lit_b(true_lit)
    return StarStrategy(support)


def assignment_from_strategy(r: ReductionOutput,
                             s: StarStrategy) -> dict[int, bool]:
    """Read the assignment off a small winning star-strategy: a variable
    is true iff its choice vertex picks the positive literal."""
    if s.size > r.k:
        raise PreconditionError(f"strategy size {s.size} exceeds k={r.k}")
    if not is_winning_star(r.game, s):
        raise PreconditionError("strategy is not winning")
    assignment: dict[int, bool] = {}
    for i in range(1, r.formula.num_vars + 1):
        names = r.var_vertices[i]
        choice = s.support.get(names["choice"])
        if choice is None:
            raise PreconditionError(f"no decision at {names['choice']}")
        assignment[i] = choice == names["posB"]
    if not r.formula.satisfied_by(assignment):
        raise StargameError("winning strategy induced a falsifying assignment")
    return assignment
