import random

import pytest

import stargame as sg
from conftest import random_games


def comparable_pairs(order, game):
    names = game.vertices()
    for v in names:
        for w in names:
            if v != w and order.cmp(v, w).name == "GE":
                yield v, w


# -- attractor -------------------------------------------------------------

def test_attractor_nim8_characterization(nim8_game):
    result = sg.solve_attractor(nim8_game)
    assert result.win == frozenset(
        {"a0", "a2", "a3", "a5", "a6", "b1", "b4", "b7"})
    assert result.attractor == frozenset(
        {"a4", "a7", "b2", "b3", "b5", "b6", "b8"})


def test_attractor_without_bad_states():
    g = sg.SafetyGame("safe")
    g.add_vertex("a0", sg.Player.A)
    g.add_vertex("b0", sg.Player.B)
    g.add_edge("a0", "b0")
    g.add_edge("b0", "a0")
    g.set_initial("a0")
    result = sg.solve_attractor(g)
    assert result.attractor == frozenset()
    assert result.win == frozenset({"a0", "b0"})


def test_attractor_with_bad_initial():
    g = sg.SafetyGame("doomed")
    g.add_vertex("a0", sg.Player.A, bad=True)
    g.add_vertex("b0", sg.Player.B)
    g.add_edge("a0", "b0")
    g.add_edge("b0", "a0")
    g.set_initial("a0")
    result = sg.solve_attractor(g, per_round=True)
    assert "a0" in result.per_round[0]


def test_attractor_rejects_implicit_games():
    game, _ = sg.gen_nim_implicit(8)
    with pytest.raises(sg.CapabilityError):
        sg.solve_attractor(game)


# -- plain on-the-fly solver -------------------------------------------------

def test_otfur_nim8_wins(nim8_game):
    assert sg.solve_otfur(nim8_game).a_wins


def test_otfur_nontba_pitfall_loses(nontba):
    game, _ = nontba
    assert not sg.solve_otfur(game).a_wins


def test_otfur_agrees_with_attractor_on_random_games():
    for game in random_games(120):
        expected = game.initial in sg.solve_attractor(game).win
        assert sg.solve_otfur(game).a_wins == expected


def test_otfur_strategy_is_winning_when_it_wins():
    for game in random_games(60):
        result = sg.solve_otfur(game)
        if result.a_wins:
            assert sg.is_winning_star(game, result.strategy)


def test_otfur_handles_losing_initial():
    g = sg.SafetyGame("doomed")
    g.add_vertex("a0", sg.Player.A, bad=True)
    g.add_vertex("b0", sg.Player.B)
    g.add_edge("a0", "b0")
    g.add_edge("b0", "a0")
    g.set_initial("a0")
    assert not sg.solve_otfur(g).a_wins


def test_dead_end_a_vertex_is_losing():
    g = sg.SafetyGame("stuck")
    g.add_vertex("a0", sg.Player.A)
    g.add_vertex("b0", sg.Player.B, bad=True)
    g.set_initial("a0")
    assert "a0" in sg.solve_attractor(g).attractor
    assert not sg.solve_otfur(g).a_wins
    assert not sg.solve_otfur_antichain(g, sg.equality_order(g)).a_wins


def test_dead_end_b_vertex_is_winning():
    g = sg.SafetyGame("trap")
    g.add_vertex("a0", sg.Player.A)
    g.add_vertex("b0", sg.Player.B)
    g.add_vertex("b1", sg.Player.B, bad=True)
    g.add_edge("a0", "b0")
    g.add_edge("a0", "b1")
    g.set_initial("a0")
    assert "b0" in sg.solve_attractor(g).win
    assert sg.solve_otfur(g).a_wins
    assert sg.solve_otfur_antichain(g, sg.equality_order(g)).a_wins


def test_otfur_works_on_implicit_games():
    game, _ = sg.gen_nim_implicit(9)
    assert sg.solve_otfur(game).a_wins  # 9 mod 3 != 1


# -- antichain-pruned solver ---------------------------------------------

def test_antichain_solver_nim8(nim8):
    game, order, _ = nim8
    result = sg.solve_otfur_antichain(game, order)
    assert result.a_wins
    assert result.strategy.support == {"a5": "b7", "a6": "b7"}
    assert set(result.anti_maybe) == {"a5", "a6", "b7"}
    assert sg.is_order_winning_star(game, result.strategy, order)
    assert not sg.is_winning_star(game, result.strategy)


def test_antichain_solver_with_equality_matches_plain():
    for game in random_games(120):
        plain = sg.solve_otfur(game).a_wins
        pruned = sg.solve_otfur_antichain(game, sg.equality_order(game)).a_wins
        assert plain == pruned


def test_antichain_solver_pointwise_order_on_vector_games():
    for dims, bound in ((1, 3), (2, 2), (2, 3)):
        game, order, _ = sg.gen_vector(sg.VectorGameSpec(dims, bound))
        expected = game.initial in sg.solve_attractor(game).win
        assert sg.solve_otfur(game).a_wins == expected
        result = sg.solve_otfur_antichain(game, order)
        assert result.a_wins == expected
        if result.a_wins:
            assert sg.is_order_winning_star(game, result.strategy, order)


def test_antichain_solver_documented_unsoundness_on_nontba_order(nontba):
    game, order = nontba
    result = sg.solve_otfur_antichain(game, order)
    assert result.a_wins  # wrong, and exactly why the order must be vetted
    assert result.strategy.support == {"v": "vpp"}
    assert not sg.check_order_winning(game, result.strategy, order).winning


def test_antichain_solver_winner_stable_across_waiting_disciplines(nim8):
    game, order, _ = nim8
    fifo = sg.solve_otfur_antichain(game, order, waiting="fifo")
    lifo = sg.solve_otfur_antichain(game, order, waiting="lifo")
    assert fifo.a_wins == lifo.a_wins


def test_antichain_solver_on_implicit_nim():
    game, order = sg.gen_nim_implicit(14)
    result = sg.solve_otfur_antichain(game, order)
    assert result.a_wins == (14 % 3 != 1)


def test_results_are_deterministic(nim8):
    game, order, _ = nim8
    runs = [sg.solve_otfur_antichain(game, order) for _ in range(3)]
    assert len({tuple(sorted(r.strategy.support.items())) for r in runs}) == 1
    assert len({tuple(r.anti_maybe) for r in runs}) == 1
    assert len({(r.stats.edges_popped, r.stats.postponements)
                for r in runs}) == 1


# -- runtime invariants ------------------------------------------------------

def test_invariants_hold_on_nim8(nim8):
    game, order, _ = nim8
    result = sg.solve_otfur_antichain(game, order, check_invariants=True)
    assert result.a_wins


def test_invariants_hold_on_reduction_game(example_cnf):
    game = sg.reduce_sat(example_cnf).game
    sg.solve_otfur_antichain(game, sg.equality_order(game),
                             check_invariants=True)


def test_invariants_hold_on_random_games():
    for game in random_games(50):
        sg.solve_otfur_antichain(game, sg.equality_order(game),
                                 check_invariants=True)


def test_invariants_hold_with_real_orders():
    for spec in random_vector_specs(12, seed=23):
        game, order, _ = sg.gen_vector(spec)
        for waiting in ("fifo", "lifo"):
            sg.solve_otfur_antichain(game, order, waiting=waiting,
                                     check_invariants=True)


def test_invariant_probe_flags_winning_vertex_in_losing_antichain(nim8):
    game, order, _ = nim8
    state = sg.OtfurState(
        game, order,
        anti_maybe=sg.Antichain(order, "max"),
        anti_losing=sg.Antichain(order, "min"))
    state.anti_losing.insert("a0")  # a0 wins, so this state is corrupt
    violations = sg.invariant_probe(state, game, order)
    assert any(v.startswith("inv4") for v in violations)


def test_invariant_checking_rejects_implicit_games():
    game, order = sg.gen_nim_implicit(8)
    with pytest.raises(sg.CapabilityError):
        sg.solve_otfur_antichain(game, order, check_invariants=True)


# -- order-theoretic properties of the winning set ---------------------------

def test_win_set_downward_closed_on_nim_family():
    for n in range(5, 21):
        game, order, _ = sg.gen_nim(n)
        win = sg.solve_attractor(game).win
        for v, w in comparable_pairs(order, game):
            assert not (v in win and w not in win), (n, v, w)


def test_win_set_downward_closed_on_vector_games():
    for dims, bound in ((1, 3), (2, 2), (2, 3)):
        game, order, _ = sg.gen_vector(sg.VectorGameSpec(dims, bound))
        win = sg.solve_attractor(game).win
        for v, w in comparable_pairs(order, game):
            assert not (v in win and w not in win)


def test_attractor_rounds_respect_the_order_on_nim_family():
    # if the dominated vertex is attracted by round i, so is the dominant
    for n in range(5, 21):
        game, order, _ = sg.gen_nim(n)
        per_round = sg.solve_attractor(game, per_round=True).per_round
        pairs = list(comparable_pairs(order, game))
        for layer in per_round:
            for v, w in pairs:
                if w in layer:
                    assert v in layer, (n, v, w)


def test_nonclosed_pitfall_breaks_downward_closure(nonclosed):
    game, order = nonclosed
    win = sg.solve_attractor(game).win
    assert any(v in win and w not in win
               for v, w in comparable_pairs(order, game))


def random_vector_specs(count, seed=11):
    """Randomized monotone vector games: clamped-delta moves are monotone
    for any deltas, so the pointwise order is alternating by construction
    and these exercise the pruned solver with real (non-equality) orders."""
    rng = random.Random(seed)
    for _ in range(count):
        dims = rng.choice((1, 2))
        bound = rng.choice((1, 2, 3))
        def moves(prefix, how_many):
            out = []
            for k in range(how_many):
                deltas = tuple(rng.choice((-1, 0, 1)) for _ in range(dims))
                out.append((f"{prefix}{k}",
                            sg.delta_move_table(dims, bound, deltas)))
            return out
        threshold = rng.randrange(1, dims * bound + 2)
        yield sg.VectorGameSpec(
            dims, bound,
            a_moves=moves("am", rng.choice((1, 2, 3))),
            b_moves=moves("bm", rng.choice((1, 2, 3))),
            bad=lambda vec, t=threshold: sum(vec) >= t)


def test_agreement_on_random_monotone_vector_games():
    for spec in random_vector_specs(40):
        game, order, labeling = sg.gen_vector(spec)
        assert sg.derive_tba(order, game, labeling).tba_by_criterion
        expected = game.initial in sg.solve_attractor(game).win
        assert sg.solve_otfur(game).a_wins == expected
        for waiting in ("fifo", "lifo"):
            result = sg.solve_otfur_antichain(game, order, waiting=waiting)
            assert result.a_wins == expected, (spec, waiting)
            if result.a_wins:
                assert sg.is_order_winning_star(game, result.strategy, order)


def test_extracted_strategies_survive_the_enumeration_oracle():
    # exhaustively complete each extracted strategy in every
    # order-compatible way and check the completions one by one
    for spec in random_vector_specs(12, seed=5):
        game, order, _ = sg.gen_vector(spec)
        result = sg.solve_otfur_antichain(game, order)
        if not result.a_wins:
            continue
        try:
            completions = sg.enumerate_order_concretisations(
                game, result.strategy, order, limit=50_000)
        except sg.ResourceLimitError:
            continue
        assert completions
        for sigma in completions:
            assert sg.is_winning_total(game, sigma)


def test_plain_winning_star_implies_order_winning_on_all_fixtures():
    fixtures = [sg.gen_nim(8)[:2]]
    fixtures += [sg.gen_vector(sg.VectorGameSpec(d, b))[:2]
                 for d, b in ((1, 3), (2, 2))]
    for game, order in fixtures:
        win = sg.solve_attractor(game).win
        sigma = sg.strategy_from_win(game, win)
        star = sg.StarStrategy(sigma)
        assert sg.is_winning_star(game, star)
        assert sg.is_order_winning_star(game, star, order)


def test_agreement_under_lifo_on_random_games():
    for game in random_games(80):
        expected = game.initial in sg.solve_attractor(game).win
        assert sg.solve_otfur(game, waiting="lifo").a_wins == expected
        order = sg.equality_order(game)
        assert sg.solve_otfur_antichain(
            game, order, waiting="lifo").a_wins == expected


# -- pruning ----------------------------------------------------------------

def test_pruning_is_strict_on_nim50_under_lifo():
    game_plain, _ = sg.gen_nim_implicit(50)
    plain = sg.solve_otfur(game_plain, waiting="lifo")
    game_pruned, order = sg.gen_nim_implicit(50)
    pruned = sg.solve_otfur_antichain(game_pruned, order, waiting="lifo")
    assert pruned.a_wins == plain.a_wins
    assert pruned.stats.vertices_explored < plain.stats.vertices_explored
