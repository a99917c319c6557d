import pytest

import stargame as sg
from conftest import SIGMA_FULL, STAR_FIVE, STAR_TWO, random_games


def test_restrict_to_two_states(nim8_game):
    s = sg.restrict(SIGMA_FULL, {"a5", "a6"})
    assert s.support == STAR_TWO
    assert s.size == 2


def test_restrict_to_nothing():
    assert sg.restrict(SIGMA_FULL, set()).support == {}


def test_restrict_to_everything_keeps_sigma(nim8_game):
    s = sg.restrict(SIGMA_FULL, SIGMA_FULL.keys())
    assert s.support == SIGMA_FULL
    assert s.size == 7


def test_full_strategy_wins(nim8_game):
    assert sg.is_winning_total(nim8_game, SIGMA_FULL)


def test_strategy_through_losing_state_loses(nim8_game):
    sigma = dict(SIGMA_FULL)
    sigma["a0"] = "b2"  # b2 is losing (count 2, residue 2)
    assert "b2" in sg.solve_attractor(nim8_game).attractor
    assert not sg.is_winning_total(nim8_game, sigma)


def test_any_strategy_wins_without_bad_states():
    g = sg.SafetyGame("safe")
    g.add_vertex("a0", sg.Player.A)
    g.add_vertex("b0", sg.Player.B)
    g.add_edge("a0", "b0")
    g.add_edge("b0", "a0")
    g.set_initial("a0")
    assert sg.is_winning_total(g, {"a0": "b0"})


def test_missing_reachable_decision_raises(nim8_game):
    with pytest.raises(sg.IncompleteStrategyError):
        sg.is_winning_total(nim8_game, {"a0": "b1"})


def test_five_entry_star_strategy_wins(nim8_game):
    assert sg.is_winning_star(nim8_game, sg.StarStrategy(STAR_FIVE))


def test_two_entry_star_strategy_alone_loses(nim8_game):
    # an unconstrained completion may send a0 to the losing b2
    assert not sg.is_winning_star(nim8_game, sg.StarStrategy(STAR_TWO))


def test_empty_star_strategy_loses_when_a_losing_move_exists(nim8_game):
    assert not sg.is_winning_star(nim8_game, sg.StarStrategy({}))


def test_allowed_successors_under_cover(nim8):
    game, order, _ = nim8
    s = sg.StarStrategy(STAR_TWO)
    assert sg.order_allowed_successors(game, s, order, "a0") == ["b1"]


def test_allowed_successors_at_support_vertex(nim8):
    game, order, _ = nim8
    s = sg.StarStrategy(STAR_TWO)
    assert sg.order_allowed_successors(game, s, order, "a5") == ["b7"]


def test_allowed_successors_outside_cover(nim8):
    game, order, _ = nim8
    s = sg.StarStrategy(STAR_TWO)
    # a4 (residue 1) is dominated by neither a5 nor a6
    assert sg.order_allowed_successors(game, s, order, "a4") == game.succ("a4")


def test_two_entry_strategy_is_order_winning(nim8):
    game, order, _ = nim8
    assert sg.is_order_winning_star(game, sg.StarStrategy(STAR_TWO), order)


def test_nontba_strategy_is_refuted(nontba):
    game, order = nontba
    report = sg.check_order_winning(game, sg.StarStrategy({"v": "vpp"}), order)
    assert not report.winning
    assert report.no_completion_at == ("vp",)


def test_equality_order_reduces_to_plain_winning():
    for game in random_games(15):
        order = sg.equality_order(game)
        win = sg.solve_attractor(game).win
        sigma = sg.strategy_from_win(game, win)
        for support in ({}, sigma):
            s = sg.StarStrategy(dict(support))
            assert sg.is_order_winning_star(game, s, order) \
                == sg.is_winning_star(game, s)


def test_enumeration_cross_validates_reachability(nim8):
    game, order, _ = nim8
    s = sg.StarStrategy(STAR_TWO)
    completions = sg.enumerate_order_concretisations(game, s, order)
    assert completions  # a4 is unconstrained, so there are several
    assert all(sg.is_winning_total(game, sigma) for sigma in completions)


def test_enumeration_of_total_strategy_is_itself(nim8):
    game, order, _ = nim8
    s = sg.StarStrategy(SIGMA_FULL)
    assert sg.enumerate_order_concretisations(game, s, order) == [SIGMA_FULL]


def test_enumeration_of_empty_star_with_equality_is_all_strategies():
    g = sg.gen_random(6, 0.8, seed=5)
    order = sg.equality_order(g)
    expected = 1
    for v in g.vertices():
        if g.owner(v) is sg.Player.A and g.succ(v):
            expected *= len(g.succ(v))
    completions = sg.enumerate_order_concretisations(
        g, sg.StarStrategy({}), order)
    assert len(completions) == expected


def test_enumeration_limit_is_enforced(nim8):
    game, order, _ = nim8
    with pytest.raises(sg.ResourceLimitError):
        sg.enumerate_order_concretisations(
            game, sg.StarStrategy({}), order, limit=1)


def test_enumeration_agrees_with_reachability_on_random_games():
    for game in random_games(10, max_vertices=8):
        order = sg.equality_order(game)
        s = sg.StarStrategy({})
        try:
            completions = sg.enumerate_order_concretisations(
                game, s, order, limit=4000)
        except sg.ResourceLimitError:
            continue
        all_win = completions and all(
            sg.is_winning_total(game, sigma) for sigma in completions)
        assert sg.check_order_winning(game, s, order).winning == bool(all_win)


def test_cover_conditions_hold_for_the_two_state_cover(nim8):
    game, order, _ = nim8
    check = sg.check_cover_conditions(game, SIGMA_FULL, {"a5", "a6"}, order)
    assert check.ok
    assert sg.is_order_winning_star(
        game, sg.restrict(SIGMA_FULL, {"a5", "a6"}), order)


def test_cover_conditions_name_the_uncovered_initial(nim8):
    game, order, _ = nim8
    check = sg.check_cover_conditions(game, SIGMA_FULL, {"a5"}, order)
    assert not check.ok
    assert "initial-covered" in check.failed


def test_reachable_antichain_is_a_valid_cover(nim8):
    game, order, _ = nim8
    restricted = game.restrict_by_strategy(SIGMA_FULL)
    reached_a = {v for v in restricted.reach(game.initial)
                 if game.owner(v) is sg.Player.A}
    cover = set(sg.max_antichain(sorted(reached_a), order).elements)
    assert sg.check_cover_conditions(game, SIGMA_FULL, cover, order).ok


def test_reachable_antichain_strategy_reproduces_the_two_entry_table(nim8):
    game, order, _ = nim8
    s = sg.reachable_antichain_strategy(game, SIGMA_FULL, order)
    assert s.support == STAR_TWO


def test_reachable_antichain_strategy_with_equality_keeps_all_reached(nim8_game):
    order = sg.equality_order(nim8_game)
    s = sg.reachable_antichain_strategy(nim8_game, SIGMA_FULL, order)
    restricted = nim8_game.restrict_by_strategy(SIGMA_FULL)
    reached_a = {v for v in restricted.reach("a0")
                 if nim8_game.owner(v) is sg.Player.A}
    assert set(s.support) == reached_a


def test_reachable_antichain_strategy_on_vector_games():
    for dims, bound in ((1, 3), (2, 2), (2, 3)):
        game, order, _ = sg.gen_vector(sg.VectorGameSpec(dims, bound))
        win = sg.solve_attractor(game).win
        assert game.initial in win
        sigma = sg.strategy_from_win(game, win)
        s = sg.reachable_antichain_strategy(game, sigma, order)
        assert sg.is_order_winning_star(game, s, order)
        reached = {v for v in
                   game.restrict_by_strategy(sigma).reach(game.initial)
                   if game.owner(v) is sg.Player.A}
        assert s.size <= len(reached)


def test_reachable_antichain_strategy_requires_winning_input(nim8):
    game, order, _ = nim8
    sigma = dict(SIGMA_FULL)
    sigma["a0"] = "b2"
    with pytest.raises(sg.PreconditionError):
        sg.reachable_antichain_strategy(game, sigma, order)


def test_plain_winning_implies_order_winning(nim8):
    game, order, _ = nim8
    for support in (STAR_FIVE, SIGMA_FULL):
        s = sg.StarStrategy(dict(support))
        assert sg.is_winning_star(game, s)
        assert sg.is_order_winning_star(game, s, order)


def test_full_restriction_of_winning_strategy_wins(nim8_game):
    s = sg.restrict(SIGMA_FULL, SIGMA_FULL.keys())
    assert sg.is_winning_star(nim8_game, s)


def test_strategy_file_round_trip():
    s = sg.StarStrategy(STAR_TWO)
    text = sg.emit_strategy(s)
    assert text == "map a5 b7\nmap a6 b7\n"
    assert sg.parse_strategy(text).support == s.support


def test_strategy_file_rejects_duplicates():
    with pytest.raises(sg.ParseError):
        sg.parse_strategy("map a5 b7\nmap a5 b6\n")
