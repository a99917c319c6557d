import pytest

import stargame as sg


def test_nim8_shape(nim8_game):
    assert len(nim8_game.vertices()) == 15
    assert nim8_game.edge_count() == 27
    assert {v for v in nim8_game.vertices() if nim8_game.is_bad(v)} \
        == {"a7", "b8"}
    assert nim8_game.initial == "a0"
    assert nim8_game.validate() == []


def test_nim8_includes_the_give_back_edges(nim8_game):
    assert nim8_game.succ("b7") == ["a6", "a5"]
    assert nim8_game.succ("b6") == ["a7", "a5"]


def test_nim_other_sizes_are_rule_faithful():
    game, _, _ = sg.gen_nim(9)
    assert game.succ("b8") == []  # no give-back edges outside n=8
    assert game.succ("b7") == ["a8"]


def test_nim_rejects_tiny_urns():
    with pytest.raises(sg.DegenerateSpecError):
        sg.gen_nim(2)


def test_nim_extra_edges_only_at_eight():
    with pytest.raises(sg.DegenerateSpecError):
        sg.gen_nim(9, extra_edges=True)
    game, _, _ = sg.gen_nim(8, extra_edges=False)
    assert game.succ("b7") == []


def test_nim_initial_winning_iff_count_not_one_mod_three():
    for n in range(5, 16):
        game, _, _ = sg.gen_nim(n)
        a_wins = game.initial in sg.solve_attractor(game).win
        assert a_wins == (n % 3 != 1), n


def test_nim8_order_is_tba(nim8):
    game, order, _ = nim8
    assert sg.check_tba_simulation(order, game) == []


def test_nim_implicit_solves_like_explicit():
    for n in (8, 9, 10):
        explicit, _, _ = sg.gen_nim(n)
        implicit, order = sg.gen_nim_implicit(n)
        expected = explicit.initial in sg.solve_attractor(explicit).win
        assert sg.solve_otfur(implicit).a_wins == expected
        implicit2, order2 = sg.gen_nim_implicit(n)
        assert sg.solve_otfur_antichain(implicit2, order2).a_wins == expected


def test_pitfall_games_validate(nonclosed, nontba):
    assert nonclosed[0].validate() == []
    assert nontba[0].validate() == []
    assert len(nonclosed[0].vertices()) == 8
    assert len(nontba[0].vertices()) == 5


def test_vector_game_spec_round(vector_small):
    game, order, labeling = vector_small
    assert game.validate() == []
    assert sg.check_partial_order(order, game) == []
    derivation = sg.derive_tba(order, game, labeling)
    assert derivation.tba_by_criterion
    assert sg.check_tba_simulation(order, game) == []


def test_vector_game_without_bad_states_is_all_winning():
    spec = sg.VectorGameSpec(2, 2, bad=lambda vec: False)
    game, _, _ = sg.gen_vector(spec)
    assert sg.solve_attractor(game).attractor == frozenset()


def test_vector_game_rejects_non_monotone_moves():
    table = sg.delta_move_table(1, 2, (1,))
    table[(2,)] = (0,)  # drop at the top: not monotone
    spec = sg.VectorGameSpec(1, 2, b_moves=[("weird", table)])
    with pytest.raises(sg.OrderError):
        sg.gen_vector(spec)


def test_vector_game_rejects_non_monotone_bad():
    spec = sg.VectorGameSpec(1, 2, bad=lambda vec: vec[0] == 1)
    with pytest.raises(sg.OrderError):
        sg.gen_vector(spec)


def test_random_games_are_reproducible():
    a = sg.gen_random(10, 0.4, seed=42)
    b = sg.gen_random(10, 0.4, seed=42)
    assert sg.emit_game(a) == sg.emit_game(b)
    c = sg.gen_random(10, 0.4, seed=43)
    assert sg.emit_game(a) != sg.emit_game(c)


def test_random_full_density_is_complete_bipartite():
    game = sg.gen_random(9, 1.0, seed=1)
    a_names = [v for v in game.vertices() if game.owner(v) is sg.Player.A]
    b_names = [v for v in game.vertices() if game.owner(v) is sg.Player.B]
    for v in a_names:
        assert game.succ(v) == b_names
    for v in b_names:
        assert game.succ(v) == a_names


def test_random_games_have_no_dead_ends_by_default():
    for seed in range(20):
        game = sg.gen_random(7, 0.05, seed=seed)
        assert all(game.succ(v) for v in game.vertices())


def test_random_games_can_keep_dead_ends():
    sparse = [sg.gen_random(7, 0.0, seed=s, allow_deadends=True)
              for s in range(3)]
    assert any(not game.succ(v)
               for game in sparse for v in game.vertices())


def test_vector_implicit_solves_like_explicit():
    for dims, bound in ((1, 3), (2, 2)):
        explicit, order, _ = sg.gen_vector(sg.VectorGameSpec(dims, bound))
        expected = explicit.initial in sg.solve_attractor(explicit).win
        implicit, order_i = sg.gen_vector_implicit(
            sg.VectorGameSpec(dims, bound))
        assert sg.solve_otfur_antichain(implicit, order_i).a_wins == expected


def test_random_games_mark_bad_b_vertices_only():
    for seed in range(10):
        game = sg.gen_random(8, 0.5, seed=seed)
        bads = [v for v in game.vertices() if game.is_bad(v)]
        assert bads
        assert all(game.owner(v) is sg.Player.B for v in bads)
