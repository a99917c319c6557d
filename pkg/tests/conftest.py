import pytest

import stargame as sg

# The three strategy tables of the 8-ball urn game: the full winning
# strategy, the minimal plain star-strategy, and the order-backed
# two-entry star-strategy.
SIGMA_FULL = {"a0": "b1", "a2": "b4", "a3": "b4", "a4": "b5",
              "a5": "b7", "a6": "b7", "a7": "b8"}
STAR_FIVE = {"a0": "b1", "a2": "b4", "a3": "b4", "a5": "b7", "a6": "b7"}
STAR_TWO = {"a5": "b7", "a6": "b7"}


@pytest.fixture(scope="session")
def nim8():
    return sg.gen_nim(8)


@pytest.fixture(scope="session")
def nim8_game(nim8):
    return nim8[0]


@pytest.fixture(scope="session")
def nim8_order(nim8):
    return nim8[1]


@pytest.fixture(scope="session")
def nonclosed():
    return sg.gen_nonclosed_sim_game()


@pytest.fixture(scope="session")
def nontba():
    return sg.gen_nontba_sim_game()


@pytest.fixture(scope="session")
def vector_small():
    return sg.gen_vector(sg.VectorGameSpec(dims=2, bound=3))


@pytest.fixture(scope="session")
def example_cnf():
    # (x1 or x2 or not x3) and (not x1 or x2 or x3); k = 8
    return sg.CnfFormula(3, ((1, 2, -3), (-1, 2, 3)))


def random_games(count, max_vertices=12, allow_deadends=False):
    """Deterministic family of small random games for oracle runs."""
    for i in range(count):
        vertices = 2 + i % (max_vertices - 1)
        density = 0.15 + (i * 7 % 70) / 100
        yield sg.gen_random(vertices, density, seed=i,
                            allow_deadends=allow_deadends)
