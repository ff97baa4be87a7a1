"""Tests for synchronous games and their hypergraph translations."""

import numpy as np
import pytest

from src.models.analysis import CapExceeded
from src.models.errors import GameError, ParseError
from src.models.game import SynchronousGame
from src.models.hypergraph import FRESH_PREFIX, Hypergraph
from src.services.classical import enumerate_solutions
from src.services.games import (
    game_to_hypergraph,
    hypergraph_to_game,
    parse_game,
    perfect_deterministic_strategies,
    serialize_game,
    validate_game,
)
from src.services.transforms import three_uniform
from tests.corpus import hypergraph_corpus, proper_colourings, random_game

CAP = 10**6
SMALL_GRAPHS = {
    "K2": (2, [(1, 2)]),
    "P3": (3, [(1, 2), (2, 3)]),
    "K3": (3, [(1, 2), (1, 3), (2, 3)]),
    "P4": (4, [(1, 2), (2, 3), (3, 4)]),
    "C4": (4, [(1, 2), (2, 3), (3, 4), (1, 4)]),
    "K4": (4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
}


def sync_only(inputs: tuple[str, ...], outputs: tuple[str, ...]) -> SynchronousGame:
    return SynchronousGame(inputs, outputs).with_synchronicity()


def colouring_game(n: int, arcs: list[tuple[int, int]], colours: tuple[str, ...]) -> SynchronousGame:
    inputs = tuple(str(i) for i in range(1, n + 1))
    clashes = {
        (str(x), str(y), c, c)
        for x, y in arcs
        for c in colours
    } | {(str(y), str(x), c, c) for x, y in arcs for c in colours}
    return SynchronousGame(inputs, colours, frozenset(clashes)).with_synchronicity()


class TestValidateGame:
    def test_synchronicity_only(self):
        assert validate_game(sync_only(("x",), ("0", "1"))) == []

    def test_missing_quadruple(self):
        game = SynchronousGame(("x",), ("0", "1"), frozenset({("x", "x", "1", "0")}))
        (violation,) = validate_game(game)
        assert violation.quadruple == ("x", "x", "0", "1")

    def test_forbidden_equal_answers(self):
        game = SynchronousGame(("x",), ("0",), frozenset({("x", "x", "0", "0")}))
        assert "equal answers" in validate_game(game)[0].reason

    def test_unknown_names_are_rejected(self):
        with pytest.raises(GameError, match="unknown input"):
            SynchronousGame(("x",), ("0",), frozenset({("y", "x", "0", "0")}))


class TestGameToHypergraph:
    def test_trivial_game(self):
        h = game_to_hypergraph(sync_only(("x",), ("0", "1")))
        assert len(enumerate_solutions(h, CAP)) == 2

    def test_colouring_triangle_with_two_colours(self):
        game = colouring_game(3, [(1, 2), (1, 3), (2, 3)], ("r", "g"))
        assert enumerate_solutions(game_to_hypergraph(game), CAP) == []

    def test_colouring_triangle_with_three_colours(self):
        game = colouring_game(3, [(1, 2), (1, 3), (2, 3)], ("r", "g", "b"))
        assert len(enumerate_solutions(game_to_hypergraph(game), CAP)) == 6

    def test_mirrored_quadruples_share_a_gadget(self):
        base = sync_only(("x", "y"), ("0",))
        game = SynchronousGame(
            base.inputs, base.outputs,
            base.forbidden | {("x", "y", "0", "0"), ("y", "x", "0", "0")},
        )
        h = game_to_hypergraph(game)
        assert sum(v.startswith(FRESH_PREFIX) for v in h.vertices) == 1

    def test_rejects_asynchronous_game(self):
        with pytest.raises(GameError, match="not synchronous"):
            game_to_hypergraph(SynchronousGame(("x",), ("0", "1")))


class TestHypergraphToGame:
    def test_single_edge(self, single_edge):
        game = hypergraph_to_game(single_edge)
        assert game.inputs == ("e1",)
        assert game.outputs == ("1", "2", "3")
        assert game.forbidden == {("e1", "e1", a, b) for a in "123" for b in "123" if a != b}
        assert len(perfect_deterministic_strategies(game)) == 3

    def test_shared_vertex_is_chosen_on_both_or_neither(self):
        h = Hypergraph.from_edges([["t", "u", "v"], ["u", "w", "z"]])
        game = hypergraph_to_game(h)
        strategies = perfect_deterministic_strategies(game)
        assert len(strategies) == 5
        for strategy in strategies:
            # u is output 2 of e1 {t, u, v} and output 1 of e2 {u, w, z}
            assert (strategy.answer("e1") == "2") == (strategy.answer("e2") == "1")

    def test_triangle_has_no_strategy(self, triangle):
        game = hypergraph_to_game(triangle)
        assert perfect_deterministic_strategies(game, propagate=True) == []

    @pytest.mark.parametrize("h", hypergraph_corpus(50, seed=0))
    def test_round_trip_counts(self, h):
        game = hypergraph_to_game(h)
        assert validate_game(game) == []
        assert all((y, x, b, a) in game.forbidden for x, y, a, b in game.forbidden)
        strategies = perfect_deterministic_strategies(game, propagate=True)
        solutions = enumerate_solutions(h, CAP)
        assert len(strategies) == len(enumerate_solutions(three_uniform(h), CAP)) == len(solutions)


class TestPerfectStrategies:
    def test_synchronicity_only(self):
        assert len(perfect_deterministic_strategies(sync_only(("x", "y"), ("0", "1")))) == 4

    def test_lexicographic_order(self):
        strategies = perfect_deterministic_strategies(sync_only(("x", "y"), ("0", "1")))
        assert [str(s) for s in strategies] == ["x=0 y=0", "x=0 y=1", "x=1 y=0", "x=1 y=1"]

    def test_strategy_cap(self):
        result = perfect_deterministic_strategies(sync_only(("x", "y"), ("0", "1")), cap=2)
        assert isinstance(result, CapExceeded)

    def test_space_cap_without_propagation(self):
        game = sync_only(tuple(f"x{i}" for i in range(6)), ("0", "1", "2"))
        result = perfect_deterministic_strategies(game, cap=100, propagate=False)
        assert result == CapExceeded(100, "strategy space")

    @pytest.mark.parametrize("colours", [2, 3])
    @pytest.mark.parametrize("name", sorted(SMALL_GRAPHS))
    def test_propagation_agrees_with_brute_force_on_colourings(self, name, colours):
        n, arcs = SMALL_GRAPHS[name]
        game = colouring_game(n, arcs, tuple(str(c) for c in range(colours)))
        brute = perfect_deterministic_strategies(game, propagate=False)
        assert perfect_deterministic_strategies(game, propagate=True) == brute
        zero_based = frozenset((x - 1, y - 1) for x, y in arcs)
        assert len(brute) == proper_colourings(n, zero_based, colours)

    @pytest.mark.parametrize("index", range(20))
    def test_propagation_agrees_with_brute_force_on_random_games(self, index):
        game = random_game(np.random.default_rng([13, index]))
        assert len(game.outputs) ** len(game.inputs) <= 81
        brute = perfect_deterministic_strategies(game, propagate=False)
        assert perfect_deterministic_strategies(game, propagate=True) == brute

    @pytest.mark.parametrize(
        "edges",
        [[["a", "b", "c"]], [["a", "b", "c"], ["c", "d", "e"]], [["a", "b", "c"], ["c", "d", "e"], ["e", "f", "a"]]],
    )
    def test_propagation_agrees_with_brute_force_on_linear_hypergraphs(self, edges):
        h = Hypergraph.from_edges(edges)
        game = hypergraph_to_game(h)
        brute = perfect_deterministic_strategies(game, propagate=False)
        assert perfect_deterministic_strategies(game, propagate=True) == brute
        assert len(brute) == len(enumerate_solutions(h, CAP))


class TestGameFormat:
    def test_parse(self):
        game = parse_game("inputs x y\noutputs 0 1\nforbid x y 0 1\n")
        assert game.inputs == ("x", "y")
        assert game.forbidden == {("x", "y", "0", "1")}

    def test_auto_sync(self):
        game = parse_game("inputs x\noutputs 0 1\n", auto_sync=True)
        assert validate_game(game) == []

    def test_forbid_before_declarations(self):
        with pytest.raises(ParseError, match="before"):
            parse_game("forbid x y 0 1\n")

    def test_unknown_name(self):
        with pytest.raises(ParseError, match="unknown name 'z'") as excinfo:
            parse_game("inputs x\noutputs 0\nforbid x z 0 0\n")
        assert (excinfo.value.line, excinfo.value.column) == (3, 10)

    def test_serialize_round_trip(self, single_edge):
        game = hypergraph_to_game(single_edge)
        assert parse_game(serialize_game(game)) == game
