"""Tests for exact 1-in-3 satisfiability."""

import pytest

from src.models.analysis import Assignment, CapExceeded
from src.models.hypergraph import Hypergraph
from src.services.builders import build_qperm
from src.services.classical import (
    enumerate_solutions,
    is_solution,
    project,
    solution_key,
    solve_exact_one,
)
from src.services.transforms import three_uniform
from tests.corpus import brute_force_solutions, hypergraph_corpus

CAP = 10**6


class TestSolveExactOne:
    def test_single_edge_picks_first_vertex(self, single_edge):
        assert str(solve_exact_one(single_edge)) == "a=1 b=0 c=0"

    def test_triangle_is_unsat(self, triangle):
        assert solve_exact_one(triangle) is None

    def test_empty_edge_is_unsat(self, empty_edge):
        assert solve_exact_one(empty_edge) is None

    def test_solution_is_valid(self):
        h = build_qperm(4)
        assert is_solution(h, solve_exact_one(h))


class TestEnumerateSolutions:
    def test_qperm3(self):
        assert len(enumerate_solutions(build_qperm(3), CAP)) == 6

    def test_zero_gadget(self, zero_gadget):
        (solution,) = enumerate_solutions(zero_gadget, CAP)
        assert solution["c"] and not solution["v"]

    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_single_edge(self, n):
        h = Hypergraph.from_edges([[f"x{i}" for i in range(n)]])
        assert len(enumerate_solutions(h, CAP)) == n

    def test_lexicographic_order(self):
        h = Hypergraph.from_edges([["a", "b"], ["c", "d"]])
        assert [str(s) for s in enumerate_solutions(h, CAP)] == [
            "a=1 b=0 c=1 d=0",
            "a=1 b=0 c=0 d=1",
            "a=0 b=1 c=1 d=0",
            "a=0 b=1 c=0 d=1",
        ]

    def test_cap(self):
        result = enumerate_solutions(build_qperm(3), cap=5)
        assert result == CapExceeded(5)
        assert str(result) == "CAP solutions > 5"

    def test_cap_is_inclusive(self):
        assert len(enumerate_solutions(build_qperm(3), cap=6)) == 6

    @pytest.mark.parametrize("h", hypergraph_corpus(60, seed=5, max_vertices=10, max_edges=6))
    def test_agrees_with_brute_force(self, h):
        expected = sorted(
            (Assignment(tuple((v, s[v]) for v in h.vertices)) for s in brute_force_solutions(h)),
            key=solution_key,
        )
        assert enumerate_solutions(h, CAP) == expected
        assert (solve_exact_one(h) is None) == (not expected)


class TestProject:
    def test_drops_gadget_vertices(self):
        padded = three_uniform(Hypergraph.from_edges([["a", "b"]]))
        (solution,) = enumerate_solutions(padded, CAP)[:1]
        assert [v for v, _ in project(solution).truth] == ["a", "b"]

    def test_is_solution_needs_every_vertex(self, single_edge):
        partial = Assignment((("a", True), ("b", False)))
        assert not is_solution(single_edge, partial)
