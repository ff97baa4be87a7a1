"""Tests for representation verification, search and the .rep format."""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from src.models.analysis import Representation
from src.models.errors import ParseError, RepresentationError
from src.models.hypergraph import Hypergraph
from src.models.relations import Relation, RelationKind
from src.services.builders import build_qperm
from src.services.classical import enumerate_solutions
from src.services.reps import (
    classical_to_representation,
    commutator_norm,
    direct_sum,
    edge_indices,
    gradient,
    objective,
    parse_rep,
    search_representation,
    serialize_rep,
    verify_representation,
)
from src.services.transforms import impose_relation
from tests.corpus import hypergraph_corpus

CAP = 10**6


def exact(rows: list[list[int]]) -> np.ndarray:
    return np.array([[Fraction(x) for x in row] for row in rows], dtype=object)


def qperm3_rep() -> Representation:
    """P_ij = e_k e_k^T with k = (j - i) mod 3: the regular permutation representation."""
    matrices = {}
    for i in range(1, 4):
        for j in range(1, 4):
            k = (j - i) % 3
            matrix = exact([[0] * 3 for _ in range(3)])
            matrix[k, k] = Fraction(1)
            matrices[f"p_{i}_{j}"] = matrix
    return Representation(3, matrices)


class TestVerifyRepresentation:
    @pytest.mark.parametrize("n", [3, 4])
    def test_diagonal_rep_of_single_edge(self, n):
        h = Hypergraph.from_edges([[f"v{i}" for i in range(n)]])
        solutions = enumerate_solutions(h, CAP)
        assert len(solutions) == n
        rep = classical_to_representation(h, solutions)
        assert rep.exact
        assert verify_representation(h, rep) == []

    def test_qperm3_exact(self):
        assert verify_representation(build_qperm(3), qperm3_rep()) == []

    def test_not_idempotent(self, single_edge):
        rep = Representation(1, {"a": exact([[2]]), "b": exact([[0]]), "c": exact([[-1]])})
        violations = verify_representation(single_edge, rep)
        assert violations == ["a: not idempotent (exact mismatch)", "c: not idempotent (exact mismatch)"]

    def test_edge_sum(self, single_edge):
        zero = exact([[0]])
        rep = Representation(1, {"a": zero, "b": zero, "c": zero})
        assert verify_representation(single_edge, rep) == [
            "edge 0 [a b c]: does not sum to the identity (exact mismatch)"
        ]

    def test_numeric_within_tolerance(self):
        h = Hypergraph.from_edges([["a", "b"]])
        theta = 0.7
        vector = np.array([np.cos(theta), np.sin(theta)])
        a = np.outer(vector, vector)
        rep = Representation(2, {"a": a + 1e-12, "b": np.eye(2) - a})
        assert verify_representation(h, rep, tol=1e-9) == []
        assert verify_representation(h, rep, tol=1e-13)

    def test_not_symmetric(self):
        h = Hypergraph.from_edges([["a", "b"]])
        a = np.array([[1.0, 1.0], [0.0, 0.0]])
        rep = Representation(2, {"a": a, "b": np.eye(2) - a})
        assert any("a: not symmetric" in v for v in verify_representation(h, rep))

    def test_empty_edge_never_verifies(self, empty_edge):
        rep = Representation(1, {"a": exact([[1]]), "b": exact([[0]])})
        assert verify_representation(empty_edge, rep) == [
            "edge 0 [(empty)]: does not sum to the identity (exact mismatch)"
        ]

    def test_shape_mismatch(self, single_edge):
        rep = Representation(2, {"a": np.eye(2), "b": np.eye(2), "c": np.eye(3)})
        with pytest.raises(RepresentationError, match="shape"):
            verify_representation(single_edge, rep)


class TestConstructions:
    def test_classical_needs_an_assignment(self, single_edge):
        with pytest.raises(RepresentationError, match="at least one"):
            classical_to_representation(single_edge, [])

    def test_direct_sum_of_verified_reps(self, qperm2):
        diagonal = classical_to_representation(qperm2, enumerate_solutions(qperm2, CAP))
        total = direct_sum([diagonal, diagonal])
        assert total.dimension == 4
        assert total.exact
        assert verify_representation(qperm2, total) == []

    def test_direct_sum_mixed_is_numeric(self, single_edge):
        diagonal = classical_to_representation(single_edge, enumerate_solutions(single_edge, CAP))
        numeric = Representation(1, {"a": np.ones((1, 1)), "b": np.zeros((1, 1)), "c": np.zeros((1, 1))})
        total = direct_sum([diagonal, numeric])
        assert not total.exact
        assert verify_representation(single_edge, total) == []

    def test_direct_sum_vertex_mismatch(self, single_edge):
        rep = Representation(1, {"a": np.ones((1, 1))})
        other = Representation(1, {"b": np.ones((1, 1))})
        with pytest.raises(RepresentationError, match="different vertices"):
            direct_sum([rep, other])
        with pytest.raises(RepresentationError, match="no representations"):
            direct_sum([])

    def test_commutator_norm(self):
        a = np.array([[1.0, 0.0], [0.0, 0.0]])
        b = np.full((2, 2), 0.5)
        assert commutator_norm(a, a) == 0.0
        assert commutator_norm(a, b) == pytest.approx(0.5)


class TestGradient:
    @pytest.mark.parametrize("index", range(20))
    def test_matches_central_differences(self, index):
        rng = np.random.default_rng([7, index])
        h = hypergraph_corpus(1, seed=index, max_vertices=5, max_edges=3)[0]
        d = int(rng.integers(1, 5))
        stack = rng.standard_normal((h.num_vertices, d, d))
        edges = edge_indices(h)
        analytic = gradient(stack, edges)

        step = 1e-6
        numeric = np.zeros_like(stack)
        for position in np.ndindex(stack.shape):
            forward, backward = stack.copy(), stack.copy()
            forward[position] += step
            backward[position] -= step
            numeric[position] = (objective(forward, edges) - objective(backward, edges)) / (2 * step)
        error = np.linalg.norm(numeric - analytic) / max(np.linalg.norm(analytic), 1e-12)
        assert error <= 1e-5

    def test_zero_at_a_representation(self, qperm2):
        rep = classical_to_representation(qperm2, enumerate_solutions(qperm2, CAP))
        stack = np.array([rep.matrix(v).astype(float) for v in qperm2.vertices])
        edges = edge_indices(qperm2)
        assert objective(stack, edges) == 0.0
        assert not gradient(stack, edges).any()


class TestSearch:
    def test_single_edge(self, single_edge):
        result = search_representation(single_edge, 3, seed=0, show_progress=False)
        assert result.found
        assert result.objective < 1e-18
        assert verify_representation(single_edge, result.rep) == []

    def test_qperm2_commutes(self, qperm2):
        result = search_representation(qperm2, 2, seed=0, show_progress=False)
        assert result.found
        matrices = [result.rep.matrix(v) for v in qperm2.vertices]
        for a, b in combinations(matrices, 2):
            assert commutator_norm(a, b) <= 1e-8

    def test_triangle_not_found(self, triangle):
        result = search_representation(triangle, 2, seed=0, starts=2, budget=200, show_progress=False)
        assert not result.found
        assert result.rep is None
        assert result.objective > 1e-3

    def test_deterministic_for_a_seed(self, single_edge):
        first = search_representation(single_edge, 2, seed=5, starts=3, budget=300, show_progress=False)
        second = search_representation(single_edge, 2, seed=5, starts=3, budget=300, show_progress=False)
        assert (first.found, first.start, first.objective) == (second.found, second.start, second.objective)

    def test_commute_gadget_forces_commutation(self):
        h = Hypergraph.from_edges([["a", "x"], ["b", "y"]])
        gadget = impose_relation(h, Relation(RelationKind.COMMUTE, "a", "b"))
        result = search_representation(gadget, 2, seed=0, show_progress=False)
        if not result.found:
            pytest.skip("search budget ran out before a representation was found")
        assert verify_representation(gadget, result.rep) == []
        assert commutator_norm(result.rep.matrix("a"), result.rep.matrix("b")) <= 1e-8

    def test_invalid_dimension(self, single_edge):
        with pytest.raises(RepresentationError, match="at least 1"):
            search_representation(single_edge, 0)
        with pytest.raises(RepresentationError, match="at least one start"):
            search_representation(single_edge, 2, starts=0)


class TestRepFormat:
    def test_exact_round_trip(self):
        rep = qperm3_rep()
        parsed = parse_rep(serialize_rep(rep))
        assert parsed.exact
        assert parsed.dimension == 3
        assert all((parsed.matrix(v) == rep.matrix(v)).all() for v in rep.matrices)

    def test_fractions_are_exact(self):
        rep = parse_rep("dim 2\nmat a\n1/2 1/2\n1/2 1/2\nmat b\n1/2 -1/2\n-1/2 1/2\n")
        assert rep.exact
        assert rep.matrix("a")[0, 1] == Fraction(1, 2)
        assert verify_representation(Hypergraph.from_edges([["a", "b"]]), rep) == []

    def test_decimal_makes_numeric(self):
        rep = parse_rep("dim 1\nmat a\n1.0\nmat b\n0\n")
        assert not rep.exact
        assert rep.matrix("b").dtype == float

    def test_numeric_round_trip(self):
        rep = Representation(1, {"a": np.array([[0.1]])})
        assert serialize_rep(rep) == "dim 1\nmat a\n0.1\n"
        assert parse_rep(serialize_rep(rep)).matrix("a")[0, 0] == 0.1

    def test_comments_ignored(self):
        rep = parse_rep("# identity\ndim 1\nmat a  # only vertex\n1\n")
        assert rep.matrix("a")[0, 0] == 1

    @pytest.mark.parametrize(
        "text, message",
        [
            ("", "empty representation file"),
            ("dim 0\n", "dim <positive integer>"),
            ("dim 1\nmatrix a\n1\n", "mat <vertex>"),
            ("dim 2\nmat a\n1 0\n", "needs 2 rows"),
            ("dim 2\nmat a\n1 0\n0\n", "expected 2 entries, got 1"),
            ("dim 1\nmat a\nx\n", "bad matrix entry 'x'"),
            ("dim 1\nmat a\n1\nmat a\n0\n", "given twice"),
        ],
    )
    def test_errors(self, text, message):
        with pytest.raises(ParseError, match=message):
            parse_rep(text)

    def test_error_location(self):
        with pytest.raises(ParseError, match="line 3, column 1"):
            parse_rep("dim 1\nmat a\nx\n")
