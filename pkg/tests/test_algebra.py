"""Tests for *-polynomials, rewriting modulo the relations and evaluation."""

from fractions import Fraction

import numpy as np
import pytest

from src.models.analysis import Representation
from src.models.errors import HypergraphError, ParseError, RepresentationError
from src.models.hypergraph import Hypergraph
from src.models.polynomial import StarPolynomial
from src.services.algebra import (
    designated_substitutions,
    evaluate,
    normalize,
    parse_polynomial,
    reduce_polynomial,
    reduce_word,
    segment_word,
)
from src.services.classical import enumerate_solutions
from src.services.reps import classical_to_representation
from tests.corpus import satisfiable_corpus

P = StarPolynomial.generator


def free_pair() -> Hypergraph:
    return Hypergraph.from_edges([["a", "x"], ["b", "y"]])


class TestStarPolynomial:
    def test_repeats_collapse(self):
        assert P("a") * P("a") == P("a")

    def test_adjoint_reverses_words(self):
        p = StarPolynomial.from_terms({("a", "b"): 2})
        assert p.adjoint() == StarPolynomial.from_terms({("b", "a"): 2})

    def test_cancellation(self):
        assert (P("a") - P("a")).is_zero()

    def test_str(self):
        p = 1 - P("a") + Fraction(3, 2) * P("b") * P("c")
        assert str(p) == "1 - a + 3/2*b.c"


class TestReduceWord:
    def test_idempotency(self):
        assert reduce_word(free_pair(), ("a", "a")) == ("a",)

    def test_orthogonality(self):
        assert reduce_word(free_pair(), ("a", "x")) is None

    def test_irreducible(self):
        assert reduce_word(free_pair(), ("a", "b", "a")) == ("a", "b", "a")

    def test_collapse_exposes_orthogonal_letters(self):
        assert reduce_word(free_pair(), ("a", "b", "b", "y")) is None

    def test_unknown_letter(self):
        with pytest.raises(HypergraphError, match="unknown vertex"):
            reduce_word(free_pair(), ("q",))

    def test_idempotent_and_shortening(self):
        h = free_pair()
        rng = np.random.default_rng(0)
        letters = list(h.vertices)
        for _ in range(200):
            word = tuple(rng.choice(letters, size=int(rng.integers(0, 7))).tolist())
            reduced = reduce_word(h, word)
            if reduced is not None:
                assert len(reduced) <= len(word)
                assert reduce_word(h, reduced) == reduced


class TestNormalize:
    def test_single_edge_substitution(self, single_edge):
        assert designated_substitutions(single_edge) == {"c": ("a", "b")}
        assert normalize(single_edge, P("c")) == 1 - P("a") - P("b")

    def test_qperm2_diagonal(self, qperm2):
        assert normalize(qperm2, P("p_2_2") - P("p_1_1")).is_zero()

    def test_triangle_is_not_claimed_complete(self, triangle):
        # 2a - 1 is zero in the algebra, the rewriting is only sound
        result = normalize(triangle, 2 * P("a") - 1)
        assert result == normalize(triangle, result)

    def test_empty_edge_makes_everything_zero(self, empty_edge):
        assert normalize(empty_edge, P("a") + 1).is_zero()

    def test_reduce_polynomial_drops_zero_words(self, single_edge):
        assert reduce_polynomial(single_edge, P("a") * P("b") + P("c")) == P("c")

    @pytest.mark.parametrize("index", range(10))
    def test_sound_on_diagonal_representations(self, index):
        h = satisfiable_corpus(10, seed=2)[index]
        rep = classical_to_representation(h, enumerate_solutions(h, 10**6))
        rng = np.random.default_rng(index)
        letters = list(h.vertices)
        for _ in range(10):
            terms = {
                tuple(rng.choice(letters, size=int(rng.integers(0, 4))).tolist()):
                    Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
                for _ in range(4)
            }
            p = StarPolynomial.from_terms(terms)
            assert (evaluate(p, rep) == evaluate(normalize(h, p), rep)).all()


class TestEvaluate:
    def test_generator_on_diagonal_rep(self, single_edge):
        rep = classical_to_representation(single_edge, enumerate_solutions(single_edge, 10))
        assert evaluate(P("a"), rep).tolist() == [
            [1, 0, 0],
            [0, 0, 0],
            [0, 0, 0],
        ]

    def test_edge_relation_vanishes(self, qperm2):
        rep = classical_to_representation(qperm2, enumerate_solutions(qperm2, 10))
        relation = 1 - P("p_1_1") - P("p_1_2")
        assert all(x == 0 for x in evaluate(relation, rep).ravel())

    def test_orthogonal_product_vanishes_numerically(self):
        theta = 0.3
        vector = np.array([np.cos(theta), np.sin(theta)])
        a = np.outer(vector, vector)
        rep = Representation(2, {"a": a, "b": np.eye(2) - a})
        assert np.abs(evaluate(P("a") * P("b"), rep)).max() < 1e-9

    def test_missing_matrix(self):
        rep = Representation(1, {"a": np.array([[Fraction(1)]], dtype=object)})
        with pytest.raises(RepresentationError, match="no matrix"):
            evaluate(P("a") * P("b"), rep)


class TestParsePolynomial:
    def test_terms(self, single_edge):
        p = parse_polynomial("3/2*a.b.c + 1 - b", single_edge)
        assert p.as_dict == {(): 1, ("b",): -1, ("a", "b", "c"): Fraction(3, 2)}

    def test_leading_sign(self, single_edge):
        assert parse_polynomial("-a + 2", single_edge) == 2 - P("a")

    def test_dotted_vertex_names(self):
        assert segment_word("J.0.J.1", frozenset({"J.0", "J.1"})) == ("J.0", "J.1")

    def test_trailing_operator(self, single_edge):
        with pytest.raises(ParseError, match="ends with an operator"):
            parse_polynomial("a +", single_edge)

    def test_unknown_word(self, single_edge):
        with pytest.raises(ParseError, match="cannot read"):
            parse_polynomial("2*a.z", single_edge)
