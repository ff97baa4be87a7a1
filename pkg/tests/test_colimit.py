"""Tests for the .diag format and the colimit encoder."""

import numpy as np
import pytest

from src.models.errors import DiagramError, ParseError
from src.models.hypergraph import FRESH_PREFIX, Hypergraph
from src.services.builders import build_free_product
from src.services.classical import enumerate_solutions
from src.services.colimit import compatible_point_families, encode_colimit, parse_diagram
from tests.corpus import random_diagram

CAP = 10**6


def families_from_solutions(h: Hypergraph) -> list[dict[str, str]]:
    found = []
    for solution in enumerate_solutions(h, CAP):
        family = {}
        for vertex in solution.true_vertices():
            if not vertex.startswith(FRESH_PREFIX):
                obj, point = vertex.split(".", 1)
                family[obj] = point
        found.append(family)
    return found


def canonical(families: list[dict[str, str]]) -> list[tuple[tuple[str, str], ...]]:
    return sorted(tuple(sorted(f.items())) for f in families)


class TestParseDiagram:
    def test_identity_is_added(self):
        d = parse_diagram("object J 3\n")
        (identity,) = d.morphisms
        assert identity.is_identity()
        assert identity.source == identity.target == "J"

    def test_existing_identity_is_kept(self):
        d = parse_diagram("object J 2\nmorphism one J J : 0>0 1>1\n")
        assert [m.name for m in d.morphisms] == ["one"]

    def test_non_injective_map_is_valid(self):
        d = parse_diagram("object A 2\nobject B 3\nmorphism f A B : 0>0 1>0 2>1\n")
        assert d.morphisms[0].mapping == {"0": "0", "1": "0", "2": "1"}

    def test_map_must_be_total(self):
        with pytest.raises(DiagramError, match="not total"):
            parse_diagram("object A 2\nobject B 2\nmorphism f A B : 0>0\n")

    def test_map_must_hit_source_points(self):
        with pytest.raises(DiagramError, match="unknown points"):
            parse_diagram("object A 2\nobject B 1\nmorphism f A B : 0>5\n")

    def test_unknown_object(self):
        with pytest.raises(ParseError, match="unknown object") as excinfo:
            parse_diagram("object A 2\nmorphism f A B : 0>0\n")
        assert excinfo.value.line == 2

    def test_point_mapped_twice(self):
        with pytest.raises(ParseError, match="mapped twice"):
            parse_diagram("object A 1\nmorphism f A A : 0>0 0>0\n")

    def test_empty_input(self):
        with pytest.raises(ParseError, match="empty"):
            parse_diagram("\n")


class TestEncodeColimit:
    def test_single_object_normalizes_to_one_edge(self):
        d = parse_diagram("object J 3\n")
        raw = encode_colimit(d)
        assert raw.num_edges == 3
        assert len(set(raw.edges)) == 1
        assert encode_colimit(d, normalize=True) == Hypergraph.from_edges([["J.0", "J.1", "J.2"]])

    def test_coproduct_is_free_product(self):
        h = encode_colimit(parse_diagram("object A 2\nobject B 2\n"), normalize=True)
        rename = {"A.0": "c1_1", "A.1": "c1_2", "B.0": "c2_1", "B.1": "c2_2"}
        renamed = Hypergraph.from_edges([[rename[v] for v in edge] for edge in h.edges])
        assert renamed.same_edges(build_free_product([2, 2]))

    def test_map_into_larger_spectrum(self):
        d = parse_diagram("object A 2\nobject B 3\nmorphism f A B : 0>0 1>0 2>1\n")
        h = encode_colimit(d)
        assert canonical(families_from_solutions(h)) == canonical(compatible_point_families(d))
        assert len(enumerate_solutions(h, CAP)) == 3

    def test_singleton_spectra_have_one_solution(self):
        d = parse_diagram("object A 1\nobject B 1\nmorphism f A B : 0>0\n")
        assert len(enumerate_solutions(encode_colimit(d), CAP)) == 1

    def test_swap_endomorphism_has_no_fixed_point(self):
        d = parse_diagram("object A 2\nmorphism s A A : 0>1 1>0\n")
        h = encode_colimit(d)
        assert h.has_fresh_names
        assert enumerate_solutions(h, CAP) == []

    def test_constant_endomorphism(self):
        d = parse_diagram("object A 3\nmorphism k A A : 0>1 1>1 2>1\n")
        assert families_from_solutions(encode_colimit(d)) == [{"A": "1"}]

    def test_empty_spectrum_is_zero(self):
        h = encode_colimit(parse_diagram("object Z 0\nobject A 2\n"))
        assert frozenset() in h.edges
        assert enumerate_solutions(h, CAP) == []

    @pytest.mark.parametrize("index", range(20))
    def test_solutions_are_compatible_families(self, index):
        rng = np.random.default_rng([0, index])
        d = random_diagram(rng)
        h = encode_colimit(d)
        assert canonical(families_from_solutions(h)) == canonical(compatible_point_families(d))
