"""Shared fixtures: the small hypergraphs most tests start from."""

import pytest

from src.models.hypergraph import Hypergraph
from src.services.builders import build_qperm, build_zero_gadget


@pytest.fixture
def triangle() -> Hypergraph:
    """Three 2-edges on three vertices; its algebra is zero."""
    return Hypergraph.from_edges([["a", "b"], ["a", "c"], ["b", "c"]])


@pytest.fixture
def single_edge() -> Hypergraph:
    return Hypergraph.from_edges([["a", "b", "c"]])


@pytest.fixture
def zero_gadget() -> Hypergraph:
    h, _ = build_zero_gadget()
    return h


@pytest.fixture
def qperm2() -> Hypergraph:
    return build_qperm(2)


@pytest.fixture
def empty_edge() -> Hypergraph:
    return Hypergraph.from_edges([[], ["a", "b"]])
