"""
Seeded random instances and brute-force oracles.

Every generator draws from a numpy Generator seeded by the caller, so a
given seed always yields the same corpus.
"""

from itertools import product

import numpy as np

from src.models.diagram import DiagramObject, DiagramPresentation, Morphism
from src.models.game import SynchronousGame
from src.models.hypergraph import Hypergraph


def random_hypergraph(rng: np.random.Generator, max_vertices: int = 8, max_edges: int = 5) -> Hypergraph:
    """Nonempty edges of size 1..4 over v1..vn; the vertex set is their union."""
    n = int(rng.integers(1, max_vertices + 1))
    names = [f"v{i}" for i in range(1, n + 1)]
    edges = []
    for _ in range(int(rng.integers(1, max_edges + 1))):
        size = int(rng.integers(1, min(n, 4) + 1))
        edges.append(sorted(rng.choice(names, size=size, replace=False).tolist()))
    return Hypergraph.from_edges(edges)


def hypergraph_corpus(count: int, seed: int = 0, **limits) -> list[Hypergraph]:
    rng = np.random.default_rng(seed)
    return [random_hypergraph(rng, **limits) for _ in range(count)]


def brute_force_solutions(h: Hypergraph) -> list[dict[str, bool]]:
    """Every exactly-one assignment, found by trying all 2^|V| of them."""
    found = []
    for values in product((True, False), repeat=h.num_vertices):
        truth = dict(zip(h.vertices, values))
        if all(sum(truth[v] for v in edge) == 1 for edge in h.edges):
            found.append(truth)
    return found


def satisfiable_corpus(count: int, seed: int = 0) -> list[Hypergraph]:
    """The first `count` random hypergraphs with at least one classical solution."""
    rng = np.random.default_rng(seed)
    found: list[Hypergraph] = []
    while len(found) < count:
        h = random_hypergraph(rng)
        if brute_force_solutions(h):
            found.append(h)
    return found


def random_diagram(rng: np.random.Generator, max_objects: int = 3, max_points: int = 3) -> DiagramPresentation:
    """Objects J1..Jm with random spectrum maps between any ordered pair, loops included."""
    objects = tuple(
        DiagramObject(f"J{i}", tuple(str(p) for p in range(int(rng.integers(1, max_points + 1)))))
        for i in range(1, int(rng.integers(1, max_objects + 1)) + 1)
    )
    morphisms: list[Morphism] = []
    for source in objects:
        for target in objects:
            if rng.random() < 0.4:
                mapping = tuple((w, str(rng.choice(source.points))) for w in target.points)
                morphisms.append(Morphism(f"f{len(morphisms) + 1}", source.name, target.name, mapping))
    return DiagramPresentation(objects, tuple(morphisms)).with_identities()


def random_game(rng: np.random.Generator, max_inputs: int = 4, max_outputs: int = 3) -> SynchronousGame:
    """A synchronous game whose losing answer pairs are drawn symmetrically with probability 0.3."""
    inputs = tuple(f"x{i}" for i in range(1, int(rng.integers(2, max_inputs + 1)) + 1))
    outputs = tuple(str(a) for a in range(int(rng.integers(2, max_outputs + 1))))
    forbidden = set()
    for x, y in product(inputs, repeat=2):
        if x >= y:
            continue
        for a, b in product(outputs, repeat=2):
            if rng.random() < 0.3:
                forbidden |= {(x, y, a, b), (y, x, b, a)}
    return SynchronousGame(inputs, outputs, frozenset(forbidden)).with_synchronicity()


def proper_colourings(n: int, arcs: frozenset[tuple[int, int]], colours: int) -> int:
    return sum(
        1
        for colouring in product(range(colours), repeat=n)
        if all(colouring[i] != colouring[j] for i, j in arcs)
    )
