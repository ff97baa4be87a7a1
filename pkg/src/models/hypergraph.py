"""
Data models for hypergraphs, their orthogonality structure and simple graphs.
"""

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from src.models.errors import HypergraphError

FRESH_PREFIX = "_g"


def is_valid_identifier(name: str) -> bool:
    """Vertex identifiers are nonempty printable strings without whitespace or '#'."""
    return (
        bool(name)
        and name.isprintable()
        and not any(ch.isspace() for ch in name)
        and "#" not in name
    )


@dataclass(frozen=True, order=True)
class OrthoPair:
    """Unordered pair of distinct co-edge vertices, stored with a < b."""
    a: str
    b: str

    @classmethod
    def of(cls, a: str, b: str) -> "OrthoPair":
        if a == b:
            raise HypergraphError(f"orthogonal pair needs two distinct vertices, got {a!r} twice")
        return cls(a, b) if a < b else cls(b, a)

    def __str__(self) -> str:
        return f"{self.a}.{self.b}"


@dataclass(frozen=True)
class Hypergraph:
    """
    Finite hypergraph: the presentation datum of a free hypergraph C*-algebra.

    Each vertex stands for a generating projection, each edge for a
    partition-of-unity relation among the projections of its vertices.
    """
    vertices: tuple[str, ...]
    edges: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for vertex in self.vertices:
            if not is_valid_identifier(vertex):
                raise HypergraphError(f"invalid vertex identifier {vertex!r}")
            if vertex in seen:
                raise HypergraphError(f"vertex {vertex!r} declared twice")
            seen.add(vertex)

        covered: set[str] = set()
        for index, edge in enumerate(self.edges):
            unknown = edge - seen
            if unknown:
                raise HypergraphError(
                    f"edge {index} uses undeclared vertices: {', '.join(sorted(unknown))}"
                )
            covered |= edge

        lonely = [v for v in self.vertices if v not in covered]
        if lonely:
            raise HypergraphError(f"vertices in no edge: {', '.join(lonely)}")

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Iterable[str]],
        vertices: Iterable[str] = (),
    ) -> "Hypergraph":
        """
        Build a hypergraph from edge lists.

        Vertex order is the order of first appearance, pre-declared vertices
        first. A vertex repeated inside one edge is an error.
        """
        order: dict[str, None] = dict.fromkeys(vertices)
        frozen: list[frozenset[str]] = []
        for index, edge in enumerate(edges):
            members = list(edge)
            if len(set(members)) != len(members):
                dupes = sorted(v for v, c in Counter(members).items() if c > 1)
                raise HypergraphError(f"edge {index} repeats vertices: {', '.join(dupes)}")
            for vertex in members:
                order.setdefault(vertex, None)
            frozen.append(frozenset(members))
        return cls(tuple(order), tuple(frozen))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def has_fresh_names(self) -> bool:
        return any(v.startswith(FRESH_PREFIX) for v in self.vertices)

    def sorted_edge(self, index: int) -> tuple[str, ...]:
        """Edge vertices in identifier-lexicographic order."""
        return tuple(sorted(self.edges[index]))

    @cached_property
    def incidence(self) -> dict[str, tuple[int, ...]]:
        """Map each vertex to the indices of the edges containing it."""
        table: dict[str, list[int]] = {v: [] for v in self.vertices}
        for index, edge in enumerate(self.edges):
            for vertex in edge:
                table[vertex].append(index)
        return {v: tuple(indices) for v, indices in table.items()}

    @cached_property
    def neighbours(self) -> dict[str, frozenset[str]]:
        """Map each vertex to the vertices it shares an edge with."""
        table: dict[str, set[str]] = {v: set() for v in self.vertices}
        for edge in self.edges:
            for vertex in edge:
                table[vertex] |= edge
        return {v: frozenset(others - {v}) for v, others in table.items()}

    def is_orthogonal(self, a: str, b: str) -> bool:
        """True when a != b share an edge, i.e. p_a p_b = 0 is forced."""
        return a != b and b in self.neighbours.get(a, frozenset())

    def duplicate_edges(self) -> list[int]:
        """Indices of edges that repeat an earlier stored edge."""
        seen: set[frozenset[str]] = set()
        duplicates = []
        for index, edge in enumerate(self.edges):
            if edge in seen:
                duplicates.append(index)
            seen.add(edge)
        return duplicates

    def deduplicated(self) -> "Hypergraph":
        """Drop repeated edges, keeping first occurrences in stored order."""
        dropped = set(self.duplicate_edges())
        kept = tuple(e for i, e in enumerate(self.edges) if i not in dropped)
        return Hypergraph(self.vertices, kept)

    def edge_set(self) -> frozenset[frozenset[str]]:
        return frozenset(self.edges)

    def same_edges(self, other: "Hypergraph") -> bool:
        """Vertex-set and edge-set equality, ignoring order and repetition."""
        return set(self.vertices) == set(other.vertices) and self.edge_set() == other.edge_set()

    def canonical(self) -> "Hypergraph":
        """Ordering normalization: vertices sorted, edges kept in stored order."""
        return Hypergraph(tuple(sorted(self.vertices)), self.edges)

    def with_additions(
        self,
        new_vertices: Iterable[str] = (),
        new_edges: Iterable[Iterable[str]] = (),
    ) -> "Hypergraph":
        """Return a copy with vertices and edges appended."""
        known = set(self.vertices)
        added = [v for v in dict.fromkeys(new_vertices) if v not in known]
        return Hypergraph(
            self.vertices + tuple(added),
            self.edges + tuple(frozenset(e) for e in new_edges),
        )

    def disjoint_union(self, other: "Hypergraph") -> "Hypergraph":
        """Disjoint union of presentations; the algebra becomes the free product."""
        clash = set(self.vertices) & set(other.vertices)
        if clash:
            raise HypergraphError(f"vertex names collide: {', '.join(sorted(clash))}")
        return Hypergraph(self.vertices + other.vertices, self.edges + other.edges)


@dataclass(frozen=True)
class SimpleGraph:
    """
    Finite graph on vertices 0..n-1 given by its arc relation.

    Undirected graphs store both directions of every edge. Loops are allowed.
    """
    n: int
    arcs: frozenset[tuple[int, int]]
    directed: bool = False

    def __post_init__(self) -> None:
        if self.n < 0:
            raise HypergraphError("graph size must be nonnegative")
        for i, j in self.arcs:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise HypergraphError(f"arc ({i + 1}, {j + 1}) outside 1..{self.n}")
        if not self.directed:
            for i, j in self.arcs:
                if (j, i) not in self.arcs:
                    raise HypergraphError(
                        f"undirected graph is missing arc ({j + 1}, {i + 1})"
                    )

    def adjacent(self, i: int, j: int) -> bool:
        return (i, j) in self.arcs

    @classmethod
    def from_pairs(
        cls, n: int, pairs: Iterable[tuple[int, int]], directed: bool = False
    ) -> "SimpleGraph":
        """Build from 0-based pairs; undirected graphs get both directions."""
        arcs = set()
        for i, j in pairs:
            arcs.add((i, j))
            if not directed:
                arcs.add((j, i))
        return cls(n, frozenset(arcs), directed)

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls.from_pairs(n, [(i, j) for i in range(n) for j in range(n) if i != j])

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset())

    @classmethod
    def path(cls, n: int) -> "SimpleGraph":
        return cls.from_pairs(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "SimpleGraph":
        if n < 3:
            raise HypergraphError("cycles need at least 3 vertices")
        return cls.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])
