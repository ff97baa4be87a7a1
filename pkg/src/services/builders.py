"""
Builders for the named hypergraph families and the `.gr` graph format.
"""

import re

from src.models.errors import HypergraphError, ParseError
from src.models.hypergraph import Hypergraph, SimpleGraph
from src.models.relations import Relation, RelationKind
from src.services.core import tokenize
from src.services.transforms import impose_relation
from src.utils.fresh import FreshNames

# (groups, commuting pairs) of the graph product (Z2 * Z3) x (Z2 * Z3)
CEP_GROUPS = (2, 3, 2, 3)
CEP_COMMUTE = frozenset({(1, 3), (1, 4), (2, 3), (2, 4)})

_NAMED_GRAPH = re.compile(r"^([KPCE])(\d+)$")


def build_qperm(n: int) -> Hypergraph:
    """
    Quantum permutation grid: vertices p_i_j, one edge per row and per column.

    Raises:
        HypergraphError: If n < 1.
    """
    if n < 1:
        raise HypergraphError("qperm needs n >= 1")
    rows = [[f"p_{i}_{j}" for j in range(1, n + 1)] for i in range(1, n + 1)]
    columns = [[f"p_{i}_{j}" for i in range(1, n + 1)] for j in range(1, n + 1)]
    return Hypergraph.from_edges(rows + columns)


def build_free_product(ns: list[int]) -> Hypergraph:
    """Disjoint edges of sizes n_1..n_k, vertices c<i>_<k>."""
    if not ns:
        raise HypergraphError("free product of an empty list has no presentation here")
    if any(n < 1 for n in ns):
        raise HypergraphError("every factor needs at least one vertex")
    return Hypergraph.from_edges(
        [f"c{i}_{k}" for k in range(1, n + 1)] for i, n in enumerate(ns, 1)
    )


def build_graph_product_cyclic(
    ns: list[int],
    commute: set[tuple[int, int]] | frozenset[tuple[int, int]],
) -> Hypergraph:
    """
    Graph product of cyclic groups.

    Starts from the free product and imposes COMMUTE on every vertex pair of
    every commuting pair of groups. Group indices are 1-based.
    """
    h = build_free_product(ns)
    pairs = set()
    for i, j in commute:
        for index in (i, j):
            if not 1 <= index <= len(ns):
                raise HypergraphError(f"group index {index} outside 1..{len(ns)}")
        if i == j:
            raise HypergraphError(f"group {i} cannot commute with itself in a graph product")
        pairs.add((min(i, j), max(i, j)))

    names = FreshNames(h.vertices)
    for i, j in sorted(pairs):
        for a in range(1, ns[i - 1] + 1):
            for b in range(1, ns[j - 1] + 1):
                h = impose_relation(
                    h, Relation(RelationKind.COMMUTE, f"c{i}_{a}", f"c{j}_{b}"), names
                )
    return h


def build_cep() -> Hypergraph:
    """Graph-product presentation of (Z2 * Z3) x (Z2 * Z3)."""
    return build_graph_product_cyclic(list(CEP_GROUPS), CEP_COMMUTE)


def _impose_orthogonalities(h: Hypergraph, pairs: list[tuple[str, str]]) -> Hypergraph:
    """
    Impose p_a p_b = 0 for each pair, once per unordered pair.

    Pairs already sharing an edge are orthogonal and skipped; a pair (a, a)
    forces p_a = 0.
    """
    names = FreshNames(h.vertices)
    done: set[frozenset[str]] = set()
    zeros: list[str] = []
    for a, b in pairs:
        key = frozenset((a, b))
        if key in done:
            continue
        done.add(key)
        if a == b:
            zeros.append(a)
            continue
        if h.is_orthogonal(a, b):
            continue
        h = impose_relation(h, Relation(RelationKind.ORTHOGONAL, a, b), names)
    for a in zeros:
        h = impose_relation(h, Relation(RelationKind.ZERO, a), names)
    return h


def build_hom_game(g: SimpleGraph, g2: SimpleGraph) -> Hypergraph:
    """
    Graph homomorphism (colouring) game g -> g2.

    Vertex q_i_j says "vertex i of g maps to vertex j of g2"; each i picks
    exactly one j, and adjacent i1 ~ i2 may not use non-adjacent j1, j2.
    """
    if g.n < 1 or g2.n < 1:
        raise HypergraphError("both graphs need at least one vertex")
    h = Hypergraph.from_edges(
        [f"q_{i + 1}_{j + 1}" for j in range(g2.n)] for i in range(g.n)
    )
    pairs = [
        (f"q_{i1 + 1}_{j1 + 1}", f"q_{i2 + 1}_{j2 + 1}")
        for i1 in range(g.n)
        for i2 in range(g.n)
        if g.adjacent(i1, i2)
        for j1 in range(g2.n)
        for j2 in range(g2.n)
        if not g2.adjacent(j1, j2)
    ]
    return _impose_orthogonalities(h, pairs)


def build_iso_game(g: SimpleGraph, g2: SimpleGraph) -> Hypergraph:
    """
    Quantum isomorphism game: the qperm(n) grid with U A_g = A_g2 U written
    as orthogonalities p_i_k . p_l_j = 0 whenever adjacency of (k, j) in g and
    of (i, l) in g2 disagree.
    """
    if g.n != g2.n:
        raise HypergraphError(f"graph sizes differ: {g.n} vs {g2.n}")
    n = g.n
    h = build_qperm(n)
    pairs = [
        (f"p_{i + 1}_{k + 1}", f"p_{l + 1}_{j + 1}")
        for i in range(n)
        for j in range(n)
        for k in range(n)
        for l in range(n)
        if g.adjacent(k, j) != g2.adjacent(i, l)
    ]
    return _impose_orthogonalities(h, pairs)


def build_zero_gadget() -> tuple[Hypergraph, str]:
    """The 4-vertex gadget forcing p_v = 0; returns (H, "v")."""
    return Hypergraph.from_edges([["a", "v", "c"], ["a", "b", "c"], ["b", "v", "c"]]), "v"


def named_graph(name: str) -> SimpleGraph:
    """
    Graph families by name: K<n> complete, P<n> path, C<n> cycle, E<n> empty.

    Raises:
        HypergraphError: If the name is not recognised.
    """
    match = _NAMED_GRAPH.match(name.strip())
    if not match:
        raise HypergraphError(f"unknown graph {name!r} (expected K<n>, P<n>, C<n> or E<n>)")
    family, n = match.group(1), int(match.group(2))
    return {
        "K": SimpleGraph.complete,
        "P": SimpleGraph.path,
        "C": SimpleGraph.cycle,
        "E": SimpleGraph.empty,
    }[family](n)


def parse_graph(text: str) -> SimpleGraph:
    """
    Parse the `.gr` format: `n <count>`, arcs `a <i> <j>` (1-based) and an
    optional `undirected` line that mirrors every arc.

    Raises:
        ParseError: On syntax errors or arcs outside 1..n.
    """
    n: int | None = None
    undirected = False
    arcs: list[tuple[int, int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = tokenize(raw)
        if not tokens:
            continue
        (column, keyword), rest = tokens[0], tokens[1:]
        values = [t for _, t in rest]
        if keyword == "n":
            if n is not None:
                raise ParseError("vertex count given twice", lineno, column)
            if len(values) != 1 or not values[0].isdigit():
                raise ParseError("expected 'n <count>'", lineno, column)
            n = int(values[0])
        elif keyword == "a":
            if len(values) != 2 or not all(v.isdigit() for v in values):
                raise ParseError("expected 'a <i> <j>'", lineno, column)
            arcs.append((int(values[0]), int(values[1]), lineno, rest[0][0]))
        elif keyword == "undirected":
            if values:
                raise ParseError("'undirected' takes no arguments", lineno, column)
            undirected = True
        else:
            raise ParseError(f"unknown statement {keyword!r}", lineno, column)

    if n is None:
        raise ParseError("missing 'n <count>' line")
    pairs = []
    for i, j, lineno, column in arcs:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"arc ({i}, {j}) outside 1..{n}", lineno, column)
        pairs.append((i - 1, j - 1))
    if undirected:
        return SimpleGraph.from_pairs(n, pairs)
    arc_set = set(pairs)
    directed = any((j, i) not in arc_set for i, j in pairs)
    return SimpleGraph.from_pairs(n, pairs, directed=directed)


def serialize_graph(g: SimpleGraph) -> str:
    """`.gr` text with every arc listed explicitly."""
    lines = [f"n {g.n}"]
    lines += [f"a {i + 1} {j + 1}" for i, j in sorted(g.arcs)]
    return "\n".join(lines) + "\n"
