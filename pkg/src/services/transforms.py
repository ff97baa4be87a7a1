"""
Relation-imposing gadget rewrites and the 3-uniform normal form.

Every rewrite returns a new hypergraph whose algebra is the old algebra
with the relation added; gadget vertices get fresh `_g<k>` names.
"""

from itertools import combinations

from src.models.errors import TransformError
from src.models.hypergraph import Hypergraph
from src.models.relations import Relation, RelationKind
from src.utils.fresh import FreshNames

ZERO_GADGET_EDGES = (("a", "v", "c"), ("a", "b", "c"), ("b", "v", "c"))


def _require(h: Hypergraph, vertices: tuple[str, ...]) -> None:
    known = set(h.vertices)
    missing = [v for v in vertices if v not in known]
    if missing:
        raise TransformError(f"unknown vertices: {', '.join(missing)}")


def remove_vertex(h: Hypergraph, v: str) -> Hypergraph:
    """Delete v from the vertex set and from every edge (imposes p_v = 0)."""
    return Hypergraph(
        tuple(x for x in h.vertices if x != v),
        tuple(edge - {v} for edge in h.edges),
    )


def impose_relation(
    h: Hypergraph,
    relation: Relation,
    names: FreshNames | None = None,
) -> Hypergraph:
    """
    Impose one relation by attaching its gadget.

    Args:
        h: Hypergraph to extend.
        relation: Relation over existing vertices.
        names: Shared fresh-name source when several rewrites are chained.

    Returns:
        The rewritten hypergraph.

    Raises:
        TransformError: If the relation references missing vertices.
    """
    _require(h, relation.vertices)
    names = names or FreshNames(h.vertices)
    v, w = relation.v, relation.w

    match relation.kind:
        case RelationKind.ZERO:
            return remove_vertex(h, v)

        case RelationKind.EQUAL:
            u = names.mint()
            return h.with_additions([u], [{u, v}, {u, w}])

        case RelationKind.ORTHOGONAL:
            u = names.mint()
            return h.with_additions([u], [{u, v, w}])

        case RelationKind.LEQ:
            containing = h.incidence[w]
            if not containing:
                raise TransformError(f"vertex {w!r} lies in no edge")
            edge = h.edges[containing[0]]
            if v in edge:
                # v is already orthogonal to w, so v <= w forces v = 0
                return remove_vertex(h, v)
            result = h
            for other in sorted(edge - {w}):
                result = impose_relation(result, Relation(RelationKind.ORTHOGONAL, v, other), names)
            return result

        case RelationKind.COMMUTE | RelationKind.SUM_LEQ_ONE:
            vw, nv_w, v_nw, nv_nw = names.mint_many(4)
            edges = [{v, nv_w, nv_nw}, {w, v_nw, nv_nw}]
            if relation.kind is RelationKind.COMMUTE:
                edges.append({vw, nv_w, v_nw, nv_nw})
                return h.with_additions([vw, nv_w, v_nw, nv_nw], edges)
            edges.append({nv_w, v_nw, nv_nw})
            return h.with_additions([nv_w, v_nw, nv_nw], edges)

    raise TransformError(f"unsupported relation {relation}")


def attach_zero_gadget(h: Hypergraph, v: str, names: FreshNames) -> Hypergraph:
    """Attach a fresh copy of the zero gadget identified at v, forcing p_v = 0."""
    rename = {"v": v, "a": names.mint(), "b": names.mint(), "c": names.mint()}
    edges = [{rename[x] for x in edge} for edge in ZERO_GADGET_EDGES]
    return h.with_additions([v, rename["a"], rename["b"], rename["c"]], edges)


def tetrahedron(names: FreshNames) -> Hypergraph:
    """The four faces of a tetrahedron: 3-uniform with zero algebra."""
    corners = names.mint_many(4)
    return Hypergraph.from_edges(combinations(corners, 3))


def split_large_edges(h: Hypergraph, names: FreshNames) -> Hypergraph:
    """
    Split every edge with more than 3 vertices.

    e = e1 + e2 with e1 the two smallest identifiers becomes e1+{s}, e2+{t}
    and {s, t}; repeated until no edge is larger than 3.
    """
    vertices = list(h.vertices)
    edges = list(h.edges)
    index = 0
    while index < len(edges):
        edge = edges[index]
        if len(edge) <= 3:
            index += 1
            continue
        ordered = sorted(edge)
        s, t = names.mint_many(2)
        vertices += [s, t]
        edges[index] = frozenset(ordered[:2] + [s])
        edges[index + 1:index + 1] = [frozenset(ordered[2:] + [t]), frozenset({s, t})]
    return Hypergraph(tuple(vertices), tuple(edges))


def pad_small_edges(h: Hypergraph, names: FreshNames) -> Hypergraph:
    """Grow edges of size 1 or 2 to size 3 with fresh vertices forced to zero."""
    padded_edges = []
    pads = []
    for edge in h.edges:
        if 0 < len(edge) < 3:
            extra = names.mint_many(3 - len(edge))
            pads += extra
            edge = edge | frozenset(extra)
        padded_edges.append(edge)
    result = Hypergraph(h.vertices + tuple(pads), tuple(padded_edges))
    for pad in pads:
        result = attach_zero_gadget(result, pad, names)
    return result


def overlapping_vertices(h: Hypergraph) -> set[str]:
    """Vertices lying in the intersection of two edges that share at least two vertices."""
    bad: set[str] = set()
    for first, second in combinations(h.edges, 2):
        shared = first & second
        if len(shared) >= 2:
            bad |= shared
    return bad


def linearise(h: Hypergraph, names: FreshNames) -> Hypergraph:
    """
    Remove two-vertex edge overlaps from a 3-uniform hypergraph.

    Each vertex in such an overlap keeps its first occurrence; every later
    occurrence becomes a fresh copy y. The copy is tied to the original x by
    p_y <= p_x and p_x <= p_y, written as orthogonality gadgets of y against
    the edge partners of x and of x against the edge partners of y. Pairs that
    already share an edge are skipped since they are orthogonal anyway.
    """
    bad = overlapping_vertices(h)
    if not bad:
        return h

    vertices = list(h.vertices)
    edges: list[frozenset[str]] = []
    home: dict[str, int] = {}
    ties: list[tuple[str, str, int]] = []
    for index, edge in enumerate(h.edges):
        members = []
        for vertex in sorted(edge):
            if vertex in bad and vertex in home:
                copy = names.mint()
                vertices.append(copy)
                ties.append((copy, vertex, index))
                members.append(copy)
            else:
                home.setdefault(vertex, index)
                members.append(vertex)
        edges.append(frozenset(members))

    split = Hypergraph(tuple(vertices), tuple(edges))
    pairs: dict[frozenset[str], None] = {}
    for copy, original, index in ties:
        for partner in sorted(edges[home[original]] - {original}):
            pairs.setdefault(frozenset((copy, partner)), None)
        for partner in sorted(edges[index] - {copy}):
            pairs.setdefault(frozenset((original, partner)), None)

    gadget_vertices = []
    gadget_edges = []
    for pair in pairs:
        a, b = sorted(pair)
        if split.is_orthogonal(a, b):
            continue
        u = names.mint()
        gadget_vertices.append(u)
        gadget_edges.append({u, a, b})
    return split.with_additions(gadget_vertices, gadget_edges)


def three_uniform(h: Hypergraph) -> Hypergraph:
    """
    Rewrite H into an equivalent hypergraph whose edges all have exactly 3
    vertices and pairwise share at most one vertex.

    Steps: an empty edge short-circuits to the tetrahedron; large edges are
    split; small edges are padded with zero-forced vertices; remaining
    two-vertex overlaps are removed.
    """
    names = FreshNames(h.vertices)
    if any(not edge for edge in h.edges):
        return linearise(tetrahedron(names), names)
    result = split_large_edges(h, names)
    result = pad_small_edges(result, names)
    return linearise(result, names)


def is_three_uniform(h: Hypergraph) -> bool:
    """Every edge has 3 vertices and any two edges share at most one."""
    if any(len(edge) != 3 for edge in h.edges):
        return False
    return all(len(a & b) <= 1 for a, b in combinations(h.edges, 2))
