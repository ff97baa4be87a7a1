"""
Hypergraph text format, validation warnings, orthogonality structure and
redundant-edge detection.
"""

import re
from fractions import Fraction
from itertools import combinations

from src.models.errors import ParseError
from src.models.hypergraph import FRESH_PREFIX, Hypergraph, OrthoPair, is_valid_identifier
from src.ui.styles import warning
from src.utils.rationals import CONSTANT, SparseEchelon

FRESH_PRAGMA = "# hyc: fresh-names"

_TOKEN = re.compile(r"\S+")


def tokenize(line: str) -> list[tuple[int, str]]:
    """Split a line into (1-based column, token) pairs, dropping any `#` comment."""
    body = line.split("#", 1)[0]
    return [(m.start() + 1, m.group()) for m in _TOKEN.finditer(body)]


def check_identifier(name: str, line: int, column: int, allow_fresh: bool) -> None:
    if not is_valid_identifier(name):
        raise ParseError(f"invalid identifier {name!r}", line, column)
    if name.startswith(FRESH_PREFIX) and not allow_fresh:
        raise ParseError(
            f"identifier {name!r} uses the reserved prefix {FRESH_PREFIX!r} "
            f"(start the file with '{FRESH_PRAGMA}' to allow it)",
            line,
            column,
        )


def validation_warnings(h: Hypergraph) -> list[str]:
    """Non-fatal findings: duplicate edges and empty edges."""
    found = []
    for index in h.duplicate_edges():
        found.append(f"edge {index} duplicates an earlier edge")
    for index, edge in enumerate(h.edges):
        if not edge:
            found.append(f"edge {index} is empty; the presented algebra is zero")
    return found


def parse_hypergraph(text: str, quiet: bool = False) -> Hypergraph:
    """
    Parse the `.hg` format.

    Vertices are declared on first appearance, either by a `vertex` line or
    inside an `edge` line, and keep that order.

    Args:
        text: File contents.
        quiet: Suppress validation warnings.

    Raises:
        ParseError: On syntax errors, empty input or vertices in no edge.
    """
    lines = text.splitlines()
    allow_fresh = bool(lines) and lines[0].strip() == FRESH_PRAGMA

    order: dict[str, None] = {}
    declared_at: dict[str, tuple[int, int]] = {}
    edges: list[frozenset[str]] = []
    saw_statement = False

    for lineno, raw in enumerate(lines, 1):
        tokens = tokenize(raw)
        if not tokens:
            continue
        saw_statement = True
        (column, keyword), rest = tokens[0], tokens[1:]

        if keyword == "edge":
            members: list[str] = []
            for col, name in rest:
                check_identifier(name, lineno, col, allow_fresh)
                if name in members:
                    raise ParseError(f"vertex {name!r} repeated in one edge", lineno, col)
                members.append(name)
                order.setdefault(name, None)
            edges.append(frozenset(members))
        elif keyword == "vertex":
            if len(rest) != 1:
                raise ParseError("'vertex' takes exactly one identifier", lineno, column)
            col, name = rest[0]
            check_identifier(name, lineno, col, allow_fresh)
            order.setdefault(name, None)
            declared_at.setdefault(name, (lineno, col))
        else:
            raise ParseError(f"unknown statement {keyword!r}", lineno, column)

    if not saw_statement:
        raise ParseError("empty input: no edges declared")

    covered = frozenset().union(*edges)
    for name, (lineno, col) in declared_at.items():
        if name not in covered:
            raise ParseError(f"vertex {name!r} is in no edge", lineno, col)

    h = Hypergraph(tuple(order), tuple(edges))
    if not quiet:
        for message in validation_warnings(h):
            warning(message)
    return h


def serialize_hypergraph(h: Hypergraph) -> str:
    """Canonical `.hg` text: one `edge` line per stored edge, vertices sorted."""
    lines = [FRESH_PRAGMA] if h.has_fresh_names else []
    for index in range(h.num_edges):
        lines.append(" ".join(("edge",) + h.sorted_edge(index)))
    return "\n".join(lines) + "\n"


def orthogonality_pairs(h: Hypergraph) -> frozenset[OrthoPair]:
    """All pairs of distinct vertices sharing an edge."""
    return frozenset(
        OrthoPair.of(a, b)
        for edge in h.edges
        for a, b in combinations(sorted(edge), 2)
    )


def relation_vector(h: Hypergraph, index: int) -> dict[int, Fraction]:
    """Affine vector (chi_e | 1) of an edge, keyed by vertex position."""
    position = {v: i for i, v in enumerate(h.vertices)}
    vector = {position[v]: Fraction(1) for v in h.edges[index]}
    vector[CONSTANT] = Fraction(1)
    return vector


def redundant_edges(h: Hypergraph) -> frozenset[int]:
    """
    Edges whose relation is a rational linear combination of earlier ones.

    Edges are scanned in stored order; an edge is redundant when its affine
    vector lies in the span of the vectors of the edges before it, so
    dropping all reported edges at once leaves the span unchanged.
    """
    echelon = SparseEchelon(constant_pivots=True)
    redundant = set()
    for index in range(h.num_edges):
        residual = echelon.insert(relation_vector(h, index), {index: Fraction(1)})
        if residual is not None:
            redundant.add(index)
    return frozenset(redundant)


def span_rank(h: Hypergraph, indices: list[int] | None = None) -> int:
    """Rank of the affine relation vectors of the chosen edges."""
    echelon = SparseEchelon(constant_pivots=True)
    for index in range(h.num_edges) if indices is None else indices:
        echelon.insert(relation_vector(h, index), {index: Fraction(1)})
    return echelon.rank
