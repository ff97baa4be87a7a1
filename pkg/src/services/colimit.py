"""
Colimits of finite diagrams of finite-dimensional commutative C*-algebras,
encoded as hypergraphs with the same universal property.
"""

from src.models.diagram import DiagramObject, DiagramPresentation, Morphism
from src.models.errors import ParseError
from src.models.hypergraph import Hypergraph, is_valid_identifier
from src.models.relations import Relation, RelationKind
from src.services.core import tokenize
from src.services.transforms import impose_relation
from src.utils.fresh import FreshNames


def parse_diagram(text: str) -> DiagramPresentation:
    """
    Parse the `.diag` format.

    `object J 3` declares J with points 0..2; `morphism f J K : 0>1 1>0`
    declares f : J -> K with spectrum map spec K -> spec J given pointwise
    as `point_of_K>point_of_J`. Missing identities are added.

    Raises:
        ParseError: On syntax errors or references to undeclared objects.
        DiagramError: If a spectrum map is not total or not well-typed.
    """
    objects: dict[str, DiagramObject] = {}
    morphisms: list[Morphism] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = tokenize(raw)
        if not tokens:
            continue
        (column, keyword), rest = tokens[0], tokens[1:]

        if keyword == "object":
            if len(rest) != 2 or not rest[1][1].isdigit():
                raise ParseError("expected 'object <name> <point count>'", lineno, column)
            (name_col, name), (_, count) = rest
            if not is_valid_identifier(name) or "." in name:
                raise ParseError(f"invalid object name {name!r}", lineno, name_col)
            if name in objects:
                raise ParseError(f"object {name!r} declared twice", lineno, name_col)
            objects[name] = DiagramObject(name, tuple(str(p) for p in range(int(count))))

        elif keyword == "morphism":
            if len(rest) < 4 or rest[3][1] != ":":
                raise ParseError("expected 'morphism <name> <source> <target> : <p>><q> ...'", lineno, column)
            (_, name), (source_col, source), (target_col, target) = rest[:3]
            for obj, col in ((source, source_col), (target, target_col)):
                if obj not in objects:
                    raise ParseError(f"morphism {name!r} references unknown object {obj!r}", lineno, col)
            if any(m.name == name for m in morphisms):
                raise ParseError(f"morphism {name!r} declared twice", lineno, rest[0][0])
            spectrum_map: dict[str, str] = {}
            for col, item in rest[4:]:
                left, sep, right = item.partition(">")
                if not sep or not left or not right:
                    raise ParseError(f"expected '<point>><point>', got {item!r}", lineno, col)
                if left in spectrum_map:
                    raise ParseError(f"point {left} mapped twice", lineno, col)
                spectrum_map[left] = right
            morphisms.append(Morphism(name, source, target, tuple(spectrum_map.items())))

        else:
            raise ParseError(f"unknown statement {keyword!r}", lineno, column)

    if not objects:
        raise ParseError("empty input: no objects declared")
    return DiagramPresentation(tuple(objects.values()), tuple(morphisms)).with_identities()


def vertex_name(obj: str, point: str) -> str:
    return f"{obj}.{point}"


def encode_colimit(d: DiagramPresentation, normalize: bool = False) -> Hypergraph:
    """
    Hypergraph whose algebra is the colimit of the diagram.

    For each morphism f : J -> K and point v of J there is one edge
    {J.v} + {K.w : f(w) != v}, where f acts on spectra from K to J. Identity
    morphisms give the partition edge of each object.

    A non-identity endomorphism would need J.v twice in one edge, so its
    target side uses fresh copies tied to the originals by EQUAL gadgets.

    Args:
        d: Diagram with identities present.
        normalize: Drop duplicate edges (identities repeat the partition edge).
    """
    d = d.with_identities()
    vertices = [vertex_name(obj.name, p) for obj in d.objects for p in obj.points]
    names = FreshNames(vertices)
    # an object with empty spectrum is the zero algebra
    edges = [frozenset() for obj in d.objects if not obj.points]
    ties: list[tuple[str, str]] = []
    for morphism in d.morphisms:
        mapping = morphism.mapping
        target_names = {w: vertex_name(morphism.target, w) for w in d.spectrum(morphism.target)}
        if morphism.source == morphism.target and not morphism.is_identity():
            for w, original in target_names.items():
                target_names[w] = names.mint()
                ties.append((target_names[w], original))
        for v in d.spectrum(morphism.source):
            edge = {vertex_name(morphism.source, v)}
            edge |= {target_names[w] for w in target_names if mapping[w] != v}
            edges.append(frozenset(edge))

    h = Hypergraph.from_edges(edges, vertices)
    for copy, original in ties:
        h = impose_relation(h, Relation(RelationKind.EQUAL, copy, original), names)
    return h.deduplicated() if normalize else h


def compatible_point_families(d: DiagramPresentation) -> list[dict[str, str]]:
    """
    Choices of one point per object such that f(x_K) = x_J for every
    morphism f : J -> K. These are the cocones into the two-point algebra.
    """
    d = d.with_identities()
    families: list[dict[str, str]] = [{}]
    for obj in d.objects:
        families = [{**f, obj.name: p} for f in families for p in obj.points]
    return [
        f for f in families
        if all(m.mapping[f[m.target]] == f[m.source] for m in d.morphisms)
    ]
