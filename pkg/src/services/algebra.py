"""
*-polynomial arithmetic modulo the hypergraph relations.

The rewriting here is sound but not complete: a polynomial that normalizes
to zero is zero in the algebra, but zero elements need not normalize to
zero.
"""

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

import numpy as np

from src.models.analysis import Representation
from src.models.errors import HypergraphError, ParseError, RepresentationError
from src.models.hypergraph import Hypergraph
from src.models.polynomial import StarPolynomial, Word
from src.services.core import tokenize
from src.utils.rationals import parse_rational


def reduce_word(h: Hypergraph, word: Word) -> Word | None:
    """
    Apply p_v p_v = p_v and p_v p_w = 0 (v, w sharing an edge).

    Returns:
        The reduced word, or None when the word is zero.

    Raises:
        HypergraphError: If a letter is not a vertex of h.
    """
    stack: list[str] = []
    neighbours = h.neighbours
    for letter in word:
        if letter not in neighbours:
            raise HypergraphError(f"unknown vertex {letter!r}")
        if stack:
            if stack[-1] == letter:
                continue
            if letter in neighbours[stack[-1]]:
                return None
        stack.append(letter)
    return tuple(stack)


def designated_substitutions(h: Hypergraph) -> dict[str, tuple[str, ...]]:
    """
    The largest vertex of each edge and the partners it is rewritten into.

    p_max = 1 - sum(p_v for the other vertices), using the first edge in
    which the vertex is largest.
    """
    table: dict[str, tuple[str, ...]] = {}
    for edge in h.edges:
        if edge:
            top = max(edge)
            table.setdefault(top, tuple(sorted(edge - {top})))
    return table


def normalize(h: Hypergraph, p: StarPolynomial) -> StarPolynomial:
    """
    Rewrite p into a normal form equal to p in the algebra.

    Words are reduced, then every designated vertex is substituted by one
    minus its edge partners, repeatedly. Substitutions only introduce
    strictly smaller letters, so the process terminates.
    """
    if any(not edge for edge in h.edges):
        return StarPolynomial()
    substitutions = designated_substitutions(h)
    result: dict[Word, Fraction] = defaultdict(Fraction)
    pending = list(p.terms)
    while pending:
        word, coefficient = pending.pop()
        reduced = reduce_word(h, word)
        if reduced is None:
            continue
        position = next((i for i, letter in enumerate(reduced) if letter in substitutions), None)
        if position is None:
            result[reduced] += coefficient
            continue
        left, right = reduced[:position], reduced[position + 1:]
        pending.append((left + right, coefficient))
        for partner in substitutions[reduced[position]]:
            pending.append((left + (partner,) + right, -coefficient))
    return StarPolynomial.from_terms(result)


def reduce_polynomial(h: Hypergraph, p: StarPolynomial) -> StarPolynomial:
    """Word reduction only, without edge substitutions."""
    result: dict[Word, Fraction] = defaultdict(Fraction)
    for word, coefficient in p.terms:
        reduced = reduce_word(h, word)
        if reduced is not None:
            result[reduced] += coefficient
    return StarPolynomial.from_terms(result)


def word_matrix(rep: Representation, word: Word) -> np.ndarray:
    """Product of the matrices of the letters; the identity for the unit."""
    result = rep.identity()
    for letter in word:
        if letter not in rep.matrices:
            raise RepresentationError(f"representation has no matrix for {letter!r}")
        result = result @ rep.matrices[letter]
    return result


def evaluate(p: StarPolynomial, rep: Representation) -> np.ndarray:
    """
    Substitute the representation's matrices into p.

    Exact representations are evaluated in rational arithmetic, others in
    floating point.

    Raises:
        RepresentationError: On a missing vertex or mismatched dimensions.
    """
    for vertex, matrix in rep.matrices.items():
        if matrix.shape != (rep.dimension, rep.dimension):
            raise RepresentationError(
                f"matrix of {vertex!r} has shape {matrix.shape}, expected "
                f"{(rep.dimension, rep.dimension)}"
            )
    total = rep.identity() * (Fraction(0) if rep.exact else 0.0)
    for word, coefficient in p.terms:
        scale = coefficient if rep.exact else float(coefficient)
        total = total + scale * word_matrix(rep, word)
    return total


def segment_word(text: str, vertices: frozenset[str]) -> Word:
    """
    Split dot-joined text into vertex names.

    Vertex names may themselves contain dots; the longest matching name is
    tried first at every position.

    Raises:
        ValueError: If the text cannot be split into known vertices.
    """
    lengths = sorted({len(v) for v in vertices}, reverse=True)

    @lru_cache(maxsize=None)
    def split_from(start: int) -> Word | None:
        if start == len(text):
            return ()
        for size in lengths:
            candidate = text[start:start + size]
            end = start + size
            if candidate in vertices and (end == len(text) or text[end] == "."):
                rest = split_from(end + 1) if end < len(text) else ()
                if rest is not None:
                    return (candidate,) + rest
        return None

    found = split_from(0)
    if not found:
        raise ValueError(f"cannot read {text!r} as a word in the vertices")
    return found


def parse_polynomial(text: str, h: Hypergraph) -> StarPolynomial:
    """
    Parse `3/2*a.b.c + 1 - b`: terms separated by spaced `+`/`-`, a term is a
    rational, a word, or `coefficient*word`; the unit is written `1`.

    Raises:
        ParseError: On malformed terms or unknown vertices.
    """
    vertices = frozenset(h.vertices)
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")

    terms: dict[Word, Fraction] = defaultdict(Fraction)
    sign = 1
    expect_term = True
    for index, (column, token) in enumerate(tokens):
        if not expect_term:
            if token not in ("+", "-"):
                raise ParseError(f"expected '+' or '-', got {token!r}", 1, column)
            sign = 1 if token == "+" else -1
            expect_term = True
            continue
        if index == 0 and token in ("+", "-"):
            sign = 1 if token == "+" else -1
            continue
        if len(token) > 1 and token[0] in "+-" and token not in vertices:
            if token[0] == "-":
                sign = -sign
            token, column = token[1:], column + 1
        coefficient, word = _parse_term(token, vertices, column)
        terms[word] += sign * coefficient
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError("polynomial ends with an operator", 1, tokens[-1][0])
    return StarPolynomial.from_terms(terms)


def _parse_term(token: str, vertices: frozenset[str], column: int) -> tuple[Fraction, Word]:
    try:
        return parse_rational(token), ()
    except ValueError:
        pass
    try:
        return Fraction(1), segment_word(token, vertices)
    except ValueError:
        pass
    head, star, tail = token.partition("*")
    if star:
        try:
            coefficient = parse_rational(head)
        except ValueError:
            raise ParseError(f"bad coefficient {head!r}", 1, column) from None
        if tail == "1":
            return coefficient, ()
        try:
            return coefficient, segment_word(tail, vertices)
        except ValueError as exc:
            raise ParseError(str(exc), 1, column + len(head) + 1) from None
    raise ParseError(f"cannot read term {token!r}", 1, column)
