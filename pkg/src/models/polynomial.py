"""
Noncommutative *-polynomials in the generating projections.
"""

from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

Word = tuple[str, ...]
UNIT: Word = ()


def collapse_repeats(word: Word) -> Word:
    """Apply idempotency p_v p_v = p_v to consecutive equal letters."""
    out: list[str] = []
    for letter in word:
        if not out or out[-1] != letter:
            out.append(letter)
    return tuple(out)


def word_order(word: Word) -> tuple[int, Word]:
    """Graded lexicographic order: shorter words first."""
    return (len(word), word)


def format_word(word: Word) -> str:
    return ".".join(word) if word else "1"


@dataclass(frozen=True)
class StarPolynomial:
    """
    Finite rational combination of words.

    Generators are self-adjoint, so the adjoint of a word is its reversal.
    Terms are stored sorted, with repeats collapsed and no zero coefficients.
    Orthogonality reduction needs the hypergraph and happens in
    `src.services.algebra`.
    """
    terms: tuple[tuple[Word, Fraction], ...] = ()

    @classmethod
    def from_terms(cls, mapping: Mapping[Word, Rational | int]) -> "StarPolynomial":
        combined: dict[Word, Fraction] = defaultdict(Fraction)
        for word, coefficient in mapping.items():
            combined[collapse_repeats(tuple(word))] += Fraction(coefficient)
        kept = sorted(
            ((w, c) for w, c in combined.items() if c != 0),
            key=lambda item: word_order(item[0]),
        )
        return cls(tuple(kept))

    @classmethod
    def constant(cls, value: Rational | int) -> "StarPolynomial":
        return cls.from_terms({UNIT: value})

    @classmethod
    def generator(cls, vertex: str) -> "StarPolynomial":
        return cls.from_terms({(vertex,): 1})

    @property
    def as_dict(self) -> dict[Word, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def letters(self) -> set[str]:
        return {letter for word, _ in self.terms for letter in word}

    def adjoint(self) -> "StarPolynomial":
        return StarPolynomial.from_terms({tuple(reversed(w)): c for w, c in self.terms})

    def __add__(self, other: "StarPolynomial | Rational | int") -> "StarPolynomial":
        other = _coerce(other)
        merged: dict[Word, Fraction] = defaultdict(Fraction)
        for word, coefficient in self.terms + other.terms:
            merged[word] += coefficient
        return StarPolynomial.from_terms(merged)

    __radd__ = __add__

    def __neg__(self) -> "StarPolynomial":
        return StarPolynomial(tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other: "StarPolynomial | Rational | int") -> "StarPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: Rational | int) -> "StarPolynomial":
        return _coerce(other) - self

    def __mul__(self, other: "StarPolynomial | Rational | int") -> "StarPolynomial":
        other = _coerce(other)
        product: dict[Word, Fraction] = defaultdict(Fraction)
        for left, a in self.terms:
            for right, b in other.terms:
                product[collapse_repeats(left + right)] += a * b
        return StarPolynomial.from_terms(product)

    def __rmul__(self, other: Rational | int) -> "StarPolynomial":
        return _coerce(other) * self

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for index, (word, coefficient) in enumerate(self.terms):
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            if not word:
                body = str(magnitude)
            elif magnitude == 1:
                body = format_word(word)
            else:
                body = f"{magnitude}*{format_word(word)}"
            if index == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)


def _coerce(value: "StarPolynomial | Rational | int") -> StarPolynomial:
    if isinstance(value, StarPolynomial):
        return value
    return StarPolynomial.constant(value)
