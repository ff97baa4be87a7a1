"""
Relation kinds that can be imposed on the generating projections.
"""

from dataclasses import dataclass
from enum import Enum

from src.models.errors import TransformError


class RelationKind(Enum):
    """Relations that keep the algebra a free hypergraph C*-algebra."""
    ZERO = "zero"
    EQUAL = "equal"
    ORTHOGONAL = "orthogonal"
    LEQ = "leq"
    COMMUTE = "commute"
    SUM_LEQ_ONE = "sum-leq-one"

    @property
    def arity(self) -> int:
        return 1 if self is RelationKind.ZERO else 2


@dataclass(frozen=True)
class Relation:
    """One relation instance, e.g. ORTHOGONAL(v, w) meaning p_v p_w = 0."""
    kind: RelationKind
    v: str
    w: str | None = None

    def __post_init__(self) -> None:
        if self.kind.arity == 2:
            if self.w is None:
                raise TransformError(f"{self.kind.name} needs two vertices")
            if self.v == self.w:
                raise TransformError(f"{self.kind.name} needs two distinct vertices, got {self.v!r}")
        elif self.w is not None:
            raise TransformError(f"{self.kind.name} takes a single vertex")

    @property
    def vertices(self) -> tuple[str, ...]:
        return (self.v,) if self.w is None else (self.v, self.w)

    def __str__(self) -> str:
        return f"{self.kind.name}({', '.join(self.vertices)})"
