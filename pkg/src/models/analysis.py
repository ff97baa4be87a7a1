"""
Data models shared by the analyzers: assignments, representations, moment
problems, certificates and feasibility verdicts.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from src.models.hypergraph import FRESH_PREFIX
from src.models.polynomial import Word


@dataclass(frozen=True)
class Assignment:
    """Truth value per vertex; a classical (1-dimensional) solution."""
    truth: tuple[tuple[str, bool], ...]

    def __getitem__(self, vertex: str) -> bool:
        return dict(self.truth)[vertex]

    def true_vertices(self) -> list[str]:
        return [v for v, value in self.truth if value]

    def projected(self) -> "Assignment":
        """Forget gadget vertices minted with the reserved prefix."""
        return Assignment(tuple((v, t) for v, t in self.truth if not v.startswith(FRESH_PREFIX)))

    def __str__(self) -> str:
        return " ".join(f"{v}={int(t)}" for v, t in self.truth)


@dataclass(frozen=True)
class CapExceeded:
    """Explicit signal that an enumeration hit its cap; nothing is truncated silently."""
    cap: int
    what: str = "solutions"

    def __str__(self) -> str:
        return f"CAP {self.what} > {self.cap}"


@dataclass(eq=False)
class Representation:
    """
    Finite-dimensional representation: one d x d matrix per vertex.

    Exact representations hold object arrays of Fraction, numeric ones float arrays.
    """
    dimension: int
    matrices: dict[str, np.ndarray]

    @property
    def exact(self) -> bool:
        return all(m.dtype == object for m in self.matrices.values())

    def matrix(self, vertex: str) -> np.ndarray:
        return self.matrices[vertex]

    def identity(self) -> np.ndarray:
        if self.exact:
            eye = np.full((self.dimension, self.dimension), Fraction(0), dtype=object)
            for i in range(self.dimension):
                eye[i, i] = Fraction(1)
            return eye
        return np.eye(self.dimension)


@dataclass(frozen=True)
class LinearConstraint:
    """Affine equation sum(c_k * y_k) = rhs over moment variables."""
    coefficients: tuple[tuple[int, Fraction], ...]
    rhs: Fraction
    label: str = ""


@dataclass(eq=False)
class MomentProblem:
    """
    Moment relaxation at a fixed level.

    `entries[i, j]` is the variable of the (i, j) moment-matrix entry, or -1
    when the underlying word reduces to zero. Constraint 0 fixes the unit
    moment to 1; the first `plain_constraints` rows (unit included) are the
    edge relations without localizing words.
    """
    level: int
    tracial: bool
    localizing: bool
    basis: tuple[Word, ...]
    variables: tuple[Word, ...]
    entry_index: dict[Word, int]
    entries: np.ndarray
    constraints: tuple[LinearConstraint, ...]
    plain_constraints: int = 1

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def unit_variable(self) -> int:
        return self.entry_index[()]

    def class_sizes(self) -> np.ndarray:
        """Number of matrix entries carrying each variable."""
        flat = self.entries.ravel()
        return np.bincount(flat[flat >= 0], minlength=self.num_variables)


@dataclass(frozen=True)
class FarkasCertificate:
    """
    Rational proof that no moment matrix satisfies the constraints.

    `weights` multiply the listed constraints; `gram` holds the upper triangle
    of the PSD matrix S whose per-class sums must equal the combined
    constraint coefficients.
    """
    weights: tuple[tuple[int, Fraction], ...]
    gram: tuple[tuple[int, int, Fraction], ...] = ()
    min_eigenvalue: float | None = None

    def objective(self, problem: MomentProblem) -> Fraction:
        """sum(y_i * b_i) over the weighted constraints."""
        return sum(
            (w * problem.constraints[i].rhs for i, w in self.weights),
            Fraction(0),
        )


class VerdictKind(Enum):
    """Fixed verdict vocabulary of the moment relaxation."""
    FEASIBLE_APPROX = "FEASIBLE_APPROX"
    CERTIFIED_INFEASIBLE = "CERTIFIED_INFEASIBLE"
    LIKELY_INFEASIBLE = "LIKELY_INFEASIBLE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(eq=False)
class FeasibilityVerdict:
    """Outcome of a moment-relaxation feasibility run."""
    kind: VerdictKind
    matrix: np.ndarray | None = None
    residual: float | None = None
    certificate: FarkasCertificate | None = None
    residual_trace: list[float] = field(default_factory=list)
    iterations: int = 0
    min_eigenvalue: float | None = None

    @property
    def certified(self) -> bool:
        return self.kind is VerdictKind.CERTIFIED_INFEASIBLE


@dataclass(eq=False)
class RepSearchResult:
    """Best start of a representation search; `rep` is set only when found."""
    found: bool
    dimension: int
    objective: float
    start: int
    rep: Representation | None = None
