"""
Exact rational helpers: parsing, online row reduction with provenance and
an exact positive-semidefiniteness test.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

# Key of the right-hand side in an equation stored as {variable: coefficient}.
CONSTANT = -1


def parse_rational(text: str) -> Fraction:
    """
    Parse `p/q`, an integer or a decimal into an exact Fraction.

    Raises:
        ValueError: If the text is not a rational literal.
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(value: Fraction | int) -> str:
    return str(Fraction(value))


@dataclass
class EchelonRow:
    """A row of the echelon form and the input combination that produced it."""
    coefficients: dict[int, Fraction]
    provenance: dict[int, Fraction] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_contradiction(self) -> bool:
        """0 = b with b != 0."""
        return set(self.coefficients) == {CONSTANT}


def _axpy(target: dict[int, Fraction], scale: Fraction, source: Mapping[int, Fraction]) -> None:
    """target += scale * source, dropping cancelled entries."""
    for key, value in source.items():
        updated = target.get(key, Fraction(0)) + scale * value
        if updated:
            target[key] = updated
        else:
            target.pop(key, None)


class SparseEchelon:
    """
    Online reduced row echelon form over the rationals.

    Every stored row remembers which input rows (by label) were combined to
    produce it, so that an inconsistent or dependent input can be explained
    as an explicit rational combination of the inputs.
    """

    def __init__(self, constant_pivots: bool = False) -> None:
        """
        Args:
            constant_pivots: Treat the CONSTANT key as an ordinary coordinate
                (span membership) instead of a right-hand side (affine systems).
        """
        self.constant_pivots = constant_pivots
        self.rows: dict[int, EchelonRow] = {}

    def reduce(
        self,
        coefficients: Mapping[int, Fraction],
        provenance: Mapping[int, Fraction],
    ) -> EchelonRow:
        row = EchelonRow(
            {k: Fraction(v) for k, v in coefficients.items() if v},
            {k: Fraction(v) for k, v in provenance.items() if v},
        )
        for pivot in [k for k in row.coefficients if k in self.rows]:
            factor = row.coefficients.get(pivot)
            if not factor:
                continue
            pivot_row = self.rows[pivot]
            _axpy(row.coefficients, -factor, pivot_row.coefficients)
            _axpy(row.provenance, -factor, pivot_row.provenance)
        return row

    def insert(
        self,
        coefficients: Mapping[int, Fraction],
        provenance: Mapping[int, Fraction],
    ) -> EchelonRow | None:
        """
        Add a row.

        Returns:
            None if the row was independent and became a new pivot row,
            otherwise the fully reduced residual (zero or a contradiction).
        """
        row = self.reduce(coefficients, provenance)
        candidates = [
            k for k in row.coefficients if k != CONSTANT or self.constant_pivots
        ]
        if not candidates:
            return row

        pivot = min(candidates)
        scale = 1 / row.coefficients[pivot]
        row.coefficients = {k: v * scale for k, v in row.coefficients.items()}
        row.provenance = {k: v * scale for k, v in row.provenance.items()}

        for other in self.rows.values():
            factor = other.coefficients.get(pivot)
            if factor:
                _axpy(other.coefficients, -factor, row.coefficients)
                _axpy(other.provenance, -factor, row.provenance)
        self.rows[pivot] = row
        return None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def determined(self) -> dict[int, Fraction]:
        """Variables whose value the system fixes, with those values."""
        values = {}
        for pivot, row in self.rows.items():
            if set(row.coefficients) <= {pivot, CONSTANT}:
                values[pivot] = row.coefficients.get(CONSTANT, Fraction(0))
        return values

    def particular_solution(self, size: int) -> list[Fraction]:
        """Solution with every free variable set to zero."""
        solution = [Fraction(0)] * size
        for pivot, row in self.rows.items():
            if pivot != CONSTANT:
                solution[pivot] = row.coefficients.get(CONSTANT, Fraction(0))
        return solution

    def free_variables(self, size: int) -> list[int]:
        return [k for k in range(size) if k not in self.rows]

    def nullspace_basis(self, size: int) -> list[list[Fraction]]:
        """One direction per free variable spanning the homogeneous solutions."""
        basis = []
        for free in self.free_variables(size):
            direction = [Fraction(0)] * size
            direction[free] = Fraction(1)
            for pivot, row in self.rows.items():
                coefficient = row.coefficients.get(free)
                if coefficient and pivot != CONSTANT:
                    direction[pivot] = -coefficient
            basis.append(direction)
        return basis


def psd_failure(matrix: Sequence[Sequence[Fraction]]) -> str | None:
    """
    Exact PSD test by symmetric LDL^T elimination with diagonal pivoting.

    Returns:
        None when the matrix is positive semidefinite, otherwise the first
        failing pivot described in words.
    """
    n = len(matrix)
    work = [[Fraction(x) for x in row] for row in matrix]
    for i in range(n):
        if len(work[i]) != n:
            return f"row {i} has length {len(work[i])}, expected {n}"
        for j in range(i):
            if work[i][j] != work[j][i]:
                return f"matrix is not symmetric at ({j}, {i})"

    remaining = list(range(n))
    while remaining:
        positive = [i for i in remaining if work[i][i] > 0]
        if not positive:
            for i in remaining:
                if work[i][i] < 0:
                    return f"negative pivot {work[i][i]} at index {i}"
            for i in remaining:
                for j in remaining:
                    if work[i][j] != 0:
                        return f"zero pivot at index {i} with nonzero entry at ({i}, {j})"
            return None

        pivot = positive[0]
        remaining.remove(pivot)
        d = work[pivot][pivot]
        for i in remaining:
            factor = work[i][pivot]
            if not factor:
                continue
            for j in remaining:
                if work[pivot][j]:
                    work[i][j] -= factor * work[pivot][j] / d
    return None
