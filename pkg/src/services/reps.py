"""
Finite-dimensional representations: exact and numerical verification,
construction from classical solutions, numerical search and the `.rep`
text format.
"""

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from src.config.settings import settings
from src.models.analysis import Assignment, Representation, RepSearchResult
from src.models.errors import ParseError, RepresentationError
from src.models.hypergraph import Hypergraph
from src.services.core import tokenize
from src.ui.styles import progress_bar
from src.utils.rationals import format_rational, parse_rational

# A start counts as converged below this objective value.
FOUND_OBJECTIVE = 1e-18
ARMIJO_FACTOR = 1e-4
MAX_BACKTRACKS = 60


def _check_shapes(h: Hypergraph, rep: Representation) -> None:
    for vertex in h.vertices:
        if vertex not in rep.matrices:
            raise RepresentationError(f"representation has no matrix for {vertex!r}")
    for vertex, matrix in rep.matrices.items():
        if matrix.shape != (rep.dimension, rep.dimension):
            raise RepresentationError(
                f"matrix of {vertex!r} has shape {matrix.shape}, expected "
                f"{(rep.dimension, rep.dimension)}"
            )


def verify_representation(h: Hypergraph, rep: Representation, tol: float | None = None) -> list[str]:
    """
    Check that every vertex is a projection and every edge sums to the identity.

    Exact representations are compared for equality in rational arithmetic;
    numeric ones in operator norm against `tol`.

    Returns:
        The violations, empty when the representation is valid.

    Raises:
        RepresentationError: On a missing vertex or mismatched dimensions.
    """
    _check_shapes(h, rep)
    tol = settings.TOL if tol is None else tol
    identity = rep.identity()

    if rep.exact:
        def deviation(matrix: np.ndarray) -> float:
            return 0.0 if all(x == 0 for x in matrix.ravel()) else float("inf")
    else:
        def deviation(matrix: np.ndarray) -> float:
            return float(np.linalg.norm(matrix.astype(float), 2)) if matrix.size else 0.0

    def breaks(amount: float) -> bool:
        return amount > 0 if rep.exact else amount > tol

    violations = []
    for vertex in h.vertices:
        p = rep.matrices[vertex]
        amount = deviation(p @ p - p)
        if breaks(amount):
            violations.append(f"{vertex}: not idempotent ({_describe(amount)})")
        amount = deviation(p - p.T)
        if breaks(amount):
            violations.append(f"{vertex}: not symmetric ({_describe(amount)})")
    for index, edge in enumerate(h.edges):
        total = identity * 0
        for vertex in sorted(edge):
            total = total + rep.matrices[vertex]
        amount = deviation(total - identity)
        if breaks(amount):
            members = " ".join(sorted(edge)) or "(empty)"
            violations.append(f"edge {index} [{members}]: does not sum to the identity ({_describe(amount)})")
    return violations


def _describe(amount: float) -> str:
    return "exact mismatch" if amount == float("inf") else f"norm {amount:.3e}"


def classical_to_representation(h: Hypergraph, assignments: list[Assignment]) -> Representation:
    """
    Diagonal representation whose t-th diagonal entry follows the t-th solution.

    Raises:
        RepresentationError: On an empty list.
    """
    if not assignments:
        raise RepresentationError("need at least one assignment")
    d = len(assignments)
    matrices = {}
    for vertex in h.vertices:
        matrix = np.full((d, d), Fraction(0), dtype=object)
        for t, assignment in enumerate(assignments):
            matrix[t, t] = Fraction(int(assignment[vertex]))
        matrices[vertex] = matrix
    return Representation(d, matrices)


def direct_sum(reps: list[Representation]) -> Representation:
    """Block-diagonal sum of representations on the same vertices."""
    if not reps:
        raise RepresentationError("direct sum of no representations")
    vertices = set(reps[0].matrices)
    if any(set(r.matrices) != vertices for r in reps):
        raise RepresentationError("representations cover different vertices")
    exact = all(r.exact for r in reps)
    d = sum(r.dimension for r in reps)
    matrices = {}
    for vertex in reps[0].matrices:
        if exact:
            block = np.full((d, d), Fraction(0), dtype=object)
        else:
            block = np.zeros((d, d))
        offset = 0
        for r in reps:
            size = r.dimension
            block[offset:offset + size, offset:offset + size] = r.matrices[vertex]
            offset += size
        matrices[vertex] = block
    return Representation(d, matrices)


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    """Operator norm of ab - ba."""
    commutator = (a @ b - b @ a).astype(float)
    return float(np.linalg.norm(commutator, 2)) if commutator.size else 0.0


def edge_indices(h: Hypergraph) -> list[np.ndarray]:
    position = {v: i for i, v in enumerate(h.vertices)}
    return [np.array([position[v] for v in sorted(edge)], dtype=np.int64) for edge in h.edges]


def objective(stack: np.ndarray, edges: list[np.ndarray]) -> float:
    """
    Squared Frobenius defects: idempotence and symmetry of every matrix,
    plus every edge sum against the identity.

    Args:
        stack: Array of shape (vertices, d, d).
        edges: Vertex positions per edge.
    """
    transposed = np.swapaxes(stack, 1, 2)
    idempotence = stack @ stack - stack
    symmetry = stack - transposed
    value = float(np.sum(idempotence**2) + np.sum(symmetry**2))
    identity = np.eye(stack.shape[1])
    for edge in edges:
        value += float(np.sum((stack[edge].sum(axis=0) - identity) ** 2))
    return value


def gradient(stack: np.ndarray, edges: list[np.ndarray]) -> np.ndarray:
    """Analytic gradient of `objective` with respect to every matrix entry."""
    transposed = np.swapaxes(stack, 1, 2)
    idempotence = stack @ stack - stack
    grad = 2 * (idempotence @ transposed + transposed @ idempotence - idempotence)
    grad += 4 * (stack - transposed)
    identity = np.eye(stack.shape[1])
    for edge in edges:
        defect = stack[edge].sum(axis=0) - identity
        np.add.at(grad, edge, 2 * defect)
    return grad


def _descend(
    stack: np.ndarray,
    edges: list[np.ndarray],
    budget: int,
) -> tuple[np.ndarray, float]:
    """Gradient descent with Barzilai-Borwein steps and Armijo backtracking."""
    value = objective(stack, edges)
    grad = gradient(stack, edges)
    step = 1e-2
    for _ in range(budget):
        if value < FOUND_OBJECTIVE * 1e-2:
            break
        slope = float(np.sum(grad**2))
        if slope == 0.0:
            break
        for _ in range(MAX_BACKTRACKS):
            candidate = stack - step * grad
            candidate_value = objective(candidate, edges)
            if candidate_value <= value - ARMIJO_FACTOR * step * slope:
                break
            step /= 2
        else:
            break
        candidate_grad = gradient(candidate, edges)
        s = (candidate - stack).ravel()
        y = (candidate_grad - grad).ravel()
        curvature = float(s @ y)
        step = float(s @ s) / curvature if curvature > 0 else step * 2
        stack, value, grad = candidate, candidate_value, candidate_grad
    return stack, value


def _run_start(
    seed: np.random.SeedSequence,
    count: int,
    d: int,
    edges: list[np.ndarray],
    budget: int,
) -> tuple[float, np.ndarray]:
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((count, d, d))
    start = (raw + np.swapaxes(raw, 1, 2)) / (2 * np.sqrt(d)) + 0.5 * np.eye(d)
    stack, value = _descend(start, edges, budget)
    return value, stack


def search_representation(
    h: Hypergraph,
    d: int,
    seed: int | None = None,
    starts: int | None = None,
    budget: int | None = None,
    jobs: int = 1,
    tol: float | None = None,
    show_progress: bool | None = None,
) -> RepSearchResult:
    """
    Multi-start numerical search for a d-dimensional representation.

    Each start descends from a seeded random symmetric point; the start with
    the lowest objective wins, ties broken by start index. The result is
    FOUND only when the objective is below 1e-18 and verification passes, so
    FOUND is self-certifying; NOT_FOUND says nothing about existence.

    Args:
        h: Hypergraph.
        d: Dimension, at least 1.
        seed: Root seed; every start draws from its own spawned stream.
        starts: Number of random starts.
        budget: Iterations per start.
        jobs: Worker processes.
        tol: Verification tolerance.
        show_progress: Override the progress-bar setting.
    """
    if d < 1:
        raise RepresentationError(f"dimension must be at least 1, got {d}")
    if starts is not None and starts < 1:
        raise RepresentationError(f"need at least one start, got {starts}")
    seed = settings.SEED if seed is None else seed
    starts = settings.REP_STARTS if starts is None else starts
    budget = settings.REP_BUDGET if budget is None else budget
    tol = settings.TOL if tol is None else tol

    edges = edge_indices(h)
    count = h.num_vertices
    seeds = np.random.SeedSequence(seed).spawn(starts)
    arguments = (seeds, [count] * starts, [d] * starts, [edges] * starts, [budget] * starts)
    outcomes = []
    with progress_bar(show_progress) as bar:
        task = bar.add_task(f"Searching dimension {d}", total=starts)
        if jobs > 1 and starts > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for outcome in pool.map(_run_start, *arguments):
                    outcomes.append(outcome)
                    bar.advance(task)
        else:
            for outcome in map(_run_start, *arguments):
                outcomes.append(outcome)
                bar.advance(task)

    best = min(range(starts), key=lambda i: (outcomes[i][0], i))
    value, stack = outcomes[best]
    rep = Representation(d, {v: stack[i] for i, v in enumerate(h.vertices)})
    found = value < FOUND_OBJECTIVE and not verify_representation(h, rep, tol)
    return RepSearchResult(found, d, value, best, rep if found else None)


def parse_rep(text: str) -> Representation:
    """
    Parse the `.rep` format: `dim d`, then per vertex `mat v` followed by d
    rows of d entries. All-rational input gives an exact representation.

    Raises:
        ParseError: On syntax errors or wrong row lengths.
    """
    rows: list[tuple[int, list[tuple[int, str]]]] = [
        (lineno, tokenize(raw)) for lineno, raw in enumerate(text.splitlines(), 1)
    ]
    rows = [(lineno, tokens) for lineno, tokens in rows if tokens]
    if not rows:
        raise ParseError("empty representation file")

    lineno, tokens = rows[0]
    if len(tokens) != 2 or tokens[0][1] != "dim" or not tokens[1][1].isdigit() or int(tokens[1][1]) < 1:
        raise ParseError("expected 'dim <positive integer>'", lineno, tokens[0][0])
    d = int(tokens[1][1])

    texts: dict[str, list[list[str]]] = {}
    position = 1
    while position < len(rows):
        lineno, tokens = rows[position]
        if tokens[0][1] != "mat" or len(tokens) != 2:
            raise ParseError("expected 'mat <vertex>'", lineno, tokens[0][0])
        vertex = tokens[1][1]
        if vertex in texts:
            raise ParseError(f"matrix for {vertex!r} given twice", lineno, tokens[1][0])
        block = rows[position + 1:position + 1 + d]
        if len(block) != d:
            raise ParseError(f"matrix for {vertex!r} needs {d} rows", lineno, tokens[0][0])
        matrix = []
        for row_line, row_tokens in block:
            if len(row_tokens) != d:
                raise ParseError(f"expected {d} entries, got {len(row_tokens)}", row_line, row_tokens[0][0])
            for column, entry in row_tokens:
                try:
                    parse_rational(entry)
                except ValueError:
                    raise ParseError(f"bad matrix entry {entry!r}", row_line, column) from None
            matrix.append([entry for _, entry in row_tokens])
        texts[vertex] = matrix
        position += 1 + d

    exact = not any(
        any(mark in entry.lower() for mark in ".e")
        for matrix in texts.values() for row in matrix for entry in row
    )
    if exact:
        matrices = {v: np.array([[parse_rational(x) for x in row] for row in m], dtype=object) for v, m in texts.items()}
    else:
        matrices = {v: np.array([[float(parse_rational(x)) for x in row] for row in m]) for v, m in texts.items()}
    return Representation(d, matrices)


def _format_float(value: float) -> str:
    """Shortest round-tripping decimal, always marked as a float."""
    text = repr(float(value))
    return text if any(mark in text for mark in ".e") else text + ".0"


def serialize_rep(rep: Representation) -> str:
    lines = [f"dim {rep.dimension}"]
    for vertex, matrix in rep.matrices.items():
        lines.append(f"mat {vertex}")
        for row in matrix:
            if rep.exact:
                lines.append(" ".join(format_rational(x) for x in row))
            else:
                lines.append(" ".join(_format_float(x) for x in row))
    return "\n".join(lines) + "\n"
