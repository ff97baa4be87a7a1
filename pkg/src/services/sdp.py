"""
Moment-matrix relaxation of the hypergraph relations, with an exact first
phase, an alternating-projection second phase and an exact certificate
verifier.
"""

from collections.abc import Iterator
from fractions import Fraction

import numpy as np

from src.config.settings import settings
from src.models.analysis import (
    FarkasCertificate,
    FeasibilityVerdict,
    LinearConstraint,
    MomentProblem,
    Representation,
    VerdictKind,
)
from src.models.errors import MomentProblemError, ParseError, RepresentationError
from src.models.hypergraph import Hypergraph
from src.models.polynomial import Word, format_word, word_order
from src.models.report import CertificateFile
from src.services.algebra import reduce_word, word_matrix
from src.ui.styles import progress_bar, warning
from src.utils.rationals import CONSTANT, SparseEchelon, format_rational, parse_rational, psd_failure

# Largest denominator used when rounding an eigenvector to rationals.
EIGENVECTOR_DENOMINATOR = 10**6
PLATEAU_RELATIVE_CHANGE = 1e-12
PLATEAU_FLOOR = 1e-4


def reduced_words(h: Hypergraph, max_length: int) -> list[Word]:
    """All nonzero reduced words up to the given length, shortest first then lexicographic."""
    letters = sorted(h.vertices)
    layer: list[Word] = [()]
    words: list[Word] = [()]
    for _ in range(max_length):
        following = []
        for word in layer:
            for letter in letters:
                if word and (word[-1] == letter or h.is_orthogonal(word[-1], letter)):
                    continue
                following.append(word + (letter,))
        words += following
        layer = following
    return words


def basis_words(h: Hypergraph, level: int) -> list[Word]:
    return reduced_words(h, level)


def cyclic_reduction(h: Hypergraph, word: Word) -> Word | None:
    """
    Reduce a word under the trace: tau(a x a) = tau(x a) and
    tau(a x b) = 0 when a and b share an edge.
    """
    while len(word) >= 2:
        if word[0] == word[-1]:
            word = word[:-1]
        elif h.is_orthogonal(word[0], word[-1]):
            return None
        else:
            break
    return word


def canonical_word(h: Hypergraph, word: Word, tracial: bool) -> Word | None:
    """
    Representative of the moment class of a word, or None if the moment is 0.

    Real symmetric moments identify a word with its reversal; tracial moments
    also identify cyclic rotations.
    """
    reduced = reduce_word(h, word)
    if reduced is None:
        return None
    if not tracial:
        return min(reduced, reduced[::-1])
    cyclic = cyclic_reduction(h, reduced)
    if cyclic is None:
        return None
    rotations = [cyclic[i:] + cyclic[:i] for i in range(max(len(cyclic), 1))]
    return min(r for rotation in rotations for r in (rotation, rotation[::-1]))


def _relation_rows(
    h: Hypergraph,
    level: int,
    localizing: bool,
    variable_of: dict[Word, int],
    tracial: bool,
) -> Iterator[tuple[str, dict[int, Fraction]]]:
    """
    Rows sum_v y(u p_v w) - y(u w) = 0 for each edge and each pair (u, w)
    with |u| + |w| <= 2k - 1; only u = w = 1 unless localizing.
    """
    if localizing:
        words = reduced_words(h, 2 * level - 1)
        pairs = [(u, w) for u in words for w in words if len(u) + len(w) <= 2 * level - 1]
    else:
        pairs = [((), ())]

    def accumulate(row: dict[int, Fraction], word: Word, coefficient: int) -> bool:
        key = canonical_word(h, word, tracial)
        if key is None:
            return True
        if len(key) > 2 * level or key not in variable_of:
            return False
        index = variable_of[key]
        row[index] = row.get(index, Fraction(0)) + coefficient
        return True

    for u, w in pairs:
        for edge_index, edge in enumerate(h.edges):
            row: dict[int, Fraction] = {}
            usable = all(accumulate(row, u + (v,) + w, 1) for v in sorted(edge))
            usable = usable and accumulate(row, u + w, -1)
            if usable:
                yield f"edge {edge_index} at ({format_word(u)}, {format_word(w)})", row


def build_moment_problem(
    h: Hypergraph,
    level: int,
    tracial: bool = False,
    localizing: bool = True,
) -> MomentProblem:
    """
    Moment relaxation at level k.

    The basis is every nonzero reduced word of length <= k; entry (u, v) is
    the moment of reverse(u).v. Constraint 0 fixes the unit moment to 1, the
    plain edge relations follow, then the localized ones.

    Args:
        h: Hypergraph.
        level: k >= 1.
        tracial: Identify cyclic rotations (tracial states).
        localizing: Emit relations multiplied by words on both sides.

    Raises:
        MomentProblemError: If level < 1.
    """
    if level < 1:
        raise MomentProblemError(f"level must be at least 1, got {level}")

    basis = basis_words(h, level)
    size = len(basis)
    keys = np.empty((size, size), dtype=object)
    for i, left in enumerate(basis):
        reversed_left = left[::-1]
        for j in range(i, size):
            key = canonical_word(h, reversed_left + basis[j], tracial)
            keys[i, j] = keys[j, i] = key

    classes = sorted({k for k in keys.ravel() if k is not None}, key=word_order)
    variable_of = {word: index for index, word in enumerate(classes)}
    entries = np.full((size, size), -1, dtype=np.int64)
    for i in range(size):
        for j in range(size):
            if keys[i, j] is not None:
                entries[i, j] = variable_of[keys[i, j]]

    constraints = [LinearConstraint(((variable_of[()], Fraction(1)),), Fraction(1), "unit")]
    seen: set[tuple[tuple[int, Fraction], ...]] = set()
    plain = 1
    for phase, local in enumerate((False, True) if localizing else (False,)):
        for label, row in _relation_rows(h, level, local, variable_of, tracial):
            coefficients = tuple(sorted((k, c) for k, c in row.items() if c))
            if not coefficients or coefficients in seen:
                continue
            seen.add(coefficients)
            constraints.append(LinearConstraint(coefficients, Fraction(0), label))
            if phase == 0:
                plain += 1

    return MomentProblem(
        level=level,
        tracial=tracial,
        localizing=localizing,
        basis=tuple(basis),
        variables=tuple(classes),
        entry_index=variable_of,
        entries=entries,
        constraints=tuple(constraints),
        plain_constraints=plain,
    )


def moment_matrix(problem: MomentProblem, values: np.ndarray) -> np.ndarray:
    """Fill the moment matrix from variable values (floats)."""
    padded = np.append(np.asarray(values, dtype=float), 0.0)
    return padded[problem.entries]


def class_means(problem: MomentProblem, matrix: np.ndarray) -> np.ndarray:
    flat = problem.entries.ravel()
    mask = flat >= 0
    sums = np.bincount(flat[mask], weights=np.asarray(matrix, dtype=float).ravel()[mask],
                       minlength=problem.num_variables)
    return sums / problem.class_sizes()


def moment_violation(problem: MomentProblem, matrix: np.ndarray) -> float:
    """
    Largest violation by a concrete matrix of: entries of one class being
    equal, zero-word entries vanishing, and every listed constraint.
    """
    matrix = np.asarray(matrix, dtype=float)
    flat = problem.entries.ravel()
    values = matrix.ravel()
    means = class_means(problem, matrix)
    worst = 0.0
    zero = flat < 0
    if zero.any():
        worst = max(worst, float(np.max(np.abs(values[zero]))))
    if (~zero).any():
        worst = max(worst, float(np.max(np.abs(values[~zero] - means[flat[~zero]]))))
    for constraint in problem.constraints:
        lhs = sum(float(c) * means[k] for k, c in constraint.coefficients)
        worst = max(worst, abs(lhs - float(constraint.rhs)))
    return worst


def _certificate_from_gram(
    problem: MomentProblem,
    echelon: SparseEchelon,
    gram: list[list[Fraction]],
) -> FarkasCertificate:
    """Weights matching the class sums of a Gram matrix supported on determined entries."""
    size = problem.size
    class_sums: dict[int, Fraction] = {}
    upper = []
    for i in range(size):
        for j in range(i, size):
            value = gram[i][j]
            if not value:
                continue
            upper.append((i, j, value))
            k = int(problem.entries[i, j])
            if k >= 0:
                class_sums[k] = class_sums.get(k, Fraction(0)) + (value if i == j else 2 * value)
    weights: dict[int, Fraction] = {}
    for k, total in class_sums.items():
        for label, amount in echelon.rows[k].provenance.items():
            weights[label] = weights.get(label, Fraction(0)) + total * amount
    return FarkasCertificate(
        weights=tuple(sorted((i, w) for i, w in weights.items() if w)),
        gram=tuple(upper),
    )


def _fixed_submatrix(problem: MomentProblem, determined: dict[int, Fraction], order: list[int]) -> list[int]:
    """Greedily collect basis indices whose mutual entries are all fixed."""
    chosen: list[int] = []
    for i in order:
        candidate = chosen + [i]
        if all(problem.entries[i, j] < 0 or int(problem.entries[i, j]) in determined for j in candidate):
            chosen = candidate
    return sorted(chosen)


def _negative_direction(
    problem: MomentProblem,
    determined: dict[int, Fraction],
    chosen: list[int],
    tol_eig: float,
) -> tuple[list[Fraction], float] | None:
    """A rational z with z^T M z < 0 on the chosen submatrix, and the smallest eigenvalue."""
    exact = [
        [determined[int(problem.entries[i, j])] if problem.entries[i, j] >= 0 else Fraction(0) for j in chosen]
        for i in chosen
    ]
    numeric = np.array([[float(x) for x in row] for row in exact])
    eigenvalues, eigenvectors = np.linalg.eigh(numeric)
    if eigenvalues[0] >= -tol_eig:
        return None

    direction = eigenvectors[:, 0] / np.max(np.abs(eigenvectors[:, 0]))
    z = [Fraction(float(x)).limit_denominator(EIGENVECTOR_DENOMINATOR) for x in direction]
    quadratic = sum(z[a] * exact[a][b] * z[b] for a in range(len(chosen)) for b in range(len(chosen)))
    if quadratic >= 0:
        return None
    return z, float(eigenvalues[0])


def _spectral_certificate(
    problem: MomentProblem,
    echelon: SparseEchelon,
    tol_eig: float,
) -> FarkasCertificate | None:
    """
    Look for a negative direction of a principal submatrix whose entries the
    constraints fix, and turn it into a certificate.

    Rows with the most fixed entries are tried first, then plain basis order.
    """
    determined = echelon.determined()
    if not determined:
        return None
    fixed_counts = [
        sum(1 for k in row if k < 0 or int(k) in determined)
        for row in problem.entries
    ]
    orders = [
        sorted(range(problem.size), key=lambda i: (-fixed_counts[i], i)),
        list(range(problem.size)),
    ]
    tried: set[tuple[int, ...]] = set()
    for order in orders:
        chosen = _fixed_submatrix(problem, determined, order)
        if not chosen or tuple(chosen) in tried:
            continue
        tried.add(tuple(chosen))
        found = _negative_direction(problem, determined, chosen, tol_eig)
        if found is None:
            continue
        z, smallest = found
        gram = [[Fraction(0)] * problem.size for _ in range(problem.size)]
        for a, i in enumerate(chosen):
            for b, j in enumerate(chosen):
                gram[i][j] = z[a] * z[b]
        certificate = _certificate_from_gram(problem, echelon, gram)
        return FarkasCertificate(certificate.weights, certificate.gram, smallest)
    return None


def _inconsistency_certificate(residual_provenance: dict[int, Fraction], rhs: Fraction) -> FarkasCertificate:
    """Scale the combination producing 0 = rhs so that it reads 0 = -1."""
    scale = -1 / rhs
    return FarkasCertificate(
        weights=tuple(sorted((i, w * scale) for i, w in residual_provenance.items() if w)),
    )


def _phase_one(
    problem: MomentProblem,
    tol_eig: float,
) -> tuple[FeasibilityVerdict | None, SparseEchelon]:
    """
    Exact elimination. Plain edge relations are processed first so that a
    spectral certificate from them is preferred; then the full system.
    """
    echelon = SparseEchelon()
    stages = [problem.plain_constraints, len(problem.constraints)]
    inserted = 0
    for stage_end in stages:
        for index in range(inserted, stage_end):
            constraint = problem.constraints[index]
            row = dict(constraint.coefficients)
            row[CONSTANT] = constraint.rhs
            residual = echelon.insert(row, {index: Fraction(1)})
            if residual is not None and residual.is_contradiction():
                certificate = _inconsistency_certificate(
                    residual.provenance, residual.coefficients[CONSTANT]
                )
                return FeasibilityVerdict(VerdictKind.CERTIFIED_INFEASIBLE, certificate=certificate), echelon
        inserted = stage_end

        certificate = _spectral_certificate(problem, echelon, tol_eig)
        if certificate is not None:
            return FeasibilityVerdict(
                VerdictKind.CERTIFIED_INFEASIBLE,
                certificate=certificate,
                min_eigenvalue=certificate.min_eigenvalue,
            ), echelon

    determined = echelon.determined()
    if len(determined) == problem.num_variables:
        matrix = moment_matrix(problem, np.array([float(determined[k]) for k in range(problem.num_variables)]))
        smallest = float(np.linalg.eigvalsh(matrix)[0])
        return FeasibilityVerdict(
            VerdictKind.FEASIBLE_APPROX,
            matrix=matrix,
            residual=max(0.0, -smallest),
            min_eigenvalue=smallest,
        ), echelon
    return None, echelon


def _psd_projection(matrix: np.ndarray) -> tuple[np.ndarray, float, float]:
    """Nearest PSD matrix, the Frobenius distance to it and the smallest eigenvalue."""
    eigenvalues, eigenvectors = np.linalg.eigh((matrix + matrix.T) / 2)
    negative = np.minimum(eigenvalues, 0.0)
    clipped = np.maximum(eigenvalues, 0.0)
    projected = (eigenvectors * clipped) @ eigenvectors.T
    return projected, float(np.linalg.norm(negative)), float(eigenvalues[0])


def _phase_two(
    problem: MomentProblem,
    echelon: SparseEchelon,
    tol_eig: float,
    tol_feas: float,
    max_iter: int,
    plateau_window: int,
    show_progress: bool | None = None,
) -> FeasibilityVerdict:
    """
    Alternating projections between the PSD cone and the affine moment space.

    The affine iterate is accepted once its PSD distance drops below tol_feas
    or its smallest eigenvalue is at least -tol_eig, the threshold phase 1
    applies to a fully determined matrix.
    """
    n = problem.num_variables
    y0 = np.array([float(x) for x in echelon.particular_solution(n)])
    null = np.array([[float(x) for x in direction] for direction in echelon.nullspace_basis(n)]).T
    weights = np.sqrt(problem.class_sizes().astype(float))
    solve = np.linalg.pinv(weights[:, None] * null)

    y = y0
    trace: list[float] = []
    residual = float("inf")
    with progress_bar(show_progress) as bar:
        task = bar.add_task("Alternating projections", total=max_iter)
        for iteration in range(1, max_iter + 1):
            matrix = moment_matrix(problem, y)
            projected, residual, smallest = _psd_projection(matrix)
            trace.append(residual)
            if residual < tol_feas or smallest >= -tol_eig:
                return FeasibilityVerdict(
                    VerdictKind.FEASIBLE_APPROX,
                    matrix=matrix,
                    residual=residual,
                    residual_trace=trace,
                    iterations=iteration,
                    min_eigenvalue=smallest,
                )
            if iteration > plateau_window and residual > PLATEAU_FLOOR:
                earlier = trace[-plateau_window - 1]
                if abs(earlier - residual) <= PLATEAU_RELATIVE_CHANGE * earlier:
                    return FeasibilityVerdict(
                        VerdictKind.LIKELY_INFEASIBLE,
                        residual=residual,
                        residual_trace=trace,
                        iterations=iteration,
                    )
            target = class_means(problem, projected)
            y = y0 + null @ (solve @ (weights * (target - y0)))
            if iteration % 100 == 0:
                bar.update(task, completed=iteration)

    return FeasibilityVerdict(
        VerdictKind.INCONCLUSIVE,
        residual=residual,
        residual_trace=trace,
        iterations=max_iter,
    )


def solve_feasibility(
    problem: MomentProblem,
    tol_eig: float | None = None,
    tol_feas: float | None = None,
    max_iter: int | None = None,
    plateau_window: int | None = None,
    show_progress: bool | None = None,
) -> FeasibilityVerdict:
    """
    Decide feasibility of the moment relaxation as far as possible.

    Phase 1 eliminates the affine system exactly: a contradiction, or a
    fixed principal submatrix with an eigenvalue below -tol_eig, yields a
    certified verdict; a fully fixed PSD matrix is feasible. Phase 2 runs
    alternating projections until the PSD distance drops below tol_feas or
    the smallest eigenvalue reaches -tol_eig, the distance plateaus above
    1e-4, or the iteration budget runs out. Nothing is raised: a phase-1
    certificate the verifier rejects yields INCONCLUSIVE with a warning.

    Args:
        problem: Moment relaxation.
        tol_eig: Eigenvalue threshold for spectral certificates.
        tol_feas: Residual accepted as feasible.
        max_iter: Iteration budget of phase 2.
        plateau_window: Iterations over which a plateau is measured.
        show_progress: Override the progress-bar setting.

    Returns:
        A verdict; certified verdicts carry a verifier-accepted certificate.
    """
    tol_eig = settings.TOL_EIG if tol_eig is None else tol_eig
    tol_feas = settings.TOL_FEAS if tol_feas is None else tol_feas
    max_iter = settings.MAX_ITER if max_iter is None else max_iter
    plateau_window = settings.PLATEAU_WINDOW if plateau_window is None else plateau_window

    verdict, echelon = _phase_one(problem, tol_eig)
    if verdict is not None:
        if verdict.certificate is not None:
            reason = verify_certificate(problem, verdict.certificate)
            if reason is not None:
                warning(f"Discarding a phase-1 certificate the verifier rejected: {reason}")
                return FeasibilityVerdict(VerdictKind.INCONCLUSIVE, min_eigenvalue=verdict.min_eigenvalue)
        return verdict
    return _phase_two(problem, echelon, tol_eig, tol_feas, max_iter, plateau_window, show_progress)


def verify_certificate(problem: MomentProblem, certificate: FarkasCertificate) -> str | None:
    """
    Exact check of an infeasibility certificate.

    S (from the Gram entries) must be PSD, its entries summed over every
    variable class must equal the weighted constraint coefficients, and the
    weighted right-hand sides must sum to a negative number.

    Returns:
        None when accepted, otherwise the reason for rejection.
    """
    size = problem.size
    combined: dict[int, Fraction] = {}
    for index, weight in certificate.weights:
        if not 0 <= index < len(problem.constraints):
            return f"weight refers to constraint {index}, but there are {len(problem.constraints)}"
        for k, c in problem.constraints[index].coefficients:
            combined[k] = combined.get(k, Fraction(0)) + Fraction(weight) * c

    gram = [[Fraction(0)] * size for _ in range(size)]
    for i, j, value in certificate.gram:
        if not (0 <= i < size and 0 <= j < size):
            return f"Gram entry ({i}, {j}) outside a {size}x{size} matrix"
        gram[i][j] = gram[j][i] = Fraction(value)

    failure = psd_failure(gram)
    if failure is not None:
        return f"S is not positive semidefinite: {failure}"

    class_sums: dict[int, Fraction] = {}
    for i in range(size):
        for j in range(size):
            k = int(problem.entries[i, j])
            if k >= 0 and gram[i][j]:
                class_sums[k] = class_sums.get(k, Fraction(0)) + gram[i][j]
    for k in sorted(set(class_sums) | set(combined)):
        if class_sums.get(k, Fraction(0)) != combined.get(k, Fraction(0)):
            return (
                f"class of {format_word(problem.variables[k])}: S sums to "
                f"{class_sums.get(k, Fraction(0))} but the weights give {combined.get(k, Fraction(0))}"
            )

    objective = certificate.objective(problem)
    if objective >= 0:
        return f"weighted right-hand side {objective} is nonnegative"
    return None


def _unit_state(state: np.ndarray, exact: bool) -> None:
    if exact:
        norm_squared = sum(Fraction(x) * Fraction(x) for x in state)
        if norm_squared != 1:
            raise RepresentationError(f"state vector has squared norm {norm_squared}, expected 1")
    elif abs(float(np.linalg.norm(state.astype(float))) - 1.0) > 1e-9:
        raise RepresentationError("state vector is not a unit vector")


def induced_moment_matrix(
    h: Hypergraph,
    rep: Representation,
    level: int,
    state: np.ndarray | None = None,
) -> np.ndarray:
    """
    Moment matrix <xi, pi(u)* pi(v) xi> of a representation on the level-k basis.

    With no state vector the normalized trace is used instead, which also
    satisfies the tracial identifications.

    Raises:
        RepresentationError: On dimension mismatch or a non-unit state.
    """
    for vertex in h.vertices:
        if vertex not in rep.matrices:
            raise RepresentationError(f"representation has no matrix for {vertex!r}")
        if rep.matrices[vertex].shape != (rep.dimension, rep.dimension):
            raise RepresentationError(f"matrix of {vertex!r} is not {rep.dimension}x{rep.dimension}")

    basis = basis_words(h, level)
    images = [word_matrix(rep, word) for word in basis]
    if state is None:
        vectors = [image.reshape(-1) for image in images]
        scale = Fraction(1, rep.dimension) if rep.exact else 1.0 / rep.dimension
    else:
        state = np.asarray(state, dtype=object if rep.exact else float)
        if state.shape != (rep.dimension,):
            raise RepresentationError(f"state has shape {state.shape}, expected ({rep.dimension},)")
        _unit_state(state, rep.exact)
        vectors = [image @ state for image in images]
        scale = Fraction(1) if rep.exact else 1.0

    stacked = np.array(vectors, dtype=object if rep.exact else float)
    return (stacked @ stacked.T) * scale


def certificate_to_file(
    problem: MomentProblem,
    certificate: FarkasCertificate,
    fingerprint: str,
) -> CertificateFile:
    return CertificateFile(
        fingerprint=fingerprint,
        level=problem.level,
        tracial=problem.tracial,
        localizing=problem.localizing,
        weights={str(i): format_rational(w) for i, w in certificate.weights},
        gram=[(i, j, format_rational(v)) for i, j, v in certificate.gram],
        min_eigenvalue=certificate.min_eigenvalue,
    )


def certificate_from_file(document: CertificateFile) -> FarkasCertificate:
    """
    Raises:
        ParseError: If a weight key or rational is malformed.
    """
    try:
        weights = tuple(sorted((int(i), parse_rational(w)) for i, w in document.weights.items()))
        gram = tuple((i, j, parse_rational(v)) for i, j, v in document.gram)
    except ValueError as exc:
        raise ParseError(f"malformed certificate: {exc}") from None
    return FarkasCertificate(weights, gram, document.min_eigenvalue)
