"""
Exact 1-in-3 satisfiability: assignments making exactly one vertex true in
every edge, the one-dimensional representations of the algebra.
"""

from collections.abc import Iterator

from src.models.analysis import Assignment, CapExceeded
from src.models.hypergraph import Hypergraph


class ExactOneSearch:
    """
    DPLL search with exactly-one propagation.

    A true vertex forces its edge partners false; an edge whose other
    vertices are all false forces the last one true; two true vertices or an
    all-false edge is a conflict. Branching picks the unassigned vertex in
    the most edges (ties by name) and tries true before false.
    """

    def __init__(self, h: Hypergraph) -> None:
        self.h = h
        self.edges = [tuple(sorted(edge)) for edge in h.edges]
        self.incidence = h.incidence
        self.order = sorted(h.vertices, key=lambda v: (-len(self.incidence[v]), v))
        self.value: dict[str, bool] = {}
        self.trail: list[str] = []

    def _check_edge(self, index: int, queue: list[tuple[str, bool]]) -> bool:
        trues = 0
        unassigned = []
        for vertex in self.edges[index]:
            state = self.value.get(vertex)
            if state is True:
                trues += 1
            elif state is None:
                unassigned.append(vertex)
        if trues > 1:
            return False
        if trues == 1:
            queue.extend((vertex, False) for vertex in unassigned)
            return True
        if not unassigned:
            return False
        if len(unassigned) == 1:
            queue.append((unassigned[0], True))
        return True

    def assign(self, vertex: str, truth: bool) -> bool:
        """Assign and propagate; False on conflict (the trail keeps partial work)."""
        queue = [(vertex, truth)]
        while queue:
            current, value = queue.pop()
            known = self.value.get(current)
            if known is not None:
                if known != value:
                    return False
                continue
            self.value[current] = value
            self.trail.append(current)
            for index in self.incidence[current]:
                if not self._check_edge(index, queue):
                    return False
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            del self.value[self.trail.pop()]

    def _start(self) -> bool:
        queue: list[tuple[str, bool]] = []
        for index in range(len(self.edges)):
            if not self._check_edge(index, queue):
                return False
        for vertex, truth in queue:
            if not self.assign(vertex, truth):
                return False
        return True

    def _next_vertex(self) -> str | None:
        return next((v for v in self.order if v not in self.value), None)

    def _snapshot(self) -> Assignment:
        return Assignment(tuple((v, self.value[v]) for v in self.h.vertices))

    def solutions(self) -> Iterator[Assignment]:
        """Yield every solution in branch order."""
        self.value.clear()
        self.trail.clear()
        if not self._start():
            return
        first = self._next_vertex()
        if first is None:
            yield self._snapshot()
            return

        frames: list[tuple[int, str, list[bool]]] = [(len(self.trail), first, [True, False])]
        while frames:
            mark, vertex, options = frames[-1]
            if not options:
                frames.pop()
                continue
            truth = options.pop(0)
            self.undo(mark)
            if not self.assign(vertex, truth):
                continue
            following = self._next_vertex()
            if following is None:
                yield self._snapshot()
                continue
            frames.append((len(self.trail), following, [True, False]))


def solution_key(assignment: Assignment) -> tuple[bool, ...]:
    """Lexicographic order over stored vertex order, true before false."""
    return tuple(not truth for _, truth in assignment.truth)


def solve_exact_one(h: Hypergraph) -> Assignment | None:
    """First solution in branch order, or None when unsatisfiable."""
    return next(ExactOneSearch(h).solutions(), None)


def enumerate_solutions(h: Hypergraph, cap: int) -> list[Assignment] | CapExceeded:
    """
    All solutions in lexicographic order.

    Returns:
        The sorted solutions, or CapExceeded if there are more than `cap`.
    """
    found = []
    for assignment in ExactOneSearch(h).solutions():
        found.append(assignment)
        if len(found) > cap:
            return CapExceeded(cap)
    return sorted(found, key=solution_key)


def is_solution(h: Hypergraph, assignment: Assignment) -> bool:
    truth = dict(assignment.truth)
    if set(truth) != set(h.vertices):
        return False
    return all(sum(truth[v] for v in edge) == 1 for edge in h.edges)


def project(assignment: Assignment) -> Assignment:
    """Drop gadget vertices minted by the transforms."""
    return assignment.projected()
