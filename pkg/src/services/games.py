"""
Synchronous nonlocal games: validation, both hypergraph translations,
perfect deterministic strategies and the `.game` text format.
"""

from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from itertools import product

from src.models.analysis import CapExceeded
from src.models.errors import GameError, ParseError
from src.models.game import DeterministicStrategy, GameViolation, Quadruple, SynchronousGame
from src.models.hypergraph import Hypergraph, is_valid_identifier
from src.services.core import tokenize
from src.services.transforms import three_uniform
from src.utils.fresh import FreshNames

HG_OUTPUTS = ("1", "2", "3")


def validate_game(g: SynchronousGame) -> list[GameViolation]:
    """Every violation of lambda(x, x, a, b) = delta(a, b); empty when valid."""
    violations = []
    for x in g.inputs:
        for a in g.outputs:
            for b in g.outputs:
                forbidden = (x, x, a, b) in g.forbidden
                if a != b and not forbidden:
                    violations.append(GameViolation((x, x, a, b), "different answers to equal questions are not forbidden"))
                elif a == b and forbidden:
                    violations.append(GameViolation((x, x, a, b), "equal answers to equal questions are forbidden"))
    return violations


def strategy_vertex(x: str, a: str) -> str:
    return f"s_{x}_{a}"


def game_to_hypergraph(g: SynchronousGame) -> Hypergraph:
    """
    Hypergraph presenting the game algebra.

    One edge {s_x_a : a} per input, and per forbidden quadruple an edge
    {u, s_x_a, s_y_b} with a fresh u; (x, y, a, b) and (y, x, b, a) share u.

    Raises:
        GameError: If the game is not synchronous.
    """
    violations = validate_game(g)
    if violations:
        raise GameError(f"game is not synchronous: {violations[0]}")
    h = Hypergraph.from_edges(
        [strategy_vertex(x, a) for a in g.outputs] for x in g.inputs
    )
    names = FreshNames(h.vertices)
    seen: set[frozenset[tuple[str, str]]] = set()
    gadget_vertices, gadget_edges = [], []
    for x, y, a, b in sorted(g.forbidden, key=_quadruple_key(g)):
        key = frozenset({(x, a), (y, b)})
        if key in seen:
            continue
        seen.add(key)
        u = names.mint()
        gadget_vertices.append(u)
        gadget_edges.append({u, strategy_vertex(x, a), strategy_vertex(y, b)})
    return h.with_additions(gadget_vertices, gadget_edges)


def _quadruple_key(g: SynchronousGame):
    inputs = {x: i for i, x in enumerate(g.inputs)}
    outputs = {a: i for i, a in enumerate(g.outputs)}
    return lambda q: (inputs[q[0]], inputs[q[1]], outputs[q[2]], outputs[q[3]])


def hypergraph_to_game(h: Hypergraph) -> SynchronousGame:
    """
    Game with three outputs whose perfect strategies are the solutions of H.

    H is first brought into 3-uniform form; input e<k> is the k-th edge and
    output i picks its i-th vertex in identifier order. Two answers are
    losing when they disagree about a shared vertex: one picks it and the
    other does not.
    """
    reduct = three_uniform(h)
    inputs = tuple(f"e{k}" for k in range(1, reduct.num_edges + 1))
    chosen = {
        x: dict(zip(HG_OUTPUTS, reduct.sorted_edge(k)))
        for k, x in enumerate(inputs)
    }
    members = {x: set(picks.values()) for x, picks in chosen.items()}

    forbidden: set[Quadruple] = set()
    for x in inputs:
        for y in inputs:
            if x != y and not members[x] & members[y]:
                continue
            for a, b in product(HG_OUTPUTS, repeat=2):
                va, vb = chosen[x][a], chosen[y][b]
                if va != vb and (va in members[y] or vb in members[x]):
                    forbidden.add((x, y, a, b))
    return SynchronousGame(inputs, HG_OUTPUTS, frozenset(forbidden))


def _losing_pairs(g: SynchronousGame) -> dict[tuple[str, str], set[tuple[str, str]]]:
    """Forbidden answer pairs per ordered input pair, closed under swapping."""
    table: dict[tuple[str, str], set[tuple[str, str]]] = defaultdict(set)
    for x, y, a, b in g.forbidden:
        table[(x, y)].add((a, b))
        table[(y, x)].add((b, a))
    return table


def _wins_everywhere(
    g: SynchronousGame,
    losing: dict[tuple[str, str], set[tuple[str, str]]],
    answers: tuple[str, ...],
) -> bool:
    for i, x in enumerate(g.inputs):
        for j in range(i, len(g.inputs)):
            pairs = losing.get((x, g.inputs[j]))
            if pairs and (answers[i], answers[j]) in pairs:
                return False
    return True


def _brute_force_shard(g: SynchronousGame, first: str | None) -> list[tuple[str, ...]]:
    """All winning answer tuples, optionally with the first answer fixed."""
    losing = _losing_pairs(g)
    if first is None:
        candidates = product(g.outputs, repeat=len(g.inputs))
    else:
        candidates = ((first,) + rest for rest in product(g.outputs, repeat=len(g.inputs) - 1))
    return [answers for answers in candidates if _wins_everywhere(g, losing, answers)]


def _brute_force(g: SynchronousGame, jobs: int) -> list[tuple[str, ...]]:
    if jobs <= 1 or not g.inputs:
        return _brute_force_shard(g, None)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        shards = pool.map(_brute_force_shard, [g] * len(g.outputs), g.outputs)
        return [answers for shard in shards for answers in shard]


def _propagation_search(g: SynchronousGame, cap: int) -> list[tuple[str, ...]] | CapExceeded:
    """
    Backtracking with arc consistency and forward checking; variables are
    chosen by smallest remaining domain.
    """
    losing = _losing_pairs(g)
    inputs = g.inputs
    neighbours: dict[str, set[str]] = defaultdict(set)
    for x, y in losing:
        if x != y:
            neighbours[x].add(y)

    domains = {
        x: [a for a in g.outputs if (a, a) not in losing.get((x, x), set())]
        for x in inputs
    }

    def compatible(x: str, a: str, y: str, b: str) -> bool:
        return (a, b) not in losing.get((x, y), ())

    def revise(x: str, y: str) -> bool:
        kept = [a for a in domains[x] if any(compatible(x, a, y, b) for b in domains[y])]
        changed = len(kept) != len(domains[x])
        domains[x] = kept
        return changed

    arcs = [(x, y) for x in inputs for y in sorted(neighbours[x])]
    while arcs:
        x, y = arcs.pop()
        if revise(x, y):
            if not domains[x]:
                return []
            arcs.extend((z, x) for z in neighbours[x] if z != y)

    found: list[tuple[str, ...]] = []
    assignment: dict[str, str] = {}

    def search() -> bool:
        """Returns False once the cap is exceeded."""
        open_inputs = [x for x in inputs if x not in assignment]
        if not open_inputs:
            found.append(tuple(assignment[x] for x in inputs))
            return len(found) <= cap
        x = min(open_inputs, key=lambda v: (len(domains[v]), inputs.index(v)))
        for a in list(domains[x]):
            assignment[x] = a
            pruned: dict[str, list[str]] = {}
            dead_end = False
            for y in neighbours[x]:
                if y in assignment:
                    continue
                kept = [b for b in domains[y] if compatible(x, a, y, b)]
                if len(kept) != len(domains[y]):
                    pruned[y] = domains[y]
                    domains[y] = kept
                if not kept:
                    dead_end = True
                    break
            if not dead_end and not search():
                return False
            for y, previous in pruned.items():
                domains[y] = previous
            del assignment[x]
        return True

    if not search():
        return CapExceeded(cap, "strategies")
    return found


def perfect_deterministic_strategies(
    g: SynchronousGame,
    cap: int = 10**6,
    propagate: bool | None = None,
    jobs: int = 1,
) -> list[DeterministicStrategy] | CapExceeded:
    """
    All deterministic strategies winning every question pair.

    Args:
        g: The game.
        cap: Largest strategy space enumerated by brute force, and largest
            number of strategies returned.
        propagate: Force constraint-propagation search (True) or brute
            force (False); by default brute force is used within the cap.
        jobs: Worker processes for brute force, sharded by the first answer.

    Returns:
        Strategies in lexicographic order of answers, or CapExceeded.
    """
    space = len(g.outputs) ** len(g.inputs)
    use_propagation = propagate if propagate is not None else space > cap
    if use_propagation:
        result = _propagation_search(g, cap)
        if isinstance(result, CapExceeded):
            return result
        rank = {a: i for i, a in enumerate(g.outputs)}
        answers = sorted(result, key=lambda t: tuple(rank[a] for a in t))
    else:
        if space > cap:
            return CapExceeded(cap, "strategy space")
        answers = _brute_force(g, jobs)
        if len(answers) > cap:
            return CapExceeded(cap, "strategies")
    return [DeterministicStrategy(tuple(zip(g.inputs, t))) for t in answers]


def parse_game(text: str, auto_sync: bool = False) -> SynchronousGame:
    """
    Parse the `.game` format: `inputs ...`, `outputs ...`, `forbid x y a b`.

    Args:
        text: File contents.
        auto_sync: Add the synchronicity quadruples (x, x, a, b), a != b.

    Raises:
        ParseError: On syntax errors or unknown inputs/outputs.
    """
    inputs: tuple[str, ...] | None = None
    outputs: tuple[str, ...] | None = None
    forbidden: set[Quadruple] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = tokenize(raw)
        if not tokens:
            continue
        (column, keyword), rest = tokens[0], tokens[1:]
        for col, name in rest:
            if not is_valid_identifier(name):
                raise ParseError(f"invalid identifier {name!r}", lineno, col)

        if keyword in ("inputs", "outputs"):
            names = tuple(name for _, name in rest)
            if not names:
                raise ParseError(f"'{keyword}' needs at least one name", lineno, column)
            if len(set(names)) != len(names):
                raise ParseError(f"repeated name in '{keyword}'", lineno, column)
            if keyword == "inputs":
                if inputs is not None:
                    raise ParseError("inputs declared twice", lineno, column)
                inputs = names
            else:
                if outputs is not None:
                    raise ParseError("outputs declared twice", lineno, column)
                outputs = names
        elif keyword == "forbid":
            if inputs is None or outputs is None:
                raise ParseError("'forbid' before 'inputs' and 'outputs'", lineno, column)
            if len(rest) != 4:
                raise ParseError("expected 'forbid <x> <y> <a> <b>'", lineno, column)
            (cx, x), (cy, y), (ca, a), (cb, b) = rest
            for name, col, pool in ((x, cx, inputs), (y, cy, inputs), (a, ca, outputs), (b, cb, outputs)):
                if name not in pool:
                    raise ParseError(f"unknown name {name!r}", lineno, col)
            forbidden.add((x, y, a, b))
        else:
            raise ParseError(f"unknown statement {keyword!r}", lineno, column)

    if inputs is None or outputs is None:
        raise ParseError("missing 'inputs' or 'outputs' line")
    game = SynchronousGame(inputs, outputs, frozenset(forbidden))
    return game.with_synchronicity() if auto_sync else game


def serialize_game(g: SynchronousGame) -> str:
    lines = [" ".join(("inputs",) + g.inputs), " ".join(("outputs",) + g.outputs)]
    lines += [" ".join(("forbid",) + q) for q in sorted(g.forbidden, key=_quadruple_key(g))]
    return "\n".join(lines) + "\n"
