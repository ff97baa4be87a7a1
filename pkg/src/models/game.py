"""
Data models for synchronous nonlocal games and classical strategies.
"""

from dataclasses import dataclass, field

from src.models.errors import GameError

Quadruple = tuple[str, str, str, str]


@dataclass(frozen=True)
class SynchronousGame:
    """
    Two-player game given by its losing quadruples.

    lambda(x, y, a, b) = 0 exactly for (x, y, a, b) in `forbidden`.
    """
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    forbidden: frozenset[Quadruple] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if len(set(self.inputs)) != len(self.inputs):
            raise GameError("inputs must be distinct")
        if len(set(self.outputs)) != len(self.outputs):
            raise GameError("outputs must be distinct")
        inputs, outputs = set(self.inputs), set(self.outputs)
        for x, y, a, b in self.forbidden:
            if x not in inputs or y not in inputs:
                raise GameError(f"forbidden quadruple ({x}, {y}, {a}, {b}) uses an unknown input")
            if a not in outputs or b not in outputs:
                raise GameError(f"forbidden quadruple ({x}, {y}, {a}, {b}) uses an unknown output")

    def wins(self, x: str, y: str, a: str, b: str) -> bool:
        """The winning predicate lambda."""
        return (x, y, a, b) not in self.forbidden

    def with_synchronicity(self) -> "SynchronousGame":
        """Add every (x, x, a, b) with a != b to the forbidden set."""
        sync = {
            (x, x, a, b)
            for x in self.inputs
            for a in self.outputs
            for b in self.outputs
            if a != b
        }
        return SynchronousGame(self.inputs, self.outputs, self.forbidden | sync)


@dataclass(frozen=True)
class DeterministicStrategy:
    """Classical strategy: the answer given to each input."""
    assignment: tuple[tuple[str, str], ...]

    def answer(self, x: str) -> str:
        return dict(self.assignment)[x]

    def __str__(self) -> str:
        return " ".join(f"{x}={a}" for x, a in self.assignment)


@dataclass(frozen=True)
class GameViolation:
    """A synchronicity violation found by validation."""
    quadruple: Quadruple
    reason: str

    def __str__(self) -> str:
        return f"({', '.join(self.quadruple)}): {self.reason}"
