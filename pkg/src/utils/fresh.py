"""
Minting of fresh gadget vertex names.
"""

import re
from collections.abc import Iterable

from src.models.hypergraph import FRESH_PREFIX

_FRESH_PATTERN = re.compile(rf"^{re.escape(FRESH_PREFIX)}(\d+)$")


class FreshNames:
    """Counter producing `_g<k>` names that do not clash with existing vertices."""

    def __init__(self, taken: Iterable[str] = ()) -> None:
        self.taken = set(taken)
        numbers = [int(m.group(1)) for m in map(_FRESH_PATTERN.match, self.taken) if m]
        self.counter = max(numbers, default=0)

    def mint(self) -> str:
        while True:
            self.counter += 1
            name = f"{FRESH_PREFIX}{self.counter}"
            if name not in self.taken:
                self.taken.add(name)
                return name

    def mint_many(self, count: int) -> list[str]:
        return [self.mint() for _ in range(count)]
