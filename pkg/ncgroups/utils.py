import time
from collections import Counter
from typing import Callable
from typing import Dict
from typing import Generic
from typing import Hashable
from typing import Iterator
from typing import List
from typing import Optional
from typing import TypeVar

from ncgroups.exceptions import NodeBudgetExhausted

T = TypeVar("T", bound=Hashable)
Clock = Callable[[], float]


class UnionFind(Generic[T]):
    """Disjoint sets with union by rank and path compression."""

    def __init__(self) -> None:
        self.parent: Dict[T, T] = {}
        self.rank: Counter = Counter()

    def find(self, x: T) -> T:
        root = self.parent.setdefault(x, x)
        while root != self.parent[root]:
            root = self.parent[root]
        while x != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: T, y: T) -> T:
        px = self.find(x)
        py = self.find(y)

        if px == py:
            return px

        if self.rank[px] < self.rank[py]:
            px, py = py, px
        self.parent[py] = px
        if self.rank[px] == self.rank[py]:
            self.rank[px] += 1
        return px

    def groups(self) -> List[List[T]]:
        """The disjoint sets, members in insertion order, sets by first member."""
        by_root: Dict[T, List[T]] = {}
        for member in self.parent:
            by_root.setdefault(self.find(member), []).append(member)
        return list(by_root.values())


class NodeBudget:
    """Counts backtracking nodes and raises once the budget is spent."""

    def __init__(self, budget: int):
        self.budget = budget
        self.spent = 0

    def tick(self) -> None:
        self.spent += 1
        if self.spent > self.budget:
            raise NodeBudgetExhausted(self.budget)


class Deadline:
    def __init__(self, seconds: Optional[float], clock: Clock = time.monotonic):
        self.clock = clock
        self.expires_at = None if seconds is None else clock() + seconds

    @property
    def expired(self) -> bool:
        return self.expires_at is not None and self.clock() >= self.expires_at


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``bits``, lowest first."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def popcount(bits: int) -> int:
    return bin(bits).count("1")
