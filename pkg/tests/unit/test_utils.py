import itertools

import pytest
from faker import Faker
from hypothesis import given
from hypothesis import strategies as st

from ncgroups.exceptions import NodeBudgetExhausted
from ncgroups.utils import Deadline
from ncgroups.utils import NodeBudget
from ncgroups.utils import UnionFind
from ncgroups.utils import iter_bits
from ncgroups.utils import popcount


def test_union_find_groups():
    union_find: UnionFind[int] = UnionFind()
    for x in range(6):
        union_find.find(x)
    union_find.union(0, 3)
    union_find.union(4, 1)
    union_find.union(3, 4)
    assert union_find.groups() == [[0, 1, 3, 4], [2], [5]]
    assert union_find.find(1) == union_find.find(0)
    assert union_find.find(2) != union_find.find(5)


def test_union_find_union_is_idempotent(faker: Faker):
    union_find: UnionFind[str] = UnionFind()
    a, b = faker.unique.word(), faker.unique.word()
    root = union_find.union(a, b)
    assert union_find.union(b, a) == root
    assert union_find.groups() == [[a, b]]


def test_node_budget_raises_after_budget():
    budget = NodeBudget(3)
    for _ in range(3):
        budget.tick()
    with pytest.raises(NodeBudgetExhausted) as excinfo:
        budget.tick()
    assert excinfo.value.budget == 3
    assert budget.spent == 4


def test_deadline_with_fake_clock():
    ticks = itertools.count()
    deadline = Deadline(2.5, clock=lambda: next(ticks))
    assert deadline.expires_at == 2.5
    assert not deadline.expired
    assert not deadline.expired
    assert deadline.expired


def test_deadline_without_seconds_never_expires():
    deadline = Deadline(None, clock=lambda: float("inf"))
    assert not deadline.expired


@given(bits=st.integers(min_value=0, max_value=2**130))
def test_iter_bits_and_popcount(bits: int):
    positions = list(iter_bits(bits))
    assert positions == sorted(positions)
    assert sum(1 << p for p in positions) == bits
    assert popcount(bits) == len(positions)
