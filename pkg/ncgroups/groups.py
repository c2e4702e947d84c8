"""
Finite groups as multiplication tables.

Every :class:`Group` is indexed ``0..order-1`` with the identity at index
``0``; everything downstream relies on that. Groups and subgroups are
immutable and cache their derived structure (center, derived subgroup,
conjugacy classes, ...) on first use, so they can be shared freely.
"""
import logging
import random
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from ncgroups.exceptions import InvalidSpec
from ncgroups.exceptions import NotAGroup
from ncgroups.exceptions import NotNormal
from ncgroups.exceptions import OrderCapExceeded
from ncgroups.permutations import closure
from ncgroups.permutations import format_cycles
from ncgroups.permutations import invert
from ncgroups.types import DEFAULT_SETTINGS
from ncgroups.types import GroupSpec
from ncgroups.types import Permutation
from ncgroups.types import Settings
from ncgroups.types import Table

logger = logging.getLogger(__name__)

IDENTITY = 0

Fingerprint = Tuple[int, bool, int, int, Tuple[Tuple[Tuple[int, int], int], ...]]


@dataclass(frozen=True, eq=False)
class Group:
    """
    A finite group given by its full multiplication table.

    ``mul[a][b]`` is the index of ``a·b`` and ``inv[a]`` the index of ``a⁻¹``.
    Instances are compared by identity; use
    :func:`ncgroups.isomorphism.find_isomorphism` to compare structure.
    """

    mul: Table
    inv: Tuple[int, ...]
    name: Optional[str] = None
    spec: Optional[GroupSpec] = None
    labels: Optional[Tuple[str, ...]] = None

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def identity(self) -> int:
        return IDENTITY

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group({self.name or '?'}, order={self.order})"

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels is not None else str(g)

    def commutes(self, a: int, b: int) -> bool:
        return self.mul[a][b] == self.mul[b][a]

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a⁻¹b⁻¹ab"""
        mul = self.mul
        return mul[mul[self.inv[a]][self.inv[b]]][mul[a][b]]

    def conjugate(self, x: int, by: int) -> int:
        """x^g = g⁻¹xg"""
        return self.mul[self.mul[self.inv[by]][x]][by]

    def power(self, g: int, exponent: int) -> int:
        if exponent < 0:
            g, exponent = self.inv[g], -exponent
        result = IDENTITY
        for _ in range(exponent):
            result = self.mul[result][g]
        return result

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        return generating_sequence(self, range(self.order))

    @cached_property
    def element_orders(self) -> Tuple[int, ...]:
        orders = []
        for g in range(self.order):
            n, x = 1, g
            while x != IDENTITY:
                x = self.mul[x][g]
                n += 1
            orders.append(n)
        return tuple(orders)

    @cached_property
    def conjugacy_classes(self) -> Tuple[Tuple[int, ...], ...]:
        """Classes ordered by smallest member, members sorted."""
        seen = [False] * self.order
        classes: List[Tuple[int, ...]] = []
        for start in range(self.order):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = True
            cursor = 0
            while cursor < len(orbit):
                x = orbit[cursor]
                cursor += 1
                for s in self.generators:
                    y = self.conjugate(x, s)
                    if not seen[y]:
                        seen[y] = True
                        orbit.append(y)
            classes.append(tuple(sorted(orbit)))
        return tuple(classes)

    @cached_property
    def centralizer_orders(self) -> Tuple[int, ...]:
        orders = [0] * self.order
        for conjugacy_class in self.conjugacy_classes:
            for x in conjugacy_class:
                orders[x] = self.order // len(conjugacy_class)
        return tuple(orders)

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(self.commutes(a, b) for a in gens for b in gens)

    @cached_property
    def center(self) -> "Subgroup":
        members = [
            z
            for z in range(self.order)
            if all(self.commutes(z, s) for s in self.generators)
        ]
        return Subgroup(self, tuple(members))

    @cached_property
    def derived_subgroup(self) -> "Subgroup":
        return derived_subgroup_of(self, self.whole)

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, (IDENTITY,))

    @cached_property
    def central_quotient(self) -> Tuple["Group", Tuple[int, ...]]:
        return quotient(self, self.center, name=f"{self.name or 'G'}/Z")

    @cached_property
    def fingerprint(self) -> Fingerprint:
        """
        (order, abelian, |Z|, |G'|, multiset of (element order, centralizer order)).
        Equal for isomorphic groups.
        """
        spectrum = Counter(zip(self.element_orders, self.centralizer_orders))
        return (
            self.order,
            self.is_abelian,
            self.center.order,
            self.derived_subgroup.order,
            tuple(sorted(spectrum.items())),
        )


@dataclass(frozen=True)
class Subgroup:
    """A subset of a parent group's indices, closed under its operation."""

    parent: Group
    members: Tuple[int, ...]

    def __post_init__(self):
        assert IDENTITY in self.member_set
        assert self.parent.order % len(self.members) == 0, "Lagrange"

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def __contains__(self, g: object) -> bool:
        return g in self.member_set

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return self.order

    def issubset(self, other: "Subgroup") -> bool:
        return self.member_set <= other.member_set

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        return generating_sequence(self.parent, self.members)

    def is_normal(self) -> bool:
        return all(
            self.parent.conjugate(x, s) in self.member_set
            for x in self.generators
            for s in self.parent.generators
        )

    def as_group(self, name: Optional[str] = None) -> Tuple[Group, Tuple[int, ...]]:
        """
        The subgroup as a standalone :class:`Group` plus its embedding
        (``embedding[i]`` is the parent index of the new element ``i``).
        """
        position = {g: i for i, g in enumerate(self.members)}
        mul = self.parent.mul
        table = tuple(
            tuple(position[mul[a][b]] for b in self.members) for a in self.members
        )
        inv = tuple(position[self.parent.inv[a]] for a in self.members)
        labels = (
            tuple(self.parent.labels[a] for a in self.members)
            if self.parent.labels is not None
            else None
        )
        return Group(table, inv, name=name, labels=labels), self.members


def _close(G: Group, members: Iterable[int], generators: Sequence[int]) -> List[int]:
    found = list(members)
    seen = set(found)
    cursor = 0
    while cursor < len(found):
        x = found[cursor]
        cursor += 1
        for s in generators:
            y = G.mul[x][s]
            if y not in seen:
                seen.add(y)
                found.append(y)
    return found


def generating_sequence(G: Group, members: Iterable[int]) -> Tuple[int, ...]:
    """
    Greedy generating sequence of the subgroup with the given members:
    repeatedly add the lowest index outside the current closure.
    """
    sequence: List[int] = []
    current = {IDENTITY}
    for g in sorted(members):
        if g in current:
            continue
        sequence.append(g)
        current = set(_close(G, current, sequence))
    return tuple(sequence)


def normal_closure(G: Group, within: Subgroup, elements: Iterable[int]) -> Subgroup:
    """The smallest subgroup of ``within`` containing ``elements`` and normal in it."""
    generators: List[int] = []
    members = {IDENTITY}
    pending = list(elements)
    while pending:
        x = pending.pop()
        if x in members:
            continue
        generators.append(x)
        members = set(_close(G, members, generators))
        pending.extend(G.conjugate(g, s) for g in generators for s in within.generators)
    return Subgroup(G, tuple(sorted(members)))


def derived_subgroup_of(G: Group, H: Subgroup) -> Subgroup:
    """
    H' as a subgroup of G: the normal closure in H of the commutators of
    H's generators, which is the subgroup generated by all commutators of H.
    """
    gens = H.generators
    return normal_closure(G, H, (G.commutator(a, b) for a in gens for b in gens))


def center(G: Group) -> Subgroup:
    return G.center


def centralizer(G: Group, g: int) -> Subgroup:
    if not 0 <= g < G.order:
        raise IndexError(f"{g} is not an element of {G!r}")
    return Subgroup(G, tuple(a for a in range(G.order) if G.commutes(a, g)))


def derived_subgroup(G: Group) -> Subgroup:
    return G.derived_subgroup


def derived_series(G: Group) -> List[Subgroup]:
    """G ⊇ G' ⊇ G'' ⊇ … down to the first repeated term."""
    series = [G.whole]
    while True:
        following = derived_subgroup_of(G, series[-1])
        if following.order == series[-1].order:
            return series
        series.append(following)


def is_solvable(G: Group) -> bool:
    return derived_series(G)[-1].is_trivial


def is_abelian(G: Group) -> bool:
    return G.is_abelian


def element_order(G: Group, g: int) -> int:
    return G.element_orders[g]


def quotient(
    G: Group, N: Subgroup, name: Optional[str] = None
) -> Tuple[Group, Tuple[int, ...]]:
    """
    G/N with its natural projection.

    Cosets are numbered by their smallest member, so the identity coset is 0.
    """
    if N.parent is not G:
        raise NotNormal("The subgroup belongs to a different group")
    if not N.is_normal():
        raise NotNormal(f"The subgroup of order {N.order} is not normal in {G!r}")

    projection = [-1] * G.order
    representatives: List[int] = []
    for a in range(G.order):
        if projection[a] != -1:
            continue
        for n in N.members:
            projection[G.mul[a][n]] = len(representatives)
        representatives.append(a)

    table = tuple(
        tuple(projection[G.mul[a][b]] for b in representatives)
        for a in representatives
    )
    inv = tuple(projection[G.inv[a]] for a in representatives)
    labels = tuple(
        G.label(a) if N.is_trivial else f"[{G.label(a)}]" for a in representatives
    )
    return Group(table, inv, name=name, labels=labels), tuple(projection)


def check_axioms(mul: Table, settings: Settings = DEFAULT_SETTINGS) -> None:
    """
    Check a table with identity 0 against the group axioms.

    Associativity is verified exactly with Light's test over a generating
    set up to ``settings.full_associativity_limit`` elements, and on
    ``associativity_sample_factor·n²`` random triples above it.
    """
    n = len(mul)
    full_range = set(range(n))
    for a, row in enumerate(mul):
        if len(row) != n:
            raise NotAGroup("The table is not square")
        if set(row) != full_range:
            raise NotAGroup(f"Row {a} is not a permutation (Latin square violated)")
    for b in range(n):
        if {mul[a][b] for a in range(n)} != full_range:
            raise NotAGroup(f"Column {b} is not a permutation (Latin square violated)")
    if tuple(mul[IDENTITY]) != tuple(range(n)) or any(
        mul[a][IDENTITY] != a for a in range(n)
    ):
        raise NotAGroup("Element 0 is not a two-sided identity")
    for a in range(n):
        b = mul[a].index(IDENTITY)
        if mul[b][a] != IDENTITY:
            raise NotAGroup(f"Element {a} has no two-sided inverse")

    if n <= settings.full_associativity_limit:
        _check_associativity_light(mul)
    else:
        _check_associativity_sampled(mul, settings)


def _check_associativity_light(mul: Table) -> None:
    n = len(mul)
    generators: List[int] = []
    reached = {IDENTITY}
    for g in range(n):
        if g in reached:
            continue
        generators.append(g)
        reached = _close_table(mul, reached, generators)

    for s in generators:
        for x in range(n):
            xs = mul[x][s]
            row_x = mul[x]
            row_xs = mul[xs]
            row_s = mul[s]
            for y in range(n):
                if row_xs[y] != row_x[row_s[y]]:
                    raise NotAGroup(
                        f"Associativity fails for ({x}, {s}, {y}): "
                        f"({x}·{s})·{y} != {x}·({s}·{y})"
                    )


def _close_table(mul: Table, members: set, generators: Sequence[int]) -> set:
    found = list(members)
    seen = set(found)
    cursor = 0
    while cursor < len(found):
        x = found[cursor]
        cursor += 1
        for s in generators:
            y = mul[x][s]
            if y not in seen:
                seen.add(y)
                found.append(y)
    return seen


def _check_associativity_sampled(mul: Table, settings: Settings) -> None:
    n = len(mul)
    rng = random.Random(settings.seed)
    samples = settings.associativity_sample_factor * n * n
    logger.debug("Spot-checking associativity on %d random triples", samples)
    for _ in range(samples):
        a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            raise NotAGroup(f"Associativity fails for ({a}, {b}, {c})")


def build_from_cayley(
    table: Sequence[Sequence[int]],
    name: Optional[str] = None,
    spec: Optional[GroupSpec] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> Group:
    """
    Validate an arbitrary multiplication table and renumber it so that the
    identity is element 0 (the other elements keep their relative order).
    """
    n = len(table)
    if n == 0:
        raise NotAGroup("The table is empty")
    if n > settings.max_order:
        raise OrderCapExceeded(
            f"The table has {n} rows, above the cap of {settings.max_order}"
        )
    for row in table:
        if len(row) != n:
            raise NotAGroup("The table is not square")
        for entry in row:
            if not isinstance(entry, int) or not 0 <= entry < n:
                raise NotAGroup(f"Entry {entry!r} is not an index in 0..{n - 1}")

    identity = next(
        (e for e in range(n) if list(table[e]) == list(range(n))), None
    )
    if identity is None:
        raise NotAGroup("No element acts as a left identity")

    order = [identity, *(a for a in range(n) if a != identity)]
    relabel = {old: new for new, old in enumerate(order)}
    mul = tuple(
        tuple(relabel[table[order[a]][order[b]]] for b in range(n)) for a in range(n)
    )
    check_axioms(mul, settings)
    inv = tuple(row.index(IDENTITY) for row in mul)
    labels = tuple(str(old) for old in order)
    return Group(mul, inv, name=name, spec=spec, labels=labels)


def build_from_generators(
    generators: Sequence[Permutation],
    name: Optional[str] = None,
    spec: Optional[GroupSpec] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> Group:
    """
    The permutation group generated by ``generators`` (0-based image tuples).
    Element order is the breadth-first discovery order, identity first.
    """
    for generator in generators:
        if sorted(generator) != list(range(len(generator))):
            raise InvalidSpec(f"{generator} is not a bijection")

    elements, index = closure(generators, settings.max_order)
    logger.debug(
        "Closure of %d generators has %d elements", len(generators), len(elements)
    )
    mul = tuple(
        tuple(index[tuple(b[x] for x in a)] for b in elements) for a in elements
    )
    inv = tuple(index[invert(p)] for p in elements)
    return Group(
        mul,
        inv,
        name=name,
        spec=spec,
        labels=tuple(format_cycles(p) for p in elements),
    )


def direct_product(
    G: Group, H: Group, name: Optional[str] = None, spec: Optional[GroupSpec] = None
) -> Group:
    """G×H with the pair (a, b) at index ``a·|H| + b``."""
    m = H.order
    mul = tuple(
        tuple(
            G.mul[a][c] * m + H.mul[b][d] for c in range(G.order) for d in range(m)
        )
        for a in range(G.order)
        for b in range(m)
    )
    inv = tuple(G.inv[a] * m + H.inv[b] for a in range(G.order) for b in range(m))
    labels = tuple(
        f"({G.label(a)}, {H.label(b)})" for a in range(G.order) for b in range(m)
    )
    if name is None and G.name and H.name:
        name = f"{G.name}x{H.name}"
    return Group(mul, inv, name=name, spec=spec, labels=labels)


def cyclic_group(n: int, name: Optional[str] = None) -> Group:
    mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inv = tuple((-a) % n for a in range(n))
    return Group(mul, inv, name=name)


def dihedral_group(order: int, name: Optional[str] = None) -> Group:
    """r^i s^j at index i + m·j with m = order/2, relation s r s = r⁻¹."""
    m = order // 2

    def product(a: int, b: int) -> int:
        i, j = a % m, a // m
        k, l = b % m, b // m
        rotation = (i + (k if j == 0 else -k)) % m
        return rotation + m * ((j + l) % 2)

    mul = tuple(tuple(product(a, b) for b in range(order)) for a in range(order))
    inv = tuple(row.index(IDENTITY) for row in mul)
    labels = tuple(
        ("r^%d" % (a % m) if a % m else "") + ("s" if a >= m else "") or "1"
        for a in range(order)
    )
    return Group(mul, inv, name=name, labels=labels)


def quaternion_group(name: Optional[str] = None) -> Group:
    """±1, ±i, ±j, ±k at indices 0..7, index = 4·sign + unit."""
    units = ["1", "i", "j", "k"]
    # (sign, unit) of units[a]·units[b]
    # fmt: off
    unit_table = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }
    # fmt: on

    def product(a: int, b: int) -> int:
        sign, unit = unit_table[(a % 4, b % 4)]
        return ((sign + a // 4 + b // 4) % 2) * 4 + unit

    mul = tuple(tuple(product(a, b) for b in range(8)) for a in range(8))
    inv = tuple(row.index(IDENTITY) for row in mul)
    labels = tuple(("-" if a // 4 else "") + units[a % 4] for a in range(8))
    return Group(mul, inv, name=name, labels=labels)
