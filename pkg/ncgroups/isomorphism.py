"""
Isomorphism search between multiplication-table groups.

The search assigns images to the greedy generating sequence of the source
group one generator at a time. Every partial assignment is extended to the
whole subgroup generated so far by breadth-first propagation of
``f(e·s) = f(e)·f(s)``; a clash or a non-injective image prunes the branch.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from math import lcm
from typing import Callable
from typing import Dict
from typing import Iterator
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from ncgroups.groups import IDENTITY
from ncgroups.groups import Fingerprint
from ncgroups.groups import Group
from ncgroups.specs import expected_order
from ncgroups.specs import realize
from ncgroups.types import DEFAULT_SETTINGS
from ncgroups.types import GroupSpec
from ncgroups.types import Settings
from ncgroups.utils import NodeBudget

logger = logging.getLogger(__name__)

# (partial map, newly mapped source elements) -> keep exploring?
CompatibilityHook = Callable[[Sequence[int], Sequence[int]], bool]

UNMAPPED = -1


@dataclass(frozen=True)
class IsomorphismWitness:
    source: Group
    target: Group
    mapping: Tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.mapping[g]

    def is_valid(self) -> bool:
        """Full re-check: a bijection that respects every product."""
        G, H, f = self.source, self.target, self.mapping
        if G.order != H.order or sorted(f) != list(range(H.order)):
            return False
        return all(
            f[G.mul[a][b]] == H.mul[f[a]][f[b]]
            for a in range(G.order)
            for b in range(G.order)
        )


def _candidates(G: Group, H: Group, s: int) -> List[int]:
    key = (G.element_orders[s], G.centralizer_orders[s])
    candidates = [
        h
        for h in range(H.order)
        if (H.element_orders[h], H.centralizer_orders[h]) == key
    ]
    if G is H:
        # try the identity assignment first
        candidates.sort(key=lambda h: (h != s, h))
    return candidates


def _extend(
    G: Group,
    H: Group,
    mapping: List[int],
    reverse: List[int],
    assigned: Sequence[int],
) -> Optional[List[int]]:
    """
    Propagate the partial map over ``<assigned>``; return the newly mapped
    elements, or ``None`` when the map cannot be a homomorphism.
    Mutates ``mapping`` and ``reverse``.
    """
    newly_mapped = [assigned[-1]]
    queue = [g for g in range(G.order) if mapping[g] != UNMAPPED]
    cursor = 0
    while cursor < len(queue):
        e = queue[cursor]
        cursor += 1
        for s in assigned:
            x = G.mul[e][s]
            y = H.mul[mapping[e]][mapping[s]]
            if mapping[x] == UNMAPPED:
                if reverse[y] != UNMAPPED:
                    return None
                mapping[x] = y
                reverse[y] = x
                newly_mapped.append(x)
                queue.append(x)
            elif mapping[x] != y:
                return None
    return newly_mapped


def iter_isomorphisms(
    G: Group,
    H: Group,
    compatible: Optional[CompatibilityHook] = None,
    budget: Optional[NodeBudget] = None,
) -> Iterator[IsomorphismWitness]:
    """
    Enumerate all isomorphisms ``G → H`` in canonical order: generator images
    are tried by ascending target index (the identity map comes first when
    ``G is H``).

    :raises NodeBudgetExhausted: when ``budget`` runs out mid-search.
    """
    if G.order != H.order or G.fingerprint != H.fingerprint:
        return

    generators = G.generators
    candidates = [_candidates(G, H, s) for s in generators]

    def search(
        depth: int, mapping: List[int], reverse: List[int]
    ) -> Iterator[IsomorphismWitness]:
        if depth == len(generators):
            yield IsomorphismWitness(G, H, tuple(mapping))
            return
        s = generators[depth]
        for t in candidates[depth]:
            if budget is not None:
                budget.tick()
            if reverse[t] != UNMAPPED:
                continue
            next_mapping, next_reverse = mapping.copy(), reverse.copy()
            next_mapping[s] = t
            next_reverse[t] = s
            newly_mapped = _extend(
                G, H, next_mapping, next_reverse, generators[: depth + 1]
            )
            if newly_mapped is None:
                continue
            if compatible is not None and not compatible(next_mapping, newly_mapped):
                continue
            yield from search(depth + 1, next_mapping, next_reverse)

    mapping = [UNMAPPED] * G.order
    reverse = [UNMAPPED] * H.order
    mapping[IDENTITY] = reverse[IDENTITY] = IDENTITY
    if compatible is not None and not compatible(mapping, [IDENTITY]):
        return
    yield from search(0, mapping, reverse)


def find_isomorphism(
    G: Group,
    H: Group,
    compatible: Optional[CompatibilityHook] = None,
    budget: Optional[NodeBudget] = None,
) -> Optional[IsomorphismWitness]:
    """The first isomorphism of :func:`iter_isomorphisms`, or ``None``."""
    return next(iter_isomorphisms(G, H, compatible, budget), None)


def is_isomorphic(G: Group, H: Group, settings: Settings = DEFAULT_SETTINGS) -> bool:
    return find_isomorphism(G, H, budget=NodeBudget(settings.node_budget)) is not None


def product_fingerprint(left: Fingerprint, right: Fingerprint) -> Fingerprint:
    """
    The fingerprint of ``G×H`` from those of ``G`` and ``H``:
    element orders combine by lcm, centralizer orders multiply.
    """
    order_l, abelian_l, center_l, derived_l, spectrum_l = left
    order_r, abelian_r, center_r, derived_r, spectrum_r = right
    spectrum: Counter = Counter()
    for (element_l, centralizer_l), count_l in spectrum_l:
        for (element_r, centralizer_r), count_r in spectrum_r:
            key = (lcm(element_l, element_r), centralizer_l * centralizer_r)
            spectrum[key] += count_l * count_r
    return (
        order_l * order_r,
        abelian_l and abelian_r,
        center_l * center_r,
        derived_l * derived_r,
        tuple(sorted(spectrum.items())),
    )


def identify(
    G: Group,
    targets: Sequence[GroupSpec],
    settings: Settings = DEFAULT_SETTINGS,
    realized: Optional[Dict[GroupSpec, Group]] = None,
) -> Optional[str]:
    """
    The name of the first target isomorphic to ``G``, in the given order.

    Targets of a different order are never realized. ``realized`` is an
    optional cache of already built targets, filled as a side effect.
    """
    realized = {} if realized is None else realized
    for spec in targets:
        if expected_order(spec) not in (None, G.order):
            continue
        if spec not in realized:
            realized[spec] = realize(spec, settings)
        target = realized[spec]
        if target.order != G.order or target.fingerprint != G.fingerprint:
            continue
        if is_isomorphic(G, target, settings):
            logger.debug("%s identified as %s", G.name, spec.name)
            return spec.name
    return None
