"""
Isoclinism of finite groups and stem groups.

Two groups are isoclinic when there are isomorphisms ``φ: G/Z(G) → H/Z(H)``
and ``θ: G' → H'`` such that ``θ([g₁, g₂]) = [h₁, h₂]`` whenever ``φ``
sends ``g₁Z(G), g₂Z(G)`` to ``h₁Z(H), h₂Z(H)``.

Only ``φ`` is enumerated. The compatibility condition fixes ``θ`` on every
commutator value and commutator values generate ``G'``, so each ``φ`` leaves
exactly one candidate ``θ`` to check.
"""
import logging
import random
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from ncgroups.exceptions import CatalogExhausted
from ncgroups.exceptions import NodeBudgetExhausted
from ncgroups.exceptions import NotAGroup
from ncgroups.groups import IDENTITY
from ncgroups.groups import Group
from ncgroups.isomorphism import UNMAPPED
from ncgroups.isomorphism import IsomorphismWitness
from ncgroups.isomorphism import iter_isomorphisms
from ncgroups.types import DEFAULT_SETTINGS
from ncgroups.types import IsoclinismWitnessDocument
from ncgroups.types import Settings
from ncgroups.types import Table
from ncgroups.utils import NodeBudget

logger = logging.getLogger(__name__)

SMALLEST = "smallest"
LARGEST = "largest"
RANDOM = "random"


def coset_representatives(
    G: Group, choice: str = SMALLEST, seed: int = 0
) -> Tuple[int, ...]:
    """One element per coset of ``Z(G)``, indexed by coset."""
    Q, projection = G.central_quotient
    cosets: List[List[int]] = [[] for _ in range(Q.order)]
    for g, coset in enumerate(projection):
        cosets[coset].append(g)
    if choice == SMALLEST:
        return tuple(members[0] for members in cosets)
    if choice == LARGEST:
        return tuple(members[-1] for members in cosets)
    if choice == RANDOM:
        rng = random.Random(seed)
        return tuple(rng.choice(members) for members in cosets)
    raise ValueError(f"Unknown representative choice {choice!r}")


def _commutator_table(G: Group, representatives: Sequence[int]) -> Table:
    return tuple(
        tuple(G.commutator(a, b) for b in representatives) for a in representatives
    )


@dataclass(frozen=True)
class CommutatorMap:
    """``table[aZ][bZ] = [a, b]``, a G-element of ``G'``."""

    group: Group
    representatives: Tuple[int, ...]
    table: Table

    def __call__(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def values(self) -> List[int]:
        return sorted({x for row in self.table for x in row})


def commutator_map(G: Group, check: bool = True) -> CommutatorMap:
    """
    The commutator map on pairs of central cosets. With ``check`` the table is
    recomputed from the largest representatives and must coincide.

    :raises NotAGroup: when the two tables differ.
    """
    representatives = coset_representatives(G)
    table = _commutator_table(G, representatives)
    if check:
        recomputed = _commutator_table(G, coset_representatives(G, LARGEST))
        if recomputed != table:
            raise NotAGroup("Commutators are not constant on central cosets")
    return CommutatorMap(G, representatives, table)


@dataclass(frozen=True)
class IsoclinismWitness:
    """
    ``quotient_iso`` maps ``G/Z(G)`` onto ``H/Z(H)``; ``derived_iso`` maps
    ``G'`` onto ``H'``, both derived subgroups taken as standalone groups whose
    elements sit in their parents at ``source_derived`` and ``target_derived``.
    """

    source: Group
    target: Group
    quotient_iso: IsomorphismWitness
    derived_iso: IsomorphismWitness
    source_derived: Tuple[int, ...]
    target_derived: Tuple[int, ...]
    source_representatives: Tuple[int, ...]
    target_representatives: Tuple[int, ...]

    @cached_property
    def derived_map(self) -> Dict[int, int]:
        """θ on parent element indices."""
        return {
            g: self.target_derived[self.derived_iso(position)]
            for position, g in enumerate(self.source_derived)
        }


def _theta(
    alpha_g: CommutatorMap,
    alpha_h: CommutatorMap,
    phi: Sequence[int],
    domain: Iterable[int],
) -> Optional[Dict[int, int]]:
    """The map forced on commutator values, if single-valued and injective."""
    theta: Dict[int, int] = {}
    inverse: Dict[int, int] = {}
    mapped = list(domain)
    for a in mapped:
        row_g = alpha_g.table[a]
        row_h = alpha_h.table[phi[a]]
        for b in mapped:
            x, y = row_g[b], row_h[phi[b]]
            if theta.setdefault(x, y) != y or inverse.setdefault(y, x) != x:
                return None
    return theta


def extend_to_isomorphism(
    G: Group, H: Group, seed: Dict[int, int]
) -> Optional[Dict[int, int]]:
    """
    Extend ``seed`` (G-elements to H-elements) to an injective homomorphism
    on the subgroup its keys generate, or ``None`` if the values clash.
    """
    mapping = {IDENTITY: IDENTITY}
    used = {IDENTITY}
    generators = [g for g in seed if g != IDENTITY]
    if seed.get(IDENTITY, IDENTITY) != IDENTITY:
        return None
    queue = [IDENTITY]
    cursor = 0
    while cursor < len(queue):
        e = queue[cursor]
        cursor += 1
        for s in generators:
            x = G.mul[e][s]
            y = H.mul[mapping[e]][seed[s]]
            if x not in mapping:
                if y in used:
                    return None
                mapping[x] = y
                used.add(y)
                queue.append(x)
            elif mapping[x] != y:
                return None
    if any(mapping[g] != h for g, h in seed.items()):
        return None
    return mapping


def _derived_witness(
    G: Group, H: Group, theta: Dict[int, int]
) -> Tuple[IsomorphismWitness, Tuple[int, ...], Tuple[int, ...]]:
    source, source_embedding = G.derived_subgroup.as_group(f"{G.name or 'G'}'")
    target, target_embedding = H.derived_subgroup.as_group(f"{H.name or 'H'}'")
    position = {h: i for i, h in enumerate(target_embedding)}
    mapping = tuple(position[theta[g]] for g in source_embedding)
    return (
        IsomorphismWitness(source, target, mapping),
        source_embedding,
        target_embedding,
    )


def are_isoclinic(
    G: Group,
    H: Group,
    settings: Settings = DEFAULT_SETTINGS,
    budget: Optional[NodeBudget] = None,
) -> Optional[IsoclinismWitness]:
    """
    A witness that ``G`` and ``H`` are isoclinic, or ``None`` if they are not.

    :raises NodeBudgetExhausted: when the enumeration of quotient
        isomorphisms exceeds ``settings.node_budget``; the question is then
        undecided.
    """
    QG, _ = G.central_quotient
    QH, _ = H.central_quotient
    DG, DH = G.derived_subgroup, H.derived_subgroup
    if QG.order != QH.order or DG.order != DH.order:
        return None
    if QG.fingerprint != QH.fingerprint:
        return None
    if DG.as_group()[0].fingerprint != DH.as_group()[0].fingerprint:
        return None

    alpha_g, alpha_h = commutator_map(G), commutator_map(H)
    budget = budget or NodeBudget(settings.node_budget)

    def compatible(phi: Sequence[int], newly_mapped: Sequence[int]) -> bool:
        domain = (c for c in range(QG.order) if phi[c] != UNMAPPED)
        return _theta(alpha_g, alpha_h, phi, domain) is not None

    for phi in iter_isomorphisms(QG, QH, compatible=compatible, budget=budget):
        theta = _theta(alpha_g, alpha_h, phi.mapping, range(QG.order))
        if theta is None:
            continue
        extended = extend_to_isomorphism(G, H, theta)
        if extended is None or len(extended) != DG.order:
            continue
        derived_iso, source_derived, target_derived = _derived_witness(
            G, H, extended
        )
        logger.debug("%s and %s are isoclinic", G.name, H.name)
        return IsoclinismWitness(
            G,
            H,
            phi,
            derived_iso,
            source_derived,
            target_derived,
            alpha_g.representatives,
            alpha_h.representatives,
        )
    return None


class Isoclinism(Enum):
    ISOCLINIC = "isoclinic"
    NOT_ISOCLINIC = "not isoclinic"
    INDETERMINATE = "indeterminate"


def check_isoclinism(
    G: Group, H: Group, settings: Settings = DEFAULT_SETTINGS
) -> Tuple[Isoclinism, Optional[IsoclinismWitness]]:
    try:
        witness = are_isoclinic(G, H, settings)
    except NodeBudgetExhausted:
        logger.warning("Isoclinism of %s and %s is undecided", G.name, H.name)
        return Isoclinism.INDETERMINATE, None
    if witness is None:
        return Isoclinism.NOT_ISOCLINIC, None
    return Isoclinism.ISOCLINIC, witness


def verify_witness(
    witness: IsoclinismWitness, representatives: str = LARGEST, seed: int = 0
) -> bool:
    """
    Re-check a witness from scratch: both maps are isomorphisms and the
    commutator condition holds for every pair of cosets, with coset
    representatives chosen independently of the search.
    """
    G, H = witness.source, witness.target
    if not (witness.quotient_iso.is_valid() and witness.derived_iso.is_valid()):
        return False
    if set(witness.source_derived) != G.derived_subgroup.member_set:
        return False
    if set(witness.target_derived) != H.derived_subgroup.member_set:
        return False

    reps_g = coset_representatives(G, representatives, seed)
    reps_h = coset_representatives(H, representatives, seed + 1)
    phi, theta = witness.quotient_iso, witness.derived_map
    for a, g1 in enumerate(reps_g):
        h1 = reps_h[phi(a)]
        for b, g2 in enumerate(reps_g):
            h2 = reps_h[phi(b)]
            if theta[G.commutator(g1, g2)] != H.commutator(h1, h2):
                return False
    return True


def witness_to_json(witness: IsoclinismWitness) -> IsoclinismWitnessDocument:
    return {
        "source": witness.source.name or "G",
        "target": witness.target.name or "H",
        "quotient_order": len(witness.quotient_iso.mapping),
        "derived_order": len(witness.source_derived),
        "quotient_map": list(witness.quotient_iso.mapping),
        "source_representatives": list(witness.source_representatives),
        "target_representatives": list(witness.target_representatives),
        "derived_map": [[g, h] for g, h in sorted(witness.derived_map.items())],
    }


def is_stem(G: Group) -> bool:
    return G.center.issubset(G.derived_subgroup)


def find_stem_representative(
    G: Group, catalog: Sequence[Group], settings: Settings = DEFAULT_SETTINGS
) -> Group:
    """
    The smallest catalog group that is stem and isoclinic to ``G``. Only
    orders up to ``|G/Z(G)|·|G'|`` can qualify.

    :raises CatalogExhausted: when no catalog member qualifies.
    """
    limit = G.central_quotient[0].order * G.derived_subgroup.order
    for K in sorted(catalog, key=lambda K: K.order):
        if K.order > limit:
            break
        if not is_stem(K):
            continue
        outcome, _ = check_isoclinism(G, K, settings)
        if outcome is Isoclinism.ISOCLINIC:
            return K
        if outcome is Isoclinism.INDETERMINATE:
            logger.warning(
                "Isoclinism of %s and stem candidate %s left undecided",
                G.name or G,
                K.name or K,
            )
    raise CatalogExhausted(
        f"No stem group isoclinic to {G.name or G!r} among "
        f"{len(catalog)} catalog groups of order at most {limit}"
    )
