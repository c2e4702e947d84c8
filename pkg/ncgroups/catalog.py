"""
A catalog of small groups: the built-in families and their direct products,
deduplicated up to isomorphism, with per-group invariants and a partition
into isoclinism classes.

Abelian entries are deduplicated by fingerprint alone (the number of
elements of each order determines a finite abelian group). Non-abelian
entries with equal fingerprints are compared with an isomorphism search.
Product fingerprints are derived from the factors, so product tables are
only built when needed.
"""
import csv
import json
import logging
import multiprocessing
from collections import defaultdict
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from functools import partial
from math import factorial
from typing import IO
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Set
from typing import Tuple

from ncgroups.centralizers import centralizer_count
from ncgroups.exceptions import NodeBudgetExhausted
from ncgroups.exceptions import OrderCapExceeded
from ncgroups.groups import Fingerprint
from ncgroups.groups import Group
from ncgroups.groups import direct_product
from ncgroups.groups import is_solvable
from ncgroups.isoclinism import Isoclinism
from ncgroups.isoclinism import IsoclinismWitness
from ncgroups.isoclinism import check_isoclinism
from ncgroups.isoclinism import is_stem
from ncgroups.isomorphism import find_isomorphism
from ncgroups.isomorphism import identify
from ncgroups.isomorphism import product_fingerprint
from ncgroups.noncommuting import omega_or_bounds
from ncgroups.specs import realize
from ncgroups.types import ATLAS_COLUMNS
from ncgroups.types import DEFAULT_SETTINGS
from ncgroups.types import F20
from ncgroups.types import Alternating
from ncgroups.types import AtlasRecord
from ncgroups.types import Cyclic
from ncgroups.types import Dihedral
from ncgroups.types import DirectProduct
from ncgroups.types import GroupSpec
from ncgroups.types import Quaternion8
from ncgroups.types import Settings
from ncgroups.types import Symmetric
from ncgroups.utils import NodeBudget
from ncgroups.utils import UnionFind

logger = logging.getLogger(__name__)

UNKNOWN = "unknown"

_FAMILY_RANK = {Cyclic: 0, Symmetric: 1, Alternating: 2, Quaternion8: 3, F20: 3}
_OTHER_RANK = 4


def name_key(spec: GroupSpec) -> Tuple:
    """
    Preference between names of isomorphic groups, smallest first: products of
    cyclic groups, then fewer factors, then C < S < A < Q8, F20 < D.
    """
    factors = spec.factors
    ranks = tuple(_FAMILY_RANK.get(type(f), _OTHER_RANK) for f in factors)
    all_cyclic = all(isinstance(f, Cyclic) for f in factors)
    return (0 if all_cyclic else 1, len(factors), ranks, spec.name)


def family_specs(max_order: int) -> List[GroupSpec]:
    specs: List[GroupSpec] = [Cyclic(n) for n in range(1, max_order + 1)]
    specs.extend(Dihedral(order) for order in range(4, max_order + 1, 2))
    n = 1
    while factorial(n) <= max_order:
        specs.append(Symmetric(n))
        n += 1
    n = 1
    while max(factorial(n) // 2, 1) <= max_order:
        specs.append(Alternating(n))
        n += 1
    if max_order >= 8:
        specs.append(Quaternion8())
    if max_order >= 20:
        specs.append(F20())
    return specs


@dataclass
class _Entry:
    spec: GroupSpec
    fingerprint: Fingerprint
    group: Optional[Group] = None
    factors: Optional[Tuple["_Entry", "_Entry"]] = None

    @property
    def order(self) -> int:
        return self.fingerprint[0]

    @property
    def abelian(self) -> bool:
        return self.fingerprint[1]

    def realize(self, settings: Settings) -> Group:
        if self.group is None:
            if self.factors is not None:
                left, right = self.factors
                self.group = direct_product(
                    left.realize(settings),
                    right.realize(settings),
                    name=self.spec.name,
                    spec=self.spec,
                )
            else:
                self.group = realize(self.spec, settings)
        return self.group


@dataclass
class _Catalog:
    settings: Settings
    entries: List[_Entry] = field(default_factory=list)
    buckets: Dict[Fingerprint, List[_Entry]] = field(
        default_factory=lambda: defaultdict(list)
    )

    def add(self, candidate: _Entry) -> bool:
        """Insert unless an isomorphic entry exists; keep the preferred name."""
        for existing in self.buckets[candidate.fingerprint]:
            if candidate.abelian or self._isomorphic(existing, candidate):
                if name_key(candidate.spec) < name_key(existing.spec):
                    existing.spec = candidate.spec
                    existing.group = candidate.group
                    existing.factors = candidate.factors
                return False
        self.buckets[candidate.fingerprint].append(candidate)
        self.entries.append(candidate)
        return True

    def _isomorphic(self, a: _Entry, b: _Entry) -> bool:
        budget = NodeBudget(self.settings.node_budget)
        try:
            witness = find_isomorphism(
                a.realize(self.settings), b.realize(self.settings), budget=budget
            )
        except NodeBudgetExhausted:
            # undecided pairs stay separate entries
            logger.warning(
                "Isomorphism of %s and %s undecided", a.spec.name, b.spec.name
            )
            return False
        return witness is not None


def build_catalog(
    max_order: int, settings: Settings = DEFAULT_SETTINGS
) -> List[Group]:
    """
    Every family member of order at most ``max_order`` and every direct product
    of two members within the bound, products of products included, one
    entry per isomorphism type, sorted by (order, name).
    """
    if max_order > settings.max_order:
        raise OrderCapExceeded(
            f"Catalog order {max_order} is above the cap of {settings.max_order}"
        )

    catalog = _Catalog(settings)
    for spec in family_specs(max_order):
        group = realize(spec, settings)
        catalog.add(_Entry(spec, group.fingerprint, group))

    tried: Set[Tuple[int, int]] = set()
    round_ = 0
    while True:
        round_ += 1
        snapshot = list(catalog.entries)
        added = 0
        for i, left in enumerate(snapshot):
            for j in range(i, len(snapshot)):
                right = snapshot[j]
                if left.order == 1 or right.order == 1:
                    continue
                if left.order * right.order > max_order:
                    continue
                key = (id(left), id(right))
                if key in tried:
                    continue
                tried.add(key)
                candidate = _Entry(
                    DirectProduct(left.spec, right.spec),
                    product_fingerprint(left.fingerprint, right.fingerprint),
                    factors=(left, right),
                )
                added += catalog.add(candidate)
        logger.debug("Catalog round %d added %d products", round_, added)
        if not added:
            break

    groups = [entry.realize(settings) for entry in catalog.entries]
    groups.sort(key=lambda G: (G.order, G.name))
    logger.info("Catalog up to order %d has %d groups", max_order, len(groups))
    return groups


def compute_record(G: Group, settings: Settings = DEFAULT_SETTINGS) -> AtlasRecord:
    """
    Every invariant of ``G`` except its central quotient name and isoclinism
    class, which need the whole catalog.
    """
    result = omega_or_bounds(G, settings)
    return AtlasRecord(
        name=G.name or "G",
        order=G.order,
        center_order=G.center.order,
        derived_order=G.derived_subgroup.order,
        omega=result.size,
        omega_exact=result.exact,
        centralizer_count=centralizer_count(G),
        solvable=is_solvable(G),
        stem=is_stem(G),
        central_quotient=UNKNOWN,
    )


def central_quotient_name(
    G: Group, catalog: Sequence[Group], settings: Settings = DEFAULT_SETTINGS
) -> str:
    Q, _ = G.central_quotient
    realized: Dict[GroupSpec, Group] = {
        K.spec: K for K in catalog if K.spec is not None and K.order == Q.order
    }
    return identify(Q, list(realized), settings, realized) or UNKNOWN


@dataclass
class IsoclinismPartition:
    """
    Classes of catalog groups, each sorted by (order, name) so that the first
    member is a minimal-order representative; classes are ordered by their
    representative. Undecided pairs are listed and were never merged.
    """

    classes: List[List[Group]]
    witnesses: List[IsoclinismWitness] = field(default_factory=list)
    indeterminate: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def representatives(self) -> List[Group]:
        return [members[0] for members in self.classes]

    def class_of(self, G: Group) -> int:
        for index, members in enumerate(self.classes):
            if any(member is G for member in members):
                return index
        raise KeyError(G.name)

    def class_ids(self) -> Dict[str, int]:
        return {
            member.name or "G": index
            for index, members in enumerate(self.classes)
            for member in members
        }


def _isoclinism_key(G: Group) -> Tuple:
    Q, _ = G.central_quotient
    derived, _ = G.derived_subgroup.as_group()
    return Q.fingerprint, derived.fingerprint


def partition_isoclinism(
    catalog: Sequence[Group], settings: Settings = DEFAULT_SETTINGS
) -> IsoclinismPartition:
    """
    Union-find classes under isoclinism. Each group is tested against the
    representatives of the classes that share its invariants and joins the
    first one that is provably isoclinic.
    """
    ordered = sorted(catalog, key=lambda G: (G.order, G.name or ""))
    union_find: UnionFind[int] = UnionFind()
    representatives: Dict[Tuple, List[int]] = defaultdict(list)
    witnesses: List[IsoclinismWitness] = []
    indeterminate: List[Tuple[str, str]] = []

    for index, G in enumerate(ordered):
        union_find.find(index)
        key = _isoclinism_key(G)
        for candidate in representatives[key]:
            R = ordered[candidate]
            outcome, witness = check_isoclinism(R, G, settings)
            if outcome is Isoclinism.ISOCLINIC:
                union_find.union(candidate, index)
                witnesses.append(witness)  # type: ignore
                break
            if outcome is Isoclinism.INDETERMINATE:
                indeterminate.append((R.name or "G", G.name or "G"))
        else:
            representatives[key].append(index)

    classes = [
        [ordered[i] for i in sorted(members)] for members in union_find.groups()
    ]
    classes.sort(key=lambda members: (members[0].order, members[0].name or ""))
    logger.info(
        "%d groups fall into %d isoclinism classes (%d undecided pairs)",
        len(ordered),
        len(classes),
        len(indeterminate),
    )
    return IsoclinismPartition(classes, witnesses, indeterminate)


def build_atlas(
    catalog: Sequence[Group],
    settings: Settings = DEFAULT_SETTINGS,
    partition: Optional[IsoclinismPartition] = None,
) -> List[AtlasRecord]:
    """
    One record per catalog group, in catalog order. With ``settings.jobs > 1``
    the per-group invariants are computed in a process pool.
    """
    compute = partial(compute_record, settings=settings)
    if settings.jobs > 1:
        with multiprocessing.Pool(processes=settings.jobs) as pool:
            records = pool.map(compute, catalog)
    else:
        records = [compute(G) for G in catalog]

    partition = partition or partition_isoclinism(catalog, settings)
    class_ids = partition.class_ids()
    return [
        replace(
            record,
            central_quotient=central_quotient_name(G, catalog, settings),
            isoclinism_class=class_ids[record.name],
        )
        for G, record in zip(catalog, records)
    ]


def _classes_per(records: Sequence[AtlasRecord], column: str) -> Dict[int, int]:
    classes: Dict[int, Set[int]] = defaultdict(set)
    for record in records:
        if column == "omega" and not record.omega_exact:
            continue
        classes[getattr(record, column)].add(record.isoclinism_class)
    return {value: len(ids) for value, ids in sorted(classes.items())}


def classes_per_omega(records: Sequence[AtlasRecord]) -> Dict[int, int]:
    """Number of isoclinism classes per exact ω value."""
    return _classes_per(records, "omega")


def classes_per_centralizer_count(records: Sequence[AtlasRecord]) -> Dict[int, int]:
    return _classes_per(records, "centralizer_count")


def _csv_value(value: object) -> object:
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def emit_atlas(records: Sequence[AtlasRecord], format: str, stream: IO[str]) -> None:
    """Write the atlas as CSV (header row first) or as a canonical JSON array."""
    if format == "csv":
        writer = csv.DictWriter(stream, fieldnames=ATLAS_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(
                {key: _csv_value(value) for key, value in record.to_row().items()}
            )
    elif format == "json":
        json.dump(
            [record.to_row() for record in records],
            stream,
            sort_keys=True,
            indent=2,
            ensure_ascii=False,
        )
        stream.write("\n")
    else:
        raise ValueError(f"Unsupported atlas format {format!r}")
