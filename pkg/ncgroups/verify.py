"""
The claim harness: evaluates each supported claim over a generated catalog
and collects the outcome in a :class:`VerifyReport`.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Set

from ncgroups.catalog import IsoclinismPartition
from ncgroups.catalog import build_atlas
from ncgroups.catalog import build_catalog
from ncgroups.catalog import classes_per_centralizer_count
from ncgroups.catalog import classes_per_omega
from ncgroups.catalog import partition_isoclinism
from ncgroups.centralizers import CLASSIFICATION_ROWS
from ncgroups.centralizers import Verdict
from ncgroups.centralizers import classify_by_count
from ncgroups.exceptions import CatalogExhausted
from ncgroups.groups import Group
from ncgroups.isoclinism import LARGEST
from ncgroups.isoclinism import RANDOM
from ncgroups.isoclinism import find_stem_representative
from ncgroups.isoclinism import verify_witness
from ncgroups.types import DEFAULT_SETTINGS
from ncgroups.types import AtlasRecord
from ncgroups.types import ClaimResult
from ncgroups.types import Counterexample
from ncgroups.types import GroupSpec
from ncgroups.types import Settings
from ncgroups.types import VerifyReport

logger = logging.getLogger(__name__)

SOLVABILITY_THRESHOLD = 20


@dataclass
class VerificationContext:
    """Everything the claims read, computed once per run."""

    catalog: List[Group]
    records: List[AtlasRecord]
    partition: IsoclinismPartition
    settings: Settings

    def __post_init__(self):
        self.by_name: Dict[str, AtlasRecord] = {r.name: r for r in self.records}
        self._stems: Optional[Dict[int, Optional[str]]] = None

    def stem_representatives(self) -> Dict[int, Optional[str]]:
        """Per isoclinism class, the name of its smallest stem group if any."""
        if self._stems is None:
            self._stems = {}
            for index, representative in enumerate(self.partition.representatives):
                try:
                    stem = find_stem_representative(
                        representative, self.catalog, self.settings
                    )
                    self._stems[index] = stem.name
                except CatalogExhausted:
                    self._stems[index] = None
        return self._stems


Claim = Callable[[VerificationContext], ClaimResult]


def _solvability_claim(
    claim: str, column: str, context: VerificationContext
) -> ClaimResult:
    result = ClaimResult(
        claim,
        f"every catalog group with {column} <= {SOLVABILITY_THRESHOLD} is solvable",
    )
    boundary: List[AtlasRecord] = []
    for record in context.records:
        value = getattr(record, column)
        if column == "omega" and not record.omega_exact:
            if value <= SOLVABILITY_THRESHOLD:
                result.record(None)
            continue
        if value > SOLVABILITY_THRESHOLD:
            if not record.solvable:
                boundary.append(record)
            continue
        result.record(
            record.solvable,
            Counterexample(record.name, {column: value, "solvable": False}),
        )
    if boundary:
        sharpest = min(boundary, key=lambda r: (getattr(r, column), r.order))
        result.notes.append(
            f"boundary witness {sharpest.name}: {column}="
            f"{getattr(sharpest, column)}, solvable=false"
        )
    return result


def check_omega_solvability(context: VerificationContext) -> ClaimResult:
    return _solvability_claim("thm1.2", "omega", context)


def check_centralizer_solvability(context: VerificationContext) -> ClaimResult:
    return _solvability_claim("thm3.4", "centralizer_count", context)


def check_inequality(context: VerificationContext) -> ClaimResult:
    result = ClaimResult(
        "ineq-1+omega", "1 + omega <= centralizer count for non-abelian groups"
    )
    for record in context.records:
        if record.abelian:
            continue
        holds = 1 + record.omega <= record.centralizer_count
        if holds and not record.omega_exact:
            result.record(None)
            continue
        result.record(
            holds,
            Counterexample(
                record.name,
                {
                    "omega": record.omega,
                    "centralizer_count": record.centralizer_count,
                },
            ),
        )
    return result


def _witnessed_pairs_claim(
    claim: str, description: str, column: str, context: VerificationContext
) -> ClaimResult:
    result = ClaimResult(claim, description)
    seed = context.settings.seed
    for witness in context.partition.witnesses:
        source = context.by_name[witness.source.name]
        target = context.by_name[witness.target.name]
        if not (
            verify_witness(witness, LARGEST)
            and verify_witness(witness, RANDOM, seed)
        ):
            result.record(
                False,
                Counterexample(f"{source.name}~{target.name}", {"witness": "invalid"}),
            )
            continue
        if column == "omega" and not (source.omega_exact and target.omega_exact):
            result.record(None)
            continue
        a, b = getattr(source, column), getattr(target, column)
        result.record(
            a == b,
            Counterexample(f"{source.name}~{target.name}", {column: [a, b]}),
        )
    for pair in context.partition.indeterminate:
        result.notes.append(f"isoclinism of {pair[0]} and {pair[1]} undecided")
    return result


def check_isoclinism_omega(context: VerificationContext) -> ClaimResult:
    return _witnessed_pairs_claim(
        "lemma2.1",
        "witnessed isoclinic pairs have equal omega",
        "omega",
        context,
    )


def check_isoclinism_centralizers(context: VerificationContext) -> ClaimResult:
    return _witnessed_pairs_claim(
        "lemma3.2",
        "witnessed isoclinic pairs have equal centralizer counts",
        "centralizer_count",
        context,
    )


def check_classification(context: VerificationContext) -> ClaimResult:
    result = ClaimResult(
        "thm3.5",
        "centralizer counts 4 to 8 determine the central quotient as listed",
    )
    realized: Dict[GroupSpec, Group] = {}
    observed: Dict[str, Set[int]] = defaultdict(set)
    one_directional = {
        name
        for row in CLASSIFICATION_ROWS
        if not row.biconditional
        for name in row.quotient_names
    }
    for G in context.catalog:
        report = classify_by_count(G, context.settings, realized)
        quotient = report.central_quotient
        if quotient is not None and quotient in one_directional:
            observed[quotient].add(report.count)
        result.record(
            report.verdict is not Verdict.VIOLATION,
            Counterexample(
                report.group,
                {
                    "centralizer_count": report.count,
                    "central_quotient": report.central_quotient or "unknown",
                },
            ),
        )
    for quotient, counts in sorted(observed.items()):
        result.notes.append(
            f"central quotient {quotient} observed with counts {sorted(counts)}"
        )
    return result


def _class_claim(
    claim: str, description: str, columns: Sequence[str], context: VerificationContext
) -> ClaimResult:
    result = ClaimResult(claim, description)
    per_class: Dict[int, List[AtlasRecord]] = defaultdict(list)
    for record in context.records:
        per_class[record.isoclinism_class].append(record)

    stems = context.stem_representatives()
    for index, members in sorted(per_class.items()):
        if columns[0] == "omega" and not all(m.omega_exact for m in members):
            result.record(None)
            continue
        values = {tuple(getattr(m, column) for column in columns) for m in members}
        stem_name = stems.get(index)
        if stem_name is None:
            result.notes.append(f"class {index} has no stem group in the catalog")
            result.record(None)
            continue
        stem = context.by_name[stem_name]
        stem_value = tuple(getattr(stem, column) for column in columns)
        result.record(
            values == {stem_value},
            Counterexample(
                members[0].name,
                {"values": sorted(values), "stem": stem_name},
            ),
        )

    counted = (
        classes_per_omega(context.records)
        if columns[0] == "omega"
        else classes_per_centralizer_count(context.records)
    )
    result.notes.append(
        f"classes per {columns[0]}: "
        + ", ".join(f"{value}: {count}" for value, count in counted.items())
    )
    return result


def check_omega_classes(context: VerificationContext) -> ClaimResult:
    return _class_claim(
        "thm1.1",
        "omega, centralizer count and derived order are constant on isoclinism "
        "classes, and each class has a stem group with the same omega",
        ("omega", "centralizer_count", "derived_order"),
        context,
    )


def check_centralizer_classes(context: VerificationContext) -> ClaimResult:
    return _class_claim(
        "thm3.3",
        "centralizer counts are constant on isoclinism classes, and each class "
        "has a stem group with the same count",
        ("centralizer_count",),
        context,
    )


CLAIMS: Dict[str, Claim] = {
    "thm1.2": check_omega_solvability,
    "thm3.4": check_centralizer_solvability,
    "lemma2.1": check_isoclinism_omega,
    "lemma3.2": check_isoclinism_centralizers,
    "thm3.5": check_classification,
    "ineq-1+omega": check_inequality,
    "thm1.1": check_omega_classes,
    "thm3.3": check_centralizer_classes,
}


def build_context(
    max_order: int, settings: Settings = DEFAULT_SETTINGS
) -> VerificationContext:
    catalog = build_catalog(max_order, settings)
    partition = partition_isoclinism(catalog, settings)
    records = build_atlas(catalog, settings, partition)
    return VerificationContext(catalog, records, partition, settings)


def run_claims(
    context: VerificationContext, claims: Optional[Sequence[str]] = None
) -> List[ClaimResult]:
    results = []
    for claim in claims or list(CLAIMS):
        if claim not in CLAIMS:
            raise ValueError(f"Unknown claim {claim!r}")
        logger.info("Checking %s", claim)
        results.append(CLAIMS[claim](context))
    return results


def verify(
    max_order: int,
    claims: Optional[Sequence[str]] = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> VerifyReport:
    """Build the catalog up to ``max_order`` and evaluate ``claims``, all by default."""
    for claim in claims or ():
        if claim not in CLAIMS:
            raise ValueError(f"Unknown claim {claim!r}")
    context = build_context(max_order, settings)
    return VerifyReport(
        max_order=max_order,
        catalog_size=len(context.catalog),
        claims=run_claims(context, claims),
    )
