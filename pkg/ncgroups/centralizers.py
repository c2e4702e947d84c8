"""Element centralizers, their count |𝒞(G)| and the classification of small counts"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from ncgroups.groups import Group
from ncgroups.groups import Subgroup
from ncgroups.isomorphism import identify
from ncgroups.specs import parse_spec
from ncgroups.types import DEFAULT_SETTINGS
from ncgroups.types import GroupSpec
from ncgroups.types import Settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CentralizerSet:
    """
    The distinct element centralizers of ``parent``, ordered by their witness:
    ``witnesses[i]`` is the smallest element ``g`` with ``C(g) = members[i]``.
    The whole group therefore comes first (it is the centralizer of the identity).
    """

    parent: Group
    members: Tuple[Subgroup, ...]
    witnesses: Tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.members)

    @property
    def orders(self) -> List[int]:
        return [member.order for member in self.members]


def centralizer_set(G: Group) -> CentralizerSet:
    found: Dict[Tuple[int, ...], int] = {}
    for g in range(G.order):
        members = tuple(a for a in range(G.order) if G.commutes(a, g))
        found.setdefault(members, g)
    return CentralizerSet(
        G,
        tuple(Subgroup(G, members) for members in found),
        tuple(found.values()),
    )


def centralizer_count(G: Group) -> int:
    if G.is_abelian:
        return 1
    return centralizer_set(G).count


@dataclass(frozen=True)
class ClassificationRow:
    """
    A count ``n`` with the central quotients it is tied to. In a biconditional
    row the quotient also forces the count; otherwise only the count forces
    the quotient.
    """

    count: int
    quotients: Tuple[GroupSpec, ...]
    biconditional: bool

    @property
    def quotient_names(self) -> Tuple[str, ...]:
        return tuple(spec.name for spec in self.quotients)


def _row(count: int, quotients: str, biconditional: bool) -> ClassificationRow:
    specs = tuple(parse_spec(text) for text in quotients.split(","))
    return ClassificationRow(count, specs, biconditional)


CLASSIFICATION_ROWS: Sequence[ClassificationRow] = (
    _row(4, "C2xC2", True),
    _row(5, "C3xC3,S3", True),
    _row(6, "D8,A4,C2xC2xC2,C2xC2xC2xC2", False),
    _row(7, "C5xC5,D10,F20", True),
    _row(8, "C2xC2xC2,A4,D12", False),
)

ROWS_BY_COUNT: Dict[int, ClassificationRow] = {
    row.count: row for row in CLASSIFICATION_ROWS
}


def classification_targets() -> List[GroupSpec]:
    """Every listed central quotient once, in row order."""
    targets: List[GroupSpec] = []
    for row in CLASSIFICATION_ROWS:
        targets.extend(spec for spec in row.quotients if spec not in targets)
    return targets


class Verdict(Enum):
    ABELIAN = "abelian"
    CONSISTENT = "consistent"
    VIOLATION = "violation"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class ClassificationReport:
    group: str
    count: int
    central_quotient: Optional[str]
    verdict: Verdict
    row: Optional[ClassificationRow] = None

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.VIOLATION


def classify_by_count(
    G: Group,
    settings: Settings = DEFAULT_SETTINGS,
    realized: Optional[Dict[GroupSpec, Group]] = None,
) -> ClassificationReport:
    """
    Compare ``|𝒞(G)|`` and ``G/Z(G)`` against the classification rows.

    A count with a row must come with one of the row's quotients. A quotient
    listed in a biconditional row must come with that row's count; a
    one-directional row asserts nothing about its converse.
    """
    name = G.name or "G"
    count = centralizer_count(G)
    if count == 1:
        return ClassificationReport(name, count, None, Verdict.ABELIAN)

    Q, _ = G.central_quotient
    quotient = identify(Q, classification_targets(), settings, realized)
    row = ROWS_BY_COUNT.get(count)
    if row is not None:
        verdict = (
            Verdict.CONSISTENT if quotient in row.quotient_names else Verdict.VIOLATION
        )
        return ClassificationReport(name, count, quotient, verdict, row)

    for other in CLASSIFICATION_ROWS:
        if other.biconditional and quotient in other.quotient_names:
            logger.debug(
                "%s has quotient %s but %d centralizers", name, quotient, count
            )
            return ClassificationReport(name, count, quotient, Verdict.VIOLATION, other)
    return ClassificationReport(name, count, quotient, Verdict.UNCLASSIFIED)
