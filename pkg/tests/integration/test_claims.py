from collections import defaultdict
from itertools import combinations
from typing import Dict
from typing import List
from typing import Set
from typing import Tuple

import pytest

from ncgroups.catalog import build_catalog
from ncgroups.centralizers import Verdict
from ncgroups.centralizers import centralizer_count
from ncgroups.centralizers import classify_by_count
from ncgroups.groups import Group
from ncgroups.groups import is_abelian
from ncgroups.isoclinism import is_stem
from ncgroups.isomorphism import find_isomorphism
from ncgroups.isomorphism import identify
from ncgroups.noncommuting import omega
from ncgroups.noncommuting import omega_bruteforce
from ncgroups.noncommuting import verify_clique
from ncgroups.specs import realize_text
from ncgroups.types import DEFAULT_SETTINGS
from ncgroups.types import ClaimStatus
from ncgroups.types import GroupSpec
from ncgroups.verify import VerificationContext
from ncgroups.verify import run_claims

pytestmark = pytest.mark.slow


def test_omega_of_a5_is_exact(context_64: VerificationContext):
    record = context_64.by_name["A5"]
    assert (record.omega, record.omega_exact) == (21, True)
    assert record.centralizer_count == 22
    assert not record.solvable


def test_omega_matches_bruteforce(catalog_24: List[Group]):
    small = [
        G
        for G in catalog_24
        if G.order - G.center.order <= DEFAULT_SETTINGS.bruteforce_limit
    ]
    assert len(small) >= 15
    for G in small:
        result = omega(G)
        assert verify_clique(G, result.witness.elements), G.name
        assert result.size == omega_bruteforce(G), G.name


def test_solvability_thresholds(context_64: VerificationContext):
    omega_claim, count_claim = run_claims(context_64, ["thm1.2", "thm3.4"])
    assert omega_claim.status is ClaimStatus.PASS
    assert count_claim.status is ClaimStatus.PASS
    assert omega_claim.notes == ["boundary witness A5: omega=21, solvable=false"]
    assert count_claim.notes == [
        "boundary witness A5: centralizer_count=22, solvable=false"
    ]


def test_omega_bounded_by_centralizer_count_up_to_128():
    checked = 0
    for G in build_catalog(128):
        if is_abelian(G):
            continue
        assert 1 + omega(G).size <= centralizer_count(G), G.name
        checked += 1
    assert checked > 0


def test_centralizer_classification_up_to_64(context_64: VerificationContext):
    realized: Dict[GroupSpec, Group] = {}
    verdicts: Dict[Verdict, int] = defaultdict(int)
    for G in context_64.catalog:
        report = classify_by_count(G, context_64.settings, realized)
        assert report.verdict is not Verdict.VIOLATION, report
        verdicts[report.verdict] += 1
    assert verdicts[Verdict.CONSISTENT] > 0

    (result,) = run_claims(context_64, ["thm3.5"])
    assert result.status is ClaimStatus.PASS


@pytest.mark.parametrize("claim", ["lemma2.1", "lemma3.2"])
def test_isoclinic_pairs_share_invariants(claim: str, context_64: VerificationContext):
    (result,) = run_claims(context_64, [claim])
    assert result.status is ClaimStatus.PASS
    assert result.population == len(context_64.partition.witnesses)


def test_invariants_constant_on_isoclinism_classes(context_64: VerificationContext):
    values: Dict[int, Set[Tuple[int, int, int]]] = defaultdict(set)
    for record in context_64.records:
        values[record.isoclinism_class].add(
            (record.omega, record.centralizer_count, record.derived_order)
        )
    assert all(len(per_class) == 1 for per_class in values.values())
    assert context_64.partition.indeterminate == []


@pytest.mark.parametrize("claim", ["thm1.1", "thm3.3"])
def test_class_claims(claim: str, context_64: VerificationContext):
    (result,) = run_claims(context_64, [claim])
    assert result.status is ClaimStatus.PASS
    assert result.population == len(context_64.partition.classes)


def _catalog_name(context: VerificationContext, text: str) -> str:
    G = realize_text(text)
    realized: Dict[GroupSpec, Group] = {
        K.spec: K for K in context.catalog if K.spec is not None
    }
    name = identify(G, list(realized), realized=realized)
    assert name is not None, text
    return name


@pytest.mark.parametrize(
    "member, stem", [("D8 x C2", "D8"), ("Q8 x C4", "D8"), ("S3 x C4", "S3")]
)
def test_stem_representatives(member: str, stem: str, context_64: VerificationContext):
    stems = context_64.stem_representatives()
    class_ids = context_64.partition.class_ids()
    assert stems[class_ids[_catalog_name(context_64, member)]] == stem


def test_every_class_has_a_catalog_stem(context_64: VerificationContext):
    stems = context_64.stem_representatives()
    catalog = {G.name: G for G in context_64.catalog}
    for index, members in enumerate(context_64.partition.classes):
        stem = stems[index]
        assert stem is not None
        assert is_stem(catalog[stem])
        assert catalog[stem].order <= min(G.order for G in members)


def test_products_with_c2_stay_in_class(context_64: VerificationContext):
    class_ids = context_64.partition.class_ids()
    paired = 0
    for G in context_64.catalog:
        if is_abelian(G) or 2 * G.order > 64:
            continue
        product = _catalog_name(context_64, f"C2 x {G.name}")
        assert class_ids[product] == class_ids[G.name], G.name
        paired += 1
    assert paired >= 10
    assert class_ids[_catalog_name(context_64, "S3 x C4")] == class_ids["S3"]


def test_catalog_entries_are_pairwise_non_isomorphic(context_64: VerificationContext):
    buckets: Dict[Tuple, List[Group]] = defaultdict(list)
    for G in context_64.catalog:
        if G.order <= 32:
            buckets[G.fingerprint].append(G)
    for bucket in buckets.values():
        # abelian groups are determined by their fingerprint
        assert len(bucket) == 1 or not any(is_abelian(G) for G in bucket)
        for G, H in combinations(bucket, 2):
            assert find_isomorphism(G, H) is None, (G.name, H.name)
