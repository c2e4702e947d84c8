import json
from functools import lru_cache
from unittest.mock import patch

import pytest
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis.strategies import sampled_from

from ncgroups.centralizers import centralizer_count
from ncgroups.exceptions import CatalogExhausted
from ncgroups.exceptions import NodeBudgetExhausted
from ncgroups.exceptions import NotAGroup
from ncgroups.groups import IDENTITY
from ncgroups.groups import Group
from ncgroups.groups import is_solvable
from ncgroups.isoclinism import LARGEST
from ncgroups.isoclinism import RANDOM
from ncgroups.isoclinism import SMALLEST
from ncgroups.isoclinism import Isoclinism
from ncgroups.isoclinism import are_isoclinic
from ncgroups.isoclinism import check_isoclinism
from ncgroups.isoclinism import commutator_map
from ncgroups.isoclinism import coset_representatives
from ncgroups.isoclinism import extend_to_isomorphism
from ncgroups.isoclinism import find_stem_representative
from ncgroups.isoclinism import is_stem
from ncgroups.isoclinism import verify_witness
from ncgroups.isoclinism import witness_to_json
from ncgroups.noncommuting import omega
from ncgroups.specs import realize_text
from ncgroups.types import Settings
from ncgroups.utils import NodeBudget
from tests.utils import GroupFactory

NON_ABELIAN = ["S3", "D8", "Q8", "A4", "D10", "D12", "F20"]
ABELIAN = ["C1", "C2", "C3", "C2xC2", "C4"]

realized = lru_cache(maxsize=None)(realize_text)


def test_coset_representatives_pick_one_element_per_central_coset(d8: Group):
    _, projection = d8.central_quotient
    for choice in (SMALLEST, LARGEST, RANDOM):
        representatives = coset_representatives(d8, choice, seed=3)
        assert len(representatives) == 4
        assert [projection[g] for g in representatives] == [0, 1, 2, 3]
    assert coset_representatives(d8)[0] == IDENTITY


def test_coset_representatives_unknown_choice_raises(d8: Group):
    with pytest.raises(ValueError):
        coset_representatives(d8, "median")


def test_commutator_map_of_abelian_group_is_trivial(group: GroupFactory):
    alpha = commutator_map(group("C6"))
    assert alpha.table == ((IDENTITY,),)


def test_commutator_map_q8(q8: Group):
    alpha = commutator_map(q8)
    minus_one = next(z for z in q8.center if z != IDENTITY)
    assert len(alpha.table) == 4
    assert alpha.values == sorted([IDENTITY, minus_one])
    for a in range(4):
        for b in range(4):
            expected = IDENTITY if a == 0 or b == 0 or a == b else minus_one
            assert alpha(a, b) == expected


def test_commutator_map_s3_is_over_all_elements(s3: Group):
    alpha = commutator_map(s3)
    assert len(alpha.table) == 6
    assert set(alpha.values) == set(s3.derived_subgroup)


def test_commutator_map_with_inconsistent_representatives_raises(s3: Group):
    tables = iter([((IDENTITY,),), ((1,),)])
    with patch(
        "ncgroups.isoclinism._commutator_table",
        side_effect=lambda *_: next(tables),
    ):
        with pytest.raises(NotAGroup):
            commutator_map(s3)


def test_extend_to_isomorphism_rejects_clashing_seeds(group: GroupFactory):
    C4 = group("C4")
    generator = C4.element_orders.index(4)
    involution = C4.element_orders.index(2)
    assert extend_to_isomorphism(C4, C4, {generator: involution}) is None
    mapping = extend_to_isomorphism(C4, C4, {generator: generator})
    assert mapping == {g: g for g in range(4)}


def test_are_isoclinic_abelian_groups(group: GroupFactory):
    witness = are_isoclinic(group("C1"), group("C2xC6"))
    assert witness is not None
    assert verify_witness(witness)


def test_are_isoclinic_d8_and_q8(d8: Group, q8: Group):
    witness = are_isoclinic(d8, q8)
    assert witness is not None
    assert witness.quotient_iso.is_valid()
    assert witness.derived_iso.is_valid()
    assert verify_witness(witness, LARGEST)
    assert verify_witness(witness, RANDOM, seed=11)


def test_are_isoclinic_s3_and_c6_is_none(group: GroupFactory, s3: Group):
    assert are_isoclinic(s3, group("C6")) is None


def test_are_isoclinic_s3_and_d8_is_none(s3: Group, d8: Group):
    assert are_isoclinic(s3, d8) is None


def test_are_isoclinic_groups_of_different_orders(group: GroupFactory, q8: Group):
    witness = are_isoclinic(group("D8xC4"), q8)
    assert witness is not None
    assert verify_witness(witness, RANDOM, seed=2)


def test_are_isoclinic_with_exhausted_budget_raises(group: GroupFactory):
    with pytest.raises(NodeBudgetExhausted):
        are_isoclinic(group("D8xD8"), group("D8xQ8"), budget=NodeBudget(1))


def test_check_isoclinism_outcomes(group: GroupFactory, s3: Group, d8: Group):
    outcome, witness = check_isoclinism(s3, group("S3xC5"))
    assert outcome is Isoclinism.ISOCLINIC and witness is not None
    assert check_isoclinism(s3, d8) == (Isoclinism.NOT_ISOCLINIC, None)
    with patch(
        "ncgroups.isoclinism.are_isoclinic", side_effect=NodeBudgetExhausted(1)
    ):
        assert check_isoclinism(s3, s3) == (Isoclinism.INDETERMINATE, None)


def test_check_isoclinism_respects_the_node_budget_setting(group: GroupFactory):
    outcome, _ = check_isoclinism(
        group("D8xD8"), group("D8xQ8"), Settings(node_budget=1)
    )
    assert outcome is Isoclinism.INDETERMINATE


def test_verify_witness_detects_a_tampered_derived_map(d8: Group, q8: Group):
    witness = are_isoclinic(d8, q8)
    assert witness is not None
    forged = witness.__class__(
        witness.source,
        witness.target,
        witness.quotient_iso,
        witness.derived_iso,
        witness.source_derived,
        tuple(reversed(witness.target_derived)),
        witness.source_representatives,
        witness.target_representatives,
    )
    assert not verify_witness(forged)


def test_witness_to_json_is_serializable(d8: Group, q8: Group):
    witness = are_isoclinic(d8, q8)
    assert witness is not None
    document = witness_to_json(witness)
    assert document["source"] == "D8"
    assert document["target"] == "Q8"
    assert document["quotient_order"] == 4
    assert document["derived_order"] == 2
    assert document["derived_map"][0] == [IDENTITY, IDENTITY]
    assert json.loads(json.dumps(document)) == document


def test_is_stem(group: GroupFactory, s3: Group, q8: Group):
    assert is_stem(s3)
    assert is_stem(q8)
    assert not is_stem(group("D8xC2"))
    assert is_stem(group("C1"))
    assert not is_stem(group("C2"))


def test_find_stem_representative(group: GroupFactory):
    catalog = [group(text) for text in ["C1", "C2", "S3", "Q8", "D8", "S3xC4"]]
    assert find_stem_representative(group("D8xC2"), catalog).name in {"D8", "Q8"}
    assert find_stem_representative(group("S3xC4"), catalog).name == "S3"
    assert find_stem_representative(group("C2xC2"), catalog).name == "C1"


def test_find_stem_representative_exhausted_catalog_raises(group: GroupFactory):
    with pytest.raises(CatalogExhausted):
        find_stem_representative(group("D8xC2"), [group("C1"), group("S3")])



def test_find_stem_representative_warns_about_undecided_candidates(
    group: GroupFactory, caplog: pytest.LogCaptureFixture
):
    undecided = (Isoclinism.INDETERMINATE, None)
    with patch("ncgroups.isoclinism.check_isoclinism", return_value=undecided):
        with pytest.raises(CatalogExhausted):
            find_stem_representative(group("D8xC2"), [group("C1"), group("Q8")])
    assert "stem candidate C1 left undecided" in caplog.text
    assert "stem candidate Q8 left undecided" in caplog.text

@hypothesis_settings(deadline=None, max_examples=25)
@given(sampled_from(NON_ABELIAN + ABELIAN), sampled_from(NON_ABELIAN + ABELIAN))
def test_isoclinism_is_symmetric(left: str, right: str):
    G, H = realized(left), realized(right)
    assert (are_isoclinic(G, H) is None) == (are_isoclinic(H, G) is None)


@hypothesis_settings(deadline=None, max_examples=20)
@given(sampled_from(NON_ABELIAN), sampled_from(ABELIAN))
def test_isoclinism_absorbs_abelian_factors(text: str, abelian: str):
    G = realized(text)
    product = realized(f"{text}x{abelian}")
    witness = are_isoclinic(G, product)
    assert witness is not None
    assert verify_witness(witness, RANDOM, seed=5)
    assert omega(G).size == omega(product).size
    assert centralizer_count(G) == centralizer_count(product)
    assert is_solvable(G) == is_solvable(product)


@hypothesis_settings(deadline=None, max_examples=10)
@given(sampled_from(NON_ABELIAN))
def test_every_group_is_isoclinic_to_itself(text: str):
    G = realized(text)
    witness = are_isoclinic(G, G)
    assert witness is not None
    assert verify_witness(witness, LARGEST)
