import pytest
from faker import Faker

from ncgroups.types import ATLAS_COLUMNS
from ncgroups.types import AtlasRecord
from ncgroups.types import ClaimResult
from ncgroups.types import ClaimStatus
from ncgroups.types import Counterexample
from ncgroups.types import Settings
from ncgroups.types import VerifyReport


@pytest.mark.parametrize(
    "field", ["max_order", "time_budget", "node_budget", "recolor_limit", "jobs"]
)
def test_settings_non_positive_raises(field: str, faker: Faker):
    with pytest.raises(ValueError):
        Settings(**{field: faker.pyint(min_value=-10, max_value=0)})


def test_settings_seed_may_be_anything(faker: Faker):
    seed = faker.pyint(min_value=-100, max_value=100)
    assert Settings(seed=seed).seed == seed


def test_claim_result_status():
    result = ClaimResult("thm1.2", "a claim")
    assert result.status is ClaimStatus.PASS

    result.record(True)
    result.record(None)
    assert result.status is ClaimStatus.INDETERMINATE

    result.record(False, Counterexample("A5", {"omega": 21}))
    assert result.status is ClaimStatus.FAIL
    assert (result.population, result.passed, result.failed) == (3, 1, 1)
    assert result.indeterminate == 1
    assert result.counterexamples == [Counterexample("A5", {"omega": 21})]


def test_verify_report_to_dict():
    passing = ClaimResult("thm3.4", "passes", population=2, passed=2)
    failing = ClaimResult("thm1.2", "fails")
    failing.record(False, Counterexample("X"))

    report = VerifyReport(max_order=8, catalog_size=14, claims=[passing])
    assert report.passed
    report.claims.append(failing)
    assert not report.passed

    document = report.to_dict()
    assert document["passed"] is False
    assert [claim["status"] for claim in document["claims"]] == ["PASS", "FAIL"]
    assert document["claims"][1]["counterexamples"] == [
        {"group": "X", "values": {}}
    ]


def test_atlas_record_to_row():
    record = AtlasRecord("Q8", 8, 2, 2, 3, True, 4, True, True, "C2xC2", 2)
    row = record.to_row()
    assert tuple(row) == tuple(ATLAS_COLUMNS)
    assert row["central_quotient"] == "C2xC2"
    assert row["isoclinism_class"] == 2
    assert not record.abelian
