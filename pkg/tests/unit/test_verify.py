import sys
from typing import List
from unittest.mock import patch

import pytest

import ncgroups.verify
from ncgroups.catalog import UNKNOWN
from ncgroups.catalog import IsoclinismPartition
from ncgroups.centralizers import ClassificationReport
from ncgroups.centralizers import Verdict
from ncgroups.types import DEFAULT_SETTINGS
from ncgroups.types import AtlasRecord
from ncgroups.types import ClaimStatus
from ncgroups.verify import CLAIMS
from ncgroups.verify import VerificationContext
from ncgroups.verify import build_context
from ncgroups.verify import check_centralizer_classes
from ncgroups.verify import check_classification
from ncgroups.verify import check_inequality
from ncgroups.verify import check_omega_solvability
from ncgroups.verify import run_claims
from ncgroups.verify import verify

# `ncgroups.verify` (the attribute) is shadowed by the re-exported function in
# ncgroups/__init__.py, so patch the submodule object itself.
verify_module = sys.modules["ncgroups.verify"]


@pytest.fixture(scope="module")
def context8() -> VerificationContext:
    return build_context(8)


def _record(
    name: str,
    order: int,
    omega: int,
    solvable: bool,
    omega_exact: bool = True,
    centralizer_count: int = 0,
    isoclinism_class: int = 0,
) -> AtlasRecord:
    return AtlasRecord(
        name=name,
        order=order,
        center_order=1,
        derived_order=order,
        omega=omega,
        omega_exact=omega_exact,
        centralizer_count=centralizer_count,
        solvable=solvable,
        stem=True,
        central_quotient=UNKNOWN,
        isoclinism_class=isoclinism_class,
    )


def _context(records: List[AtlasRecord]) -> VerificationContext:
    return VerificationContext([], records, IsoclinismPartition([]), DEFAULT_SETTINGS)


def test_every_claim_passes_up_to_order_eight(context8: VerificationContext):
    results = run_claims(context8)
    assert [result.claim for result in results] == list(CLAIMS)
    for result in results:
        assert result.status is ClaimStatus.PASS, result
        assert result.counterexamples == []


def test_claim_populations_up_to_order_eight(context8: VerificationContext):
    results = {result.claim: result for result in run_claims(context8)}
    assert results["thm1.2"].population == 14
    assert results["ineq-1+omega"].population == 3
    assert results["lemma2.1"].population == 11
    assert results["lemma3.2"].population == 11
    assert results["thm1.1"].population == 3
    assert results["thm1.1"].notes == ["classes per omega: 1: 1, 3: 1, 4: 1"]
    assert results["thm3.3"].notes == [
        "classes per centralizer_count: 1: 1, 4: 1, 5: 1"
    ]


def test_stem_representatives_up_to_order_eight(context8: VerificationContext):
    assert context8.stem_representatives() == {0: "C1", 1: "S3", 2: "D8"}


def test_run_claims_keeps_the_requested_order(context8: VerificationContext):
    results = run_claims(context8, ["thm3.4", "thm1.2"])
    assert [result.claim for result in results] == ["thm3.4", "thm1.2"]


def test_run_claims_unknown_claim_raises(context8: VerificationContext):
    with pytest.raises(ValueError):
        run_claims(context8, ["thm9.9"])


def test_verify_rejects_unknown_claim_before_building_the_catalog():
    with patch.object(verify_module, "build_context") as build_mock:
        with pytest.raises(ValueError):
            verify(8, ["thm1.2", "lemma9"])
    build_mock.assert_not_called()


def test_verify_report_up_to_order_six():
    report = verify(6, ["thm1.2", "ineq-1+omega"])
    assert report.catalog_size == 8
    assert report.passed
    document = report.to_dict()
    assert document["max_order"] == 6
    assert [claim["status"] for claim in document["claims"]] == ["PASS", "PASS"]


def test_solvability_claim_reports_boundary_witness():
    records = [
        _record("S3", 6, 4, True),
        _record("A5", 60, 21, False),
        _record("A5xC2", 120, 21, False),
    ]
    result = check_omega_solvability(_context(records))
    assert result.status is ClaimStatus.PASS
    assert result.population == 1
    assert result.notes == ["boundary witness A5: omega=21, solvable=false"]


def test_solvability_claim_counterexample():
    records = [_record("X", 60, 12, False)]
    result = check_omega_solvability(_context(records))
    assert result.status is ClaimStatus.FAIL
    assert result.counterexamples[0].group == "X"
    assert result.counterexamples[0].values == {"omega": 12, "solvable": False}


def test_solvability_claim_with_inexact_omega_is_indeterminate():
    records = [_record("X", 60, 12, False, omega_exact=False)]
    result = check_omega_solvability(_context(records))
    assert result.status is ClaimStatus.INDETERMINATE


def test_inequality_claim():
    holds_inexact = _record("X", 60, 10, False, False, centralizer_count=22)
    fails = _record("Y", 60, 30, False, centralizer_count=22)
    result = check_inequality(_context([holds_inexact]))
    assert result.status is ClaimStatus.INDETERMINATE

    result = check_inequality(_context([holds_inexact, fails]))
    assert result.status is ClaimStatus.FAIL
    assert result.counterexamples[0].values == {
        "omega": 30,
        "centralizer_count": 22,
    }


def test_class_claim_without_stem_is_indeterminate():
    context = _context([_record("X", 60, 21, False, centralizer_count=22)])
    context._stems = {0: None}
    result = check_centralizer_classes(context)
    assert result.status is ClaimStatus.INDETERMINATE
    assert "class 0 has no stem group in the catalog" in result.notes


def test_class_claim_detects_variation_within_a_class():
    context = _context(
        [
            _record("X", 12, 5, True, centralizer_count=6),
            _record("Y", 24, 5, True, centralizer_count=8),
        ]
    )
    context._stems = {0: "X"}
    result = check_centralizer_classes(context)
    assert result.status is ClaimStatus.FAIL
    assert result.counterexamples[0].values == {
        "values": [(6,), (8,)],
        "stem": "X",
    }


def test_classification_claim_reports_violations(context8: VerificationContext):
    report = ClassificationReport("D8", 5, "C2xC2", Verdict.VIOLATION)
    with patch.object(verify_module, "classify_by_count", return_value=report):
        result = check_classification(context8)
    assert result.status is ClaimStatus.FAIL
    assert result.failed == len(context8.catalog)
    assert result.counterexamples[0].values == {
        "centralizer_count": 5,
        "central_quotient": "C2xC2",
    }
