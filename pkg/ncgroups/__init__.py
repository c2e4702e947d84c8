# flake8: noqa: F401

__all__ = [
    "Group",
    "Subgroup",
    "Settings",
    "parse_spec",
    "realize",
    "realize_text",
    "find_isomorphism",
    "identify",
    "omega",
    "omega_bruteforce",
    "centralizer_set",
    "classify_by_count",
    "are_isoclinic",
    "is_stem",
    "find_stem_representative",
    "build_catalog",
    "partition_isoclinism",
    "build_atlas",
    "verify",
    "NcgroupsException",
    "InvalidSpec",
    "NotAGroup",
    "NotNormal",
    "TooLarge",
    "OrderCapExceeded",
    "TimeBudgetExceeded",
    "NodeBudgetExhausted",
    "CatalogExhausted",
]

from ncgroups.catalog import build_atlas
from ncgroups.catalog import build_catalog
from ncgroups.catalog import partition_isoclinism
from ncgroups.centralizers import centralizer_set
from ncgroups.centralizers import classify_by_count
from ncgroups.exceptions import CatalogExhausted
from ncgroups.exceptions import InvalidSpec
from ncgroups.exceptions import NcgroupsException
from ncgroups.exceptions import NodeBudgetExhausted
from ncgroups.exceptions import NotAGroup
from ncgroups.exceptions import NotNormal
from ncgroups.exceptions import OrderCapExceeded
from ncgroups.exceptions import TimeBudgetExceeded
from ncgroups.exceptions import TooLarge
from ncgroups.groups import Group
from ncgroups.groups import Subgroup
from ncgroups.isoclinism import are_isoclinic
from ncgroups.isoclinism import find_stem_representative
from ncgroups.isoclinism import is_stem
from ncgroups.isomorphism import find_isomorphism
from ncgroups.isomorphism import identify
from ncgroups.noncommuting import omega
from ncgroups.noncommuting import omega_bruteforce
from ncgroups.specs import parse_spec
from ncgroups.specs import realize
from ncgroups.specs import realize_text
from ncgroups.types import Settings
from ncgroups.verify import verify
