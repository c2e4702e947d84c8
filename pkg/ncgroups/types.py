from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field
from dataclasses import fields
from enum import Enum
from typing import Any
from typing import List
from typing import Mapping
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Type
from typing import cast

from svarog import register_forge
from svarog.types import Forge
from typing_extensions import TypedDict

from ncgroups.exceptions import InvalidSpec

JSONMappingValue = Any
JSONMapping = Mapping[str, JSONMappingValue]
JSONSchema = JSONMapping

Table = Tuple[Tuple[int, ...], ...]
Permutation = Tuple[int, ...]


class GroupSpec:
    """
    The base class of all parsed group expressions.

    Every spec knows the canonical text it is written as (``name``), which is
    also valid input to :func:`ncgroups.specs.parse_spec`.
    """

    @property
    def name(self) -> str:
        raise NotImplementedError

    @property
    def factors(self) -> Sequence["GroupSpec"]:
        return (self,)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpec(f"Cyclic group order must be positive, got {self.n}")

    @property
    def name(self) -> str:
        return f"C{self.n}"


@dataclass(frozen=True)
class Dihedral(GroupSpec):
    """
    The dihedral group **of order** ``order`` (so ``Dihedral(8)`` is the
    symmetry group of the square). The other convention, indexing by the
    number of vertices, is not used anywhere in ncgroups.
    """

    order: int

    def __post_init__(self):
        if self.order < 4 or self.order % 2:
            raise InvalidSpec(
                f"Dihedral groups are named by their order, "
                f"which must be even and at least 4, got {self.order}"
            )

    @property
    def name(self) -> str:
        return f"D{self.order}"


@dataclass(frozen=True)
class Symmetric(GroupSpec):
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidSpec(
                f"Symmetric group degree must be positive, got {self.degree}"
            )

    @property
    def name(self) -> str:
        return f"S{self.degree}"


@dataclass(frozen=True)
class Alternating(GroupSpec):
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidSpec(
                f"Alternating group degree must be positive, got {self.degree}"
            )

    @property
    def name(self) -> str:
        return f"A{self.degree}"


@dataclass(frozen=True)
class Quaternion8(GroupSpec):
    @property
    def name(self) -> str:
        return "Q8"


@dataclass(frozen=True)
class F20(GroupSpec):
    """The Frobenius group of order 20, <x, y | x^5 = y^4 = 1, x^y = x^3>."""

    @property
    def name(self) -> str:
        return "F20"


@dataclass(frozen=True)
class DirectProduct(GroupSpec):
    left: GroupSpec
    right: GroupSpec

    @property
    def name(self) -> str:
        return "x".join(factor.name for factor in self.factors)

    @property
    def factors(self) -> Sequence[GroupSpec]:
        return (*self.left.factors, *self.right.factors)


@dataclass(frozen=True)
class Permutations(GroupSpec):
    """Generators given as 0-based image tuples on ``degree`` points."""

    generators: Tuple[Permutation, ...]
    degree: int

    def __post_init__(self):
        if not self.generators:
            raise InvalidSpec("At least one generator permutation is required")
        for generator in self.generators:
            if len(generator) != self.degree or sorted(generator) != list(
                range(self.degree)
            ):
                raise InvalidSpec(
                    f"{generator} is not a bijection on {self.degree} points"
                )

    @property
    def name(self) -> str:
        # imported here to keep types free of module cycles
        from ncgroups.permutations import format_cycles

        return "perm:" + ";".join(format_cycles(g) for g in self.generators)


@dataclass(frozen=True)
class CayleyTable(GroupSpec):
    table: Table
    source: Optional[str] = None

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise InvalidSpec("A Cayley table must have at least one row")
        for row in self.table:
            if len(row) != n:
                raise InvalidSpec("A Cayley table must be square")

    @property
    def name(self) -> str:
        if self.source is not None:
            return f"cayley:{self.source}"
        return f"cayley:<{len(self.table)}x{len(self.table)}>"


def _forge_fields(
    type_: Type[Any], data: JSONMapping, forge: Forge, aliases: Mapping[str, str]
) -> Any:
    return type_(
        **{
            aliases[key]: forge(type_.__annotations__[aliases[key]], value)
            for key, value in data.items()
            if key in aliases
        }
    )


@dataclass(frozen=True)
class Settings:
    """
    Every tunable of the library.

    Settings are deserialised from YAML documents whose keys are the
    kebab-case versions of the field names, e.g. ``max-order``.
    """

    max_order: int = 2048
    time_budget: float = 60.0
    node_budget: int = 10**7
    full_associativity_limit: int = 512
    associativity_sample_factor: int = 10
    recolor_limit: int = 512
    bruteforce_limit: int = 25
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "seed":
                continue
            if value <= 0:
                raise ValueError(f"Setting {f.name} must be positive, got {value}")

    @staticmethod
    def forge(type_: Type["Settings"], data: JSONMapping, forge: Forge) -> "Settings":
        aliases = {f.name.replace("_", "-"): f.name for f in fields(type_)}
        return _forge_fields(type_, data, forge, aliases)


register_forge(Settings, Settings.forge)

DEFAULT_SETTINGS = Settings()


@dataclass
class CayleyTableDocument:
    """The JSON document referenced by a ``cayley:`` spec."""

    table: Sequence[Sequence[int]]
    name: Optional[str] = None


class AtlasRow(TypedDict):
    name: str
    order: int
    center_order: int
    derived_order: int
    omega: int
    omega_exact: bool
    centralizer_count: int
    solvable: bool
    stem: bool
    central_quotient: str
    isoclinism_class: int


@dataclass
class AtlasRecord:
    """
    One catalog row of computed invariants.

    When ``omega_exact`` is false the clique search ran out of time and
    ``omega`` holds the best lower bound found.
    """

    name: str
    order: int
    center_order: int
    derived_order: int
    omega: int
    omega_exact: bool
    centralizer_count: int
    solvable: bool
    stem: bool
    central_quotient: str
    isoclinism_class: int = -1

    @property
    def abelian(self) -> bool:
        return self.center_order == self.order

    def to_row(self) -> AtlasRow:
        return cast(AtlasRow, asdict(self))


ATLAS_COLUMNS: Sequence[str] = tuple(f.name for f in fields(AtlasRecord))


class ClaimStatus(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INDETERMINATE = "INDETERMINATE"


@dataclass
class Counterexample:
    group: str
    values: JSONMapping = field(default_factory=dict)


@dataclass
class ClaimResult:
    """
    The outcome of checking one claim over a population of catalog groups.
    A claim passes only with zero counterexamples and zero indeterminates.
    """

    claim: str
    description: str
    population: int = 0
    passed: int = 0
    failed: int = 0
    indeterminate: int = 0
    counterexamples: List[Counterexample] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def status(self) -> ClaimStatus:
        if self.failed or self.counterexamples:
            return ClaimStatus.FAIL
        if self.indeterminate:
            return ClaimStatus.INDETERMINATE
        return ClaimStatus.PASS

    def record(
        self, ok: Optional[bool], counterexample: Optional[Counterexample] = None
    ) -> None:
        self.population += 1
        if ok is None:
            self.indeterminate += 1
        elif ok:
            self.passed += 1
        else:
            self.failed += 1
            if counterexample is not None:
                self.counterexamples.append(counterexample)


@dataclass
class VerifyReport:
    max_order: int
    catalog_size: int
    claims: List[ClaimResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(claim.status is ClaimStatus.PASS for claim in self.claims)

    def to_dict(self) -> JSONMapping:
        return {
            "max_order": self.max_order,
            "catalog_size": self.catalog_size,
            "passed": self.passed,
            "claims": [
                {**asdict(claim), "status": claim.status.value}
                for claim in self.claims
            ],
        }


class IsoclinismWitnessDocument(TypedDict):
    source: str
    target: str
    quotient_order: int
    derived_order: int
    quotient_map: List[int]
    source_representatives: List[int]
    target_representatives: List[int]
    derived_map: List[List[int]]
