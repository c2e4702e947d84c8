"""
Group spec text grammar and realization of specs as concrete groups.

::

    spec := atom | atom "x" spec
    atom := "C" int | "D" int | "S" int | "A" int | "Q8" | "F20"
          | "perm:" cycle-list (";" cycle-list)*
          | "cayley:" path-to-JSON

Family letters are case-insensitive and whitespace is ignored, also inside an
order (``C1 2`` is ``C12``), except that a ``cayley:`` path runs up to the
next whitespace, so a product following it must be separated by spaces
(``cayley:t.json x C2``). ``D`` takes the group **order**: ``D8`` has eight
elements.
"""
import json
import logging
import re
from functools import singledispatch
from math import factorial
from pathlib import Path
from typing import List
from typing import Optional
from typing import Tuple

from svarog import forge

from ncgroups.exceptions import InvalidSpec
from ncgroups.exceptions import OrderCapExceeded
from ncgroups.groups import Group
from ncgroups.groups import build_from_cayley
from ncgroups.groups import build_from_generators
from ncgroups.groups import cyclic_group
from ncgroups.groups import dihedral_group
from ncgroups.groups import direct_product
from ncgroups.groups import quaternion_group
from ncgroups.permutations import pad
from ncgroups.permutations import parse_cycles
from ncgroups.types import DEFAULT_SETTINGS
from ncgroups.types import Alternating
from ncgroups.types import CayleyTable
from ncgroups.types import CayleyTableDocument
from ncgroups.types import Cyclic
from ncgroups.types import Dihedral
from ncgroups.types import DirectProduct
from ncgroups.types import F20
from ncgroups.types import GroupSpec
from ncgroups.types import Permutation
from ncgroups.types import Permutations
from ncgroups.types import Quaternion8
from ncgroups.types import Settings
from ncgroups.types import Symmetric
from ncgroups.validation import validate_cayley_document

logger = logging.getLogger(__name__)

_ATOM = re.compile(
    r"""
      (?P<family>[CDSA])\s*(?P<n>\d(?:\s*\d)*)
    | (?P<q8>Q\s*8)
    | (?P<f20>F\s*2\s*0)
    | perm\s*:(?P<cycles>(\s*(\([^()]*\)|;))+)
    | cayley\s*:\s*(?P<path>\S+)
    """,
    re.IGNORECASE | re.VERBOSE,
)
_SEPARATOR = re.compile(r"\s*x\s*", re.IGNORECASE)
_WHITESPACE = re.compile(r"\s*")

_FAMILIES = {"C": Cyclic, "D": Dihedral, "S": Symmetric, "A": Alternating}

# F20 = <x, y | x^5 = y^4 = 1, x^y = x^3> acting on 5 points
F20_X = (1, 2, 3, 4, 0)
F20_Y = (0, 3, 1, 4, 2)


def parse_spec(text: str, base_dir: Optional[Path] = None) -> GroupSpec:
    """Parse spec text into a :class:`GroupSpec` (products nest to the right)."""
    atoms: List[GroupSpec] = []
    position = _WHITESPACE.match(text).end()  # type: ignore
    while True:
        match = _ATOM.match(text, position)
        if match is None:
            raise InvalidSpec(f"Cannot parse group spec at {text[position:]!r}")
        atoms.append(_atom_from_match(match, base_dir))
        position = _WHITESPACE.match(text, match.end()).end()  # type: ignore
        if position == len(text):
            break
        separator = _SEPARATOR.match(text, position)
        if separator is None:
            raise InvalidSpec(f"Expected 'x' at {text[position:]!r}")
        position = separator.end()

    spec = atoms[-1]
    for atom in reversed(atoms[:-1]):
        spec = DirectProduct(atom, spec)
    return spec


def _atom_from_match(match: "re.Match[str]", base_dir: Optional[Path]) -> GroupSpec:
    if match.group("family"):
        n = int(re.sub(r"\s+", "", match.group("n")))
        return _FAMILIES[match.group("family").upper()](n)
    if match.group("q8"):
        return Quaternion8()
    if match.group("f20"):
        return F20()
    if match.group("cycles"):
        return _permutations_from_text(match.group("cycles"))
    return _cayley_from_path(match.group("path"), base_dir)


def _permutations_from_text(text: str) -> Permutations:
    parsed = [parse_cycles(chunk) for chunk in text.split(";") if chunk.strip()]
    if not parsed:
        raise InvalidSpec("perm: needs at least one generator")
    degree = max(len(p) for p in parsed)
    return Permutations(tuple(pad(p, degree) for p in parsed), degree)


def _cayley_from_path(path_text: str, base_dir: Optional[Path]) -> CayleyTable:
    path = Path(path_text)
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    try:
        with open(path) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as err:
        raise InvalidSpec(f"Cannot read Cayley table from {path}: {err}") from err

    validate_cayley_document(data)
    document = forge(CayleyTableDocument, data)
    return CayleyTable(
        tuple(tuple(row) for row in document.table), source=path_text
    )


def _check_cap(order: int, spec: GroupSpec, settings: Settings) -> None:
    if order > settings.max_order:
        raise OrderCapExceeded(
            f"{spec.name} has order {order}, above the cap of {settings.max_order}"
        )


@singledispatch
def realize(spec: GroupSpec, settings: Settings = DEFAULT_SETTINGS) -> Group:
    """Build the concrete :class:`Group` described by ``spec``."""
    raise InvalidSpec(f"Unsupported group spec {spec!r}")


@realize.register
def _realize_cyclic(spec: Cyclic, settings: Settings = DEFAULT_SETTINGS) -> Group:
    _check_cap(spec.n, spec, settings)
    return _named(cyclic_group(spec.n), spec)


@realize.register
def _realize_dihedral(spec: Dihedral, settings: Settings = DEFAULT_SETTINGS) -> Group:
    _check_cap(spec.order, spec, settings)
    return _named(dihedral_group(spec.order), spec)


def _cycle(points: range, degree: int) -> Permutation:
    images = list(range(degree))
    ordered = list(points)
    for position, point in enumerate(ordered):
        images[point] = ordered[(position + 1) % len(ordered)]
    return tuple(images)


@realize.register
def _realize_symmetric(spec: Symmetric, settings: Settings = DEFAULT_SETTINGS) -> Group:
    n = spec.degree
    _check_cap(factorial(n), spec, settings)
    generators: Tuple[Permutation, ...] = ()
    if n >= 2:
        generators = (_cycle(range(2), n), _cycle(range(n), n))
    return build_from_generators(
        generators, name=spec.name, spec=spec, settings=settings
    )


@realize.register
def _realize_alternating(
    spec: Alternating, settings: Settings = DEFAULT_SETTINGS
) -> Group:
    n = spec.degree
    _check_cap(max(factorial(n) // 2, 1), spec, settings)
    generators: Tuple[Permutation, ...] = ()
    if n == 3:
        generators = (_cycle(range(3), n),)
    elif n >= 4:
        long_cycle = range(n) if n % 2 else range(1, n)
        generators = (_cycle(range(3), n), _cycle(long_cycle, n))
    return build_from_generators(
        generators, name=spec.name, spec=spec, settings=settings
    )


@realize.register
def _realize_quaternion(
    spec: Quaternion8, settings: Settings = DEFAULT_SETTINGS
) -> Group:
    return _named(quaternion_group(), spec)


@realize.register
def _realize_f20(spec: F20, settings: Settings = DEFAULT_SETTINGS) -> Group:
    group = build_from_generators(
        (F20_X, F20_Y), name=spec.name, spec=spec, settings=settings
    )
    # breadth-first discovery puts the generators right after the identity
    if group.order != 20 or not check_presentation(group, 1, 2):
        raise InvalidSpec("The F20 representation violates its presentation")
    return group


@realize.register
def _realize_product(
    spec: DirectProduct, settings: Settings = DEFAULT_SETTINGS
) -> Group:
    left = realize(spec.left, settings)
    right = realize(spec.right, settings)
    _check_cap(left.order * right.order, spec, settings)
    return direct_product(left, right, name=spec.name, spec=spec)


@realize.register
def _realize_permutations(
    spec: Permutations, settings: Settings = DEFAULT_SETTINGS
) -> Group:
    return build_from_generators(
        spec.generators, name=spec.name, spec=spec, settings=settings
    )


@realize.register
def _realize_cayley(spec: CayleyTable, settings: Settings = DEFAULT_SETTINGS) -> Group:
    return build_from_cayley(spec.table, name=spec.name, spec=spec, settings=settings)


def _named(group: Group, spec: GroupSpec) -> Group:
    return Group(group.mul, group.inv, name=spec.name, spec=spec, labels=group.labels)


def check_presentation(group: Group, x: int, y: int) -> bool:
    """x⁵ = y⁴ = 1 and y⁻¹xy = x³, with x and y of exact orders 5 and 4."""
    return (
        group.element_orders[x] == 5
        and group.element_orders[y] == 4
        and group.conjugate(x, y) == group.power(x, 3)
    )


def realize_text(
    text: str, settings: Settings = DEFAULT_SETTINGS, base_dir: Optional[Path] = None
) -> Group:
    return realize(parse_spec(text, base_dir), settings)


def expected_order(spec: GroupSpec) -> Optional[int]:
    """The order ``spec`` realizes to, when known without building it."""
    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, Dihedral):
        return spec.order
    if isinstance(spec, Symmetric):
        return factorial(spec.degree)
    if isinstance(spec, Alternating):
        return max(factorial(spec.degree) // 2, 1)
    if isinstance(spec, Quaternion8):
        return 8
    if isinstance(spec, F20):
        return 20
    if isinstance(spec, DirectProduct):
        left, right = expected_order(spec.left), expected_order(spec.right)
        return None if left is None or right is None else left * right
    if isinstance(spec, CayleyTable):
        return len(spec.table)
    return None
