"""
Permutations in image-tuple form.

A permutation on ``k`` points is the tuple ``p`` with ``p[i]`` the image of
point ``i`` (0-based). Cycle notation is 1-based, as written by hand.
Products act on the right: ``compose(a, b)`` first applies ``a``, then ``b``.
"""
import re
from typing import Dict
from typing import List
from typing import Sequence
from typing import Tuple

from ncgroups.exceptions import InvalidSpec
from ncgroups.exceptions import OrderCapExceeded
from ncgroups.types import Permutation

_CYCLE = re.compile(r"\(([^()]*)\)")
_CYCLE_LIST = re.compile(r"^\s*(\([^()]*\)\s*)+$")


def identity(degree: int) -> Permutation:
    return tuple(range(degree))


def compose(a: Permutation, b: Permutation) -> Permutation:
    return tuple(b[x] for x in a)


def invert(a: Permutation) -> Permutation:
    inverse = [0] * len(a)
    for point, image in enumerate(a):
        inverse[image] = point
    return tuple(inverse)


def parse_cycles(text: str, degree: int = 0) -> Permutation:
    """
    Parse a product of disjoint or non-disjoint cycles such as ``(1 2)(3 4)``.
    Cycles are multiplied left to right. The degree grows to the largest point.
    """
    if not _CYCLE_LIST.match(text):
        raise InvalidSpec(f"{text!r} is not a list of cycles")

    cycles: List[List[int]] = []
    for match in _CYCLE.finditer(text):
        body = match.group(1).replace(",", " ").split()
        try:
            points = [int(point) for point in body]
        except ValueError as err:
            raise InvalidSpec(f"Invalid cycle {match.group(0)!r}") from err
        if any(point < 1 for point in points):
            raise InvalidSpec(f"Cycle points are 1-based, got {match.group(0)!r}")
        if len(set(points)) != len(points):
            raise InvalidSpec(f"Cycle {match.group(0)!r} repeats a point")
        cycles.append(points)

    degree = max([degree, *(max(c) for c in cycles if c)])
    result = identity(degree)
    for cycle in cycles:
        images = list(range(degree))
        for position, point in enumerate(cycle):
            images[point - 1] = cycle[(position + 1) % len(cycle)] - 1
        result = compose(result, tuple(images))
    return result


def format_cycles(permutation: Permutation) -> str:
    seen = set()
    cycles: List[str] = []
    for start in range(len(permutation)):
        if start in seen or permutation[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        point = permutation[start]
        while point != start:
            cycle.append(point)
            seen.add(point)
            point = permutation[point]
        cycles.append("(" + " ".join(str(p + 1) for p in cycle) + ")")
    return "".join(cycles) or "()"


def pad(permutation: Permutation, degree: int) -> Permutation:
    return (*permutation, *range(len(permutation), degree))


def closure(
    generators: Sequence[Permutation], max_order: int
) -> Tuple[List[Permutation], Dict[Permutation, int]]:
    """
    Breadth-first closure of ``generators`` under composition.

    The identity comes first; every other element is listed in the order it is
    discovered by right-multiplying already found elements by the generators.
    """
    degree = max((len(g) for g in generators), default=0)
    generators = [pad(g, degree) for g in generators]

    elements = [identity(degree)]
    index = {elements[0]: 0}
    cursor = 0
    while cursor < len(elements):
        current = elements[cursor]
        cursor += 1
        for generator in generators:
            product = compose(current, generator)
            if product not in index:
                if len(elements) >= max_order:
                    raise OrderCapExceeded(
                        f"The generated group has more than {max_order} elements"
                    )
                index[product] = len(elements)
                elements.append(product)
    return elements, index
