import pytest
from faker import Faker

from ncgroups.exceptions import InvalidSpec
from ncgroups.exceptions import OrderCapExceeded
from ncgroups.permutations import closure
from ncgroups.permutations import compose
from ncgroups.permutations import format_cycles
from ncgroups.permutations import identity
from ncgroups.permutations import invert
from ncgroups.permutations import pad
from ncgroups.permutations import parse_cycles


def test_parse_cycles_single_cycle():
    assert parse_cycles("(1 2 3)") == (1, 2, 0)


def test_parse_cycles_disjoint_product():
    assert parse_cycles("(1 2)(3 4)") == (1, 0, 3, 2)


def test_parse_cycles_multiplies_left_to_right():
    assert parse_cycles("(1 2)(2 3)") == (2, 0, 1)


def test_parse_cycles_accepts_commas_and_padding():
    assert parse_cycles(" (1, 2) ", degree=4) == (1, 0, 2, 3)


@pytest.mark.parametrize(
    argnames=["text"],
    argvalues=[("(1 1)",), ("(0 1)",), ("1 2",), ("(a b)",), ("",)],
    ids=["repeated_point", "zero_based", "no_parens", "not_numbers", "empty"],
)
def test_parse_cycles_rejects_invalid_text(text: str):
    with pytest.raises(InvalidSpec):
        parse_cycles(text)


def test_format_cycles_of_identity_is_empty_cycle(faker: Faker):
    assert format_cycles(identity(faker.pyint(min_value=0, max_value=9))) == "()"


def test_format_cycles_inverts_parse_cycles():
    assert format_cycles(parse_cycles("(1 3 2)(4 5)")) == "(1 3 2)(4 5)"


def test_compose_applies_left_argument_first():
    a = parse_cycles("(1 2)", degree=3)
    b = parse_cycles("(2 3)", degree=3)
    # 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
    assert compose(a, b) == parse_cycles("(1 3 2)")


def test_invert_gives_identity_under_compose(faker: Faker):
    degree = faker.pyint(min_value=1, max_value=8)
    permutation = tuple(faker.random.sample(range(degree), degree))
    assert compose(permutation, invert(permutation)) == identity(degree)


def test_pad_fixes_new_points():
    assert pad((1, 0), 4) == (1, 0, 2, 3)


def test_closure_lists_identity_first_then_breadth_first():
    elements, index = closure([(1, 2, 0)], max_order=10)
    assert elements == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    assert index == {element: i for i, element in enumerate(elements)}


def test_closure_pads_generators_to_a_common_degree():
    elements, _ = closure([(1, 0), (0, 2, 1)], max_order=10)
    assert len(elements) == 6
    assert all(len(element) == 3 for element in elements)


def test_closure_above_cap_raises():
    with pytest.raises(OrderCapExceeded):
        closure([(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], max_order=100)
