from itertools import product

import numpy as np
import pytest

from app.core.errors import DegenerateOperandError, DomainError, InvalidAddressError
from app.services.group import multiply
from app.services.monoid import (
    central_action,
    count_disjoint_reps,
    count_disjoint_reps_closed,
    diamond,
    diamond_at,
    diamond_factorize,
    diamond_i,
    disjoint_union_representatives,
    extreme_leaf,
    is_irreducible,
    phi,
    phi_compose,
    sqcup,
    sqcup_n,
    standard_form,
    standard_forms,
)
from app.services.trees import IDENTITY, Address, central_leaf, generator
from app.services.verify import random_element


def test_phi_at_root_and_right_third(y0):
    assert phi("", y0) == y0
    assert phi("2", y0) == generator(2)
    assert phi("1", IDENTITY) == IDENTITY


def test_phi_composes_along_addresses(y0):
    assert phi_compose("1", "2", y0) == phi("12", y0)


def test_identity_is_neutral_for_diamond(y0, y1):
    assert diamond(IDENTITY, y1) == y1
    assert diamond(y0, IDENTITY) == y0


def test_diamond_as_group_product(y0, y1):
    assert diamond(y0, y1) == multiply(phi("1", y1), y0)


def test_central_leaf_depths_add(y0, y1):
    assert central_leaf(diamond(y0, y1)) == Address("111")
    assert len(central_leaf(diamond(y1, y1))) == 4


def test_diamond_is_associative(y0, y1):
    y2 = generator(2)
    assert diamond(diamond(y0, y1), y2) == diamond(y0, diamond(y1, y2))


def test_diamond_at_needs_a_leaf(y0, y1):
    with pytest.raises(InvalidAddressError):
        diamond_at(y0, "0", y1)


def test_indexed_diamonds_commute(y0, y1):
    y2 = generator(2)
    assert diamond_i(diamond_i(y1, 0, y0), 2, y2) == diamond_i(diamond_i(y1, 2, y2), 0, y0)
    assert extreme_leaf(y0, 0) == Address("00")
    with pytest.raises(DomainError):
        extreme_leaf(y0, 3)


def test_factorization(y0, y1):
    assert diamond_factorize(diamond(y1, y0)).factors == (y1, y0)
    assert diamond_factorize(IDENTITY).factors == ()
    assert is_irreducible(y0)
    assert is_irreducible(y1)
    assert not is_irreducible(diamond(y0, y1))


def test_factorization_folds_back(y0, y1):
    f = diamond(diamond(y1, y0), y1)
    assert diamond_factorize(f).fold() == f


def test_standard_forms_cover_every_order(y0, y1):
    forms = list(standard_forms([y0, y1]))
    assert forms == [standard_form([y0, y1]), standard_form([y1, y0])]


def test_sqcup(y0, y1):
    union = sqcup(y0, y1)
    assert union.plus == (y1.plus, y0.plus, None)
    assert sqcup(y0, y1, side=2).minus == (None, y0.minus, y1.minus)
    with pytest.raises(DegenerateOperandError):
        sqcup(IDENTITY, y0)
    with pytest.raises(DomainError):
        sqcup(y0, y1, side=1)
    assert sqcup_n([y0]) == y0


def test_counting():
    assert [count_disjoint_reps(n) for n in range(1, 5)] == [1, 4, 48, 960]
    assert all(count_disjoint_reps(n) == count_disjoint_reps_closed(n) for n in range(1, 10))
    assert count_disjoint_reps_closed(5) == 2 ** 4 * 120 * 14
    with pytest.raises(DomainError):
        count_disjoint_reps(0)
    with pytest.raises(DomainError):
        count_disjoint_reps_closed(0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_union_representatives_are_distinct(n):
    operands = [generator(k) for k in range(n)]
    reps = disjoint_union_representatives(operands)
    assert len(set(reps)) == len(reps) == count_disjoint_reps(n)


def test_central_action(y0, y1):
    assert central_action(y1)(y0) == phi("11", y0)
    assert central_action(diamond(y0, y1))(y0) == central_action(y0)(central_action(y1)(y0))


def test_phi_cocycle(y0, y1):
    triples = list(product([y0, y1, generator(2)], repeat=3))
    rng = np.random.default_rng(7)
    triples += [tuple(random_element(rng, allow_identity=True) for _ in range(3)) for _ in range(20)]
    for f, g, h in triples:
        left = phi(central_leaf(f), diamond(g, h))
        right = multiply(phi(central_leaf(diamond(f, g)), h), phi(central_leaf(f), g))
        assert left == right


def test_left_cancellation(y0, y1):
    for f, g, h in product([IDENTITY, y0, y1, generator(2)], repeat=3):
        assert (diamond(f, g) == diamond(f, h)) == (g == h)


def test_no_nontrivial_units(y0, y1):
    for f, g in product([IDENTITY, y0, y1, generator(2)], repeat=2):
        assert diamond(f, g).is_identity == (f.is_identity and g.is_identity)
