from fractions import Fraction

import pytest

from app.core.errors import DomainError
from app.services.group import (
    conjugate,
    equals,
    evaluate,
    invert,
    multiply,
    multiply_all,
    pointwise_equal,
    power,
    triadic_grid,
)
from app.services.trees import IDENTITY, X0, X1, generator, include_F


def test_identity_is_neutral(y0):
    assert multiply(IDENTITY, y0) == y0
    assert multiply(y0, IDENTITY) == y0


def test_inverse(y0, y1):
    assert multiply(y0, invert(y0)).is_identity
    assert multiply(invert(y1), y1).is_identity
    assert multiply(power(y0, 2), power(y0, -2)).is_identity


@pytest.mark.parametrize("n, m", [(1, 0), (2, 0), (2, 1), (3, 1), (4, 2), (5, 0)])
def test_generator_relations(n, m):
    assert multiply(generator(n), generator(m)) == multiply(generator(m), generator(n + 2))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_higher_generators_are_conjugates(n):
    assert generator(n) == conjugate(generator(n - 2), generator(0))


def test_conjugate_of_y1_by_y0(y0, y1):
    assert conjugate(y1, y0) == generator(3)


def test_inclusion_is_a_homomorphism(y0):
    assert include_F(multiply(X0, X1)) == multiply(y0, generator(2))
    assert include_F(conjugate(X1, X0)) == generator(4)


def test_product_applies_left_factor_first(y0, y1):
    product = multiply(y0, y1)
    for q in triadic_grid(3):
        assert evaluate(product, q) == evaluate(y1, evaluate(y0, q))


def test_evaluate(y0):
    assert evaluate(y0, Fraction(1, 9)) == Fraction(1, 3)
    assert evaluate(y0, Fraction(1, 2)) == Fraction(5, 6)
    assert evaluate(y0, 0) == 0
    assert evaluate(y0, 1) == 1
    assert evaluate(IDENTITY, "2/7") == Fraction(2, 7)
    with pytest.raises(DomainError):
        evaluate(y0, 2)


def test_pointwise_equality_matches_canonical_equality(y0):
    assert pointwise_equal(multiply(generator(2), y0), multiply(y0, generator(4)))
    assert not pointwise_equal(y0, generator(1))


def test_multiply_all(y0, y1):
    assert multiply_all([y0, y1, invert(y1)]) == y0
    assert multiply_all([]) == IDENTITY


def test_mixed_arities_do_not_multiply(y0):
    with pytest.raises(DomainError):
        multiply(y0, X0)


def test_equality_is_on_canonical_pairs(y0, y1):
    assert equals(multiply(y1, y0), multiply(multiply(y1, y0), IDENTITY))
    assert not equals(y0, y1)
