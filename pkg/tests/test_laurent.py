import pytest
import sympy

from app.services.laurent import LOOP_VALUE, A, LaurentPoly


def test_zero_coefficients_drop_out():
    assert LaurentPoly({1: 1, 2: 0}) == LaurentPoly({1: 1})
    assert (LaurentPoly({3: 2}) - LaurentPoly({3: 2})).is_zero()


def test_arithmetic():
    p = LaurentPoly({-1: 1, 1: 1})
    assert p * p == LaurentPoly({-2: 1, 0: 2, 2: 1})
    assert p + 1 == LaurentPoly({-1: 1, 0: 1, 1: 1})
    assert 3 * p == LaurentPoly({-1: 3, 1: 3})


def test_powers():
    assert A ** -3 == LaurentPoly.monomial(-3)
    assert LOOP_VALUE ** 0 == LaurentPoly.one()
    assert LOOP_VALUE ** 2 == LaurentPoly({-4: 1, 0: 2, 4: 1})
    with pytest.raises(ValueError):
        LOOP_VALUE ** -1


def test_reflect_and_evaluate():
    p = LaurentPoly({2: 1, 6: 1, 8: -1})
    assert p.reflect() == LaurentPoly({-2: 1, -6: 1, -8: -1})
    assert p.evaluate_at_one() == 1


def test_up_to_unit():
    hopf = LaurentPoly({1: -1, 5: -1})
    assert hopf.up_to_unit() == LaurentPoly({0: 1, 4: 1})
    assert hopf.reflect().up_to_unit() == hopf.up_to_unit()
    assert (hopf * LaurentPoly.monomial(-6, -1)).up_to_unit() == hopf.up_to_unit()
    assert LaurentPoly().up_to_unit().is_zero()


def test_format():
    assert LaurentPoly({1: -1, 5: -1}).format() == "-t^1/2 - t^5/2"
    assert LaurentPoly({2: 1, 6: 1, 8: -1}).format() == "t + t^3 - t^4"
    assert LaurentPoly({0: 3, -2: 2}).format() == "2t^-1 + 3"
    assert LaurentPoly().format() == "0"
    assert str(LaurentPoly.one()) == "1"


def test_to_sympy():
    t = sympy.Symbol("t", positive=True)
    assert sympy.simplify(LaurentPoly({2: 1, 6: 1, 8: -1}).to_sympy() - (t + t**3 - t**4)) == 0
