import pytest

from app.core.errors import DegenerateOperandError, DomainError, ParseError
from app.services.dsl import (
    BinOp,
    Gen,
    Identity,
    Inverse,
    Phi,
    evaluate_expression,
    parse,
    resolve_element,
    to_text,
)
from app.services.group import invert, multiply
from app.services.monoid import diamond, diamond_i, phi, sqcup_n
from app.services.treelink import hopf_element, linking_move
from app.services.trees import IDENTITY, Address, Element, generator, rotate180


def test_parse_tree_shapes():
    assert parse("1") == Identity()
    assert parse("y2*y0") == BinOp("*", Gen(2), Gen(0))
    assert parse("y0^-1^-1") == Inverse(Inverse(Gen(0)))
    assert parse("phi@e(y0)") == Phi(Address(""), Gen(0))


def test_operators_associate_to_the_left():
    assert parse("y0<>y1<2>y0") == BinOp("<2>", BinOp("<>", Gen(0), Gen(1)), Gen(0))


@pytest.mark.parametrize(
    "src",
    [
        "link(1,y0,y0)",
        "diam@12(y0,y1)",
        "U(y0,y1,y2)",
        "rot(y1)",
        "incl(x0*x1^-1)",
        "(y0*y1)^-1",
        "y0<>y1<2>y0",
        "H(-2)",
        "y0*(y1*y2)",
    ],
)
def test_printing_reproduces_the_source(src):
    assert to_text(parse(src)) == src


def test_parse_errors_carry_a_location():
    with pytest.raises(ParseError) as info:
        parse("y0 *")
    assert info.value.line == 1
    assert info.value.column is not None
    assert info.value.to_dict()["type"] == "parse_error"


@pytest.mark.parametrize(
    "src, name, column",
    [("foo(y0)", "foo", 1), ("y0 * sq(y1)", "sq", 6), ("psi@0(y0)", "psi", 1), ("y0 <3> y1", "<3>", 4)],
)
def test_unknown_operators_are_named(src, name, column):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert f"unknown operator '{name}'" in info.value.message
    assert (info.value.line, info.value.column) == (1, column)


@pytest.mark.parametrize("src", ["y-1", "y0 *", "", "incl(y0)", "link(1, y0)"])
def test_parse_errors_stay_short(src):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert info.value.message.startswith("Cannot parse expression: Expected")
    assert len(info.value.message) < 120


def test_unclosed_paren_is_reported_where_it_opens():
    with pytest.raises(ParseError) as info:
        parse("y0 *\n  (y1")
    assert "unclosed '('" in info.value.message
    assert (info.value.line, info.value.column) == (2, 3)
    with pytest.raises(ParseError) as info:
        parse("y0)")
    assert "unmatched ')'" in info.value.message
    assert info.value.column == 3


def test_an_error_after_an_operator_points_past_it():
    with pytest.raises(ParseError) as info:
        parse("y0 *\n  y")
    assert info.value.line == 2


@pytest.mark.parametrize("src", ["", "y", "U(y0)", "incl(y0)", "phi@3(y0)", "y0 y1"])
def test_rejected_sources(src):
    with pytest.raises(ParseError):
        parse(src)


def test_evaluation(y0, y1):
    assert evaluate_expression("y2*y0") == evaluate_expression("y0*y4")
    assert evaluate_expression("y0^-1") == invert(y0)
    assert evaluate_expression("y0*y1") == multiply(y0, y1)
    assert evaluate_expression("y0<>y1") == diamond(y0, y1)
    assert evaluate_expression("y1<0>y0") == diamond_i(y1, 0, y0)
    assert evaluate_expression("phi@21(y1)") == phi("21", y1)
    assert evaluate_expression("U(y0,y1)") == sqcup_n([y0, y1])
    assert evaluate_expression("rot(y1)") == rotate180(y1)
    assert evaluate_expression("H(2)") == hopf_element(2)
    assert evaluate_expression("link(-1, y0, y1)") == linking_move(-1, y0, y1)
    assert evaluate_expression("1") == IDENTITY


def test_binary_words_go_through_the_inclusion():
    assert evaluate_expression("incl(x0)") == generator(0)
    assert evaluate_expression("incl(x1)") == generator(2)
    assert evaluate_expression("incl(x0*x0^-1)") == IDENTITY
    with pytest.raises(ParseError):
        evaluate_expression("x0")


def test_service_errors_pass_through():
    with pytest.raises(DomainError):
        evaluate_expression("H(0)")
    with pytest.raises(DegenerateOperandError):
        evaluate_expression("U(1,y0)")


def test_resolve_element_accepts_json_and_expressions(y0):
    assert resolve_element("y0") == y0
    assert resolve_element(y0) == y0
    assert resolve_element(y0.to_json()) == y0
    assert resolve_element({"plus": ["L", "L", "L"], "minus": ["L", "L", "L"]}) == IDENTITY
    assert isinstance(resolve_element("y1"), Element)
