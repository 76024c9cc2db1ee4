"""
Expression language for elements.

    expr := term (('*' | '<>' | '<0>' | '<1>' | '<2>') term)*
    term := atom ('^-1')*
    atom := 'y'INT | 'H(' INT ')' | 'link(' INT ',' expr ',' expr ')'
          | 'phi@' ADDR '(' expr ')' | 'diam@' ADDR '(' expr ',' expr ')'
          | 'U(' expr (',' expr)+ ')' | 'rot(' expr ')' | 'incl(' fword ')'
          | '1' | '(' expr ')'
    fword := fterm ('*' fterm)* ;  fterm := ('x0' | 'x1' | '1' | '(' fword ')') ('^-1')*
    ADDR := [012]+ | 'e'

Operators are left-associative and share one precedence level.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple, Union
import logging
import re

import pyparsing as pp

from app.core.errors import ParseError
from app.services.group import invert, multiply
from app.services.monoid import diamond, diamond_at, diamond_i, phi, sqcup_n
from app.services.treelink import hopf_element, linking_move
from app.services.trees import (
    Address,
    Element,
    IDENTITY,
    binary_generator,
    generator,
    include_F,
    reduce_element,
    rotate180,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Gen:
    n: int


@dataclass(frozen=True)
class XGen:
    n: int


@dataclass(frozen=True)
class Hopf:
    n: int


@dataclass(frozen=True)
class Link:
    n: int
    first: "Node"
    second: "Node"


@dataclass(frozen=True)
class Phi:
    address: Address
    arg: "Node"


@dataclass(frozen=True)
class DiamAt:
    address: Address
    first: "Node"
    second: "Node"


@dataclass(frozen=True)
class Union_:
    items: Tuple["Node", ...]


@dataclass(frozen=True)
class Rot:
    arg: "Node"


@dataclass(frozen=True)
class Incl:
    arg: "Node"


@dataclass(frozen=True)
class Inverse:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


Node = Union[Identity, Gen, XGen, Hopf, Link, Phi, DiamAt, Union_, Rot, Incl, Inverse, BinOp]

OPERATORS = ("*", "<>", "<0>", "<1>", "<2>")
CALLS = ("H", "link", "U", "rot", "incl")
ADDRESSED = ("phi", "diam")

_NAMED = re.compile(r"(?<![@\w])([A-Za-z_]\w*)\s*([(@])")
_ANGLED = re.compile(r"<[^<>()]*>")
_GENERATOR = re.compile(r"[xy]\d+")


def _fold_inverses(tokens):
    node = tokens[0]
    for _ in tokens[1:]:
        node = Inverse(node)
    return node


def _fold_operators(tokens):
    node = tokens[0]
    for k in range(1, len(tokens), 2):
        node = BinOp(tokens[k], node, tokens[k + 1])
    return node


@lru_cache(maxsize=None)
def grammar() -> pp.ParserElement:
    lpar, rpar, comma = map(pp.Suppress, "(),")
    integer = pp.Regex(r"[+-]?\d+").set_parse_action(lambda t: int(t[0])).set_name("integer")
    address = pp.Regex(r"[012]+|e").set_parse_action(lambda t: Address.coerce(t[0])).set_name("address")
    one = pp.Regex(r"1(?![0-9])").set_parse_action(lambda: Identity())
    inverse = pp.Literal("^-1").set_name("'^-1'")

    fword = pp.Forward()
    xgen = pp.Regex(r"x[01](?![0-9])").set_parse_action(lambda t: XGen(int(t[0][1])))
    fatom = (xgen | one | (lpar + fword + rpar)).set_name("x0, x1 or 1")
    fterm = (fatom + pp.ZeroOrMore(inverse)).set_parse_action(_fold_inverses)
    fword <<= (fterm + pp.ZeroOrMore(pp.Literal("*") - fterm)).set_parse_action(_fold_operators)
    fword.set_name("word in x0 and x1")

    expr = pp.Forward()
    ygen = pp.Regex(r"y\d+").set_parse_action(lambda t: Gen(int(t[0][1:])))
    hopf = (pp.Suppress("H(") + integer + rpar).set_parse_action(lambda t: Hopf(t[0]))
    link = (pp.Suppress("link(") + integer + comma + expr + comma + expr + rpar).set_parse_action(
        lambda t: Link(t[0], t[1], t[2])
    )
    phi_atom = (pp.Suppress("phi@") + address + lpar + expr + rpar).set_parse_action(
        lambda t: Phi(t[0], t[1])
    )
    diam_atom = (pp.Suppress("diam@") + address + lpar + expr + comma + expr + rpar).set_parse_action(
        lambda t: DiamAt(t[0], t[1], t[2])
    )
    union = (pp.Suppress("U(") + expr + pp.OneOrMore(comma + expr) + rpar).set_parse_action(
        lambda t: Union_(tuple(t))
    )
    rot = (pp.Suppress("rot(") + expr + rpar).set_parse_action(lambda t: Rot(t[0]))
    incl = (pp.Suppress("incl(") + fword + rpar).set_parse_action(lambda t: Incl(t[0]))

    atom = ygen | hopf | link | phi_atom | diam_atom | union | rot | incl | one | (lpar + expr + rpar)
    atom.set_name("atom")
    term = (atom + pp.ZeroOrMore(inverse)).set_parse_action(_fold_inverses)
    operator = (pp.Literal("<>") | pp.Regex(r"<[012]>") | pp.Literal("*")).set_name("operator")
    expr <<= (term + pp.ZeroOrMore(operator - term)).set_parse_action(_fold_operators)
    expr.set_name("expression")
    return expr


def _located(message: str, loc: int, src: str) -> ParseError:
    return ParseError(message, line=pp.lineno(loc, src), column=pp.col(loc, src))


def _check_names(src: str) -> None:
    """Reject calls and angled operators the grammar does not know."""
    for match in _NAMED.finditer(src):
        name, mark = match.groups()
        known = ADDRESSED if mark == "@" else CALLS
        if name not in known and not _GENERATOR.fullmatch(name):
            raise _located(f"unknown operator '{name}'", match.start(), src)
    for match in _ANGLED.finditer(src):
        if match.group() not in OPERATORS:
            raise _located(f"unknown operator '{match.group()}'", match.start(), src)


def _check_brackets(src: str) -> None:
    opened = []
    for loc, char in enumerate(src):
        if char == "(":
            opened.append(loc)
        elif char == ")":
            if not opened:
                raise _located("unmatched ')'", loc, src)
            opened.pop()
    if opened:
        raise _located("unclosed '('", opened[-1], src)


def parse(src: str) -> Node:
    _check_names(src)
    _check_brackets(src)
    try:
        return grammar().parse_string(src, parse_all=True)[0]
    except pp.ParseBaseException as e:
        logger.debug(f"Failed to parse '{src}': {e.msg} at {e.lineno}:{e.col}")
        raise ParseError(f"Cannot parse expression: {e.msg}", line=e.lineno, column=e.col)


def to_text(node: Node) -> str:
    if isinstance(node, Identity):
        return "1"
    if isinstance(node, Gen):
        return f"y{node.n}"
    if isinstance(node, XGen):
        return f"x{node.n}"
    if isinstance(node, Hopf):
        return f"H({node.n})"
    if isinstance(node, Link):
        return f"link({node.n},{to_text(node.first)},{to_text(node.second)})"
    if isinstance(node, Phi):
        return f"phi@{node.address}({to_text(node.arg)})"
    if isinstance(node, DiamAt):
        return f"diam@{node.address}({to_text(node.first)},{to_text(node.second)})"
    if isinstance(node, Union_):
        return "U(" + ",".join(to_text(item) for item in node.items) + ")"
    if isinstance(node, Rot):
        return f"rot({to_text(node.arg)})"
    if isinstance(node, Incl):
        return f"incl({to_text(node.arg)})"
    if isinstance(node, Inverse):
        inner = to_text(node.arg)
        return f"({inner})^-1" if isinstance(node.arg, BinOp) else f"{inner}^-1"
    right = to_text(node.right)
    if isinstance(node.right, BinOp):
        right = f"({right})"
    return f"{to_text(node.left)}{node.op}{right}"


def _evaluate_f(node: Node) -> Element:
    """Words over x0, x1 in F."""
    if isinstance(node, Identity):
        return IDENTITY
    if isinstance(node, XGen):
        return binary_generator(node.n)
    if isinstance(node, Inverse):
        return invert(_evaluate_f(node.arg))
    if isinstance(node, BinOp) and node.op == "*":
        return multiply(_evaluate_f(node.left), _evaluate_f(node.right))
    raise ParseError(f"'{to_text(node)}' is not a word in x0 and x1")


def evaluate(node: Node) -> Element:
    if isinstance(node, Identity):
        return IDENTITY
    if isinstance(node, Gen):
        return generator(node.n)
    if isinstance(node, Hopf):
        return hopf_element(node.n)
    if isinstance(node, Link):
        return linking_move(node.n, evaluate(node.first), evaluate(node.second))
    if isinstance(node, Phi):
        return phi(node.address, evaluate(node.arg))
    if isinstance(node, DiamAt):
        return diamond_at(evaluate(node.first), node.address, evaluate(node.second))
    if isinstance(node, Union_):
        return sqcup_n([evaluate(item) for item in node.items])
    if isinstance(node, Rot):
        return rotate180(evaluate(node.arg))
    if isinstance(node, Incl):
        return include_F(_evaluate_f(node.arg))
    if isinstance(node, Inverse):
        return invert(evaluate(node.arg))
    if isinstance(node, XGen):
        raise ParseError(f"x{node.n} belongs to F; wrap it in incl(...)")
    left, right = evaluate(node.left), evaluate(node.right)
    if node.op == "*":
        return multiply(left, right)
    if node.op == "<>":
        return diamond(left, right)
    return diamond_i(left, int(node.op[1]), right)


def evaluate_expression(src: str) -> Element:
    return evaluate(parse(src))


def resolve_element(entry) -> Element:
    """Vertex element entry of a labelled tree: an expression or Element JSON."""
    if isinstance(entry, str):
        return evaluate_expression(entry)
    if isinstance(entry, Element):
        return entry
    if hasattr(entry, "to_element"):
        return entry.to_element()
    return reduce_element(Element.from_json(entry))
