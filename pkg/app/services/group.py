"""
Group structure on canonical tree pairs.

The product follows the convention ``f * g = g o f``: apply ``f`` first.
"""
from fractions import Fraction
from typing import List, Union
import logging

from app.core.errors import DomainError
from app.services.trees import (
    Element,
    IDENTITY,
    address_interval,
    depth,
    graft_leaves,
    leaves,
    reduce,
    subtree_at,
    union_tree,
)

logger = logging.getLogger(__name__)


def multiply(f: Element, g: Element) -> Element:
    """Canonical pair of ``g o f``."""
    if f.is_identity:
        return g
    if g.is_identity:
        return f
    if f.arity != g.arity:
        raise DomainError("Cannot multiply elements of different arity")

    common = union_tree(f.minus, g.plus)
    plus = graft_leaves(f.plus, [subtree_at(common, leaf) for leaf in leaves(f.minus)])
    minus = graft_leaves(g.minus, [subtree_at(common, leaf) for leaf in leaves(g.plus)])
    return reduce(plus, minus)


def multiply_all(elements: List[Element]) -> Element:
    result = IDENTITY
    for element in elements:
        result = multiply(result, element)
    return result


def invert(f: Element) -> Element:
    return Element(f.minus, f.plus)


def power(f: Element, n: int) -> Element:
    base = f if n >= 0 else invert(f)
    result = IDENTITY
    for _ in range(abs(n)):
        result = multiply(result, base)
    return result


def conjugate(f: Element, g: Element) -> Element:
    """g^-1 * f * g."""
    return multiply(multiply(invert(g), f), g)


def evaluate(f: Element, q: Union[Fraction, int, str]) -> Fraction:
    """Value of the piecewise-linear map at ``q``; exact."""
    q = Fraction(q)
    if q < 0 or q > 1:
        raise DomainError(f"Point {q} lies outside [0, 1]")
    if f.is_identity:
        return q

    arity = f.arity
    upper = [address_interval(a, arity) for a in leaves(f.plus)]
    lower = [address_interval(a, arity) for a in leaves(f.minus)]
    for source, target in zip(upper, lower):
        if source.lo <= q < source.hi:
            return target.lo + (q - source.lo) * target.length / source.length
    return Fraction(1)


def equals(f: Element, g: Element) -> bool:
    return f == g


def triadic_grid(level: int, arity: int = 3) -> List[Fraction]:
    """All points k / arity**level in [0, 1]."""
    denominator = arity ** level
    return [Fraction(k, denominator) for k in range(denominator + 1)]


def pointwise_equal(f: Element, g: Element) -> bool:
    """Compare two elements on the grid one level finer than their deepest leaf."""
    arity = f.arity if not f.is_identity else g.arity
    level = max(depth(f.plus), depth(f.minus), depth(g.plus), depth(g.minus)) + 1
    return all(evaluate(f, q) == evaluate(g, q) for q in triadic_grid(level, arity))
