"""
The central monoid on F_3 and the operations built from grafting.

``diamond(f, g)`` hangs g's pair under the central leaf of f (upper tree) and
under its image (lower tree). Grafts of reduced pairs are reduced, so these
operations never re-reduce.
"""
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Callable, Iterator, List, Sequence, Tuple, Union
import logging

import sympy

from app.core.errors import (
    DegenerateOperandError,
    DomainError,
    InvalidAddressError,
    UnresolvableAddressError,
)
from app.services.trees import (
    Address,
    Element,
    IDENTITY,
    central_leaf,
    full_tree,
    graft,
    leaf_index,
    leaves,
    reduce,
    replace_at,
    subtree_at,
    apply_address,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiamondFactorization:
    """Irreducible factors, outermost first."""

    factors: Tuple[Element, ...] = ()

    def fold(self) -> Element:
        return standard_form(self.factors)


def phi(alpha: Union[Address, str], f: Element) -> Element:
    """Copy of f acting inside I_alpha, identity elsewhere."""
    alpha = Address.coerce(alpha)
    if f.is_identity or not alpha.word:
        return f
    frame = full_tree(len(alpha), f.arity)
    return reduce(graft(frame, alpha, f.plus), graft(frame, alpha, f.minus))


def phi_compose(alpha: Union[Address, str], beta: Union[Address, str], f: Element) -> Element:
    return phi(alpha, phi(beta, f))


def central_action(f: Element) -> Callable[[Element], Element]:
    """The map g -> phi_{l(f)}(g)."""
    alpha = central_leaf(f)
    return lambda g: phi(alpha, g)


def diamond_at(f: Element, alpha: Union[Address, str], g: Element) -> Element:
    alpha = Address.coerce(alpha)
    if subtree_at(f.plus, alpha) is not None:
        raise InvalidAddressError(f"Address '{alpha}' is not a leaf of the domain tree")
    if g.is_identity:
        return f
    target = leaves(f.minus)[leaf_index(f.plus, alpha)]
    return Element(graft(f.plus, alpha, g.plus), graft(f.minus, target, g.minus))


def diamond(f: Element, g: Element) -> Element:
    return diamond_at(f, central_leaf(f), g)


def extreme_leaf(f: Element, i: int) -> Address:
    """The maximal i^m leaf of the domain tree."""
    if i not in (0, 1, 2):
        raise DomainError(f"Diamond index must be 0, 1 or 2, got {i}")
    word, node = "", f.plus
    while node is not None:
        word += str(i)
        node = node[i]
    return Address(word)


def diamond_i(f: Element, i: int, g: Element) -> Element:
    return diamond_at(f, extreme_leaf(f, i), g)


def sqcup(f: Element, g: Element, side: int = 0) -> Element:
    """f in the middle third and g in the left (side 0) or right (side 2) third."""
    if f.is_identity or g.is_identity:
        raise DegenerateOperandError("Disjoint union needs two non-identity operands")
    if side == 0:
        return Element((g.plus, f.plus, None), (g.minus, f.minus, None))
    if side == 2:
        return Element((None, f.plus, g.plus), (None, f.minus, g.minus))
    raise DomainError(f"Disjoint union side must be 0 or 2, got {side}")


def sqcup_n(elements: Sequence[Element]) -> Element:
    if not elements:
        raise DomainError("Disjoint union needs at least one operand")
    result = elements[0]
    for g in elements[1:]:
        result = sqcup(result, g)
    return result


def disjoint_union_representatives(elements: Sequence[Element]) -> List[Element]:
    """Every nested disjoint union of the inputs, over orderings and both sides."""
    found = _union_trees(tuple(elements))
    logger.debug(f"Enumerated {len(found)} disjoint union representatives for {len(elements)} operands")
    return found


def _union_trees(items: tuple) -> List[Element]:
    if len(items) == 1:
        return [items[0]]
    results = []
    indices = range(len(items))
    for size in range(1, len(items)):
        for chosen in combinations(indices, size):
            first = tuple(items[k] for k in chosen)
            rest = tuple(items[k] for k in indices if k not in chosen)
            for f in _union_trees(first):
                for g in _union_trees(rest):
                    results.append(sqcup(f, g, 0))
                    results.append(sqcup(f, g, 2))
    return results


def count_disjoint_reps(n: int) -> int:
    """c(n) by the recursion over the size of the first part."""
    if n <= 0:
        raise DomainError(f"c(n) is defined for n >= 1, got {n}")
    table = {1: 1}
    for m in range(2, n + 1):
        total = 4 * sum(comb(m, i) * table[i] * table[m - i] for i in range(1, (m + 1) // 2))
        if m % 2 == 0:
            total += 2 * comb(m, m // 2) * table[m // 2] ** 2
        table[m] = total
    return table[n]


def count_disjoint_reps_closed(n: int) -> int:
    """c(n) = 2^(n-1) n! C(n-1), with C the Catalan numbers."""
    if n <= 0:
        raise DomainError(f"c(n) is defined for n >= 1, got {n}")
    return int(2 ** (n - 1) * sympy.factorial(n) * sympy.catalan(n - 1))


def standard_form(factors: Sequence[Element]) -> Element:
    result = IDENTITY
    for factor in factors:
        result = diamond(result, factor)
    return result


def standard_forms(factors: Sequence[Element]) -> Iterator[Element]:
    """The fold of every ordering of the factors."""
    for order in permutations(factors):
        yield standard_form(order)


def _split_at(f: Element, k: int):
    """Split f as h <> g with l(h) = 1^k, or return None."""
    alpha = Address("1" * k)
    upper = subtree_at(f.plus, alpha)
    if upper is None:
        return None
    try:
        beta = apply_address(f, alpha)
    except UnresolvableAddressError:
        return None
    g = Element(upper, subtree_at(f.minus, beta))
    h = Element(replace_at(f.plus, alpha, None), replace_at(f.minus, beta, None))
    if not g.is_reduced or not h.is_reduced:
        return None
    return h, g


def diamond_factorize(f: Element) -> DiamondFactorization:
    factors: List[Element] = []
    current = f
    while not current.is_identity:
        depth = len(central_leaf(current)) - 1
        split = None
        for k in range(depth, 0, -1):
            split = _split_at(current, k)
            if split is not None:
                break
        if split is None:
            factors.append(current)
            break
        current, inner = split
        factors.append(inner)
    factors.reverse()
    return DiamondFactorization(factors=tuple(factors))


def is_irreducible(f: Element) -> bool:
    return not f.is_identity and len(diamond_factorize(f).factors) == 1
