"""
Ternary (and binary) trees, addresses and tree pairs.

A tree is ``None`` for a leaf or a tuple of children for an internal vertex.
All carets of one tree share the same arity: 3 for F_3, 2 for F. An
:class:`Element` is a pair of trees with equal leaf counts; public operations
always hand back reduced pairs.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union
import logging

from app.core.errors import (
    DomainError,
    InvalidAddressError,
    MalformedPairError,
    UnresolvableAddressError,
)

logger = logging.getLogger(__name__)

Tree = Optional[Tuple[Any, ...]]
LEAF: Tree = None


@dataclass(frozen=True, order=True)
class Address:
    """Path from the root: 0 = left, 1 = middle, 2 = right (empty word is the root)."""

    word: str = ""

    def __post_init__(self):
        if any(ch not in "012" for ch in self.word):
            raise InvalidAddressError(f"Address '{self.word}' uses letters outside {{0,1,2}}")

    @classmethod
    def coerce(cls, value: Union["Address", str, None]) -> "Address":
        if isinstance(value, Address):
            return value
        if value is None or value in ("", "e", "ε"):
            return cls("")
        return cls(str(value))

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return self.word or "e"

    def __add__(self, other: Union["Address", str]) -> "Address":
        return Address(self.word + Address.coerce(other).word)

    def child(self, i: int) -> "Address":
        return Address(self.word + str(i))

    def precedes(self, other: Union["Address", str]) -> bool:
        """Prefix order: ``self`` appears at the start of ``other``."""
        return Address.coerce(other).word.startswith(self.word)

    def comparable(self, other: Union["Address", str]) -> bool:
        other = Address.coerce(other)
        return self.precedes(other) or other.precedes(self)


@dataclass(frozen=True)
class TriadicInterval:
    lo: Fraction
    hi: Fraction

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains_interior(self, q: Fraction) -> bool:
        return self.lo < q < self.hi


def address_interval(alpha: Union[Address, str], arity: int = 3) -> TriadicInterval:
    lo, width = Fraction(0), Fraction(1)
    for ch in Address.coerce(alpha).word:
        digit = int(ch)
        if digit >= arity:
            raise InvalidAddressError(f"Digit {digit} is not a child of an arity-{arity} caret")
        width /= arity
        lo += digit * width
    return TriadicInterval(lo, lo + width)


# ---------------------------------------------------------------------------
# Single trees
# ---------------------------------------------------------------------------

def caret(arity: int = 3) -> Tree:
    return (LEAF,) * arity


def is_leaf(t: Tree) -> bool:
    return t is None


def tree_arity(t: Tree) -> Optional[int]:
    """Arity shared by every caret of ``t`` (None for the single leaf)."""
    if t is None:
        return None
    arity = len(t)
    stack = [t]
    while stack:
        node = stack.pop()
        if node is None:
            continue
        if not isinstance(node, tuple) or len(node) != arity:
            raise MalformedPairError("Tree mixes caret arities or holds a non-tree node")
        stack.extend(node)
    return arity


def leaf_count(t: Tree) -> int:
    if t is None:
        return 1
    return sum(leaf_count(child) for child in t)


def internal_count(t: Tree) -> int:
    if t is None:
        return 0
    return 1 + sum(internal_count(child) for child in t)


def depth(t: Tree) -> int:
    if t is None:
        return 0
    return 1 + max(depth(child) for child in t)


def _walk(t: Tree, prefix: str) -> Iterator[Tuple[str, Tree]]:
    yield prefix, t
    if t is not None:
        for i, child in enumerate(t):
            yield from _walk(child, prefix + str(i))


def leaves(t: Tree) -> List[Address]:
    return [Address(word) for word, node in _walk(t, "") if node is None]


def internal_addresses(t: Tree) -> List[Address]:
    """Internal vertices in preorder."""
    return [Address(word) for word, node in _walk(t, "") if node is not None]


def subtree_at(t: Tree, alpha: Union[Address, str]) -> Tree:
    node = t
    for ch in Address.coerce(alpha).word:
        if node is None or int(ch) >= len(node):
            raise InvalidAddressError(f"Address '{Address.coerce(alpha)}' is not a vertex of the tree")
        node = node[int(ch)]
    return node


def replace_at(t: Tree, alpha: Union[Address, str], s: Tree) -> Tree:
    word = Address.coerce(alpha).word
    if not word:
        return s
    if t is None or int(word[0]) >= len(t):
        raise InvalidAddressError(f"Address '{word}' is not a vertex of the tree")
    i = int(word[0])
    return t[:i] + (replace_at(t[i], word[1:], s),) + t[i + 1:]


def graft(t: Tree, alpha: Union[Address, str], s: Tree) -> Tree:
    """Replace the leaf of ``t`` at ``alpha`` with the tree ``s``."""
    if subtree_at(t, alpha) is not None:
        raise InvalidAddressError(f"Address '{Address.coerce(alpha)}' is not a leaf")
    return replace_at(t, alpha, s)


def graft_leaves(t: Tree, subtrees: List[Tree]) -> Tree:
    """Replace the i-th leaf of ``t`` with ``subtrees[i]``."""
    it = iter(subtrees)

    def rebuild(node: Tree) -> Tree:
        if node is None:
            return next(it)
        return tuple(rebuild(child) for child in node)

    return rebuild(t)


def mirror_tree(t: Tree) -> Tree:
    if t is None:
        return None
    return tuple(mirror_tree(child) for child in reversed(t))


def union_tree(a: Tree, b: Tree) -> Tree:
    """Smallest common refinement of two trees of the same arity."""
    if a is None:
        return b
    if b is None:
        return a
    return tuple(union_tree(x, y) for x, y in zip(a, b))


def full_tree(level: int, arity: int = 3) -> Tree:
    if level == 0:
        return None
    child = full_tree(level - 1, arity)
    return (child,) * arity


def exposed_carets(t: Tree) -> Dict[int, Address]:
    """Carets whose children are all leaves, keyed by the index of their first leaf."""
    found: Dict[int, Address] = {}
    index = 0

    def visit(node: Tree, word: str):
        nonlocal index
        if node is None:
            index += 1
            return
        if all(child is None for child in node):
            found[index] = Address(word)
            index += len(node)
            return
        for i, child in enumerate(node):
            visit(child, word + str(i))

    visit(t, "")
    return found


def tree_to_json(t: Tree) -> Any:
    if t is None:
        return "L"
    return [tree_to_json(child) for child in t]


def tree_from_json(obj: Any) -> Tree:
    if obj == "L":
        return None
    if isinstance(obj, (list, tuple)) and len(obj) in (2, 3):
        return tuple(tree_from_json(child) for child in obj)
    raise MalformedPairError(f"Cannot read a tree from {obj!r}")


def tree_word(t: Tree) -> str:
    """Balanced-parenthesis word, e.g. ``((LLL)LL)``."""
    if t is None:
        return "L"
    return "(" + "".join(tree_word(child) for child in t) + ")"


# ---------------------------------------------------------------------------
# Tree pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Element:
    plus: Tree
    minus: Tree

    def __post_init__(self):
        plus_arity = tree_arity(self.plus)
        minus_arity = tree_arity(self.minus)
        if plus_arity and minus_arity and plus_arity != minus_arity:
            raise MalformedPairError("Domain and range trees use different caret arities")
        if leaf_count(self.plus) != leaf_count(self.minus):
            raise MalformedPairError(
                f"Leaf counts differ: {leaf_count(self.plus)} vs {leaf_count(self.minus)}"
            )

    @property
    def arity(self) -> int:
        return tree_arity(self.plus) or 3

    @property
    def leaf_count(self) -> int:
        return leaf_count(self.plus)

    @property
    def internal_count(self) -> int:
        """Internal vertices of one tree (both trees have the same number)."""
        return internal_count(self.plus)

    @property
    def is_identity(self) -> bool:
        return self.plus is None and self.minus is None

    @property
    def is_reduced(self) -> bool:
        return not common_carets(self.plus, self.minus)

    def to_json(self) -> Dict[str, Any]:
        return {"plus": tree_to_json(self.plus), "minus": tree_to_json(self.minus)}

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "Element":
        try:
            return cls(tree_from_json(payload["plus"]), tree_from_json(payload["minus"]))
        except (KeyError, TypeError) as e:
            raise MalformedPairError(f"Element JSON needs 'plus' and 'minus' trees: {e}")

    def __str__(self) -> str:
        return f"{tree_word(self.plus)} -> {tree_word(self.minus)}"


IDENTITY = Element(None, None)


def common_carets(plus: Tree, minus: Tree) -> List[Tuple[int, Address, Address]]:
    upper = exposed_carets(plus)
    lower = exposed_carets(minus)
    return [(i, upper[i], lower[i]) for i in sorted(upper) if i in lower]


def reduce(plus: Tree, minus: Tree) -> Element:
    """Remove common carets until none is left; the result is the canonical pair."""
    if leaf_count(plus) != leaf_count(minus):
        raise MalformedPairError(
            f"Cannot reduce a pair with {leaf_count(plus)} and {leaf_count(minus)} leaves"
        )
    while True:
        shared = common_carets(plus, minus)
        if not shared:
            return Element(plus, minus)
        for _, upper, lower in reversed(shared):
            plus = replace_at(plus, upper, None)
            minus = replace_at(minus, lower, None)


def reduce_element(f: Element) -> Element:
    return reduce(f.plus, f.minus)


def expand(f: Element, i: int, arity: Optional[int] = None) -> Element:
    """Hang a caret on leaf ``i`` of both trees; the unreduced pair is the same map."""
    if not 0 <= i < f.leaf_count:
        raise DomainError(f"Leaf index {i} is out of range for {f.leaf_count} leaves")
    k = arity or f.arity
    return Element(
        graft(f.plus, leaves(f.plus)[i], caret(k)),
        graft(f.minus, leaves(f.minus)[i], caret(k)),
    )


def leaf_index(t: Tree, alpha: Union[Address, str]) -> int:
    alpha = Address.coerce(alpha)
    for i, leaf in enumerate(leaves(t)):
        if leaf == alpha:
            return i
    raise InvalidAddressError(f"Address '{alpha}' is not a leaf")


def central_leaf(f: Element) -> Address:
    """The maximal all-1s leaf of the domain tree."""
    if f.arity != 3:
        raise DomainError("The central leaf is defined for ternary pairs only")
    word = ""
    node = f.plus
    while node is not None:
        word += "1"
        node = node[1]
    return Address(word)


def central_leaf_by_interval(f: Element) -> Address:
    """The leaf of the domain tree whose interval has 1/2 in its interior."""
    half = Fraction(1, 2)
    for alpha in leaves(f.plus):
        if address_interval(alpha).contains_interior(half):
            return alpha
    raise DomainError("No leaf interval contains 1/2")


def apply_address(f: Element, alpha: Union[Address, str]) -> Address:
    """f(alpha): the address in the range tree carrying f(I_alpha)."""
    alpha = Address.coerce(alpha)
    if any(int(ch) >= f.arity for ch in alpha.word):
        raise InvalidAddressError(f"Address '{alpha}' leaves the arity-{f.arity} trees of f")
    node, word = f.plus, ""
    for ch in alpha.word:
        if node is None:
            break
        node = node[int(ch)]
        word += ch
    if node is None:
        image = leaves(f.minus)[leaf_index(f.plus, word)]
        return image + alpha.word[len(word):]

    plus_leaves = leaves(f.plus)
    first = next(i for i, leaf in enumerate(plus_leaves) if alpha.precedes(leaf))
    span = leaf_count(node)
    minus_leaves = leaves(f.minus)[first:first + span]
    for beta in internal_addresses(f.minus):
        below = [leaf for leaf in leaves(subtree_at(f.minus, beta))]
        if [beta + leaf.word for leaf in below] == minus_leaves:
            return beta
    raise UnresolvableAddressError(
        f"f(I_{alpha}) is not the interval of a vertex of the range tree"
    )


def rotate180(f: Element) -> Element:
    return Element(mirror_tree(f.minus), mirror_tree(f.plus))


def include_F(b: Element) -> Element:
    """Give every binary caret a middle leaf."""
    if b.arity != 2 and not b.is_identity:
        raise MalformedPairError("include_F expects a binary tree pair")

    def widen(t: Tree) -> Tree:
        if t is None:
            return None
        return (widen(t[0]), None, widen(t[1]))

    return reduce(widen(b.plus), widen(b.minus))


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

T0 = (caret(), None, None)
T1 = (None, caret(), None)
T2 = (None, None, caret())

X0 = Element(((None, None), None), (None, (None, None)))
X1 = Element((None, ((None, None), None)), (None, (None, (None, None))))


def attach_right(f: Element) -> Element:
    """phi_2 on pairs: a root caret with f hanging from its right child."""
    return Element((None, None, f.plus), (None, None, f.minus))


def generator(n: int) -> Element:
    """y_n; for n >= 2 it is y_{n-2} pushed into the right third."""
    if n < 0:
        raise DomainError(f"Generator index must be nonnegative, got {n}")
    base = Element(T0, T2) if n % 2 == 0 else Element(T1, T2)
    for _ in range(n // 2):
        base = attach_right(base)
    return base


def binary_generator(n: int) -> Element:
    """x_0 or x_1 of F."""
    if n == 0:
        return X0
    if n == 1:
        return X1
    raise DomainError(f"Only x0 and x1 are available, got x{n}")


# Upper leaves 12 (positive) and 10 (negative) sit on the central component;
# leaf 0 sits on the other one.
HOPF_POSITIVE = Element(
    (None, (None, caret(), None), None),
    ((None, caret(), None), None, None),
)
HOPF_NEGATIVE = Element(
    (None, (None, None, caret()), None),
    (None, None, (caret(), None, None)),
)
