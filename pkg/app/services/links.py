"""
Jones' construction: from a ternary tree pair to a pointed link diagram.

The domain tree is drawn above the range tree (flipped), leaves are glued in
order and the two roots are joined by an arc on the left. Each internal vertex
becomes a crossing whose four arc ends sit in counterclockwise slots:

    domain vertex: parent 0, left 1, middle 2, right 3
    range vertex:  parent 0, right 1, middle 2, left 3

Opposite slots form the two strands (parent-middle and left-right). At every
vertex the left-right strand passes over.

A diagram is stored through its oriented components. Each component is a
cyclic sequence of passages ``(x, s)``: the strand enters crossing ``x`` at slot
``s`` and leaves at ``(s + 2) % 4``. An empty component is a loop without
crossings.
"""
from dataclasses import dataclass, replace as dc_replace
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union
import logging

from app.core.errors import DomainError, InvalidAddressError
from app.services.trees import (
    Address,
    Element,
    caret,
    graft,
    internal_addresses,
    leaf_index,
    leaves,
    T0,
)

logger = logging.getLogger(__name__)

Passage = Tuple[int, int]
Endpoint = Tuple[int, int]

OVER_HORIZONTAL = 1


@dataclass(frozen=True)
class LinkDiagram:
    overs: Tuple[int, ...]
    components: Tuple[Tuple[Passage, ...], ...]
    marked: int = 0
    leaf_slots: Optional[Tuple[Endpoint, ...]] = None
    anchors: Optional[Tuple[Passage, ...]] = None

    @property
    def crossing_count(self) -> int:
        return len(self.overs)

    @property
    def component_count(self) -> int:
        return len(self.components)

    @cached_property
    def _position(self) -> Dict[Passage, Tuple[int, int]]:
        return {p: (c, k) for c, comp in enumerate(self.components) for k, p in enumerate(comp)}

    @cached_property
    def _offsets(self) -> Tuple[int, ...]:
        offsets, total = [], 1
        for comp in self.components:
            offsets.append(total)
            total += len(comp)
        return tuple(offsets)

    def has_passage(self, p: Passage) -> bool:
        return p in self._position

    def locate(self, p: Passage) -> Tuple[int, int]:
        return self._position[p]

    def passages_at(self, x: int) -> List[Passage]:
        return [(x, s) for s in range(4) if (x, s) in self._position]

    def is_over(self, p: Passage) -> bool:
        return p[1] % 2 == self.overs[p[0]]

    def next_passage(self, p: Passage) -> Passage:
        c, k = self._position[p]
        comp = self.components[c]
        return comp[(k + 1) % len(comp)]

    def incoming_arc(self, p: Passage) -> int:
        c, k = self._position[p]
        return self._offsets[c] + k

    def outgoing_arc(self, p: Passage) -> int:
        return self.incoming_arc(self.next_passage(p))

    def arc_at_slot(self, x: int, z: int) -> int:
        if (x, z) in self._position:
            return self.incoming_arc((x, z))
        return self.outgoing_arc((x, (z + 2) % 4))

    def sign(self, x: int) -> int:
        over, under = None, None
        for p in self.passages_at(x):
            if self.is_over(p):
                over = p[1]
            else:
                under = p[1]
        return 1 if (under - over) % 4 == 1 else -1

    def crossing_components(self, x: int) -> Tuple[int, int]:
        first, second = (self._position[p][0] for p in self.passages_at(x))
        return first, second

    def mirror(self) -> "LinkDiagram":
        return dc_replace(self, overs=tuple(1 - o for o in self.overs))

    def leaf_component(self, j: int) -> int:
        if self.leaf_slots is None:
            return self.marked
        x, s = self.leaf_slots[j]
        p = (x, s) if (x, s) in self._position else (x, (s + 2) % 4)
        return self._position[p][0]

    def leaf_downward(self, j: int) -> bool:
        if self.leaf_slots is None:
            return True
        x, s = self.leaf_slots[j]
        return (x, (s + 2) % 4) in self._position

    def pd_code(self) -> List[Tuple[int, int, int, int]]:
        """X(a, b, c, d) per crossing: a enters along the under strand, then counterclockwise."""
        code = []
        for x in range(self.crossing_count):
            under = next(p for p in self.passages_at(x) if not self.is_over(p))
            u = under[1]
            code.append((
                self.incoming_arc(under),
                self.arc_at_slot(x, (u + 1) % 4),
                self.outgoing_arc(under),
                self.arc_at_slot(x, (u + 3) % 4),
            ))
        return code

    def gauss_code(self) -> List[List[int]]:
        """Per component, crossings numbered by first appearance; negative when passing under."""
        numbers: Dict[int, int] = {}
        code = []
        for comp in self.components:
            row = []
            for p in comp:
                number = numbers.setdefault(p[0], len(numbers) + 1)
                row.append(number if self.is_over(p) else -number)
            code.append(row)
        return code

    def pd_lines(self) -> List[str]:
        return [f"X({a},{b},{c},{d})" for a, b, c, d in self.pd_code()]


def reverse_component(comp: Sequence[Passage]) -> Tuple[Passage, ...]:
    if not comp:
        return ()
    flipped = [(x, (s + 2) % 4) for x, s in comp]
    return (flipped[0],) + tuple(reversed(flipped[1:]))


def rotate_to(comp: Sequence[Passage], start: Passage) -> Tuple[Passage, ...]:
    k = list(comp).index(start)
    return tuple(comp[k:]) + tuple(comp[:k])


def compact(overs: Sequence[int], components: Iterable[Sequence[Passage]], marked: int = 0) -> LinkDiagram:
    """Renumber the crossings still in use as 0..n-1."""
    components = [tuple(comp) for comp in components]
    used = sorted({x for comp in components for x, _ in comp})
    renumber = {x: k for k, x in enumerate(used)}
    return LinkDiagram(
        overs=tuple(overs[x] for x in used),
        components=tuple(tuple((renumber[x], s) for x, s in comp) for comp in components),
        marked=marked,
    )


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _upper_slot(i: int) -> int:
    return i + 1


def _lower_slot(i: int) -> int:
    return 3 - i


def _trace(partner: Dict[Endpoint, Endpoint], starts: Iterable[Passage]) -> List[Tuple[Passage, ...]]:
    visited: Set[Tuple[int, int]] = set()
    components = []
    for start in starts:
        if (start[0], start[1] % 2) in visited:
            continue
        seq = []
        current = start
        while True:
            seq.append(current)
            visited.add((current[0], current[1] % 2))
            current = partner[(current[0], (current[1] + 2) % 4)]
            if current == start:
                break
        components.append(tuple(seq))
    return components


def jones_diagram(f: Element) -> LinkDiagram:
    if f.arity != 3:
        raise DomainError("Jones' construction needs a ternary pair; map binary pairs with include_F first")
    if f.is_identity:
        return LinkDiagram(overs=(), components=((),), marked=0)

    upper = internal_addresses(f.plus)
    lower = internal_addresses(f.minus)
    upper_id = {a: k for k, a in enumerate(upper)}
    lower_id = {a: len(upper) + k for k, a in enumerate(lower)}

    partner: Dict[Endpoint, Endpoint] = {}

    def connect(a: Endpoint, b: Endpoint):
        partner[a] = b
        partner[b] = a

    root = Address("")
    connect((lower_id[root], 0), (upper_id[root], 0))
    for ids, slot in ((upper_id, _upper_slot), (lower_id, _lower_slot)):
        for a, x in ids.items():
            for i in range(3):
                child = a.child(i)
                if child in ids:
                    connect((x, slot(i)), (ids[child], 0))

    def leaf_end(ids, slot, leaf: Address) -> Endpoint:
        return ids[Address(leaf.word[:-1])], slot(int(leaf.word[-1]))

    upper_ends = [leaf_end(upper_id, _upper_slot, leaf) for leaf in leaves(f.plus)]
    lower_ends = [leaf_end(lower_id, _lower_slot, leaf) for leaf in leaves(f.minus)]
    for a, b in zip(upper_ends, lower_ends):
        connect(a, b)

    anchors: List[Passage] = [(upper_id[root], 0)]
    leaf_heads = dict(zip(leaves(f.plus), lower_ends))
    edges = sorted((len(a) + 1, a.child(i).word, a.child(i)) for a in upper for i in range(3))
    for _, _, child in edges:
        anchors.append((upper_id[child], 0) if child in upper_id else leaf_heads[child])

    crossing_count = len(upper) + len(lower)
    components = _trace(partner, [(x, s) for x in range(crossing_count) for s in (0, 1)])
    diagram = LinkDiagram(
        overs=(OVER_HORIZONTAL,) * crossing_count,
        components=tuple(components),
        marked=0,
        leaf_slots=tuple(upper_ends),
        anchors=tuple(anchors),
    )
    logger.debug(f"Built diagram with {crossing_count} crossings and {len(components)} components")
    return orient(diagram)


def orient(d: LinkDiagram) -> LinkDiagram:
    """Orient and order components by the anchor sweep.

    The first anchor enters the domain root from the closure arc, so the
    central component runs clockwise through the closure and comes first.
    Every other component follows its first anchor, i.e. its shallowest
    domain-tree edge is traversed downward.
    """
    if d.anchors is None:
        return d
    placed: List[Tuple[int, Tuple[Passage, ...]]] = []
    loops = []
    for comp in d.components:
        if not comp:
            loops.append(comp)
            continue
        members = set(comp)
        for rank, (x, s) in enumerate(d.anchors):
            if (x, s) in members:
                placed.append((rank, rotate_to(comp, (x, s))))
                break
            if (x, (s + 2) % 4) in members:
                placed.append((rank, rotate_to(reverse_component(comp), (x, s))))
                break
        else:
            placed.append((len(d.anchors), comp))
    placed.sort(key=lambda item: item[0])
    return dc_replace(d, components=tuple(comp for _, comp in placed) + tuple(loops), marked=0)


def trace_components(d: LinkDiagram) -> List[List[int]]:
    """Arc numbers of each component, in traversal order."""
    result = []
    for comp in d.components:
        result.append([d.incoming_arc(p) for p in comp])
    return result


def sublink(d: LinkDiagram, keep: Iterable[int]) -> LinkDiagram:
    """Drop every component outside ``keep`` together with the crossings it touches."""
    keep = sorted(set(keep))
    kept_set = set(keep)
    survivors = {
        x for x in range(d.crossing_count)
        if all(c in kept_set for c in d.crossing_components(x))
    }
    components = [
        tuple(p for p in d.components[c] if p[0] in survivors)
        for c in keep
    ]
    marked = keep.index(d.marked) if d.marked in kept_set else 0
    return compact(d.overs, components, marked)


# ---------------------------------------------------------------------------
# Element-level views
# ---------------------------------------------------------------------------

def leaf_component_partition(f: Element) -> List[List[int]]:
    """Domain-tree leaf indices grouped by the component through them."""
    d = jones_diagram(f)
    groups: List[List[int]] = [[] for _ in d.components]
    for j in range(f.leaf_count):
        groups[d.leaf_component(j)].append(j)
    return groups


def leaf_directions(f: Element) -> List[bool]:
    d = jones_diagram(f)
    return [d.leaf_downward(j) for j in range(f.leaf_count)]


def same_attachment_site(f: Element, alpha: Union[Address, str], beta: Union[Address, str]) -> bool:
    d = jones_diagram(f)
    i, j = leaf_index(f.plus, alpha), leaf_index(f.plus, beta)
    return d.leaf_component(i) == d.leaf_component(j) and d.leaf_downward(i) == d.leaf_downward(j)


def central_knot(f: Element) -> LinkDiagram:
    d = jones_diagram(f)
    return sublink(d, [d.marked])


# ---------------------------------------------------------------------------
# Surgeries on pointed links
# ---------------------------------------------------------------------------

LeafMap = Dict[int, int]


def make_rightmost_central_tracked(f: Element) -> Tuple[Element, LeafMap]:
    """Wrap f so that the component through its rightmost domain leaf becomes central."""
    plus = (f.plus, caret(), None)
    rightmost = leaves(f.minus)[-1]
    minus = (graft(f.minus, rightmost, caret()), None, None)
    return Element(plus, minus), {j: j for j in range(f.leaf_count)}


def make_rightmost_central(f: Element) -> Element:
    return make_rightmost_central_tracked(f)[0]


def _move_step(f: Element, i: int) -> Tuple[Element, LeafMap, int]:
    upper_leaves = leaves(f.plus)
    plus = graft(f.plus, upper_leaves[i + 1], caret())
    plus = graft(plus, upper_leaves[i], caret())
    minus = graft(f.minus, leaves(f.minus)[i + 1], T0)
    mapping = {j: j for j in range(i + 1)}
    mapping[i + 1] = i + 4
    mapping.update({j: j + 4 for j in range(i + 2, f.leaf_count)})
    return Element(plus, minus), mapping, i + 5


def move_component_to_rightmost_tracked(
    f: Element, alpha: Union[Address, str]
) -> Tuple[Element, LeafMap, int]:
    """Push the component through ``alpha`` out to the rightmost domain leaf.

    Returns the element, the leaf map and the leaf index now carrying the
    component.
    """
    alpha = Address.coerce(alpha)
    try:
        i = leaf_index(f.plus, alpha)
    except InvalidAddressError:
        raise InvalidAddressError(f"Address '{alpha}' is not a leaf of the domain tree")
    mapping: LeafMap = {j: j for j in range(f.leaf_count)}
    steps = 0
    while i < f.leaf_count - 1:
        f, step, i = _move_step(f, i)
        mapping = {j: step[k] for j, k in mapping.items()}
        steps += 1
    logger.debug(f"Moved leaf {alpha} to the right edge in {steps} steps")
    return f, mapping, i


def move_component_to_rightmost(f: Element, alpha: Union[Address, str]) -> Element:
    return move_component_to_rightmost_tracked(f, alpha)[0]


def retarget_central_tracked(f: Element, alpha: Union[Address, str]) -> Tuple[Element, LeafMap]:
    moved, mapping, _ = move_component_to_rightmost_tracked(f, alpha)
    result, second = make_rightmost_central_tracked(moved)
    return result, {j: second[k] for j, k in mapping.items()}


def retarget_central(f: Element, alpha: Union[Address, str]) -> Element:
    return retarget_central_tracked(f, alpha)[0]
