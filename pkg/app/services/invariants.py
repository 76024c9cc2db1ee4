"""
Exact invariants of link diagrams.

The Kauffman bracket is a state sum evaluated crossing by crossing: after each
crossing is smoothed, only the pairing of the loose arc ends is remembered,
so states that agree on the boundary are merged.
"""
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple
import logging

import numpy as np

from app.core.config import settings
from app.core.errors import ResourceError, StructureError
from app.models.models import Fingerprint
from app.services.laurent import A, LOOP_VALUE, UNLINK_FACTOR, LaurentPoly
from app.services.links import Endpoint, LinkDiagram, jones_diagram, sublink
from app.services.reidemeister import arc_partner, simplify
from app.services.trees import Element

logger = logging.getLogger(__name__)

StateKey = Tuple[FrozenSet[FrozenSet[Endpoint]], bool]


def writhe(d: LinkDiagram) -> int:
    return sum(d.sign(x) for x in range(d.crossing_count))


def linking_matrix(d: LinkDiagram) -> np.ndarray:
    """Pairwise linking numbers, components in the diagram's order."""
    size = d.component_count
    doubled = np.zeros((size, size), dtype=int)
    for x in range(d.crossing_count):
        i, j = d.crossing_components(x)
        if i != j:
            doubled[i, j] += d.sign(x)
            doubled[j, i] += d.sign(x)
    if np.any(doubled % 2):
        raise StructureError("Signed crossing count between two components is odd")
    return doubled // 2


def mirror(d: LinkDiagram) -> LinkDiagram:
    return d.mirror()


def _smoothing_pairs(d: LinkDiagram, x: int, a_type: bool) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    u = 1 - d.overs[x]
    if a_type:
        return (u, u + 1), ((u + 2) % 4, (u + 3) % 4)
    return (u, (u + 3) % 4), (u + 1, u + 2)


def _crossing_order(d: LinkDiagram, partner: Dict[Endpoint, Endpoint]) -> List[int]:
    remaining = set(range(d.crossing_count))
    done: set = set()
    order = []
    while remaining:
        best = min(
            remaining,
            key=lambda x: (-sum(partner[(x, s)][0] in done for s in range(4)), x),
        )
        order.append(best)
        done.add(best)
        remaining.discard(best)
    return order


def kauffman_bracket(d: LinkDiagram, max_crossings: Optional[int] = None) -> LaurentPoly:
    """<D> in A, normalised so that a single loop is 1."""
    cap = settings.MAX_CROSSINGS if max_crossings is None else max_crossings
    if d.crossing_count > cap:
        raise ResourceError(
            f"Diagram has {d.crossing_count} crossings, above the cap of {cap}; simplify it first"
        )
    free_loops = sum(1 for comp in d.components if not comp)
    if d.crossing_count == 0:
        return LOOP_VALUE ** (free_loops - 1) if free_loops else LaurentPoly.one()

    partner = arc_partner(d)
    states: Dict[StateKey, LaurentPoly] = {(frozenset(), False): LaurentPoly.one()}
    for x in _crossing_order(d, partner):
        merged: Dict[StateKey, LaurentPoly] = {}
        for (pairs, closed), weight in states.items():
            for a_type, factor in ((True, A), (False, A ** -1)):
                mate = {}
                for pair in pairs:
                    p, q = tuple(pair)
                    mate[p], mate[q] = q, p
                key, loops = _absorb(mate, partner, x, _smoothing_pairs(d, x, a_type), closed)
                term = weight * factor * (LOOP_VALUE ** loops)
                merged[key] = merged.get(key, LaurentPoly.zero()) + term
        states = {k: v for k, v in merged.items() if not v.is_zero()}
        logger.debug(f"Smoothed crossing {x}; {len(states)} boundary states")

    total = LaurentPoly.zero()
    for (pairs, _), weight in states.items():
        if pairs:
            raise StructureError("State sum finished with loose arc ends")
        total = total + weight
    return total * (LOOP_VALUE ** free_loops)


def _absorb(mate: Dict[Endpoint, Endpoint], partner: Dict[Endpoint, Endpoint], x: int,
            smoothing, closed: bool) -> Tuple[StateKey, int]:
    """Add crossing ``x`` with the given smoothing to a boundary state.

    Returns the new state and the number of loops that cost a factor of the
    loop value (the first closed loop is free).
    """
    for s, t in smoothing:
        mate[(x, s)], mate[(x, t)] = (x, t), (x, s)
    charged = 0

    def join(a: Endpoint, b: Endpoint):
        nonlocal closed, charged
        a_end, b_end = mate.pop(a), mate.pop(b)
        if a_end == b:
            if closed:
                charged += 1
            closed = True
            return
        mate[a_end], mate[b_end] = b_end, a_end

    for s in range(4):
        end = (x, s)
        if end not in mate:
            continue
        other = partner[end]
        if other in mate and other != end:
            join(end, other)

    pairs = frozenset(frozenset((p, q)) for p, q in mate.items())
    return (pairs, closed), charged


def jones_polynomial(d: LinkDiagram, max_crossings: Optional[int] = None,
                     simplify_first: Optional[bool] = None) -> LaurentPoly:
    """V(t), stored in powers of t^(1/2)."""
    if simplify_first is None:
        simplify_first = settings.SIMPLIFY_BEFORE_BRACKET
    if simplify_first:
        d = simplify(d)
    bracket = kauffman_bracket(d, max_crossings)
    w = writhe(d)
    normalised = bracket * LaurentPoly.monomial(-3 * w, -1 if w % 2 else 1)
    terms = {}
    for exponent, coefficient in normalised.terms:
        if exponent % 2:
            raise StructureError(f"Odd power A^{exponent} left after normalisation")
        terms[-exponent // 2] = coefficient
    return LaurentPoly(terms)


def central_knot_jones(f: Element, max_crossings: Optional[int] = None) -> LaurentPoly:
    d = jones_diagram(f)
    return jones_polynomial(sublink(d, [d.marked]), max_crossings)


def component_jones(d: LinkDiagram, component: int, max_crossings: Optional[int] = None) -> LaurentPoly:
    return jones_polynomial(sublink(d, [component]), max_crossings)


def fingerprint(d: LinkDiagram, max_crossings: Optional[int] = None) -> Fingerprint:
    order = [d.marked] + [c for c in range(d.component_count) if c != d.marked]
    matrix = linking_matrix(d)[np.ix_(order, order)]
    jones = jones_polynomial(d, max_crossings)
    return Fingerprint(
        components=d.component_count,
        linking_matrix=matrix.tolist(),
        jones=jones.format(),
        unoriented_jones=jones.up_to_unit().format(),
        marked_jones=component_jones(d, d.marked, max_crossings).format(),
        crossings=d.crossing_count,
    )


def element_fingerprint(f: Element, max_crossings: Optional[int] = None) -> Fingerprint:
    return fingerprint(jones_diagram(f), max_crossings)


def linking_pairs(d: LinkDiagram) -> Dict[Tuple[int, int], int]:
    matrix = linking_matrix(d)
    return {
        (i, j): int(matrix[i, j])
        for i in range(d.component_count)
        for j in range(i + 1, d.component_count)
    }


def jones_of_union(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    """V of a split union: one factor of -t^1/2 - t^-1/2 per extra piece."""
    result = None
    for poly in polys:
        result = poly if result is None else result * UNLINK_FACTOR * poly
    return result if result is not None else LaurentPoly.one()
