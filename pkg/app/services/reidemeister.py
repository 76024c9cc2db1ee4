"""
Faces of a diagram and Reidemeister moves on the passage representation.

``simplify`` removes crossings with R1 and R2 until neither applies. The
insertion moves and R3 exist for the metamorphic checks; none of them changes
the link type.
"""
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from app.services.links import Endpoint, LinkDiagram, Passage, compact

logger = logging.getLogger(__name__)

Arc = Tuple[Endpoint, Endpoint]


def arc_partner(d: LinkDiagram) -> Dict[Endpoint, Endpoint]:
    partner: Dict[Endpoint, Endpoint] = {}
    for comp in d.components:
        for k, (x, s) in enumerate(comp):
            y, t = comp[(k + 1) % len(comp)]
            partner[(x, (s + 2) % 4)] = (y, t)
            partner[(y, t)] = (x, (s + 2) % 4)
    return partner


def faces(d: LinkDiagram) -> List[List[Arc]]:
    """Boundary walks: follow an arc, then turn to the next slot counterclockwise."""
    partner = arc_partner(d)
    seen = set()
    result = []
    for start in sorted(partner):
        if start in seen:
            continue
        walk = []
        current = start
        while current not in seen:
            seen.add(current)
            arrival = partner[current]
            walk.append((current, arrival))
            current = (arrival[0], (arrival[1] + 1) % 4)
        result.append(walk)
    return result


def _arc_is_over(d: LinkDiagram, end: Endpoint) -> bool:
    return end[1] % 2 == d.overs[end[0]]


def _arc_entry(d: LinkDiagram, arc: Arc) -> Tuple[Passage, bool]:
    """The passage the arc runs into and whether that agrees with the walk direction."""
    start, finish = arc
    if d.has_passage(finish):
        return finish, True
    return start, False


def _without(d: LinkDiagram, crossings: Sequence[int]) -> LinkDiagram:
    gone = set(crossings)
    components = [tuple(p for p in comp if p[0] not in gone) for comp in d.components]
    return compact(d.overs, components, d.marked)


def find_r1(d: LinkDiagram) -> Optional[int]:
    for comp in d.components:
        for k, (x, _) in enumerate(comp):
            if comp[(k + 1) % len(comp)][0] == x:
                return x
    return None


def find_r2(d: LinkDiagram) -> Optional[Tuple[int, int]]:
    for walk in faces(d):
        if len(walk) != 2:
            continue
        (a, b), _ = walk
        if a[0] == b[0]:
            continue
        # one arc of the bigon must pass over at both of its ends
        if _arc_is_over(d, a) == _arc_is_over(d, b):
            return a[0], b[0]
    return None


def simplify(d: LinkDiagram) -> LinkDiagram:
    """Greedy R1 and R2 reductions; never adds crossings."""
    before = d.crossing_count
    current = compact(d.overs, d.components, d.marked)
    while True:
        kink = find_r1(current)
        if kink is not None:
            current = _without(current, [kink])
            continue
        bigon = find_r2(current)
        if bigon is not None:
            current = _without(current, bigon)
            continue
        break
    logger.debug(f"Simplified diagram from {before} to {current.crossing_count} crossings")
    return current


def _rebuild(d: LinkDiagram, overs: Sequence[int], before: Dict[Passage, List[Passage]],
             loop_inserts: Dict[int, List[Passage]]) -> LinkDiagram:
    components = []
    for c, comp in enumerate(d.components):
        if not comp:
            components.append(tuple(loop_inserts.get(c, ())))
            continue
        seq: List[Passage] = []
        for p in comp:
            seq.extend(before.get(p, ()))
            seq.append(p)
        components.append(tuple(seq))
    return LinkDiagram(overs=tuple(overs), components=tuple(components), marked=d.marked)


def insert_r1(d: LinkDiagram, component: int, position: int = 0, side: int = 1, over: int = 1) -> LinkDiagram:
    """Add a kink on the arc running into the passage at ``position``."""
    if side not in (1, 3) or over not in (0, 1):
        raise ValueError("side must be 1 or 3 and over must be 0 or 1")
    z = d.crossing_count
    kink = [(z, 0), (z, side)]
    overs = list(d.overs) + [over]
    comp = d.components[component]
    if not comp:
        return _rebuild(d, overs, {}, {component: kink})
    return _rebuild(d, overs, {comp[position % len(comp)]: kink}, {})


def insert_r2(d: LinkDiagram, face_index: int, first: int, second: int, first_over: bool = True) -> LinkDiagram:
    """Push arc ``first`` of a face across arc ``second`` of the same face."""
    walk = faces(d)[face_index]
    e1, e2 = walk[first], walk[second]
    if first == second or {e1[0], e1[1]} == {e2[0], e2[1]}:
        raise ValueError("R2 needs two distinct arcs of the face")
    z1, z2 = d.crossing_count, d.crossing_count + 1
    overs = list(d.overs) + ([1, 0] if first_over else [0, 1])

    before: Dict[Passage, List[Passage]] = {}
    entry1, forward1 = _arc_entry(d, e1)
    before[entry1] = [(z1, 1), (z2, 2)] if forward1 else [(z2, 0), (z1, 3)]
    entry2, forward2 = _arc_entry(d, e2)
    before.setdefault(entry2, [])
    before[entry2] = before[entry2] + ([(z2, 3), (z1, 0)] if forward2 else [(z1, 2), (z2, 1)])
    return _rebuild(d, overs, before, {})


def find_r3(d: LinkDiagram) -> List[int]:
    """Indices of triangular faces where an R3 move applies."""
    found = []
    for index, walk in enumerate(faces(d)):
        if len(walk) != 3:
            continue
        if len({arc[0][0] for arc in walk}) != 3:
            continue
        if not any(_arc_is_over(d, a) and _arc_is_over(d, b) for a, b in walk):
            continue
        lengths_ok = True
        for arc in walk:
            entry, _ = _arc_entry(d, arc)
            c, _ = d.locate(entry)
            if len(d.components[c]) < 3:
                lengths_ok = False
        if lengths_ok:
            found.append(index)
    return found


def apply_r3(d: LinkDiagram, face_index: int) -> LinkDiagram:
    """Slide a strand across the opposite crossing of a triangular face."""
    walk = faces(d)[face_index]
    components = [list(comp) for comp in d.components]
    for arc in walk:
        entry, _ = _arc_entry(d, arc)
        c, k = d.locate(entry)
        comp = components[c]
        prev = (k - 1) % len(comp)
        comp[prev], comp[k] = comp[k], comp[prev]
    return LinkDiagram(
        overs=d.overs,
        components=tuple(tuple(comp) for comp in components),
        marked=d.marked,
    )


def random_move(d: LinkDiagram, rng: np.random.Generator) -> LinkDiagram:
    """One random R1 or R2 insertion, or an R3 move when a triangle allows it."""
    choice = int(rng.integers(0, 3))
    if choice == 2:
        triangles = find_r3(d)
        if triangles:
            return apply_r3(d, triangles[int(rng.integers(0, len(triangles)))])
        choice = 1
    if choice == 1 and d.crossing_count > 0:
        walks = faces(d)
        candidates = [i for i, walk in enumerate(walks) if len(walk) >= 2]
        if candidates:
            index = candidates[int(rng.integers(0, len(candidates)))]
            size = len(walks[index])
            first = int(rng.integers(0, size))
            second = (first + 1 + int(rng.integers(0, size - 1))) % size
            try:
                return insert_r2(d, index, first, second, bool(rng.integers(0, 2)))
            except ValueError:
                pass
    component = int(rng.integers(0, d.component_count))
    length = max(1, len(d.components[component]))
    return insert_r1(
        d,
        component,
        int(rng.integers(0, length)),
        side=int(rng.choice([1, 3])),
        over=int(rng.integers(0, 2)),
    )
