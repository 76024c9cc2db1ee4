from collections import Counter
from dataclasses import replace

import pytest

from app.core.errors import DomainError, InvalidAddressError
from app.services.links import (
    central_knot,
    jones_diagram,
    leaf_component_partition,
    leaf_directions,
    make_rightmost_central,
    orient,
    move_component_to_rightmost_tracked,
    retarget_central_tracked,
    reverse_component,
    rotate_to,
    same_attachment_site,
    sublink,
    trace_components,
)
from app.services.trees import HOPF_POSITIVE, IDENTITY, X0, Element, caret, leaf_index


def test_identity_is_the_trivial_knot():
    d = jones_diagram(IDENTITY)
    assert d.crossing_count == 0
    assert d.component_count == 1


def test_one_crossing_per_internal_vertex(y0, y1):
    for f in (y0, y1, HOPF_POSITIVE):
        assert jones_diagram(f).crossing_count == 2 * f.internal_count


def test_component_counts(y0):
    assert jones_diagram(y0).component_count == 1
    assert jones_diagram(HOPF_POSITIVE).component_count == 2
    assert jones_diagram(Element(caret(), caret())).component_count == 2


def test_binary_pairs_are_rejected():
    with pytest.raises(DomainError):
        jones_diagram(X0)


def test_pd_code_uses_each_arc_twice(y0):
    d = jones_diagram(y0)
    pd = d.pd_code()
    assert len(pd) == d.crossing_count
    counts = Counter(arc for crossing in pd for arc in crossing)
    assert set(counts.values()) == {2}
    assert sorted(counts) == list(range(1, 2 * d.crossing_count + 1))
    assert all(line.startswith("X(") for line in d.pd_lines())


def test_gauss_code_meets_each_crossing_over_and_under():
    d = jones_diagram(HOPF_POSITIVE)
    entries = [n for row in d.gauss_code() for n in row]
    assert sorted(abs(n) for n in entries) == sorted(list(range(1, d.crossing_count + 1)) * 2)
    for n in range(1, d.crossing_count + 1):
        assert n in entries and -n in entries


def test_trace_components_lengths():
    d = jones_diagram(HOPF_POSITIVE)
    assert [len(row) for row in trace_components(d)] == [len(comp) for comp in d.components]


def test_hopf_leaves_by_component():
    groups = leaf_component_partition(HOPF_POSITIVE)
    assert len(groups) == 2
    assert leaf_index(HOPF_POSITIVE.plus, "12") in groups[0]
    assert leaf_index(HOPF_POSITIVE.plus, "10") in groups[0]
    assert leaf_index(HOPF_POSITIVE.plus, "0") in groups[1]
    assert sorted(j for group in groups for j in group) == list(range(HOPF_POSITIVE.leaf_count))
    assert len(leaf_directions(HOPF_POSITIVE)) == HOPF_POSITIVE.leaf_count


def test_sublink_keeps_one_component():
    d = jones_diagram(HOPF_POSITIVE)
    knot = sublink(d, [0])
    assert knot.component_count == 1
    assert knot.crossing_count < d.crossing_count
    assert central_knot(HOPF_POSITIVE).component_count == 1


def test_mirror_flips_every_crossing(y0):
    d = jones_diagram(y0)
    flipped = d.mirror()
    assert all(a != b for a, b in zip(d.overs, flipped.overs))
    assert all(flipped.sign(x) == -d.sign(x) for x in range(d.crossing_count))


def test_component_helpers():
    comp = ((0, 0), (1, 1), (2, 3))
    assert rotate_to(comp, (1, 1)) == ((1, 1), (2, 3), (0, 0))
    assert reverse_component(comp) == ((0, 2), (2, 1), (1, 3))
    assert reverse_component(()) == ()


def test_orient_restores_order_and_direction():
    d = jones_diagram(HOPF_POSITIVE)
    assert orient(d) == d
    first, second = d.components
    scrambled = replace(d, components=(second, reverse_component(first)), marked=1)
    assert orient(scrambled) == d
    assert orient(replace(d, anchors=None)) == replace(d, anchors=None)


def test_make_rightmost_central_adds_two_carets(y0):
    assert make_rightmost_central(y0).internal_count == y0.internal_count + 2


def test_move_to_rightmost(y0):
    moved, mapping, i = move_component_to_rightmost_tracked(y0, "02")
    assert moved.internal_count == y0.internal_count + 4
    assert i == moved.leaf_count - 1
    assert list(mapping.values()) == sorted(mapping.values())

    same, _, j = move_component_to_rightmost_tracked(y0, "2")
    assert same == y0 and j == y0.leaf_count - 1

    with pytest.raises(InvalidAddressError):
        move_component_to_rightmost_tracked(y0, "0")


def test_retarget_marks_the_chosen_component():
    moved, mapping = retarget_central_tracked(HOPF_POSITIVE, "0")
    d = jones_diagram(moved)
    assert d.component_count == 2
    assert d.leaf_component(mapping[leaf_index(HOPF_POSITIVE.plus, "0")]) == d.marked


def test_attachment_sites(y0):
    assert same_attachment_site(y0, "00", "00")
    assert not same_attachment_site(HOPF_POSITIVE, "12", "0")
