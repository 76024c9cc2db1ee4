import pytest

from app.core.errors import DegenerateOperandError, DomainError, StructureError
from app.services.dsl import resolve_element
from app.services.invariants import linking_matrix
from app.services.links import jones_diagram
from app.services.monoid import sqcup_n
from app.services.treelink import (
    LabelledTree,
    build_tree_link,
    describe_tree_link,
    hopf_element,
    linking_move,
    vertex_components,
    vertex_linking,
)
from app.services.trees import HOPF_NEGATIVE, HOPF_POSITIVE, Address
from app.services.verify import CHAIN_EXAMPLE


def tree(vertices, edges=()):
    return LabelledTree.from_payload(
        {
            "vertices": [{"name": name, "element": element} for name, element in vertices],
            "edges": [{"a": a, "b": b, "label": label} for a, b, label in edges],
        },
        resolve_element,
    )


def test_hopf_elements():
    assert hopf_element(1) == HOPF_POSITIVE
    assert hopf_element(-1) == HOPF_NEGATIVE
    with pytest.raises(DomainError):
        hopf_element(0)


@pytest.mark.parametrize("n", [1, -1, 2, -2, 3, -3])
def test_linking_move_sets_the_linking_number(n, y0):
    d = jones_diagram(linking_move(n, y0, y0))
    assert d.component_count == 2
    assert int(linking_matrix(d)[0, 1]) == n


def test_chain_example():
    chain = LabelledTree.from_payload(CHAIN_EXAMPLE, resolve_element)
    element, plan = build_tree_link(chain)
    assert jones_diagram(element).component_count == 3
    assert vertex_linking(chain, plan) == {("v1", "v2"): 1, ("v1", "v3"): -1, ("v2", "v3"): 0}
    components = vertex_components(chain, plan)
    assert len(set(components.values())) == 3


def test_single_vertex():
    single = tree([("a", "y1")])
    element, plan = build_tree_link(single)
    assert plan.to_text(dict(zip(single.names, single.sources))) == "y1"
    assert plan.attachments == {"a": Address("")}
    assert element == resolve_element("y1")


def test_zero_labels_give_the_disjoint_union():
    forest = tree([("a", "y0"), ("b", "y1"), ("c", "y0")], [("a", "b", 0), ("b", "c", 0)])
    element, _ = build_tree_link(forest)
    assert element == sqcup_n(list(forest.elements))


def test_identity_vertex_cannot_be_split_off():
    with pytest.raises(DegenerateOperandError):
        build_tree_link(tree([("a", "y0"), ("b", "1")], [("a", "b", 0)]))


@pytest.mark.parametrize(
    "vertices, edges",
    [
        ([("a", "y0"), ("b", "y0")], [("a", "c", 1)]),
        ([("a", "y0"), ("a", "y0")], []),
        ([("a", "y0"), ("b", "y0"), ("c", "y0")], [("a", "b", 1), ("b", "c", 1), ("c", "a", 1)]),
        ([("a", "y0")], [("a", "a", 1)]),
        ([], []),
    ],
    ids=["unknown-vertex", "duplicate-name", "cycle", "loop", "empty"],
)
def test_malformed_trees_are_rejected(vertices, edges):
    with pytest.raises(StructureError):
        tree(vertices, edges)


def test_describe_tree_link():
    chain = LabelledTree.from_payload(CHAIN_EXAMPLE, resolve_element)
    response = describe_tree_link(chain)
    assert response.linking == {"v1,v2": 1, "v1,v3": -1, "v2,v3": 0}
    assert response.fingerprint.components == 3
    assert "link(" in response.plan
