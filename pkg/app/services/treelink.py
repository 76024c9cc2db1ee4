"""
Hopf-type elements, linking moves and tree links.

A tree link is built by peeling leaves off the labelled tree. The build is
kept as a plan (an expression over the vertex elements) so that a vertex can
be swapped for the identity before the plan is evaluated.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple, Union
import logging

import networkx as nx

from app.core.errors import DegenerateOperandError, DomainError, StructureError
from app.models.models import ElementPayload, TreeLinkResponse
from app.services.invariants import element_fingerprint, linking_matrix
from app.services.links import jones_diagram
from app.services.monoid import diamond_at
from app.services.trees import (
    Address,
    Element,
    HOPF_NEGATIVE,
    HOPF_POSITIVE,
    IDENTITY,
    T1,
    caret,
    central_leaf,
    graft,
    leaf_index,
    leaves,
    reduce,
    subtree_at,
)

logger = logging.getLogger(__name__)

POSITIVE_SITE = Address("12")
NEGATIVE_SITE = Address("10")
SECOND_SITE = Address("0")


def hopf_element(n: int) -> Element:
    """H^n: two unknots with linking number n."""
    if n == 0:
        raise DomainError("H^n needs a nonzero n")
    element = HOPF_POSITIVE if n > 0 else HOPF_NEGATIVE
    plus, minus = element.plus, element.minus
    for step in range(2, abs(n) + 1):
        if n > 0:
            plus = graft(plus, "11" + "2" * (step - 2) + "0", caret())
            plus = graft(plus, "11" + "2" * (step - 1), caret())
            minus = graft(minus, "0" + "2" * (step - 1), T1)
        else:
            minus = graft(minus, "2" + "0" * step, caret())
            minus = graft(minus, "2" + "0" * (step - 1) + "2", caret())
            plus = graft(plus, "11" + "0" * (step - 2), T1)
    result = reduce(plus, minus)
    site = POSITIVE_SITE if n > 0 else NEGATIVE_SITE
    for address in (site, SECOND_SITE):
        if subtree_at(result.plus, address) is not None:
            raise StructureError(f"H^{n} has no domain leaf at {address}")
    return result


def linking_site(n: int) -> Address:
    return POSITIVE_SITE if n > 0 else NEGATIVE_SITE


def linking_move(n: int, f: Element, g: Element) -> Element:
    """(H^n <>_12 f) <>_0 g, or <>_10 for negative n."""
    return diamond_at(diamond_at(hopf_element(n), linking_site(n), f), SECOND_SITE, g)


# ---------------------------------------------------------------------------
# Build plans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlanLeaf:
    name: str


@dataclass(frozen=True)
class PlanIdentity:
    pass


@dataclass(frozen=True)
class PlanSqcup:
    first: "PlanNode"
    second: "PlanNode"


@dataclass(frozen=True)
class PlanLink:
    n: int
    first: "PlanNode"
    second: "PlanNode"


@dataclass(frozen=True)
class PlanAttach:
    base: "PlanNode"
    address: Address
    sub: "PlanNode"


PlanNode = Union[PlanLeaf, PlanIdentity, PlanSqcup, PlanLink, PlanAttach]


def _raw_sqcup(f: Element, g: Element) -> Element:
    return Element((g.plus, f.plus, None), (g.minus, f.minus, None))


def _raw_attach(f: Element, alpha: Address, g: Element) -> Element:
    if g.is_identity:
        return f
    target = leaves(f.minus)[leaf_index(f.plus, alpha)]
    return Element(graft(f.plus, alpha, g.plus), graft(f.minus, target, g.minus))


def _evaluate(node: PlanNode, elements: Mapping[str, Element]) -> Element:
    if isinstance(node, PlanLeaf):
        return elements[node.name]
    if isinstance(node, PlanIdentity):
        return IDENTITY
    if isinstance(node, PlanSqcup):
        return _raw_sqcup(_evaluate(node.first, elements), _evaluate(node.second, elements))
    if isinstance(node, PlanLink):
        hopf = hopf_element(node.n)
        placed = _raw_attach(hopf, linking_site(node.n), _evaluate(node.first, elements))
        return _raw_attach(placed, SECOND_SITE, _evaluate(node.second, elements))
    return _raw_attach(_evaluate(node.base, elements), node.address, _evaluate(node.sub, elements))


def _addresses(node: PlanNode, prefix: Address = Address("")) -> Dict[str, Address]:
    if isinstance(node, PlanLeaf):
        return {node.name: prefix}
    if isinstance(node, PlanIdentity):
        return {}
    if isinstance(node, PlanSqcup):
        found = _addresses(node.first, prefix + "1")
        found.update(_addresses(node.second, prefix + "0"))
        return found
    if isinstance(node, PlanLink):
        found = _addresses(node.first, prefix + linking_site(node.n))
        found.update(_addresses(node.second, prefix + SECOND_SITE))
        return found
    found = _addresses(node.base, prefix)
    found.update(_addresses(node.sub, prefix + node.address))
    return found


def _substitute(node: PlanNode, name: str) -> PlanNode:
    if isinstance(node, PlanLeaf):
        return PlanIdentity() if node.name == name else node
    if isinstance(node, PlanIdentity):
        return node
    if isinstance(node, PlanSqcup):
        return PlanSqcup(_substitute(node.first, name), _substitute(node.second, name))
    if isinstance(node, PlanLink):
        return PlanLink(node.n, _substitute(node.first, name), _substitute(node.second, name))
    return PlanAttach(_substitute(node.base, name), node.address, _substitute(node.sub, name))


def _render(node: PlanNode, labels: Mapping[str, str]) -> str:
    if isinstance(node, PlanLeaf):
        return labels.get(node.name, node.name)
    if isinstance(node, PlanIdentity):
        return "1"
    if isinstance(node, PlanSqcup):
        return f"U({_render(node.first, labels)},{_render(node.second, labels)})"
    if isinstance(node, PlanLink):
        return f"link({node.n},{_render(node.first, labels)},{_render(node.second, labels)})"
    return f"diam@{node.address}({_render(node.base, labels)},{_render(node.sub, labels)})"


@dataclass(frozen=True)
class BuildPlan:
    root: PlanNode

    @property
    def attachments(self) -> Dict[str, Address]:
        """Where each vertex element hangs in the domain tree of the raw build."""
        return _addresses(self.root)

    def evaluate_raw(self, elements: Mapping[str, Element]) -> Element:
        return _evaluate(self.root, elements)

    def evaluate(self, elements: Mapping[str, Element]) -> Element:
        raw = self.evaluate_raw(elements)
        return reduce(raw.plus, raw.minus)

    def with_identity(self, name: str) -> "BuildPlan":
        return BuildPlan(_substitute(self.root, name))

    def to_text(self, labels: Optional[Mapping[str, str]] = None) -> str:
        return _render(self.root, labels or {})


# ---------------------------------------------------------------------------
# Labelled trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LabelledTree:
    names: Tuple[str, ...]
    elements: Tuple[Element, ...]
    edges: Tuple[Tuple[str, str, int], ...] = ()
    sources: Tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def from_payload(cls, payload: Mapping, resolve: Callable[[object], Element]) -> "LabelledTree":
        """Read ``{"vertices": [...], "edges": [...]}``; ``resolve`` turns a vertex element entry into an Element."""
        try:
            vertices = payload["vertices"]
            names = tuple(str(v["name"]) for v in vertices)
            elements = tuple(resolve(v["element"]) for v in vertices)
            sources = tuple(v["element"] if isinstance(v["element"], str) else str(v["name"]) for v in vertices)
            edges = tuple(
                (str(e["a"]), str(e["b"]), int(e.get("label", 0)))
                for e in payload.get("edges", [])
            )
        except (KeyError, TypeError, ValueError) as e:
            raise StructureError(f"Malformed labelled tree: {e}")
        tree = cls(names, elements, edges, sources)
        tree.validate()
        return tree

    @property
    def element_map(self) -> Dict[str, Element]:
        return dict(zip(self.names, self.elements))

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.names)
        for a, b, label in self.edges:
            if a not in g or b not in g:
                raise StructureError(f"Edge {a}-{b} names an unknown vertex")
            if a == b:
                raise StructureError(f"Edge {a}-{b} is a loop")
            if g.has_edge(a, b):
                raise StructureError(f"Edge {a}-{b} is listed twice")
            g.add_edge(a, b, label=label)
        return g

    def validate(self):
        if not self.names:
            raise StructureError("A labelled tree needs at least one vertex")
        if len(set(self.names)) != len(self.names):
            raise StructureError("Vertex names must be unique")
        g = self.graph()
        if not nx.is_forest(g):
            raise StructureError("The labelled graph has a cycle")

    def label(self, a: str, b: str) -> int:
        g = self.graph()
        return g.edges[a, b]["label"] if g.has_edge(a, b) else 0


def _peel(g: nx.Graph, order: Sequence[str], elements: Mapping[str, Element]) -> BuildPlan:
    if len(order) == 1:
        return BuildPlan(PlanLeaf(order[0]))

    rank = {name: k for k, name in enumerate(order)}
    candidates = [v for v in order if g.degree(v) <= 1]
    last = max(candidates, key=lambda v: (rank[v], v))
    rest = [v for v in order if v != last]
    neighbours = list(g.neighbors(last))
    label = g.edges[last, neighbours[0]]["label"] if neighbours else 0

    reduced = g.copy()
    reduced.remove_node(last)
    inner = _peel(reduced, rest, elements)

    if label == 0:
        if elements[last].is_identity or inner.evaluate(elements).is_identity:
            raise DegenerateOperandError(
                f"Vertex '{last}' joins by disjoint union, which needs non-identity operands"
            )
        logger.debug(f"Peeled '{last}' as a split component")
        return BuildPlan(PlanSqcup(inner.root, PlanLeaf(last)))

    partner = neighbours[0]
    site = inner.attachments[partner]
    logger.debug(f"Peeled '{last}' linked to '{partner}' with label {label} at {site}")
    return BuildPlan(PlanAttach(
        inner.with_identity(partner).root,
        site,
        PlanLink(label, PlanLeaf(partner), PlanLeaf(last)),
    ))


def build_tree_link(tree: LabelledTree) -> Tuple[Element, BuildPlan]:
    tree.validate()
    g = tree.graph()
    g.remove_edges_from([(a, b) for a, b, label in g.edges(data="label") if label == 0])
    plan = _peel(g, list(tree.names), tree.element_map)
    element = plan.evaluate(tree.element_map)
    logger.info(
        f"Built tree link on {len(tree.names)} vertices: "
        f"{element.internal_count} vertices per tree"
    )
    return element, plan


def vertex_components(tree: LabelledTree, plan: BuildPlan) -> Dict[str, int]:
    """Component of the raw build's diagram carrying each vertex knot."""
    elements = tree.element_map
    raw = plan.evaluate_raw(elements)
    diagram = jones_diagram(raw)
    found = {}
    for name, alpha in plan.attachments.items():
        leaf = alpha + central_leaf(elements[name])
        found[name] = diagram.leaf_component(leaf_index(raw.plus, leaf))
    return found


def vertex_linking(tree: LabelledTree, plan: BuildPlan) -> Dict[Tuple[str, str], int]:
    raw = plan.evaluate_raw(tree.element_map)
    matrix = linking_matrix(jones_diagram(raw))
    components = vertex_components(tree, plan)
    result = {}
    for i, a in enumerate(tree.names):
        for b in tree.names[i + 1:]:
            result[(a, b)] = int(matrix[components[a], components[b]])
    return result


def describe_tree_link(tree: LabelledTree, max_crossings: Optional[int] = None) -> TreeLinkResponse:
    element, plan = build_tree_link(tree)
    labels = dict(zip(tree.names, tree.sources))
    return TreeLinkResponse(
        element=ElementPayload.from_element(element),
        plan=plan.to_text(labels),
        attachments={name: str(alpha) for name, alpha in plan.attachments.items()},
        components=vertex_components(tree, plan),
        linking={f"{a},{b}": lk for (a, b), lk in vertex_linking(tree, plan).items()},
        fingerprint=element_fingerprint(element, max_crossings),
    )
