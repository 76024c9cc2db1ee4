from itertools import permutations
from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional, Tuple, Union

from app.services.links import LinkDiagram
from app.services.trees import Element, central_leaf, reduce, tree_from_json


class ElementPayload(BaseModel):
    plus: Any = Field(..., description="Domain tree: \"L\" or an array of 3 (or 2) subtrees")
    minus: Any = Field(..., description="Range tree in the same encoding")

    def to_element(self) -> Element:
        return reduce(tree_from_json(self.plus), tree_from_json(self.minus))

    @classmethod
    def from_element(cls, f: Element) -> "ElementPayload":
        return cls(**f.to_json())


class ExpressionRequest(BaseModel):
    expression: str = Field(..., description="Element expression, e.g. \"link(1,y0,y0)\" or \"y2*y0\"")
    max_crossings: Optional[int] = Field(None, description="Override for the state-sum crossing cap")


class RetargetRequest(ExpressionRequest):
    leaf: str = Field(..., description="Address of a domain-tree leaf on the component to mark")


class ElementResponse(BaseModel):
    expression: Optional[str] = None
    element: ElementPayload
    leaves: int = Field(..., description="Leaves per tree")
    internal_vertices: int = Field(..., description="Internal vertices per tree")
    central_leaf: Optional[str] = Field(None, description="Central leaf address (ternary elements only)")

    @classmethod
    def from_element(cls, f: Element, expression: Optional[str] = None) -> "ElementResponse":
        return cls(
            expression=expression,
            element=ElementPayload.from_element(f),
            leaves=f.leaf_count,
            internal_vertices=f.internal_count,
            central_leaf=str(central_leaf(f)) if f.arity == 3 else None,
        )


class FactorizationResponse(BaseModel):
    expression: Optional[str] = None
    factors: List[ElementPayload] = []


class DiagramResponse(BaseModel):
    crossings: int
    components: int
    marked: int = Field(0, description="Index of the central component")
    pd: List[str] = Field(default_factory=list, description="PD code, one X(a,b,c,d) per crossing")
    gauss: List[List[int]] = Field(default_factory=list, description="Gauss code per component")
    leaf_components: List[int] = Field(default_factory=list, description="Component through each domain leaf")

    @classmethod
    def from_diagram(cls, d: LinkDiagram, leaf_count: int = 0) -> "DiagramResponse":
        return cls(
            crossings=d.crossing_count,
            components=d.component_count,
            marked=d.marked,
            pd=d.pd_lines(),
            gauss=d.gauss_code(),
            leaf_components=[d.leaf_component(j) for j in range(leaf_count)],
        )


def canonical_matrix(matrix: List[List[int]], fixed: int = 0) -> Tuple[Tuple[int, ...], ...]:
    """Smallest relabelling of a linking matrix that keeps the first ``fixed`` rows in place."""
    size = len(matrix)
    best = None
    for tail in permutations(range(fixed, size)):
        order = list(range(fixed)) + list(tail)
        candidate = tuple(tuple(matrix[i][j] for j in order) for i in order)
        if best is None or candidate < best:
            best = candidate
    return best if best is not None else ()


class Fingerprint(BaseModel):
    components: int
    linking_matrix: List[List[int]] = Field(..., description="Linking numbers, central component first")
    jones: str = Field(..., description="Jones polynomial of the whole link")
    unoriented_jones: str = Field(
        ..., description="Jones polynomial up to a unit ±t^k/2; the same for every orientation of the components"
    )
    marked_jones: str = Field(..., description="Jones polynomial of the central component")
    crossings: int = Field(..., description="Crossings of the unsimplified diagram")

    def unpointed_key(self) -> tuple:
        return self.components, canonical_matrix(self.linking_matrix), self.jones

    def pointed_key(self) -> tuple:
        return self.components, canonical_matrix(self.linking_matrix, fixed=1), self.jones, self.marked_jones

    def unoriented_key(self) -> tuple:
        """Link type with the orientations of the components forgotten."""
        magnitudes = [[abs(n) for n in row] for row in self.linking_matrix]
        return self.components, canonical_matrix(magnitudes), self.unoriented_jones


class VertexPayload(BaseModel):
    name: str
    element: Union[str, ElementPayload] = Field(..., description="Expression string or Element JSON")


class EdgePayload(BaseModel):
    a: str
    b: str
    label: int = Field(0, description="Target linking number; 0 means split")


class LabelledTreePayload(BaseModel):
    vertices: List[VertexPayload]
    edges: List[EdgePayload] = []


class TreeLinkResponse(BaseModel):
    element: ElementPayload
    plan: str = Field(..., description="Build plan as an expression")
    attachments: Dict[str, str] = Field(default_factory=dict, description="Attachment address per vertex")
    components: Dict[str, int] = Field(default_factory=dict, description="Component carrying each vertex knot")
    linking: Dict[str, int] = Field(default_factory=dict, description="Linking number per vertex pair \"a,b\"")
    fingerprint: Fingerprint


class SuiteReport(BaseModel):
    suite: str
    passed: bool
    seed: int
    cases: int
    checks: int = 0
    failures: List[str] = []
    details: Dict[str, Any] = {}
