from .models import (
    ElementPayload,
    ExpressionRequest,
    RetargetRequest,
    ElementResponse,
    FactorizationResponse,
    DiagramResponse,
    Fingerprint,
    VertexPayload,
    EdgePayload,
    LabelledTreePayload,
    TreeLinkResponse,
    SuiteReport,
)

__all__ = [
    "ElementPayload",
    "ExpressionRequest",
    "RetargetRequest",
    "ElementResponse",
    "FactorizationResponse",
    "DiagramResponse",
    "Fingerprint",
    "VertexPayload",
    "EdgePayload",
    "LabelledTreePayload",
    "TreeLinkResponse",
    "SuiteReport",
]
