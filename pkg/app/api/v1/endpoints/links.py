from fastapi import APIRouter
import logging

from app.core.errors import ThompsonLinkError
from app.dependencies import element_from_expression, service_error
from app.models.models import DiagramResponse, ElementResponse, ExpressionRequest, RetargetRequest
from app.services.links import jones_diagram, retarget_central

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/links/diagram", response_model=DiagramResponse)
async def link_diagram(request: ExpressionRequest):
    """
    Jones' construction for an element.

    **Returns:**
    - `pd`: PD code, arcs numbered along the oriented components, central component first
    - `gauss`: Gauss code per component
    - `leaf_components`: component through each domain-tree leaf
    """
    f = element_from_expression(request.expression)
    try:
        d = jones_diagram(f)
    except ThompsonLinkError as e:
        raise service_error(e)
    return DiagramResponse.from_diagram(d, f.leaf_count)


@router.post("/links/retarget", response_model=ElementResponse)
async def retarget_link(request: RetargetRequest):
    """
    Make the component through a domain leaf the central one.

    The returned element has the same unpointed link; its marked component is
    the one that passed through `leaf`.
    """
    f = element_from_expression(request.expression)
    try:
        result = retarget_central(f, request.leaf)
    except ThompsonLinkError as e:
        raise service_error(e)
    logger.info(f"Retargeted '{request.expression}' at leaf {request.leaf}")
    return ElementResponse.from_element(result)
