from fastapi import APIRouter
from fastapi.responses import Response
import logging

from app.core.errors import ThompsonLinkError
from app.dependencies import element_from_expression, service_error
from app.models.models import ExpressionRequest
from app.services.render import render_element

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/render", response_class=Response)
async def render(request: ExpressionRequest):
    """
    SVG of the tree pair: domain tree above, range tree below, closure arc on
    the left. Leaf edges are coloured by link component.
    """
    f = element_from_expression(request.expression)
    try:
        svg = render_element(f, title=request.expression)
    except ThompsonLinkError as e:
        raise service_error(e)
    return Response(content=svg, media_type="image/svg+xml")
