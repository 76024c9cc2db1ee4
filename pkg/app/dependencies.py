from fastapi import HTTPException
import logging

from app.core.errors import ThompsonLinkError
from app.services.dsl import evaluate_expression
from app.services.trees import Element

logger = logging.getLogger(__name__)


def service_error(e: ThompsonLinkError) -> HTTPException:
    """Map a service error onto a 400 response."""
    logger.error(f"Request rejected: {e.code}: {e.message}")
    return HTTPException(status_code=400, detail=e.to_dict())


def element_from_expression(expression: str) -> Element:
    try:
        return evaluate_expression(expression)
    except ThompsonLinkError as e:
        raise service_error(e)
