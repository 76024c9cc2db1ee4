from fastapi import APIRouter
import logging

from app.core.errors import ThompsonLinkError
from app.dependencies import element_from_expression, service_error
from app.models.models import (
    ElementPayload,
    ElementResponse,
    ExpressionRequest,
    FactorizationResponse,
)
from app.services.monoid import diamond_factorize

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/elements/eval", response_model=ElementResponse)
async def evaluate_element(request: ExpressionRequest):
    """
    Evaluate an expression to its reduced tree pair.

    **Request Body:**
    ```json
    {"expression": "y0"}
    ```

    **Example Response:**
    ```json
    {
        "expression": "y0",
        "element": {"plus": [["L", "L", "L"], "L", "L"], "minus": ["L", "L", ["L", "L", "L"]]},
        "leaves": 5,
        "internal_vertices": 2,
        "central_leaf": "1"
    }
    ```
    """
    f = element_from_expression(request.expression)
    logger.info(f"Evaluated '{request.expression}' to {f.internal_count} vertices per tree")
    return ElementResponse.from_element(f, request.expression)


@router.post("/elements/factorize", response_model=FactorizationResponse)
async def factorize_element(request: ExpressionRequest):
    """
    Split an element into irreducible factors of the central monoid, outermost first.

    Folding the factors with `<>` gives the element back.
    """
    f = element_from_expression(request.expression)
    try:
        factorization = diamond_factorize(f)
    except ThompsonLinkError as e:
        raise service_error(e)
    return FactorizationResponse(
        expression=request.expression,
        factors=[ElementPayload.from_element(g) for g in factorization.factors],
    )
