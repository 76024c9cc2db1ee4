from fastapi import APIRouter
import logging

from app.core.errors import ThompsonLinkError
from app.dependencies import element_from_expression, service_error
from app.models.models import ExpressionRequest, Fingerprint
from app.services.invariants import element_fingerprint

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/invariants", response_model=Fingerprint)
async def link_invariants(request: ExpressionRequest):
    """
    Fingerprint of the pointed link of an element.

    **Request Body:**
    ```json
    {"expression": "H(1)"}
    ```

    **Example Response:**
    ```json
    {
        "components": 2,
        "linking_matrix": [[0, 1], [1, 0]],
        "jones": "-t^1/2 - t^5/2",
        "unoriented_jones": "1 + t^2",
        "marked_jones": "1",
        "crossings": 6
    }
    ```
    Diagrams above the crossing cap (after simplification) are rejected with 400.
    """
    f = element_from_expression(request.expression)
    try:
        return element_fingerprint(f, request.max_crossings)
    except ThompsonLinkError as e:
        raise service_error(e)
