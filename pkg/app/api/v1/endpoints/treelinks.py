from fastapi import APIRouter
import logging

from app.core.errors import ThompsonLinkError
from app.dependencies import service_error
from app.models.models import LabelledTreePayload, TreeLinkResponse
from app.services.dsl import resolve_element
from app.services.treelink import LabelledTree, describe_tree_link

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/treelinks", response_model=TreeLinkResponse)
async def build_tree_link(payload: LabelledTreePayload):
    """
    Build the tree link of a labelled tree.

    **Request Body:**
    ```json
    {
        "vertices": [{"name": "v1", "element": "y0"}, {"name": "v2", "element": "y0"}],
        "edges": [{"a": "v1", "b": "v2", "label": 2}]
    }
    ```

    Vertex elements are expressions or Element JSON. An edge label is the
    linking number wanted between the two vertex knots; 0 (or no edge) keeps
    them split.
    """
    try:
        tree = LabelledTree.from_payload(payload.model_dump(), resolve_element)
        return describe_tree_link(tree)
    except ThompsonLinkError as e:
        raise service_error(e)
