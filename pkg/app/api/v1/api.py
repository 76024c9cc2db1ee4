from fastapi import APIRouter

from app.api.v1.endpoints import elements, invariants, links, render, treelinks, verify

api_router = APIRouter()

api_router.include_router(elements.router, tags=["elements"])
api_router.include_router(links.router, tags=["links"])
api_router.include_router(invariants.router, tags=["invariants"])
api_router.include_router(treelinks.router, tags=["treelinks"])
api_router.include_router(verify.router, tags=["verify"])
api_router.include_router(render.router, tags=["render"])

@api_router.get("/test")
async def test_endpoint():
    return {"message": "API v1 is working"}
