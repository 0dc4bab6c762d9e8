from fastapi import APIRouter

from . import limits, spaces, tangent, weil

api_router = APIRouter(prefix="/api/v1")

api_router.include_router(weil.router)
api_router.include_router(limits.router)
api_router.include_router(spaces.router)
api_router.include_router(tangent.router)


@api_router.get("/health")
def health():
    return {"status": "ok"}
