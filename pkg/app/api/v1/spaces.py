"""
Spaces API endpoints - phitilde, alpha and alpha coherence
"""

import logging

from fastapi import APIRouter, HTTPException

from ...core.errors import InputError
from ...core.response import error_payload
from ...schemas.spaces import AlphaReport, AlphaRequest, CoherenceReport, CoherenceRequest, FunctorPayload, PhitildeRequest
from ...services.spaceservice import space_service

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/spaces", tags=["spaces"])


@router.post("/phitilde", response_model=FunctorPayload)
def phitilde(request: PhitildeRequest) -> FunctorPayload:
    """
    Example:
        POST /api/v1/spaces/phitilde
        {"morphism": "[W -> W@W]{ x1 -> x1*x2 }"}
    """
    try:
        return space_service.phitilde(request.morphism)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error computing phitilde: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/alpha", response_model=AlphaReport)
def alpha(request: AlphaRequest) -> AlphaReport:
    try:
        return space_service.alpha(request.phi1, request.phi2)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error computing alpha: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/coherence", response_model=CoherenceReport)
def coherence(request: CoherenceRequest) -> CoherenceReport:
    try:
        return space_service.check_coherence(request.morphisms, request.seed, request.count)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error checking coherence: {e}")
        raise HTTPException(status_code=500, detail=str(e))
