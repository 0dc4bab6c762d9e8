"""
Tangent API endpoints - tangent structure checks, differential objects, derivatives
"""

import logging

from fastapi import APIRouter, HTTPException

from ...core.errors import InputError
from ...core.response import error_payload
from ...schemas.reports import StructureMapsReport, TangentReport
from ...schemas.tangent import (
    DerivativeRequest,
    DerivativeResult,
    DiffObjReport,
    DiffObjRequest,
    StructureMapsRequest,
    TangentCheckRequest,
)
from ...services.tangentservice import tangent_service

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/tangent", tags=["tangent"])


@router.post("/check", response_model=TangentReport)
def check(request: TangentCheckRequest) -> TangentReport:
    """
    Verify a shipped tangent structure

    Example:
        POST /api/v1/tangent/check
        {"instance": "nmod", "seed": 7, "budget": 200}
    """
    try:
        return tangent_service.check(request.instance, request.seed, request.budget, request.cone_budget)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error checking tangent structure: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/structure-maps", response_model=StructureMapsReport)
def structure_maps(request: StructureMapsRequest) -> StructureMapsReport:
    try:
        return tangent_service.structure_maps(request.instance, request.object)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error computing structure maps: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/diffobj", response_model=DiffObjReport)
def diffobj(request: DiffObjRequest) -> DiffObjReport:
    try:
        return tangent_service.diffobj(request.rank, request.phat)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error checking differential object: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/derivative", response_model=DerivativeResult)
def derivative(request: DerivativeRequest) -> DerivativeResult:
    try:
        return tangent_service.derivative(request.f, request.g, request.source_rank, request.laws)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error computing derivative: {e}")
        raise HTTPException(status_code=500, detail=str(e))
