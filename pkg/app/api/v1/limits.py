"""
Limits API endpoints - cone lifting and pullback verification
"""

import logging

from fastapi import APIRouter, HTTPException

from ...core.errors import InputError
from ...core.response import error_payload
from ...schemas.limits import LiftRequest, LiftResult, VerifyPullbackRequest
from ...schemas.reports import PullbackReport
from ...services.limitservice import limit_service

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/limits", tags=["limits"])


@router.post("/lift", response_model=LiftResult)
def lift(request: LiftRequest) -> LiftResult:
    """
    Lift a cone over a tangent pullback square

    Example:
        POST /api/v1/limits/lift
        {
            "square": {"kind": "vertical"},
            "right": "[W -> W@W]{ x1 -> x1*x2 + 2*x2 }",
            "bottom": "[W -> N]{ x1 -> 0 }"
        }
    """
    try:
        return limit_service.lift(request.square, request.right, request.bottom)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error lifting cone: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/verify", response_model=PullbackReport)
def verify(request: VerifyPullbackRequest) -> PullbackReport:
    try:
        return limit_service.verify(request.square, request.seed, request.cones)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error verifying pullback: {e}")
        raise HTTPException(status_code=500, detail=str(e))
