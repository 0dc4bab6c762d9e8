"""
Weil API endpoints - normal forms, composition, relation checks, tensor products
"""

import logging

from fastapi import APIRouter, HTTPException

from ...core.errors import InputError
from ...core.response import error_payload
from ...schemas.weil import (
    ComposeRequest,
    HomCheckResult,
    MorphismRequest,
    MorphismResult,
    NormalizeRequest,
    TensorRequest,
    TermResult,
)
from ...services.algebraservice import algebra_service

logger = logging.getLogger(__name__)
router = APIRouter(prefix="/weil", tags=["weil"])


@router.post("/normalize", response_model=TermResult)
def normalize(request: NormalizeRequest) -> TermResult:
    """
    Parse any term and return its canonical text

    Example:
        POST /api/v1/weil/normalize
        {"text": "x2*x1 + x1*x2", "ambient": "W@W"}
    """
    try:
        return algebra_service.normalize(request.text, request.ambient)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error normalizing term: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/compose", response_model=MorphismResult)
def compose(request: ComposeRequest) -> MorphismResult:
    try:
        return algebra_service.compose(request.psi, request.phi)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error composing morphisms: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/check-hom", response_model=HomCheckResult)
def check_hom(request: MorphismRequest) -> HomCheckResult:
    """
    Check the relations x_i x_j = 0 (i ~ j) are sent to zero

    Example:
        POST /api/v1/weil/check-hom
        {"morphism": "[W^2 -> W@W]{ x1 -> x1 + x1 + x1*x2 + x2 ; x2 -> 3*x1*x2 }"}
    """
    try:
        return algebra_service.check_hom(request.morphism)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error checking morphism: {e}")
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/tensor", response_model=TermResult)
def tensor(request: TensorRequest) -> TermResult:
    try:
        return algebra_service.tensor(request.left, request.right)
    except InputError as e:
        raise HTTPException(status_code=400, detail=error_payload(e)["error"])
    except Exception as e:
        logger.error(f"Error tensoring terms: {e}")
        raise HTTPException(status_code=500, detail=str(e))
