from typing import Any, Dict

from .errors import DslError, DslSemanticError, WeilError


def error_payload(exc: Exception) -> Dict[str, Any]:
    """Error envelope used by `--json` output and by HTTP error details."""
    error: Dict[str, Any] = {
        "type": type(exc).__name__,
        "message": exc.message if isinstance(exc, WeilError) else str(exc),
    }
    if isinstance(exc, DslSemanticError):
        error["kind"] = exc.kind
    if isinstance(exc, DslError) and exc.offset is not None:
        error["position"] = {"line": exc.line, "column": exc.column, "offset": exc.offset}
        error["excerpt"] = exc.excerpt()
    return {"success": False, "error": error}
