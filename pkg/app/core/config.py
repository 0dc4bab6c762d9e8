"""
Runtime settings for the Weil tangent calculus service.
Values come from the environment, after `.env.local` at the repository root is loaded.
"""

import logging
import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

env_path = Path(__file__).resolve().parents[2] / ".env.local"
load_dotenv(dotenv_path=env_path, override=False)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Settings(BaseModel):
    """Sampling budgets and bounds used by every randomized verification."""
    seed: int = 0
    budget: int = Field(default=200, ge=0)
    cone_budget: int = Field(default=500, ge=0)

    # Bounds for random algebras and morphisms
    max_blocks: int = Field(default=3, ge=0)
    max_width: int = Field(default=3, ge=1)
    max_terms: int = Field(default=4, ge=0)
    max_coef: int = Field(default=3, ge=1)
    # seeded coherence checks skip triples whose composite has more summands
    max_summands: int = Field(default=50000, ge=1)

    log_level: str = "INFO"


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    settings = Settings(
        seed=_env_int("WEIL_SEED", 0),
        budget=_env_int("WEIL_BUDGET", 200),
        cone_budget=_env_int("WEIL_CONE_BUDGET", 500),
        max_blocks=_env_int("WEIL_MAX_BLOCKS", 3),
        max_width=_env_int("WEIL_MAX_WIDTH", 3),
        max_terms=_env_int("WEIL_MAX_TERMS", 4),
        max_coef=_env_int("WEIL_MAX_COEF", 3),
        max_summands=_env_int("WEIL_MAX_SUMMANDS", 50000),
        log_level=os.getenv("WEIL_LOG_LEVEL", "INFO").upper(),
    )
    logger.debug("settings_loaded %s", settings.model_dump())
    return settings
