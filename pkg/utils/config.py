import logging
import os
from typing import Any, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

logger = logging.getLogger(__name__)

DEFAULT_CACHE_DIR = ".nervelab_cache"


class RunConfig(BaseModel):
    """Resource caps, cache location and reporting switches for one CLI run"""
    cache_dir: str = DEFAULT_CACHE_DIR
    use_cache: bool = True
    max_simplices: int = Field(2_000_000, gt=0)
    max_group_order: int = Field(1_000_000, gt=0)
    time_budget_s: Optional[float] = Field(None, gt=0)
    record_timings: bool = False
    log_level: str = "INFO"

    @field_validator("log_level")
    @classmethod
    def known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level: {value}")
        return level

    @classmethod
    def load(cls, env_file: str = '.env', **overrides: Any) -> "RunConfig":
        """Environment (and .env) first, then explicit overrides that are not None"""
        if os.path.exists(env_file):
            load_dotenv(env_file)

        values: dict = {}
        env_map = {
            "cache_dir": "NERVELAB_CACHE_DIR",
            "max_simplices": "NERVELAB_MAX_SIMPLICES",
            "max_group_order": "NERVELAB_MAX_GROUP_ORDER",
            "time_budget_s": "NERVELAB_TIME_BUDGET_S",
            "log_level": "NERVELAB_LOG_LEVEL",
            "record_timings": "NERVELAB_RECORD_TIMINGS",
        }
        for name, variable in env_map.items():
            value = os.getenv(variable)
            if value:
                values[name] = value
        values.update({name: value for name, value in overrides.items() if value is not None})

        config = cls(**values)
        logger.debug(f"Run configuration: {config.model_dump()}")
        return config
