# blockdet/config.py
import logging
import logging.config
import os
from enum import Enum
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from .errors import ConfigError

LOGGING_INI = os.path.join(os.path.dirname(os.path.dirname(__file__)), "logging.ini")


class ArithmeticMode(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


class Settings(BaseModel):
    arithmetic: ArithmeticMode = ArithmeticMode.EXACT
    epsilon: float = Field(2.373, ge=2.0, le=3.0)
    ryser_cap: int = Field(30, ge=1)
    naive_cap: int = Field(9, ge=0)
    trace_cap: int = Field(10_000, ge=1)
    list_limit: int = Field(10_000, ge=0)
    cache_workers: int = Field(1, ge=1)
    bordered: bool = False
    log_level: str = "WARNING"


@lru_cache
def get_settings() -> Settings:
    """Read settings from the environment (and a .env file if present)."""
    load_dotenv()
    raw = {
        "arithmetic": os.getenv("BLOCKDET_ARITHMETIC", "exact"),
        "epsilon": os.getenv("BLOCKDET_EPSILON", "2.373"),
        "ryser_cap": os.getenv("BLOCKDET_RYSER_CAP", "30"),
        "naive_cap": os.getenv("BLOCKDET_NAIVE_CAP", "9"),
        "trace_cap": os.getenv("BLOCKDET_TRACE_CAP", "10000"),
        "list_limit": os.getenv("BLOCKDET_LIST_LIMIT", "10000"),
        "cache_workers": os.getenv("BLOCKDET_CACHE_WORKERS", "1"),
        "bordered": os.getenv("BLOCKDET_BORDERED", "false"),
        "log_level": os.getenv("BLOCKDET_LOG_LEVEL", "WARNING").upper(),
    }
    try:
        return Settings(**raw)
    except ValidationError as e:
        raise ConfigError(f"invalid environment configuration: {e}") from e


def configure_logging(verbosity: int = 0) -> None:
    """Load logging.ini, then raise the blockdet logger level with -v / -vv."""
    if os.path.exists(LOGGING_INI):
        logging.config.fileConfig(LOGGING_INI, disable_existing_loggers=False)
    else:
        logging.basicConfig(format="%(levelname)-5.5s [%(name)s] %(message)s")

    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.getLevelName(get_settings().log_level)
        if not isinstance(level, int):
            level = logging.WARNING
    logging.getLogger("blockdet").setLevel(level)
