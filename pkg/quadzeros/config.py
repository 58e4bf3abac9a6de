"""
Settings for the quadzeros toolkit
Values come from the environment (optionally a .env file) with defaults.
"""

import os
import sys
from typing import Optional

from dotenv import load_dotenv
from loguru import logger
from pydantic import BaseModel, Field, ValidationError

from quadzeros.errors import InvalidParams

# Load environment variables
load_dotenv()


class Settings(BaseModel):
    threads: int = Field(1, ge=1)
    log_level: str = "INFO"
    log_file: Optional[str] = None
    m_max_cap: int = Field(512, ge=1)
    tol: float = Field(1e-10, gt=0)
    grid: int = Field(4096, ge=2)
    m_cap: int = Field(60, ge=1)
    api_host: str = "0.0.0.0"
    api_port: int = 8000


def load_settings() -> Settings:
    """Read QUADZEROS_* variables into a validated Settings object"""
    raw = {
        'threads': os.getenv('QUADZEROS_THREADS', '1'),
        'log_level': os.getenv('QUADZEROS_LOG_LEVEL', 'INFO'),
        'log_file': os.getenv('QUADZEROS_LOG_FILE') or None,
        'm_max_cap': os.getenv('QUADZEROS_MMAX_CAP', '512'),
        'tol': os.getenv('QUADZEROS_TOL', '1e-10'),
        'grid': os.getenv('QUADZEROS_GRID', '4096'),
        'm_cap': os.getenv('QUADZEROS_MCAP', '60'),
        'api_host': os.getenv('QUADZEROS_API_HOST', '0.0.0.0'),
        'api_port': os.getenv('QUADZEROS_API_PORT', '8000'),
    }
    try:
        return Settings(**raw)
    except ValidationError as e:
        logger.error(f"Invalid QUADZEROS_* environment: {e}")
        raise InvalidParams(f"invalid environment settings: {e}") from e


def configure_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """Install the stderr sink and, when requested, a rotating file sink"""
    settings = load_settings()
    level = (level or settings.log_level).upper()
    log_file = log_file or settings.log_file

    logger.remove()
    logger.add(sys.stderr, level=level)
    if log_file:
        logger.add(log_file, level=level, rotation="10 MB", retention=5)
