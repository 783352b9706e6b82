"""
lcycles/util/config_loader.py
Environment configuration loader with validation
"""

import logging
from pathlib import Path
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..services.locked_dfs import GsMode, RelaxPolicy

logger = logging.getLogger(__name__)

ENV_CANDIDATES = (".env", ".env.dev", ".env.local")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def normalize_log_level(value: str) -> str:
    """Upper-case a level name; ValueError for anything logging does not know"""
    level = value.upper()
    if level not in LOG_LEVELS:
        raise ValueError(f"Log level must be one of: {', '.join(LOG_LEVELS)}")
    return level


class Config(BaseSettings):
    """Defaults for every command; command-line flags override them"""

    # Logging
    log_level: str = Field(default="WARNING", alias="LOG_LEVEL")
    log_file: Optional[str] = Field(default=None, alias="LOG_FILE")

    # Search
    policy: RelaxPolicy = Field(default=RelaxPolicy.REVISED, alias="LCYCLES_POLICY")
    scc_mode: GsMode = Field(default=GsMode.SCC, alias="LCYCLES_SCC_MODE")

    # I/O
    output_format: Literal["text", "structured"] = Field(default="text", alias="LCYCLES_OUTPUT_FORMAT")
    input_format: Literal["auto", "adjlist", "edgelist"] = Field(default="auto", alias="LCYCLES_INPUT_FORMAT")

    # Experiments
    workers: int = Field(default=1, alias="LCYCLES_WORKERS")
    seed: int = Field(default=0, alias="LCYCLES_SEED")
    miner_max_nodes: int = Field(default=5, alias="LCYCLES_MINER_MAX_NODES")
    miner_budget: int = Field(default=1, alias="LCYCLES_MINER_BUDGET")
    miner_order_variants: int = Field(default=0, alias="LCYCLES_MINER_ORDER_VARIANTS")
    probe_count: int = Field(default=200, alias="LCYCLES_PROBE_COUNT")

    model_config = SettingsConfigDict(
        case_sensitive=False,
        populate_by_name=True,
        extra="ignore",
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level"""
        return normalize_log_level(v)

    @field_validator("policy", "scc_mode", "output_format", "input_format", mode="before")
    @classmethod
    def lower_case_choice(cls, v):
        return v.lower() if isinstance(v, str) else v

    @field_validator("workers", "miner_budget")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("miner_max_nodes")
    @classmethod
    def validate_max_nodes(cls, v: int) -> int:
        if not 1 <= v <= 5:
            raise ValueError("miner max nodes must be in 1..5")
        return v

    @field_validator("miner_order_variants", "probe_count")
    @classmethod
    def validate_non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("must be non-negative")
        return v


def load_config(env_file: Optional[str] = None) -> Config:
    """
    Load configuration from an environment file and the process environment.

    Args:
        env_file: Path to .env file (default: first of .env, .env.dev, .env.local
            that exists; none is required)

    Returns:
        Config instance

    Raises:
        FileNotFoundError: an explicit env_file does not exist
    """
    if env_file:
        env_path = Path(env_file)
        if not env_path.exists():
            raise FileNotFoundError(f"Environment file not found: {env_path}")
        load_dotenv(env_path)
    else:
        for name in ENV_CANDIDATES:
            if Path(name).exists():
                load_dotenv(name)
                logger.debug(f"Loaded environment from {name}")
                break

    return Config()
