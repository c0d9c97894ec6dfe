"""Configuration loader for chasegate."""

import os
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv


# Load environment variables from .env file
load_dotenv(override=True)


def _env_or_default(name: str, default: str = "") -> str:
    """Read an environment variable, treating blank values as unset."""
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip() or default


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    """Read an integer environment variable, falling back to default when blank."""
    raw = _env_or_default(name)
    if not raw:
        return default
    try:
        return int(raw.replace("_", ""))
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


class Config:
    """Application configuration."""

    # Project paths
    PROJECT_ROOT = Path(__file__).parent.parent
    DATA_DIR = Path(_env_or_default("CHASEGATE_DATA_DIR", str(PROJECT_ROOT / "data"))).expanduser()

    # ==========================================================================
    # Chase Configuration
    # ==========================================================================
    MAX_ATOMS: int = _env_int("CHASEGATE_MAX_ATOMS", 100_000)
    # None means 10 x MAX_ATOMS
    MAX_STEPS: Optional[int] = _env_int("CHASEGATE_MAX_STEPS", None)

    # ==========================================================================
    # Transformation Budgets
    # ==========================================================================
    ARITY_CAP: int = _env_int("CHASEGATE_ARITY_CAP", 8)
    TYPE_BUDGET: int = _env_int("CHASEGATE_TYPE_BUDGET", 1_000_000)

    # ==========================================================================
    # Termination Configuration
    # ==========================================================================
    BOUND_CEILING: int = _env_int("CHASEGATE_BOUND_CEILING", 1_000_000_000)
    GUARDED_PARAM_LIMIT: int = _env_int("CHASEGATE_GUARDED_PARAM_LIMIT", 2)

    # ==========================================================================
    # Validation Runs
    # ==========================================================================
    RESULTS_DATABASE_PATH = Path(
        _env_or_default("CHASEGATE_RESULTS_DB", str(DATA_DIR / "validation.db"))
    ).expanduser()

    LOG_LEVEL: str = _env_or_default("CHASEGATE_LOG_LEVEL", "WARNING").upper()

    @classmethod
    def chase_caps(cls):
        """Default chase caps built from MAX_ATOMS / MAX_STEPS."""
        from .chase.engine import ChaseCaps

        return ChaseCaps.of(cls.MAX_ATOMS, cls.MAX_STEPS)

    @classmethod
    def validate_caps(cls) -> bool:
        """Validate caps and budgets."""
        invalid = []
        for name in ("MAX_ATOMS", "ARITY_CAP", "TYPE_BUDGET", "BOUND_CEILING", "GUARDED_PARAM_LIMIT"):
            if getattr(cls, name) <= 0:
                invalid.append(name)
        if cls.MAX_STEPS is not None and cls.MAX_STEPS <= 0:
            invalid.append("MAX_STEPS")
        if invalid:
            raise ValueError(
                f"Non-positive configuration: {', '.join(invalid)}. "
                "Fix the CHASEGATE_* values in your .env file."
            )
        return True

    @classmethod
    def ensure_data_dir(cls) -> None:
        """Ensure the data directory exists."""
        cls.DATA_DIR.mkdir(parents=True, exist_ok=True)
