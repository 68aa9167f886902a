"""
Runtime settings: YAML defaults overridden by ARCCHAR_* environment variables
"""
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

DEFAULTS_PATH = Path(__file__).parent / "defaults.yaml"


@dataclass(frozen=True)
class Settings:
    """
    Resolved configuration for windows, the oracle and output.

    Attributes:
        truncate: Oracle truncation length L
        min_truncate: Smallest L the oracle accepts
        tail_margin: Generic tail positions kept past the last exceptional one
        window_radii: Default comparison window radii
        log_level: Logging level name
        output_dir: Directory for saved reports
    """

    truncate: int = 8
    min_truncate: int = 4
    tail_margin: int = 3
    window_radii: Tuple[int, ...] = field(default=(8, 16))
    log_level: str = "WARNING"
    output_dir: str = "outputs"


def _load_defaults(config_path: Optional[Path] = None) -> Dict[str, Any]:
    path = Path(config_path) if config_path else DEFAULTS_PATH
    if not path.exists():
        raise FileNotFoundError(f"Defaults file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return int(default)
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def _env_radii(name: str, default) -> Tuple[int, ...]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return tuple(int(r) for r in default)
    try:
        radii = tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"{name} must be a comma separated list of integers, got {raw!r}")
    if not radii or min(radii) < 1:
        raise ValueError(f"{name} must list positive radii, got {raw!r}")
    return radii


def load_settings(config_path: Optional[Path] = None) -> Settings:
    """
    Build settings from the YAML defaults and the environment.

    Args:
        config_path: Optional alternative defaults file

    Returns:
        Resolved Settings
    """
    data = _load_defaults(config_path)
    oracle = data.get("oracle", {})
    windows = data.get("windows", {})

    settings = Settings(
        truncate=_env_int("ARCCHAR_TRUNCATE", oracle.get("truncate", 8)),
        min_truncate=int(oracle.get("min_truncate", 4)),
        tail_margin=_env_int("ARCCHAR_TAIL_MARGIN", windows.get("tail_margin", 3)),
        window_radii=_env_radii("ARCCHAR_WINDOW_RADII", windows.get("radii", [8, 16])),
        log_level=os.getenv("ARCCHAR_LOG_LEVEL", data.get("logging", {}).get("level", "WARNING")).upper(),
        output_dir=os.getenv("ARCCHAR_OUTPUT_DIR", data.get("output", {}).get("dir", "outputs")),
    )
    if settings.tail_margin < 2:
        raise ValueError(f"ARCCHAR_TAIL_MARGIN must be at least 2, got {settings.tail_margin}")
    return settings


# Global settings instance
_global_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Get or create the global Settings instance.

    Returns:
        Shared Settings instance
    """
    global _global_settings
    if _global_settings is None:
        _global_settings = load_settings()
    return _global_settings
