"""
Run configuration: YAML defaults, .env loading and the SEPLAB_CAPS override.
"""
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "config.yaml"
CAPS_ENV = "SEPLAB_CAPS"


class Caps(BaseModel):
    oracle: int = Field(16, gt=0)
    detection: int = Field(14, gt=0)
    hole_limit: int = Field(200, gt=0)
    hole_max_len: int = Field(14, gt=0)
    full_tuples: int = Field(5, gt=0)


class CorpusSizes(BaseModel):
    chordal: int = Field(20, ge=0)
    members: int = Field(200, ge=0)
    random: int = Field(1000, ge=0)
    small: int = Field(50, ge=0)
    max_n: int = Field(12, gt=3)


class LoggingConfig(BaseModel):
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    file: Optional[str] = None


class RunConfig(BaseModel):
    command: str = ""
    inputs: List[str] = Field(default_factory=list)
    format: Optional[str] = None
    caps: Caps = Field(default_factory=Caps)
    corpus: CorpusSizes = Field(default_factory=CorpusSizes)
    seed: int = 0
    output_path: Optional[str] = None
    output_format: str = Field("json", pattern="^(json|csv)$")
    jobs: int = Field(1, gt=0)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)


def parse_caps_override(text: str) -> Dict[str, int]:
    """
    ``oracle=12,detection=10`` to a dict.

    Raises:
        ValueError: unknown key or non-integer value
    """
    out: Dict[str, int] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in Caps.model_fields:
            raise ValueError(f"{CAPS_ENV}: unknown cap entry {item!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise ValueError(f"{CAPS_ENV}: cap {key} needs an integer, got {value!r}")
    return out


def load_config(path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    Build a RunConfig from the YAML file, then SEPLAB_CAPS, then ``overrides``.

    Raises:
        ValueError: malformed SEPLAB_CAPS
        pydantic.ValidationError: out-of-range values
    """
    load_dotenv()
    config_path = Path(path) if path else DEFAULT_CONFIG_PATH
    raw: Dict[str, Any] = {}
    if config_path.exists():
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                raw = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            logger.error(f"Error reading config {config_path}: {e}")
            raise
    else:
        logger.debug(f"no config at {config_path}, using defaults")

    output = raw.pop("output", None) or {}
    data: Dict[str, Any] = {
        "caps": dict(raw.get("caps") or {}),
        "corpus": raw.get("corpus") or {},
        "seed": raw.get("seed", 0),
        "output_format": output.get("format", "json"),
        "output_path": output.get("path"),
        "jobs": output.get("jobs", 1),
        "logging": raw.get("logging") or {},
    }
    env_caps = os.getenv(CAPS_ENV)
    if env_caps:
        data["caps"].update(parse_caps_override(env_caps))
        logger.debug(f"caps overridden from {CAPS_ENV}: {env_caps}")
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    return RunConfig.model_validate(data)
