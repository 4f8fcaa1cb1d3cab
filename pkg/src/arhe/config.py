import json
import os
from typing import Mapping, Optional

from pydantic import BaseModel, Field

from .sdk.errors import InvalidThreadCountError

CONFIG_FILE = ".arhe_config.json"
THREADS_ENV = "ARHE_THREADS"


class ArheConfig(BaseModel):
    """Configuration for arhe"""

    threads: Optional[int] = Field(None, ge=1, description="Worker cap for per-tile work")
    verbose: bool = False

    @classmethod
    def load_from_file(cls, config_path: str = CONFIG_FILE) -> "ArheConfig":
        """Load configuration from file"""
        if os.path.exists(config_path):
            with open(config_path) as f:
                data = json.load(f)
                return cls(**data)
        return cls()

    @classmethod
    def load(
        cls,
        config_path: str = CONFIG_FILE,
        environ: Optional[Mapping[str, str]] = None,
    ) -> "ArheConfig":
        """Load the config file, then let ARHE_THREADS override the worker cap."""
        config = cls.load_from_file(config_path)
        env = os.environ if environ is None else environ
        raw = env.get(THREADS_ENV, "").strip()
        if raw:
            if not raw.isdigit() or int(raw) < 1:
                raise InvalidThreadCountError(
                    f"{THREADS_ENV} must be a positive integer, got {raw!r}"
                )
            config = config.model_copy(update={"threads": int(raw)})
        return config
