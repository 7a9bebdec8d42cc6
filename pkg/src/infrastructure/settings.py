"""
Runtime settings read from the environment (and an optional .env file).
"""
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv


def _int_env(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class Settings:
    """Defaults for search bounds, parallelism and log level."""
    max_extra: Optional[int] = None
    node_cap: int = 500
    class_cap: int = 20000
    threads: int = 1
    log_level: str = "WARNING"

    def __post_init__(self):
        if self.max_extra is not None and self.max_extra < 0:
            raise ValueError("max_extra cannot be negative")
        if self.node_cap < 1 or self.class_cap < 1:
            raise ValueError("caps must be positive")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")

    @classmethod
    def from_env(cls, dotenv_path: Optional[str] = None) -> 'Settings':
        load_dotenv(dotenv_path)
        return cls(
            max_extra=_int_env('DEFSPACE_MAX_EXTRA', None),
            node_cap=_int_env('DEFSPACE_NODE_CAP', 500),
            class_cap=_int_env('DEFSPACE_CLASS_CAP', 20000),
            threads=_int_env('DEFSPACE_THREADS', 1),
            log_level=os.environ.get('DEFSPACE_LOG_LEVEL', 'WARNING').upper(),
        )
