# config.py
import os
import logging
from dataclasses import dataclass, asdict
from dotenv import load_dotenv

load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"value error: {name} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class Settings:
    """Working defaults, overridable from the environment or a .env file."""
    precision: int = 64
    t_trunc: int = 48
    deg_cap: int = 3
    branch: int = 0
    max_field_degree: int = 12
    log_window: int = 5
    safety_slots: int = 4
    workers: int = 1
    max_restarts: int = 2
    stage_timeout: int = 3600
    log_level: str = "WARNING"

    def as_dict(self) -> dict:
        return asdict(self)


def get_settings() -> Settings:
    # read DRINFELD_* variables; missing ones fall back to the dataclass defaults
    return Settings(
        precision=_env_int('DRINFELD_PRECISION', 64),
        t_trunc=_env_int('DRINFELD_T_TRUNC', 48),
        deg_cap=_env_int('DRINFELD_DEG_CAP', 3),
        branch=_env_int('DRINFELD_BRANCH', 0),
        max_field_degree=_env_int('DRINFELD_MAX_FIELD_DEGREE', 12),
        log_window=_env_int('DRINFELD_LOG_WINDOW', 5),
        safety_slots=_env_int('DRINFELD_SAFETY_SLOTS', 4),
        workers=_env_int('DRINFELD_WORKERS', 1),
        max_restarts=_env_int('DRINFELD_MAX_RESTARTS', 2),
        stage_timeout=_env_int('DRINFELD_STAGE_TIMEOUT', 3600),
        log_level=os.getenv('DRINFELD_LOG_LEVEL', 'WARNING').upper(),
    )


def configure_logging(level: str = None):
    level = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )


if __name__ == "__main__":
    for key, value in get_settings().as_dict().items():
        print(f"{key:18s} = {value}")
