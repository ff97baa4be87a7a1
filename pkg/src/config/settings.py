"""
Configuration settings for hyc.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()


class Settings:
    """Application settings loaded from environment."""

    SEED: int = int(os.getenv("HYC_SEED", "0"))

    TOL: float = float(os.getenv("HYC_TOL", "1e-9"))
    TOL_EIG: float = float(os.getenv("HYC_TOL_EIG", "1e-6"))
    TOL_FEAS: float = float(os.getenv("HYC_TOL_FEAS", "1e-8"))

    MAX_ITER: int = int(os.getenv("HYC_MAX_ITER", "100000"))
    PLATEAU_WINDOW: int = int(os.getenv("HYC_PLATEAU_WINDOW", "500"))
    ENUM_CAP: int = int(os.getenv("HYC_ENUM_CAP", "1000000"))
    LEVEL: int = int(os.getenv("HYC_LEVEL", "1"))
    JOBS: int = int(os.getenv("HYC_JOBS", "1"))

    REP_STARTS: int = int(os.getenv("HYC_REP_STARTS", "8"))
    REP_BUDGET: int = int(os.getenv("HYC_REP_BUDGET", "20000"))

    REPORT_DIR: Path = Path(os.getenv("HYC_REPORT_DIR", "reports"))
    SHOW_PROGRESS: bool = os.getenv("HYC_SHOW_PROGRESS", "true").lower() == "true"


settings = Settings()
