"""
Machine-readable report and certificate file schemas.
"""

from pydantic import BaseModel, Field

from src import __version__


class VerdictRecord(BaseModel):
    """One verdict, with the module and parameters that produced it."""
    module: str
    verdict: str
    parameters: dict[str, str | int | float | bool] = Field(default_factory=dict)
    tolerances: dict[str, float] = Field(default_factory=dict)
    detail: list[str] = Field(default_factory=list)


class AnalysisReport(BaseModel):
    """Report written by every analyze/verify command."""
    tool_version: str = __version__
    command: str
    fingerprint: str
    verdicts: list[VerdictRecord] = Field(default_factory=list)
    timings: dict[str, float] | None = None


class CertificateFile(BaseModel):
    """On-disk infeasibility certificate; rationals are `p/q` strings."""
    tool_version: str = __version__
    fingerprint: str
    level: int
    tracial: bool
    localizing: bool
    weights: dict[str, str]
    gram: list[tuple[int, int, str]] = Field(default_factory=list)
    min_eigenvalue: float | None = None


class ResidualFile(BaseModel):
    """On-disk record of a run that did not produce a certificate."""
    tool_version: str = __version__
    fingerprint: str
    level: int
    tracial: bool
    verdict: str
    residual: float | None = None
    residual_trace: list[float] = Field(default_factory=list)
    iterations: int = 0
