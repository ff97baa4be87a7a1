"""
Report store for machine-readable analysis results.
"""

import hashlib
from pathlib import Path
from typing import TypeVar

from pydantic import BaseModel, ValidationError

from src.config.settings import settings
from src.models.errors import ParseError
from src.ui.styles import checkpoint

ModelT = TypeVar("ModelT", bound=BaseModel)


def fingerprint(canonical_text: str) -> str:
    """Content digest of a canonical serialization."""
    return "sha256:" + hashlib.sha256(canonical_text.encode("utf-8")).hexdigest()


class ReportStore:
    """Writes and reads JSON reports and certificate files."""

    def __init__(self, report_dir: str | Path | None = None) -> None:
        """
        Initialize report store.

        Args:
            report_dir: Directory for files written without an explicit path.
        """
        self.report_dir = Path(report_dir) if report_dir is not None else settings.REPORT_DIR

    def default_path(self, kind: str, digest: str) -> Path:
        """Path under the report directory keyed by the instance fingerprint."""
        short = digest.split(":", 1)[-1][:12]
        return self.report_dir / f"{kind}-{short}.json"

    def save(self, document: BaseModel, path: str | Path) -> Path:
        """
        Save a report to disk.

        Args:
            document: Pydantic model to serialize.
            path: Destination file; parent directories are created.

        Returns:
            The written path.
        """
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8") as f:
            f.write(document.model_dump_json(indent=2))
            f.write("\n")
        checkpoint(f"Saved {target}")
        return target

    def load(self, path: str | Path, model: type[ModelT]) -> ModelT:
        """
        Load a report from disk.

        Raises:
            ParseError: If the file is not a valid document of the given type.
        """
        with open(path, "rb") as f:
            data = f.read()
        try:
            return model.model_validate_json(data)
        except ValidationError as exc:
            raise ParseError(f"{path}: not a valid {model.__name__}: {exc.errors()[0]['msg']}") from exc
