"""
Output path helpers and results-directory inspection
"""

from datetime import datetime
from pathlib import Path
from typing import Dict, Optional

from .config import Config


class FileOperations:
    """Naming and inspecting output files"""

    @staticmethod
    def timestamped_path(p: Path) -> Path:
        """Return a new Path that appends the run timestamp before the suffix."""
        ts = datetime.now().strftime(Config.TIMESTAMP_FORMAT)
        return p.with_name(f"{p.stem}_{ts}{p.suffix}")

    @staticmethod
    def output_path(out: Optional[str], timestamp: bool = False) -> Optional[Path]:
        """Resolve --out (None means stdout); parents are created on write"""
        if out is None:
            return None
        path = Path(out)
        return FileOperations.timestamped_path(path) if timestamp else path

    @staticmethod
    def count_files(directory: Path) -> Dict[str, int]:
        """Data files per suffix in a results directory; empty when it does not exist"""
        counts: Dict[str, int] = {}
        directory = Path(directory)
        if not directory.is_dir():
            return counts
        for f in sorted(directory.iterdir()):
            if f.is_file():
                key = f.suffix.lstrip(".") or "other"
                counts[key] = counts.get(key, 0) + 1
        return counts
