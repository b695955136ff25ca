"""
Export functionality for CSV, JSON and Excel files
"""

import csv
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

from .errors import ArgumentError

logger = logging.getLogger(__name__)


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_cell(value: Any) -> Any:
    # JSON has no inf/nan
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


class Exporters:
    """Writes data tables (row dicts with a fixed column order) to various formats"""

    FORMATS = ("csv", "json", "xlsx")

    @staticmethod
    def export_csv(rows: List[Dict[str, Any]], columns: Sequence[str], stream: TextIO) -> None:
        """Header line, then one line per row; floats use the shortest round-trip repr"""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(row.get(c)) for c in columns])

    @staticmethod
    def export_json(rows: List[Dict[str, Any]], columns: Sequence[str], stream: TextIO) -> None:
        """Array of objects keyed by the CSV headers"""
        payload = [{c: _json_cell(row.get(c)) for c in columns} for row in rows]
        json.dump(payload, stream, indent=2, allow_nan=False)
        stream.write("\n")

    @staticmethod
    def export_xlsx(rows: List[Dict[str, Any]], columns: Sequence[str], xlsx_path: Path,
                    sheet_title: str = "data") -> None:
        """One sheet with a header row. Requires openpyxl."""
        try:
            from openpyxl import Workbook
        except ImportError:
            raise ArgumentError("openpyxl is required to write .xlsx files. Install with: pip install openpyxl") from None

        wb = Workbook()
        ws = wb.active
        ws.title = sheet_title
        ws.append(list(columns))
        for row in rows:
            ws.append([_json_cell(row.get(c)) for c in columns])

        xlsx_path = Path(xlsx_path)
        xlsx_path.parent.mkdir(parents=True, exist_ok=True)
        wb.save(str(xlsx_path))

    @staticmethod
    def export(rows: List[Dict[str, Any]], columns: Sequence[str], fmt: str = "csv",
               out_path: Optional[Path] = None, sheet_title: str = "data") -> None:
        """Write rows to out_path, or to stdout when no path is given"""
        if fmt not in Exporters.FORMATS:
            raise ArgumentError(f"unknown output format {fmt!r} (choose from {', '.join(Exporters.FORMATS)})")
        if fmt == "xlsx":
            if out_path is None:
                raise ArgumentError("--format xlsx needs --out")
            Exporters.export_xlsx(rows, columns, out_path, sheet_title)
            logger.info("XLSX exported to: %s", out_path)
            return

        writer = Exporters.export_csv if fmt == "csv" else Exporters.export_json
        if out_path is None:
            writer(rows, columns, sys.stdout)
            sys.stdout.flush()
            return

        out_path = Path(out_path)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        with out_path.open("w", newline="", encoding="utf-8") as f:
            writer(rows, columns, f)
        logger.info("%s exported to: %s", fmt.upper(), out_path)
