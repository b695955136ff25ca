import io
import json
import math
import re
from pathlib import Path

import pytest

from spintherm import ArgumentError, Exporters, FileOperations

ROWS = [
    {"S": 0.5, "alpha": 0.1, "tau": 0.45511961331341866, "tau_limit": None},
    {"S": 0.5, "alpha": 0.5, "tau": None, "tau_limit": "inf"},
]
COLUMNS = ["S", "alpha", "tau", "tau_limit"]


def test_csv_uses_repr_and_empty_cells():
    buf = io.StringIO()
    Exporters.export_csv(ROWS, COLUMNS, buf)
    assert buf.getvalue() == (
        "S,alpha,tau,tau_limit\n"
        "0.5,0.1,0.45511961331341866,\n"
        "0.5,0.5,,inf\n"
    )


def test_json_keys_match_csv_headers():
    buf = io.StringIO()
    Exporters.export_json(ROWS + [{"S": 1.0, "alpha": 0.2, "tau": math.inf}], COLUMNS, buf)
    data = json.loads(buf.getvalue())
    assert [list(row) for row in data] == [COLUMNS] * 3
    assert data[1]["tau"] is None and data[1]["tau_limit"] == "inf"
    assert data[2]["tau"] is None


def test_export_to_path_creates_parents(tmp_path):
    out = tmp_path / "nested" / "deeper" / "table.csv"
    Exporters.export(ROWS, COLUMNS, "csv", out)
    assert out.read_text(encoding="utf-8").splitlines()[0] == "S,alpha,tau,tau_limit"


def test_xlsx_round_trip(tmp_path):
    openpyxl = pytest.importorskip("openpyxl")
    out = tmp_path / "table.xlsx"
    Exporters.export(ROWS, COLUMNS, "xlsx", out, sheet_title="polarization")
    ws = openpyxl.load_workbook(out)["polarization"]
    values = list(ws.iter_rows(values_only=True))
    assert list(values[0]) == COLUMNS
    assert values[1][2] == pytest.approx(0.45511961331341866)


def test_export_argument_errors():
    with pytest.raises(ArgumentError):
        Exporters.export(ROWS, COLUMNS, "parquet")
    with pytest.raises(ArgumentError):
        Exporters.export(ROWS, COLUMNS, "xlsx", None)


def test_timestamped_path():
    stamped = FileOperations.timestamped_path(Path("results/sweep.csv"))
    assert stamped.parent == Path("results")
    assert re.fullmatch(r"sweep_\d{4}-\d{2}-\d{2}_\d{2}-\d{2}-\d{2}\.csv", stamped.name)
    assert FileOperations.output_path(None) is None
    assert FileOperations.output_path("a.csv") == Path("a.csv")


def test_count_files(tmp_path):
    assert FileOperations.count_files(tmp_path / "missing") == {}
    (tmp_path / "a.csv").write_text("x")
    (tmp_path / "b.csv").write_text("x")
    (tmp_path / "c.json").write_text("[]")
    (tmp_path / "sub").mkdir()
    assert FileOperations.count_files(tmp_path) == {"csv": 2, "json": 1}
