import io
import json

import pytest

from unsharpseq.exceptions import InvalidFormat
from unsharpseq.respond import cell, csv, emit, render


HEADER = ("step", "history", "value", "flag")
ROWS = [{"step": 1, "history": "not applicable", "value": -1e-9, "flag": True},
        {"step": 2, "history": "+1|0", "value": None, "flag": False}]


@pytest.mark.parametrize("value,expected", [(None, ""), (True, "true"), (0.5, "0.500000"), (-1e-9, "0.000000"), (3, "3")])
def test_cell(value, expected):
    assert cell(value) == expected


def test_csv():
    assert csv(ROWS, HEADER) == "step,history,value,flag\n1,not applicable,0.000000,true\n2,+1|0,,false\n"


def test_json_keeps_header_order_and_nulls():
    rows = json.loads(render(ROWS, HEADER, "json"))
    assert list(rows[1]) == list(HEADER)
    assert rows[1]["value"] is None


def test_unknown_format():
    with pytest.raises(InvalidFormat):
        render(ROWS, HEADER, "xml")


def test_emit_to_stream_and_file(tmp_path):
    stream = io.StringIO()
    emit(ROWS, HEADER, "json", stream=stream)
    assert json.loads(stream.getvalue())[0]["step"] == 1
    path = tmp_path / "rows.csv"
    emit(ROWS, HEADER, "csv", out=str(path))
    assert path.read_text().startswith("step,history")
