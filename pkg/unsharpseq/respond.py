import csv as csv_lib
import io
import json as json_lib
import math
import sys

from pygments import highlight
from pygments.formatters import TerminalFormatter
from pygments.lexers import JsonLexer

from .color import colors_enabled
from .exceptions import InvalidFormat


EXACT_HEADER = ("step", "history", "eta", "alpha", "beta", "theta", "mu", "s_chsh", "witness")
SIMULATE_HEADER = ("step", "history", "quantity", "value", "sd", "significance")
TREE_HEADER = ("step", "history", "probability", "weight", "eta", "alpha", "beta", "theta", "mu", "amplification", "mu_max")

FORMATS = ("csv", "json")


def cell(value) -> str:
    """
    :param value: one output value
    :return: the CSV text of it: floats with 6 decimals, None as an empty cell, booleans lower case
    """
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if not math.isfinite(value):
            return str(value)
        text = f"{value:.6f}"
        return f"{0:.6f}" if float(text) == 0 else text  # no "-0.000000"
    return str(value)


def csv(rows: list[dict], header: tuple) -> str:
    """
    :param rows: dictionaries keyed by the header fields
    :param header: fixed column order
    """
    output = io.StringIO()
    writer = csv_lib.writer(output, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([cell(row.get(field)) for field in header])
    return output.getvalue()


def json(rows: list[dict], header: tuple) -> str:
    """
    :param rows: dictionaries keyed by the header fields
    :param header: field names kept, in this order; a missing value is null
    """
    return json_lib.dumps([{field: row.get(field) for field in header} for row in rows], indent=2) + "\n"


def render(rows: list[dict], header: tuple, format: str = "csv") -> str:
    if format == "csv":
        return csv(rows, header)
    if format == "json":
        return json(rows, header)
    raise InvalidFormat(f"Unknown output format [{format}], choose one of {', '.join(FORMATS)}")


def emit(rows: list[dict], header: tuple, format: str = "csv", out: str = None, stream=None) -> None:
    """
    Write rendered rows to `out`, or to standard output when no path is given

    JSON written to a terminal is highlighted with pygments; files and pipes always get plain text.

    :param rows: dictionaries keyed by the header fields
    :param header: fixed column order
    :param format: csv or json
    :param out: optional output path
    :param stream: standard output replacement
    """
    text = render(rows, header, format)
    if out is not None:
        with open(out, "w", newline="") as output:
            output.write(text)
        return
    stream = stream or sys.stdout
    if format == "json" and colors_enabled(stream):
        text = highlight(text, JsonLexer(), TerminalFormatter())
    stream.write(text)
    stream.flush()
