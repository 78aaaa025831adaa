import math

import pytest

from unsharpseq.exceptions import InvalidParameter
from unsharpseq.util import clean_time, parse_schedule, round_half_away, to_degrees


@pytest.mark.parametrize("value,expected", [(0.125, 0.13), (-0.125, -0.13), (0.635, 0.64), (2.605, 2.61), (0.0049, 0.0)])
def test_round_half_away(value, expected):
    assert round_half_away(value) == expected


@pytest.mark.parametrize("text,expected", [
    ("0.34,0.19,0", [0.34, 0.19, 0.0]),
    ("pi/8", [math.pi / 8]),
    ("0.1, pi/4", [0.1, math.pi / 4]),
    ("2*pi/16", [math.pi / 8]),
])
def test_parse_schedule(text, expected):
    assert parse_schedule(text) == pytest.approx(expected)


@pytest.mark.parametrize("text", ["0.1,,0.2", "abc", "pi/x"])
def test_parse_schedule_rejects_garbage(text):
    with pytest.raises(InvalidParameter):
        parse_schedule(text)


def test_to_degrees_is_presentation_only():
    assert to_degrees(math.pi / 4, True) == pytest.approx(45.0)
    assert to_degrees(math.pi / 4, False) == math.pi / 4
    assert to_degrees(None, True) is None


@pytest.mark.parametrize("seconds,expected", [(0.5, "0.5s"), (70, "1m10s"), (3700, "1h1m"), (90000, "1d1h")])
def test_clean_time(seconds, expected):
    assert clean_time(seconds) == expected
