"""
Terminal colors for the run log
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Colors are dropped automatically when the target stream is not a terminal or NO_COLOR is set,
so redirected logs stay plain text.
"""

import os
import sys

named_colors = {
    'black': 0,
    'green': 46,
    'gold': 178,
    'orange': 214,
    'grey': 8,
    'red': 9,
    'yellow': 11,
    'blue': 12,
    'aqua': 14,
    'white': 15,
    'darkred': 88,
}


def color_conversion(color):
    return named_colors[color.lower()] if str(color).lower() in named_colors.keys() else color


def color_string(color):
    return '\x1b[38;2;{};{};{}m'.format(*tuple(int(color.lstrip('#')[i:i + 2], 16) for i in (0, 2, 4))) if "#" in str(color) else f'\033[38;5;{color}m'


def colors_enabled(stream=None) -> bool:
    stream = stream or sys.stderr
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def paint(text: str, color: int | str) -> str:
    return f'{color_string(color_conversion(color))}{text}\x1b[0m'


class Color:
    """
    Usage:

    >>> color_print(Color("+1|0; -1|0", color="blue"), "S =", Color(2.61, color="green"))

    A Color keeps its plain text so it can be printed with or without escape codes.
    """
    def __init__(self, *args, color: int | str = "white", sep: str = " "):
        self.plain = sep.join(str(arg) for arg in args)
        self.color = color

    def render(self, enabled: bool) -> str:
        return paint(self.plain, self.color) if enabled else self.plain

    def __str__(self) -> str:
        return self.plain


def color_print(*args, sep: str = " ", color: int | str = "white", file=None) -> None:
    """
    Print to `file` (default: the error stream), one write per line so concurrent prints do not interleave

    :argument color: base color of plain arguments; Color arguments keep their own
    - Can be hex e.g. #FFFFFF
    - Can be terminal number code e.g. 0 is black
    - Can be one of the named colors of this module
    """
    file = file or sys.stderr
    enabled = colors_enabled(file)
    parts = [arg.render(enabled) if isinstance(arg, Color) else (paint(str(arg), color) if enabled else str(arg))
             for arg in args]
    file.write(sep.join(parts) + "\n")
    file.flush()
