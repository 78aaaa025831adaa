import functools
import sys
import time
import traceback

import click

from .color import color_print, Color
from .exceptions import UnsharpError
from .logging import run_logging


EXIT_OK, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2


def handle_error(error_code: Exception, print_traceback: bool = True) -> int:
    """
    Report an exception on the error stream and return the exit status it maps to

    Domain errors are one line `error: <ErrorName>: <message>` and exit 2; anything else is a bug and exits 1.
    """
    if isinstance(error_code, UnsharpError):
        color_print(Color(f"error: {type(error_code).__name__}: {error_code}", color="red"))
        return EXIT_USAGE
    if print_traceback:
        traceback.print_exc()
    color_print(Color(f"error: {type(error_code).__name__}: {error_code}", color="darkred"))
    return EXIT_INTERNAL


def command_handler(f, print_traceback: bool = True):
    """
    Wrap a subcommand so every run is logged and ends with a well defined exit status

    The wrapped function receives the same keyword arguments click passes; `log_file` and `quiet`
    are read from them for the run log line.
    A failed run only reaches the console through its `error:` diagnostic; the log file still records it.

    :param f: The subcommand function
    :param print_traceback: Should python traceback be printed for unexpected exceptions
    """
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        start, status = time.perf_counter(), EXIT_OK
        try:
            f(*args, **kwargs)
        except click.exceptions.Exit:
            raise
        except Exception as error_code:
            status = handle_error(error_code, print_traceback=print_traceback)
        context = click.get_current_context(silent=True)
        run_logging(
            command=context.command_path if context is not None else f.__name__,
            status=status,
            elapsed=time.perf_counter() - start,
            log_file=kwargs.get("log_file"),
            print_logs=status == EXIT_OK and not kwargs.get("quiet")
        )
        if status != EXIT_OK:
            sys.exit(status)

    return wrapper
