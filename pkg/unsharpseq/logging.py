import time

from .color import color_print, Color


log_color = lambda status: {0: "green", 1: "red", 2: "red"}.get(status, "orange")  # Colors for each exit status

level_color = {"info": "white", "warning": "yellow", "error": "red"}


def _timestamp() -> str:
    return time.strftime('%d-%m-%Y %H:%M:%S', time.gmtime())


def _write(log_file: str, line: str) -> None:
    with open(log_file, 'a') as output:
        output.write(line + "\n")


def run_logging(command: str, status: int, elapsed: float, log_file: str = None, print_logs: bool = True) -> None:
    """
    One line per subcommand: `[date] "command line" status - elapsed`

    :param command: the command line that was run
    :param status: the exit status it finished with
    :param elapsed: wall time in seconds
    :param log_file: The path of the file where logs should be recorded
    :param print_logs: If logs should be printed to the error stream
    """
    log_string_date_time = f"[{_timestamp()}] \""
    log_string_command = f"{command}"
    log_string_status = f"\" {status} - {elapsed:.3f}s"

    if log_file is not None:
        _write(log_file, f"{log_string_date_time}{log_string_command}{log_string_status}")

    if print_logs:
        color_print(
            Color(log_string_date_time, color="white"),
            Color(log_string_command, color=log_color(status)),
            Color(log_string_status, color="white"),
            sep=""
        )


def log_event(message: str, level: str = "info", log_file: str = None, print_logs: bool = True) -> None:
    """
    :param message: free text, e.g. a warning about a zero standard deviation
    :param level: info, warning or error
    """
    line = f"[{_timestamp()}] {level.upper()} - - {message}"
    if log_file is not None:
        _write(log_file, line)
    if print_logs:
        color_print(Color(line, color=level_color.get(level, "white")))
