import io

from unsharpseq.color import Color, color_print, colors_enabled
from unsharpseq.logging import log_event, run_logging


def test_color_print_is_plain_when_not_a_terminal():
    stream = io.StringIO()
    assert not colors_enabled(stream)
    color_print(Color("S =", color="blue"), Color(2.61, color="green"), file=stream)
    assert stream.getvalue() == "S = 2.61\n"


def test_run_logging(tmp_path, capsys):
    log = tmp_path / "runs.log"
    run_logging("unsharpseq exact", 0, 0.1234, log_file=str(log))
    run_logging("unsharpseq exact --steps 2", 2, 0.01, log_file=str(log), print_logs=False)
    lines = log.read_text().splitlines()
    assert lines[0].endswith('"unsharpseq exact" 0 - 0.123s')
    assert lines[1].endswith('"unsharpseq exact --steps 2" 2 - 0.010s')
    assert capsys.readouterr().err.count("unsharpseq exact") == 1


def test_log_event(tmp_path, capsys):
    log_event("standard deviation is exactly 0", level="warning", log_file=str(tmp_path / "runs.log"))
    assert "WARNING - - standard deviation is exactly 0" in capsys.readouterr().err
    assert "WARNING" in (tmp_path / "runs.log").read_text()


def test_log_event_can_be_silenced(capsys):
    log_event("quiet run", print_logs=False)
    assert capsys.readouterr().err == ""
