"""
Unit tests for src/logger.py: stderr routing, session files and the verbose channel.
"""
from src import logger
from src.logger import debug, get_log_path, init_logging, log, stop_logging


def test_log_without_session_goes_to_stderr(capsys):
    """Without a session, log writes to stderr and debug is silent."""
    stop_logging()
    log("-> hello")
    debug("hidden")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err == "-> hello\n"


def test_session_file_records_everything(tmp_path, capsys):
    """
    Unit test for init_logging with a log directory.
    The session file gets the header, every log and debug line, and a footer,
    while stderr only shows log lines and stdout stays empty.
    """
    # 1. Setup
    path = init_logging("merge", log_dir=str(tmp_path))

    # 2. Execution
    try:
        assert path == get_log_path()
        assert path.endswith("_merge.log")
        log("-> merging")
        debug("   detail")
    finally:
        stop_logging()

    # 3. Verification
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "-> merging" in captured.err
    assert "detail" not in captured.err

    with open(path, encoding="utf-8") as f:
        content = f.read()
    assert "=== Hypernetwork Kernel Log ===" in content
    assert "Session: merge" in content
    assert "-> merging" in content
    assert "   detail" in content
    assert "Ended:" in content


def test_verbose_session_prints_debug(capsys):
    """A verbose session without a directory prints debug lines and writes no file."""
    init_logging(verbose=True)
    try:
        assert get_log_path() is None
        debug("   pulled A")
    finally:
        stop_logging()
    assert capsys.readouterr().err == "   pulled A\n"
    assert logger._logger is None
