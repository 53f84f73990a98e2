"""
Simple logging utility for the hypernetwork kernel.
Logs to stderr and, optionally, to a session file with timestamps.

Standard output is never touched.
"""

import os
import sys
from datetime import datetime
from typing import Optional


class Logger:
    """Simple logger that writes to stderr and an optional file."""

    def __init__(self, log_dir: Optional[str] = None, verbose: bool = False):
        self.log_dir = log_dir
        self.verbose = verbose
        self.log_file = None

    def start(self, session_name: Optional[str] = None) -> Optional[str]:
        """Start logging to a new log file. Returns its path, or None without a log dir."""
        if not self.log_dir:
            return None
        os.makedirs(self.log_dir, exist_ok=True)

        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        if session_name:
            filename = f"{timestamp}_{session_name}.log"
        else:
            filename = f"{timestamp}.log"

        log_path = os.path.join(self.log_dir, filename)
        self.log_file = open(log_path, "w", encoding="utf-8")

        # Write header
        self._write_to_file("=== Hypernetwork Kernel Log ===")
        self._write_to_file(f"Started: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
        if session_name:
            self._write_to_file(f"Session: {session_name}")
        self._write_to_file("=" * 40 + "\n")

        return log_path

    def _write_to_file(self, message: str) -> None:
        """Write message to log file with timestamp."""
        if self.log_file:
            timestamp = datetime.now().strftime("%H:%M:%S")
            self.log_file.write(f"[{timestamp}] {message}\n")
            self.log_file.flush()

    def log(self, message: str) -> None:
        """Log message to stderr and file."""
        print(message, file=sys.stderr)
        self._write_to_file(message)

    def debug(self, message: str) -> None:
        """Log message only in verbose sessions; the file always gets it."""
        if self.verbose:
            print(message, file=sys.stderr)
        self._write_to_file(message)

    def stop(self) -> None:
        """Stop logging and close file."""
        if self.log_file:
            self._write_to_file("\n" + "=" * 40)
            self._write_to_file(f"Ended: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
            self.log_file.close()
            self.log_file = None


# Global logger instance
_logger: Optional[Logger] = None


def init_logging(session_name: Optional[str] = None, log_dir: Optional[str] = None,
                 verbose: bool = False) -> Optional[str]:
    """Initialize logging for the session."""
    global _logger
    if _logger:
        _logger.stop()
    _logger = Logger(log_dir, verbose)
    return _logger.start(session_name)


def stop_logging() -> None:
    """Stop logging and close the session file."""
    global _logger
    if _logger:
        _logger.stop()
        _logger = None


def get_log_path() -> Optional[str]:
    """Get current log file path."""
    if _logger and _logger.log_file:
        return _logger.log_file.name
    return None


def log(message: str) -> None:
    """Log through the session logger; without a session, print to stderr."""
    if _logger:
        _logger.log(message)
    else:
        print(message, file=sys.stderr)


def debug(message: str) -> None:
    """Verbose-only message. Silent when no session is active."""
    if _logger:
        _logger.debug(message)
