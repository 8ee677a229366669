import contextlib
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[int, tuple[bool, str, str]] = {}


class _Record:
    def __init__(self):
        self.detail = ""


@pytest.fixture
def acceptance():
    """Context manager recording one acceptance criterion as PASS or FAIL."""

    @contextlib.contextmanager
    def record(number: int, title: str):
        rec = _Record()
        try:
            yield rec
        except BaseException:
            _ACCEPTANCE[number] = (False, title, rec.detail)
            raise
        _ACCEPTANCE[number] = (True, title, rec.detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, title, detail = _ACCEPTANCE[number]
        line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}"
        if detail:
            line += f": {detail}"
        terminalreporter.write_line(line)
