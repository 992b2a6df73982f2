import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance_log.RESULTS):
        title, ok, detail = acceptance_log.RESULTS[number]
        line = f"{'PASS' if ok else 'FAIL'} [{number:>2}] {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
