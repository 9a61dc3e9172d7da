import numpy as np
import pytest

from assocarray import Assoc

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or report.failed:
        prev = _criteria.get(number, (title, "PASS"))[1]
        status = "FAIL" if report.failed or prev == "FAIL" else ("SKIP" if report.skipped else "PASS")
        _criteria[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")


MUSIC_ROWS = ["0294.mp3"] * 3 + ["1829.mp3"] * 3 + ["7802.mp3"] * 3
MUSIC_COLS = ["artist", "duration", "genre"] * 3
MUSIC_VALS = [
    "Pink Floyd", "6:53", "rock",
    "Samuel Barber", "8:01", "classical",
    "Taylor Swift", "10:12", "pop",
]


@pytest.fixture
def music():
    return Assoc(MUSIC_ROWS, MUSIC_COLS, MUSIC_VALS)


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


def assoc_from_dict(d: dict) -> Assoc:
    if not d:
        return Assoc([], [], [])
    keys = list(d)
    return Assoc([k[0] for k in keys], [k[1] for k in keys], [d[k] for k in keys])
