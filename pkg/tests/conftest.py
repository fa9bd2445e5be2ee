import time

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_START = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    elapsed = time.perf_counter() - _START
    verdict = "within" if elapsed < 60 else "OVER"
    terminalreporter.write_line(f"full suite wall time {elapsed:.1f} s ({verdict} the 60 s budget)")
