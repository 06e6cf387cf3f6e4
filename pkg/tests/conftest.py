import pytest
from hypothesis import settings

# exact arithmetic has uneven running times; fixed seeds keep runs reproducible
settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")

_ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def report():
    """Record one acceptance criterion; the lines are printed in the terminal summary."""

    def _report(n: int, title: str, failures: list) -> None:
        detail = "" if not failures else f" ({len(failures)} failing, first: {failures[0]})"
        _ACCEPTANCE[n] = (title, not failures, detail)
        assert not failures, f"criterion {n}: {failures[:5]}"

    return _report


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}{detail}")
