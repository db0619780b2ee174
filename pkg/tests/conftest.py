import pytest

# (criterion number, title, passed, detail), filled by test_acceptance.py
ACCEPTANCE = []


@pytest.fixture
def record():
    def _record(num, title, passed, detail):
        ACCEPTANCE.append((num, title, bool(passed), detail))
        print(f"criterion {num} {'PASS' if passed else 'FAIL'}: {title} | {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if passed else 'FAIL'}  {title}  ({detail})")
