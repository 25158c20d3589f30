import pytest

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test's outcome decides PASS/FAIL."""
    name = request.node.name
    note = {"text": ""}
    yield note
    rep = getattr(request.node, "rep_call", None)
    ACCEPTANCE[name] = (rep is not None and rep.passed, note["text"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, text) in sorted(ACCEPTANCE.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {text}")
