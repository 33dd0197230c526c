import pytest

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with a label, then the test outcome decides pass/fail."""
    state = {}

    def record(label: str, detail: str = "") -> None:
        state["label"] = label
        state["detail"] = detail

    yield record
    rep = getattr(request.node, "rep_call", None)
    if "label" in state:
        passed = rep is not None and rep.passed
        ACCEPTANCE[state["label"]] = (passed, state.get("detail", ""))


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
    for label in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0][2:])):
        passed, detail = ACCEPTANCE[label]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
