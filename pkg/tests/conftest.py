"""Terminal summary: one verdict line per acceptance criterion."""

_LABELS = {}
_RESULTS = {}


def pytest_collection_modifyitems(items):
    for item in items:
        label = getattr(getattr(item, "function", None), "acceptance_label", None)
        if label is not None:
            _LABELS[item.nodeid] = label


def pytest_runtest_logreport(report):
    label = _LABELS.get(report.nodeid)
    if label is None:
        return
    if report.failed:
        _RESULTS[label] = "FAIL"
    elif report.when == "call" and report.passed:
        _RESULTS.setdefault(label, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_RESULTS):
        terminalreporter.write_line(f"ACCEPTANCE {label}: {_RESULTS[label]}")
