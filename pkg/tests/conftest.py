import pytest

from fsrec.oracle import Domain


@pytest.fixture(scope="session")
def dom5():
    """Two roots, siblings and a grandchild; 1632 filesystems."""
    return Domain.default()


@pytest.fixture(scope="session")
def chain3():
    return Domain(["a", "a/b", "a/b/x"])


@pytest.fixture(scope="session")
def forked3():
    return Domain(["a", "a/b", "a/c"])


_criteria: dict[int, tuple[str, str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    n, title = props["criterion"]
    status = "PASS" if report.passed else "FAIL"
    _criteria[n] = (title, status, props.get("detail", ""))


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", m.args))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, status, detail = _criteria[n]
        line = f"criterion {n:2d} {status}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
