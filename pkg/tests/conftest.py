import pytest

from oddhom.graph import Graph


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def bowtie() -> Graph:
    """Two triangles sharing vertex 0."""
    return Graph(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])


def triangles_joined(path_len: int) -> Graph:
    """Triangles {0,1,2} and {a,a+1,a+2} joined by a path of ``path_len`` edges from 2 to a."""
    edges = [(0, 1), (1, 2), (0, 2)]
    prev = 2
    nxt = 3
    for _ in range(path_len - 1):
        edges.append((prev, nxt))
        prev, nxt = nxt, nxt + 1
    a = nxt
    edges.append((prev, a))
    edges += [(a, a + 1), (a + 1, a + 2), (a, a + 2)]
    return Graph(a + 3, edges)


@pytest.fixture
def petersen_graph():
    return petersen()


_CRITERIA = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    num, title = props["criterion"]
    _CRITERIA[num] = (title, "PASS" if report.passed else "FAIL", props.get("detail", ""))


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is not None and not any(k == "criterion" for k, _ in item.user_properties):
        item.user_properties.append(("criterion", marker.args))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, verdict, detail = _CRITERIA[num]
        line = f"[{verdict}] criterion {num}: {title}"
        terminalreporter.write_line(line + (f" | {detail}" if detail else ""))
