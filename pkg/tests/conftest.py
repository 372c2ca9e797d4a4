import networkx as nx
import pytest


@pytest.fixture(scope="session")
def karate_edge_file(tmp_path_factory):
    """Zachary's karate club as a user-style edge-list file with string labels."""
    path = tmp_path_factory.mktemp("data") / "karate.txt"
    g = nx.karate_club_graph()
    with open(path, "w") as fh:
        fh.write("# Zachary karate club\n")
        for u, v in g.edges():
            fh.write(f"v{u + 1} v{v + 1}\n")
    return path


@pytest.fixture(scope="session")
def karate_jdm(karate_edge_file):
    from jdmgraph.io import read_edge_list
    from jdmgraph.model import extract_jdm

    graph, _ = read_edge_list(karate_edge_file)
    return extract_jdm(graph)


_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line; the test still asserts on its own."""
    def record(number: int, passed: bool, detail: str) -> bool:
        _CRITERIA[number] = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        print(_CRITERIA[number])
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[number])
