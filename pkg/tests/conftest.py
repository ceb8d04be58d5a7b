import pytest

from grweyl.graphs import parse_graph


ROSE2 = "vertices: v\nedge a v v\nedge b v v\n"
ROSE3 = "vertices: v\nedge a v v\nedge b v v\nedge c v v\n"
LOOP1 = "vertices: v\nedge a v v\n"
TWO_LOOPS = "vertices: v w\nedge a v v\nedge b w w\n"
CYCLE3_CHORD = """vertices: v1 v2 v3
edge e1 v1 v2
edge e2 v2 v3
edge e3 v3 v1
edge x v1 v2
"""
CYCLE2_LOOP = """vertices: v w
edge l v v
edge e v w
edge f w v
"""
SUBDIVIDED = """vertices: v m1 m2
edge a1 v m1
edge a2 m1 v
edge b1 v m2
edge b2 m2 v
"""
FUNNEL = """vertices: s v w z
edge p s v
edge q s w
edge e1 v z
edge e2 w z
edge l1 z z
edge l2 z z
"""


@pytest.fixture
def rose2():
    return parse_graph(ROSE2)


@pytest.fixture
def rose3():
    return parse_graph(ROSE3)


@pytest.fixture
def loop1():
    return parse_graph(LOOP1)


@pytest.fixture
def two_loops():
    return parse_graph(TWO_LOOPS)


def fixture_graphs():
    """The curated graph set with expected check verdicts."""
    return [
        ("rose2", ROSE2, dict(sinks=True, sources=True, condL=True, sync=True)),
        ("rose3", ROSE3, dict(sinks=True, sources=True, condL=True, sync=True)),
        ("loop1", LOOP1, dict(sinks=True, sources=True, condL=False, sync=True)),
        ("two_loops", TWO_LOOPS, dict(sinks=True, sources=True, condL=False, sync=False)),
        # all three cycles have exits, but the graph has period 3, so
        # synchronized pairs never meet across vertex classes
        ("cycle3_chord", CYCLE3_CHORD, dict(sinks=True, sources=True, condL=True, sync=False)),
        ("cycle2_loop", CYCLE2_LOOP, dict(sinks=True, sources=True, condL=True, sync=True)),
        ("subdivided", SUBDIVIDED, dict(sinks=True, sources=True, condL=True, sync=False)),
        ("funnel", FUNNEL, dict(sinks=True, sources=False, condL=True, sync=True)),
    ]
