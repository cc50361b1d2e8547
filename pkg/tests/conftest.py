import itertools

import pytest
from hypothesis import strategies as st

from capcount.generators import complete, complete_bipartite, cycle, random_even_graph
from capcount.polycore import MultiGraph


def path(n):
    return MultiGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def two_triangles():
    return MultiGraph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))


SMALL_GRAPHS = {
    "edge": MultiGraph(2, ((0, 1),)),
    "path3": path(3),
    "C3": cycle(3),
    "C4": cycle(4),
    "C5": cycle(5),
    "K4": complete(4),
    "K22": complete_bipartite(2),
    "double_edge": MultiGraph(3, ((0, 1), (0, 1), (1, 2))),
    "two_triangles": two_triangles(),
    "even5": random_even_graph(5, seed=1),
}


@pytest.fixture(params=sorted(SMALL_GRAPHS))
def small_graph(request):
    return SMALL_GRAPHS[request.param]


def feasible_targets(G):
    degrees = G.degrees()
    for r in itertools.product(*(range(d + 1) for d in degrees)):
        if sum(r) == G.edge_count:
            yield r


@st.composite
def multigraphs(draw, max_vertices=5, max_edges=8):
    n = draw(st.integers(2, max_vertices))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])
    edges = draw(st.lists(pair, max_size=max_edges))
    return MultiGraph(n, tuple(edges))
