"""Shared helpers for the test suite."""

import numpy as np
from hypothesis import settings

from graph_hardy import Graph

settings.register_profile("suite", deadline=None, max_examples=25, derandomize=True)
settings.load_profile("suite")


def random_graph(rng, max_vertices=5, max_edges=8, ensure_loop=False):
    """Random directed graph with <= max_vertices vertices and <= max_edges
    edges; endpoints uniform, so loops and parallel edges occur naturally."""
    nv = int(rng.integers(1, max_vertices + 1))
    ne = int(rng.integers(1, max_edges + 1))
    vertices = ["v%d" % i for i in range(nv)]
    edges = []
    for j in range(ne):
        src = vertices[int(rng.integers(0, nv))]
        dst = vertices[int(rng.integers(0, nv))]
        edges.append(("a%d" % j, src, dst))
    if ensure_loop and not any(s == d for _, s, d in edges):
        v = vertices[int(rng.integers(0, nv))]
        edges[0] = (edges[0][0], v, v)
    return Graph(vertices, edges)


def adjacency(g):
    """A[i, j] = number of edges from vertex j to vertex i."""
    A = np.zeros((g.nv, g.nv), dtype=np.int64)
    for e in g.edges:
        A[g.vindex[e.dst], g.vindex[e.src]] += 1
    return A
