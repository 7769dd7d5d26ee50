"""Finite directed graphs and the edge bimodule over the vertex algebra.

A finite directed graph Q on a vertex set V carries two coordinate spaces:
M = C(V), functions on the vertices, and E = C(Q), functions on the edges.
E is a bimodule over M,

    (a . f . b)(e) = a(r(e)) f(e) b(s(e)),

where s(e) and r(e) are the source and range of the edge e, and it carries
the M-valued inner product

    <f, g>(v) = sum over edges e with s(e) = v of conj(f(e)) g(e).

Tensor powers of E over M have the composable paths as an orthonormal
basis, so path enumeration is the basis bookkeeping for everything built
on top (Fock space, evaluation, realization).

Paths are written like compositions of maps: in e1 e2 ... ek the edge ek
acts first, and consecutive edges satisfy s(e_i) = r(e_{i+1}).  The source
of the path is s(ek), the range is r(e1).  A path of length zero is a
vertex and is represented by the vertex name (a str); a path of positive
length is a tuple of edge names.
"""

from __future__ import annotations

import json
from collections import namedtuple

import numpy as np

Edge = namedtuple("Edge", ["name", "src", "dst"])


class GraphError(ValueError):
    """Malformed graph data (duplicate names, dangling endpoints, ...)."""


class Graph:
    """A finite directed graph with named vertices and named edges.

    Vertex and edge order is the insertion order of the input; every array
    produced by this package indexes vertices and edges that way, so the
    same input always yields the same matrices.
    """

    def __init__(self, vertices, edges):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex names")
        if not self.vertices:
            raise GraphError("graph needs at least one vertex")
        vset = set(self.vertices)
        named = []
        for item in edges:
            if isinstance(item, Edge):
                named.append(item)
            else:
                name, src, dst = item
                named.append(Edge(str(name), str(src), str(dst)))
        self.edges = tuple(named)
        enames = [e.name for e in self.edges]
        if len(set(enames)) != len(enames):
            raise GraphError("duplicate edge names")
        if set(enames) & vset:
            raise GraphError("edge names must be disjoint from vertex names")
        for e in self.edges:
            if e.src not in vset or e.dst not in vset:
                raise GraphError("edge %r has an endpoint outside the vertex set" % (e.name,))
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.eindex = {e.name: i for i, e in enumerate(self.edges)}
        self.src = {e.name: e.src for e in self.edges}
        self.dst = {e.name: e.dst for e in self.edges}
        self._out = {v: tuple(e.name for e in self.edges if e.src == v) for v in self.vertices}
        self._in = {v: tuple(e.name for e in self.edges if e.dst == v) for v in self.vertices}

    @property
    def nv(self):
        return len(self.vertices)

    @property
    def ne(self):
        return len(self.edges)

    def out_edges(self, v):
        """Edges with source v, in edge order."""
        return self._out[v]

    def in_edges(self, v):
        """Edges with range v, in edge order."""
        return self._in[v]

    def loops(self):
        """Edges whose source and range coincide, in edge order."""
        return tuple(e.name for e in self.edges if e.src == e.dst)

    def __repr__(self):
        return "Graph(%d vertices, %d edges)" % (self.nv, self.ne)

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))


def build_graph(data):
    """Build a Graph from the JSON-style dict form.

    Expected shape:
        {"vertices": ["v", "w"],
         "edges": [{"name": "e", "src": "v", "dst": "w"}, ...]}
    """
    try:
        vertices = data["vertices"]
        edges = [(e["name"], e["src"], e["dst"]) for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise GraphError("graph dict must have 'vertices' and 'edges' entries: %s" % exc)
    return Graph(vertices, edges)


def graph_to_dict(g):
    return {
        "vertices": list(g.vertices),
        "edges": [{"name": e.name, "src": e.src, "dst": e.dst} for e in g.edges],
    }


def load_graph(path):
    with open(path) as fh:
        return build_graph(json.load(fh))


def two_vertex_example():
    """The standard worked example: vertices v, w with

        e : v -> w,   f : w -> v,   g : w -> w (loop).

    Its center is spanned by the loop g, which is what makes the Mobius
    and automorphism machinery on it nontrivial.
    """
    return Graph(["v", "w"], [("e", "v", "w"), ("f", "w", "v"), ("g", "w", "w")])


# ---------------------------------------------------------------------------
# paths

def is_vertex_path(g, path):
    return isinstance(path, str)


def path_source(g, path):
    """Source vertex of a path (the vertex where it starts reading)."""
    if isinstance(path, str):
        return path
    return g.src[path[-1]]


def path_range(g, path):
    """Range vertex of a path (the vertex where it ends)."""
    if isinstance(path, str):
        return path
    return g.dst[path[0]]


def is_path(g, path):
    """True if path is a valid vertex name or a composable edge tuple."""
    if isinstance(path, str):
        return path in g.vindex
    if not isinstance(path, tuple) or len(path) == 0:
        return False
    for e in path:
        if e not in g.eindex:
            return False
    for a, b in zip(path, path[1:]):
        if g.src[a] != g.dst[b]:
            return False
    return True


def compose(g, p, q):
    """Concatenate paths p then q (p acts after q).  None if not composable."""
    if isinstance(p, str):
        if isinstance(q, str):
            return q if p == q else None
        return q if p == path_range(g, q) else None
    if isinstance(q, str):
        return p if path_source(g, p) == q else None
    if path_source(g, p) != path_range(g, q):
        return None
    return p + q


def path_basis(g, k):
    """All paths of length exactly k, ordered lexicographically by edge index.

    k = 0 returns the vertices in vertex order.
    """
    if k < 0:
        raise ValueError("path length must be >= 0")
    if k == 0:
        return [v for v in g.vertices]
    level = [(e.name,) for e in g.edges]
    for _ in range(k - 1):
        nxt = []
        for e in g.edges:
            tail = g.src[e.name]
            for p in level:
                if path_range(g, p) == tail:
                    nxt.append((e.name,) + p)
        level = nxt
    return level


def center_basis(g):
    """Edges spanning the center of the bimodule E.

    delta_e is central iff the left and right actions agree on it, which
    happens exactly when e is a loop.
    """
    return list(g.loops())


# ---------------------------------------------------------------------------
# bimodule operations

def as_vertex_function(g, a):
    """Coerce a to a length-nv complex vector (scalar broadcasts)."""
    if np.isscalar(a):
        return np.full(g.nv, complex(a))
    a = np.asarray(a, dtype=complex)
    if a.shape != (g.nv,):
        raise ValueError("expected a vertex function of length %d" % g.nv)
    return a


def as_edge_function(g, f):
    if isinstance(f, dict):
        out = np.zeros(g.ne, dtype=complex)
        for name, val in f.items():
            if name not in g.eindex:
                raise GraphError("unknown edge %r" % (name,))
            out[g.eindex[name]] = complex(val)
        return out
    f = np.asarray(f, dtype=complex)
    if f.shape != (g.ne,):
        raise ValueError("expected an edge function of length %d" % g.ne)
    return f


def act(g, a, f, b):
    """Two-sided action (a . f . b)(e) = a(r(e)) f(e) b(s(e))."""
    a = as_vertex_function(g, a)
    b = as_vertex_function(g, b)
    f = as_edge_function(g, f)
    out = f.copy()
    for i, e in enumerate(g.edges):
        out[i] = a[g.vindex[e.dst]] * f[i] * b[g.vindex[e.src]]
    return out


def inner_product(g, f1, f2):
    """M-valued pairing <f1, f2>(v) = sum_{s(e) = v} conj(f1(e)) f2(e).

    Conjugate linear in the first slot, so <f, f.b> = <f, f> b.
    """
    f1 = as_edge_function(g, f1)
    f2 = as_edge_function(g, f2)
    out = np.zeros(g.nv, dtype=complex)
    for i, e in enumerate(g.edges):
        out[g.vindex[e.src]] += np.conj(f1[i]) * f2[i]
    return out


def fullness_flags(g):
    """(is_full, left_faithful) for the edge bimodule.

    is_full: every vertex is the source of some edge, so <E, E> spans M.
    left_faithful: every vertex is the range of some edge, so the left
    action has no kernel.  Both are reported, never enforced.
    """
    is_full = all(len(g.out_edges(v)) > 0 for v in g.vertices)
    left_faithful = all(len(g.in_edges(v)) > 0 for v in g.vertices)
    return is_full, left_faithful
