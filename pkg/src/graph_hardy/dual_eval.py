"""Points of the dual unit ball and evaluation of Hardy polynomials.

Reversing every edge of the graph gives the dual bimodule; a point of its
unit ball assigns a complex weight to every reversed edge, so concretely a
point is one weight per original edge.  Arranged as a matrix with a row
per edge and a column per vertex, the weight of e sits in row e, column
r(e); since the columns have disjoint support the operator norm is

    ||eta|| = max over v of sqrt( sum_{r(e) = v} |weight(e)|^2 ),

and the open unit ball is ||eta|| < 1.

Evaluation at such a point is the representation determined by

    P_v     |->  theta_{v,v}          (matrix unit on the vertices)
    S_e     |->  conj(weight(e)) theta_{r(e), s(e)},

extended multiplicatively: a path alpha = e1 ... ek goes to the product
of its edge weights conjugated, placed at (r(alpha), s(alpha)).  The
value of a polynomial is therefore a nv x nv matrix.

The rank-one maps of two points,

    theta_{eta1, eta2}(a)(v) = sum_{r(e) = v} conj(w1(e)) a(s(e)) w2(e),

act on vertex functions; id - theta is invertible on the open ball and
its inverse is the resolvent that drives the Pick and Schur kernels.
"""

from __future__ import annotations

import json

import numpy as np

from .graph_core import GraphError, as_edge_function, path_source, path_range


class BoundaryError(ValueError):
    """Dual point with norm at or beyond 1 where the open ball is required."""


class DualPoint:
    """A weight per edge, i.e. a point of the dual ball in matrix form."""

    def __init__(self, graph, weights, allow_boundary=False):
        self.graph = graph
        self.weights = as_edge_function(graph, weights)
        self.norm = dual_norm(graph, self.weights)
        if allow_boundary:
            if self.norm > 1.0 + 1e-9:
                raise BoundaryError("dual point norm %.6g exceeds the closed ball" % self.norm)
        elif self.norm >= 1.0:
            raise BoundaryError(
                "dual point norm %.6g is not inside the open ball "
                "(pass allow_boundary=True for boundary evaluation)" % self.norm)

    def weight(self, e):
        return self.weights[self.graph.eindex[e]]

    def matrix(self):
        """ne x nv matrix with weight(e) at (e, r(e)); columns are disjoint."""
        g = self.graph
        m = np.zeros((g.ne, g.nv), dtype=complex)
        for i, e in enumerate(g.edges):
            m[i, g.vindex[e.dst]] = self.weights[i]
        return m

    def adjoint(self):
        """nv x ne matrix, the conjugate transpose of matrix()."""
        return self.matrix().conj().T

    def __repr__(self):
        return "DualPoint(norm=%.4g, %s)" % (
            self.norm,
            ", ".join("%s=%.3g%+.3gj" % (e.name, w.real, w.imag)
                      for e, w in zip(self.graph.edges, self.weights)))


def dual_norm(g, weights):
    weights = as_edge_function(g, weights)
    col = np.zeros(g.nv)
    for i, e in enumerate(g.edges):
        col[g.vindex[e.dst]] += abs(weights[i]) ** 2
    return float(np.sqrt(col.max(initial=0.0)))


def make_dual_point(g, weights, allow_boundary=False):
    """Build a DualPoint from an edge->weight dict or a length-ne array."""
    return DualPoint(g, weights, allow_boundary=allow_boundary)


def zero_point(g):
    return DualPoint(g, np.zeros(g.ne))


def random_point(g, rng, max_norm=0.9, min_norm=0.0):
    """Uniform-ish random point with norm in [min_norm, max_norm]."""
    w = rng.standard_normal(g.ne) + 1j * rng.standard_normal(g.ne)
    n = dual_norm(g, w)
    if n == 0.0:
        return zero_point(g)
    target = min_norm + (max_norm - min_norm) * rng.random()
    return DualPoint(g, w * (target / n), allow_boundary=True)


# ---------------------------------------------------------------------------
# rank-one maps and resolvents

def theta_matrix(p1, p2):
    """Matrix of theta_{p1, p2} acting on vertex functions.

    Entry (r(e), s(e)) accumulates conj(w1(e)) * w2(e).
    """
    g = p1.graph
    if g != p2.graph:
        raise GraphError("points live on different graphs")
    th = np.zeros((g.nv, g.nv), dtype=complex)
    for i, e in enumerate(g.edges):
        th[g.vindex[e.dst], g.vindex[e.src]] += np.conj(p1.weights[i]) * p2.weights[i]
    return th


def theta_map(p1, p2, a):
    """Apply theta_{p1, p2} to the vertex function a."""
    from .graph_core import as_vertex_function
    a = as_vertex_function(p1.graph, a)
    return theta_matrix(p1, p2) @ a


def resolvent_matrix(p1, p2):
    """Matrix of (id - theta_{p1, p2})^{-1}; defined whenever
    ||p1|| * ||p2|| < 1, which makes the Neumann series converge."""
    g = p1.graph
    th = theta_matrix(p1, p2)
    eye = np.eye(g.nv, dtype=complex)
    return np.linalg.solve(eye - th, eye)


def theta_resolvent(p1, p2, a):
    """Solve (id - theta_{p1, p2}) x = a directly (no series truncation)."""
    from .graph_core import as_vertex_function
    g = p1.graph
    a = as_vertex_function(g, a)
    th = theta_matrix(p1, p2)
    return np.linalg.solve(np.eye(g.nv, dtype=complex) - th, a)


# ---------------------------------------------------------------------------
# evaluation

def evaluate_poly(x, point):
    """Value of the HardyPoly x at the dual point, as an nv x nv matrix.

    Vertex terms land on the diagonal; a path term contributes the product
    of its conjugated edge weights at (r(path), s(path)).
    """
    g = x.graph
    if g != point.graph:
        raise GraphError("polynomial and point live on different graphs")
    out = np.zeros((g.nv, g.nv), dtype=complex)
    cw = np.conj(point.weights)
    for p, c in x.coeffs.items():
        if isinstance(p, str):
            i = g.vindex[p]
            out[i, i] += c
        else:
            amp = c
            for e in p:
                amp *= cw[g.eindex[e]]
            out[g.vindex[path_range(g, p)], g.vindex[path_source(g, p)]] += amp
    return out


# ---------------------------------------------------------------------------
# JSON form

def point_to_dict(p):
    return {"weights": {e.name: [float(w.real), float(w.imag)]
                        for e, w in zip(p.graph.edges, p.weights)}}


def point_from_dict(g, data, allow_boundary=False):
    try:
        raw = data["weights"]
    except (KeyError, TypeError):
        raise GraphError("dual point dict must have a 'weights' entry")
    weights = {}
    for name, val in raw.items():
        if isinstance(val, (list, tuple)):
            weights[name] = complex(val[0], val[1] if len(val) > 1 else 0.0)
        else:
            weights[name] = complex(val)
    return make_dual_point(g, weights, allow_boundary=allow_boundary)


def load_point(g, path, allow_boundary=False):
    with open(path) as fh:
        return point_from_dict(g, json.load(fh), allow_boundary=allow_boundary)


def load_points(g, path, allow_boundary=False):
    """Load either a single point dict or {"points": [point, ...]}."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict) and "points" in data:
        return [point_from_dict(g, d, allow_boundary=allow_boundary) for d in data["points"]]
    return [point_from_dict(g, data, allow_boundary=allow_boundary)]
