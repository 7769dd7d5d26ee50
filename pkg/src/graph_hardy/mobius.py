"""Mobius transformations of the dual ball attached to central points.

A point gamma supported on the loops of the graph is central: its left
and right module actions agree, and that is exactly what makes

    g_gamma(z*) = D_gamma (id - z* gamma)^{-1} (gamma* - z*) D_gamma*^{-1}

with defect operators D_gamma = (id - gamma* gamma)^{1/2} (on vertex
space) and D_gamma* = (id - gamma gamma*)^{1/2} (on edge space) a
biholomorphic involution of the ball: g_gamma(0) = gamma*,
g_gamma(gamma*) = 0, and g_gamma composed with itself is the identity.

The map also has a unitary colligation.  Writing G for the matrix of
gamma (edge rows, vertex columns) and identifying the edge space with
its reversed-edge twin coordinatewise,

    V = [[ D_gamma G^H D_gamma*^{-1},  -D_gamma ],
         [ D_gamma*,                    G        ]]

is unitary for every central gamma in the open ball; at gamma = 0 it
degenerates to [[0, -id], [id, 0]], matching g_0 = -id.
"""

from __future__ import annotations

import json

import numpy as np

from .graph_core import GraphError
from .dual_eval import DualPoint, dual_norm, resolvent_matrix, theta_matrix
from .pick_kernel import CpMapMatrix, StructuralError


class CentralPoint:
    """A dual-ball point supported on the loop edges only."""

    def __init__(self, graph, loops):
        self.graph = graph
        loop_set = set(graph.loops())
        weights = np.zeros(graph.ne, dtype=complex)
        for name, val in (loops or {}).items():
            if name not in loop_set:
                raise GraphError("%r is not a loop edge; central points live on loops" % (name,))
            weights[graph.eindex[name]] = complex(val)
        self.weights = weights
        self.norm = dual_norm(graph, weights)
        if self.norm >= 1.0:
            raise GraphError("central point norm %.6g must be < 1" % self.norm)

    def as_dual_point(self):
        return DualPoint(self.graph, self.weights)

    def loop_weights(self):
        return {e: self.weights[self.graph.eindex[e]]
                for e in self.graph.loops() if self.weights[self.graph.eindex[e]] != 0}

    def __repr__(self):
        return "CentralPoint(%s)" % ", ".join(
            "%s=%.3g%+.3gj" % (e, w.real, w.imag) for e, w in self.loop_weights().items())


def make_central_point(g, loops):
    return CentralPoint(g, loops)


def central_from_dict(g, data):
    try:
        raw = data["loops"]
    except (KeyError, TypeError):
        raise GraphError("central point dict must have a 'loops' entry")
    loops = {}
    for name, val in raw.items():
        if isinstance(val, (list, tuple)):
            loops[name] = complex(val[0], val[1] if len(val) > 1 else 0.0)
        else:
            loops[name] = complex(val)
    return CentralPoint(g, loops)


def central_to_dict(c):
    return {"loops": {e: [float(w.real), float(w.imag)]
                      for e, w in c.loop_weights().items()}}


def load_central(g, path):
    with open(path) as fh:
        return central_from_dict(g, json.load(fh))


# ---------------------------------------------------------------------------
# defect operators

def _sqrtm_psd(M):
    lam, U = np.linalg.eigh(0.5 * (M + M.conj().T))
    lam = np.clip(lam, 0.0, None)
    return (U * np.sqrt(lam)) @ U.conj().T


def _inv_sqrtm_pd(M, floor=1e-14):
    lam, U = np.linalg.eigh(0.5 * (M + M.conj().T))
    if lam.min(initial=1.0) < floor:
        raise ValueError("defect operator is singular; the point is not inside the ball")
    return (U / np.sqrt(lam)) @ U.conj().T


def mobius_matrix(gamma, point):
    """The full nv x ne matrix of g_gamma(eta*).

    Supported, for each edge e, at (r(e), e); anything off that support
    beyond 1e-12 relative is a structural error.
    """
    g = gamma.graph
    if point.graph != g:
        raise GraphError("point and center live on different graphs")
    G = gamma.as_dual_point().matrix()            # ne x nv
    eta_adj = point.adjoint()                     # nv x ne
    d_vertex = _sqrtm_psd(np.eye(g.nv) - G.conj().T @ G)
    inv_d_edge = _inv_sqrtm_pd(np.eye(g.ne) - G @ G.conj().T)
    core = np.linalg.solve(np.eye(g.nv) - eta_adj @ G, G.conj().T - eta_adj)
    M = d_vertex @ core @ inv_d_edge
    support = np.zeros((g.nv, g.ne), dtype=bool)
    for i, e in enumerate(g.edges):
        support[g.vindex[e.dst], i] = True
    off = float(np.abs(np.where(support, 0.0, M)).max(initial=0.0))
    if off > 1e-12 * (1.0 + float(np.abs(M).max(initial=0.0))):
        raise StructuralError("Mobius image leaks off the edge support by %.3e" % off)
    return M


def mobius_apply(gamma, point):
    """g_gamma as a map of dual points: weight(e) of the image is the
    conjugate of the matrix entry at (r(e), e)."""
    g = gamma.graph
    M = mobius_matrix(gamma, point)
    weights = np.zeros(g.ne, dtype=complex)
    for i, e in enumerate(g.edges):
        weights[i] = np.conj(M[g.vindex[e.dst], i])
    return DualPoint(g, weights, allow_boundary=point.norm >= 1.0 - 1e-12)


def mobius_colligation(gamma):
    """Unitary colligation of g_gamma.  Returns (V, report) where V is the
    (nv + ne) x (ne + nv) assembled matrix and the report carries the
    unitarity residuals."""
    g = gamma.graph
    G = gamma.as_dual_point().matrix()
    d_vertex = _sqrtm_psd(np.eye(g.nv) - G.conj().T @ G)
    d_edge = _sqrtm_psd(np.eye(g.ne) - G @ G.conj().T)
    inv_d_edge = _inv_sqrtm_pd(np.eye(g.ne) - G @ G.conj().T)
    top = np.hstack([d_vertex @ G.conj().T @ inv_d_edge, -d_vertex])
    bottom = np.hstack([d_edge, G])
    V = np.vstack([top, bottom])
    ident = np.eye(V.shape[0])
    report = {
        "coisometry_residual": float(np.linalg.norm(V @ V.conj().T - ident, 2)),
        "isometry_residual": float(np.linalg.norm(V.conj().T @ V - ident, 2)),
        "shape": list(V.shape),
    }
    return V, report


def mobius_congruence_matrix(gamma, points):
    """Matrix of maps witnessing that g_gamma preserves the Schur class:
    entry (i, j) is a |-> (id - theta_{z'_i, z'_j}) (id - theta_{z_i, z_j})^{-1}(a)
    with z'_i = g_gamma applied to z_i.  Completely positive for central
    gamma."""
    g = gamma.graph
    moved = [mobius_apply(gamma, p) for p in points]
    k = len(points)
    tensors = np.zeros((k, k, g.nv, g.nv, g.nv), dtype=complex)
    for i in range(k):
        for j in range(k):
            R = resolvent_matrix(points[i], points[j])
            Tm = np.eye(g.nv) - theta_matrix(moved[i], moved[j])
            prod = Tm @ R
            for u in range(g.nv):
                tensors[i, j, u] = np.diag(prod[:, u])
    return CpMapMatrix(g, tensors)
