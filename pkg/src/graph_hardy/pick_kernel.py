"""Pick and Schur kernels on the dual ball and their complete positivity.

Interpolation data at points eta_1 .. eta_k of the open dual ball is
encoded in a k x k matrix of maps on the vertex algebra M = C(V).  With
R_ij = (id - theta_{eta_i, eta_j})^{-1}, the two kernels used here are

    pick:   a  |->  B_i R_ij(a) B_j^* - C_i R_ij(a) C_j^*
    schur:  a  |->  R_ij(a) - Z_i R_ij(a) Z_j^*

where the targets B_i, C_i, Z_i are nv x nv matrices (vertex functions
embed as diagonals) and R_ij(a) is embedded as a diagonal matrix.  The
matrix of maps is completely positive iff a contractive interpolant
exists (pick), resp. iff the Z_i are values of a Schur-class element at
the eta_i.

Complete positivity of such a matrix of maps on C(V) reduces to finitely
many finite matrices: for each vertex u, form the Choi block

    Ch_u[(i, p), (j, q)] = m_ij(delta_u)[p, q],

a (k nv) x (k nv) matrix.  The matrix of maps is CP iff every Ch_u is
positive semidefinite.  (Feeding the map matrix a PSD block (a_ij) with
a_ij = c_ij delta_u and compressing shows necessity; sufficiency is the
usual Choi argument applied per vertex, since C(V) splits as a direct
sum over the vertices.)
"""

from __future__ import annotations

import numpy as np

from .graph_core import GraphError
from .dual_eval import resolvent_matrix


class StructuralError(RuntimeError):
    """A kernel that should be Hermitian by construction is not; this
    signals a bug upstream, not infeasible data."""


class CpMapMatrix:
    """A k x k matrix of linear maps C(V) -> nv x nv matrices.

    tensors[i, j, u] is the value of the (i, j) map on the basis vector
    delta_u, stored as an nv x nv complex matrix.
    """

    def __init__(self, graph, tensors):
        tensors = np.asarray(tensors, dtype=complex)
        nv = graph.nv
        if tensors.ndim != 5 or tensors.shape[1] != tensors.shape[0] \
                or tensors.shape[2:] != (nv, nv, nv):
            raise ValueError("tensors must have shape (k, k, nv, nv, nv)")
        self.graph = graph
        self.tensors = tensors
        self.k = tensors.shape[0]

    def apply(self, blocks):
        """Apply the map matrix entrywise to a k x k block array of vertex
        functions; returns the k x k array of nv x nv value matrices."""
        blocks = np.asarray(blocks, dtype=complex)
        out = np.zeros((self.k, self.k, self.graph.nv, self.graph.nv), dtype=complex)
        for i in range(self.k):
            for j in range(self.k):
                for u in range(self.graph.nv):
                    out[i, j] += blocks[i, j, u] * self.tensors[i, j, u]
        return out

    def choi_block(self, u):
        """The (k nv) x (k nv) Choi matrix of the vertex u, rows and columns
        indexed by (point, vertex) pairs with the point index outermost."""
        nv = self.graph.nv
        t = self.tensors[:, :, u]
        return t.transpose(0, 2, 1, 3).reshape(self.k * nv, self.k * nv)

    def choi_blocks(self):
        return [(v, self.choi_block(u)) for u, v in enumerate(self.graph.vertices)]


def _as_target_matrix(g, t):
    """Coerce a target: scalar -> scalar*I, vertex vector -> diag, matrix as is."""
    if np.isscalar(t):
        return complex(t) * np.eye(g.nv, dtype=complex)
    t = np.asarray(t, dtype=complex)
    if t.shape == (g.nv,):
        return np.diag(t)
    if t.shape == (g.nv, g.nv):
        return t
    raise ValueError("target must be a scalar, a length-nv vector, or an nv x nv matrix")


def _resolvent_columns(points):
    """R[i][j] = matrix of (id - theta_{eta_i, eta_j})^{-1}; column u of it
    is the resolvent applied to delta_u."""
    k = len(points)
    g = points[0].graph
    for p in points:
        if p.graph != g:
            raise GraphError("points live on different graphs")
    R = np.zeros((k, k, g.nv, g.nv), dtype=complex)
    for i in range(k):
        for j in range(k):
            R[i, j] = resolvent_matrix(points[i], points[j])
    return R


def pick_map_matrix(points, B, C):
    """Kernel of the constrained interpolation problem X^(eta_i*) B_i = C_i.

    Entry (i, j) is the map a |-> B_i R_ij(a) B_j^* - C_i R_ij(a) C_j^*.
    """
    k = len(points)
    if len(B) != k or len(C) != k:
        raise ValueError("need one B and one C target per point")
    g = points[0].graph
    Bm = [_as_target_matrix(g, t) for t in B]
    Cm = [_as_target_matrix(g, t) for t in C]
    R = _resolvent_columns(points)
    tensors = np.zeros((k, k, g.nv, g.nv, g.nv), dtype=complex)
    for i in range(k):
        for j in range(k):
            for u in range(g.nv):
                D = np.diag(R[i, j][:, u])
                tensors[i, j, u] = Bm[i] @ D @ Bm[j].conj().T - Cm[i] @ D @ Cm[j].conj().T
    return CpMapMatrix(g, tensors)


def schur_kernel_matrix(points, values):
    """Kernel whose complete positivity characterizes the Schur class.

    values[i] is the nv x nv value matrix Z_i attached to eta_i; entry
    (i, j) is the map a |-> R_ij(a) - Z_i R_ij(a) Z_j^*.
    """
    k = len(points)
    if len(values) != k:
        raise ValueError("need one value matrix per point")
    g = points[0].graph
    Z = [_as_target_matrix(g, z) for z in values]
    R = _resolvent_columns(points)
    tensors = np.zeros((k, k, g.nv, g.nv, g.nv), dtype=complex)
    for i in range(k):
        for j in range(k):
            for u in range(g.nv):
                D = np.diag(R[i, j][:, u])
                tensors[i, j, u] = D - Z[i] @ D @ Z[j].conj().T
    return CpMapMatrix(g, tensors)


def is_completely_positive(m, tol=1e-9, herm_tol=1e-12):
    """CP test by per-vertex Choi blocks.

    Each block must be Hermitian up to herm_tol relative to its largest
    entry (violation raises StructuralError) and its minimum eigenvalue
    must be >= -tol * (1 + spectral norm of the block).  Returns a report
    with one entry per vertex and the overall verdict.
    """
    blocks = []
    cp = True
    worst = np.inf
    for u, v in enumerate(m.graph.vertices):
        ch = m.choi_block(u)
        scale = float(np.abs(ch).max(initial=0.0))
        herm_dev = float(np.abs(ch - ch.conj().T).max(initial=0.0))
        if herm_dev > herm_tol * (1.0 + scale):
            raise StructuralError(
                "Choi block of vertex %r deviates from Hermitian by %.3e" % (v, herm_dev))
        eigs = np.linalg.eigvalsh(0.5 * (ch + ch.conj().T))
        min_eig = float(eigs.min()) if eigs.size else 0.0
        spec = float(np.abs(eigs).max(initial=0.0))
        ok = min_eig >= -tol * (1.0 + spec)
        cp = cp and ok
        worst = min(worst, min_eig)
        blocks.append({"vertex": v, "min_eig": min_eig, "scale": spec, "psd": bool(ok)})
    return {
        "cp": bool(cp),
        "tol": tol,
        "blocks": blocks,
        "worst_min_eig": float(worst) if blocks else 0.0,
    }


def pick_feasibility(points, B, C, tol=1e-9):
    """Full feasibility check for X^(eta_i*) B_i = C_i with ||X|| <= 1."""
    report = is_completely_positive(pick_map_matrix(points, B, C), tol=tol)
    report["feasible"] = report["cp"]
    return report


def schur_class_check(points, values, tol=1e-9):
    """CP check of the Schur kernel for sampled values of a contraction."""
    return is_completely_positive(schur_kernel_matrix(points, values), tol=tol)
