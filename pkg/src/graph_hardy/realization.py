"""Colligations over a graph and transfer-function realization.

A system matrix over a graph is a vertex-graded block operator

    V = [[A, B], [C, D]] : E1 (+) H  ->  E2 (+) (dual edges tensor H)

where E1, E2 are spanned by chosen vertex subsets q1, q2, and the state
space H is a direct sum of fibers H_v of multiplicity m_v.  The dual-edge
tensor assigns to each edge e a fiber isomorphic to H_{r(e)}, graded by
the vertex s(e).  Everything is block diagonal over the vertices:

    domain_v   = [v in q1] + m_v
    codomain_v = [v in q2] + sum over edges e with s(e) = v of m_{r(e)}

and V is a coisometry (V V* = id) iff each vertex block is.

The transfer function of a system, evaluated at a dual point eta with
insertion operator L_eta, is

    Z(eta*) = A + B (id - L* D)^{-1} L* C,

an nv x nv matrix supported on q2 x q1 rows/columns.  L* carries the
fiber of the edge e into H_{r(e)} with the factor conj(weight(e)); since
||L*|| = ||eta|| < 1 and ||D|| <= 1 the resolvent is a convergent
geometric series whose n-th term gives the degree-n Taylor coefficient

    coeff(e1 ... en) = B_{r(e1)} D^{(e1)} ... D^{(e n-1)} C^{(en)}.

realize_from_samples inverts this: from finitely many samples of a
Schur-class element it builds the Gram spaces of the Schur kernel, the
lurking isometry that the kernel identity provides, and reads a system
matrix off a coisometric completion of that isometry.
"""

from __future__ import annotations

import json

import numpy as np
import scipy.linalg

from .graph_core import GraphError
from .dual_eval import evaluate_poly  # noqa: F401  (re-exported for demos)
from .fock import HardyPoly
from .pick_kernel import schur_kernel_matrix, is_completely_positive


class FeasibilityError(ValueError):
    """Sampled data is not in the Schur class; no contractive realization."""


class ConditioningError(RuntimeError):
    """Numerics of the Gram construction degraded beyond the tolerances."""


def _as_block(x, shape):
    m = np.asarray(x, dtype=complex)
    if m.shape != shape:
        raise GraphError("block has shape %s, expected %s" % (m.shape, shape))
    return m


class SystemMatrix:
    """Vertex-graded colligation with scalar input/output fibers.

    multiplicities: dict vertex -> m_v >= 0
    q1, q2: input/output vertex subsets
    A: dict v -> complex, for v in q1 and q2
    B: dict v -> (1, m_v) array, for v in q2
    C: dict e -> (m_{r(e)}, 1) array, for edges with s(e) in q1
    D: dict e -> (m_{r(e)}, m_{s(e)}) array

    Missing blocks default to zero; blocks outside the allowed support
    raise GraphError.
    """

    def __init__(self, graph, multiplicities, q1, q2, A=None, B=None, C=None, D=None):
        self.graph = graph
        for v in multiplicities:
            if v not in graph.vindex:
                raise GraphError("multiplicity for unknown vertex %r" % (v,))
        self.m = {v: int(multiplicities.get(v, 0)) for v in graph.vertices}
        if any(mv < 0 for mv in self.m.values()):
            raise GraphError("multiplicities must be nonnegative")
        for v in list(q1) + list(q2):
            if v not in graph.vindex:
                raise GraphError("unknown vertex %r in q1/q2" % (v,))
        self.q1 = tuple(v for v in graph.vertices if v in set(q1))
        self.q2 = tuple(v for v in graph.vertices if v in set(q2))

        A = dict(A or {})
        B = dict(B or {})
        C = dict(C or {})
        D = dict(D or {})
        both = set(self.q1) & set(self.q2)
        for v in A:
            if v not in both:
                raise GraphError("A block at %r outside q1 and q2" % (v,))
        self.A = {v: complex(A.get(v, 0.0)) for v in both}
        for v in B:
            if v not in set(self.q2):
                raise GraphError("B block at %r outside q2" % (v,))
        self.B = {v: _as_block(B.get(v, np.zeros((1, self.m[v]))), (1, self.m[v]))
                  for v in self.q2}
        for e in C:
            if e not in graph.eindex or graph.src[e] not in set(self.q1):
                raise GraphError("C block at %r needs an edge with source in q1" % (e,))
        for e in D:
            if e not in graph.eindex:
                raise GraphError("D block at unknown edge %r" % (e,))
        self.C = {}
        self.D = {}
        for e in graph.edges:
            mr, ms = self.m[e.dst], self.m[e.src]
            if e.src in set(self.q1):
                self.C[e.name] = _as_block(C.get(e.name, np.zeros((mr, 1))), (mr, 1))
            self.D[e.name] = _as_block(D.get(e.name, np.zeros((mr, ms))), (mr, ms))

    # index bookkeeping ----------------------------------------------------
    def h_dim(self):
        return sum(self.m.values())

    def h_offsets(self):
        off, pos = {}, 0
        for v in self.graph.vertices:
            off[v] = slice(pos, pos + self.m[v])
            pos += self.m[v]
        return off

    def domain_dim(self, v):
        return (1 if v in set(self.q1) else 0) + self.m[v]

    def codomain_dim(self, v):
        return (1 if v in set(self.q2) else 0) + sum(
            self.m[self.graph.dst[e]] for e in self.graph.out_edges(v))

    def vertex_block(self, v):
        """The block of V at vertex v: rows are [E2 slot] + out-edge fibers,
        columns are [E1 slot] + H_v."""
        g = self.graph
        dom = self.domain_dim(v)
        cod = self.codomain_dim(v)
        blk = np.zeros((cod, dom), dtype=complex)
        c0 = 1 if v in set(self.q1) else 0
        r0 = 1 if v in set(self.q2) else 0
        if v in set(self.q1) and v in set(self.q2):
            blk[0, 0] = self.A[v]
        if v in set(self.q2):
            blk[0, c0:] = self.B[v][0]
        row = r0
        for e in g.out_edges(v):
            mr = self.m[g.dst[e]]
            if v in set(self.q1):
                blk[row:row + mr, 0:1] = self.C[e]
            blk[row:row + mr, c0:] = self.D[e]
            row += mr
        return blk

    def assemble(self):
        """Global matrix: rows are q2 slots then edge fibers in edge order,
        columns are q1 slots then H in vertex order."""
        g = self.graph
        n1, n2 = len(self.q1), len(self.q2)
        hoff = self.h_offsets()
        hdim = self.h_dim()
        foff, pos = {}, n2
        for e in g.edges:
            mr = self.m[e.dst]
            foff[e.name] = slice(pos, pos + mr)
            pos += mr
        V = np.zeros((pos, n1 + hdim), dtype=complex)
        q1i = {v: i for i, v in enumerate(self.q1)}
        q2i = {v: i for i, v in enumerate(self.q2)}
        for v, a in self.A.items():
            V[q2i[v], q1i[v]] = a
        for v in self.q2:
            V[q2i[v], n1 + hoff[v].start:n1 + hoff[v].stop] = self.B[v][0]
        for e in g.edges:
            if e.src in q1i:
                V[foff[e.name], q1i[e.src]:q1i[e.src] + 1] = self.C[e.name]
            sl = hoff[e.src]
            V[foff[e.name], n1 + sl.start:n1 + sl.stop] = self.D[e.name]
        return V


def _spec_norm(M):
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def validate_system(s, tol=1e-9):
    """Numeric validation of the coisometry identity and its block form.

    Reports ||V V* - id|| (spectral norm), the three block identities
    id - A A* = B B*, C C* = id - D D*, A C* = -B D*, the per-vertex
    coisometry residuals, and ||V* V - id|| for the unitary case.
    """
    V = s.assemble()
    n1, n2 = len(s.q1), len(s.q2)
    Am, Bm = V[:n2, :n1], V[:n2, n1:]
    Cm, Dm = V[n2:, :n1], V[n2:, n1:]
    co_res = _spec_norm(V @ V.conj().T - np.eye(V.shape[0]))
    iso_res = _spec_norm(V.conj().T @ V - np.eye(V.shape[1]))
    cond11 = _spec_norm((np.eye(n2) - Am @ Am.conj().T) - Bm @ Bm.conj().T)
    cond22 = _spec_norm(Cm @ Cm.conj().T - (np.eye(Cm.shape[0]) - Dm @ Dm.conj().T))
    cond12 = _spec_norm(Am @ Cm.conj().T + Bm @ Dm.conj().T)
    blocks = {}
    for v in s.graph.vertices:
        blk = s.vertex_block(v)
        blocks[v] = _spec_norm(blk @ blk.conj().T - np.eye(blk.shape[0]))
    return {
        "tol": tol,
        "coisometry_residual": co_res,
        "isometry_residual": iso_res,
        "cond11": cond11,
        "cond22": cond22,
        "cond12": cond12,
        "block_residuals": blocks,
        "passed": bool(co_res < tol),
    }


# ---------------------------------------------------------------------------
# transfer function

def _insertion_blocks(s, point):
    """(LD, LC): the maps L* D on H and L* C from the q1 slots into H.

    L* carries the fiber of edge e into H_{r(e)} with factor conj(w_e), so
    LD adds conj(w_e) D^{(e)} into the (r(e), s(e)) block and column v of
    LC collects conj(w_e) C^{(e)} over the edges with source v.
    """
    g = s.graph
    hoff = s.h_offsets()
    hdim = s.h_dim()
    LD = np.zeros((hdim, hdim), dtype=complex)
    LC = np.zeros((hdim, len(s.q1)), dtype=complex)
    cw = np.conj(point.weights)
    for i, e in enumerate(g.edges):
        if s.m[e.dst] == 0:
            continue
        if s.m[e.src] > 0:
            LD[hoff[e.dst], hoff[e.src]] += cw[i] * s.D[e.name]
    for col, v in enumerate(s.q1):
        for e in g.out_edges(v):
            i = g.eindex[e]
            if s.m[g.dst[e]] == 0:
                continue
            LC[hoff[g.dst[e]], col:col + 1] += cw[i] * s.C[e]
    return LD, LC


def _embed_output(s, X):
    """Map (hdim x |q1|) resolvent data through B and add A, embedded nv x nv."""
    g = s.graph
    hoff = s.h_offsets()
    Z = np.zeros((g.nv, g.nv), dtype=complex)
    for v, a in s.A.items():
        Z[g.vindex[v], g.vindex[v]] += a
    for v2 in s.q2:
        if s.m[v2] == 0:
            continue
        row = s.B[v2] @ X[hoff[v2], :]
        for col, v1 in enumerate(s.q1):
            Z[g.vindex[v2], g.vindex[v1]] += row[0, col]
    return Z


def transfer_eval(s, point):
    """Z(eta*) = A + B (id - L* D)^{-1} L* C as an nv x nv matrix."""
    LD, LC = _insertion_blocks(s, point)
    if LD.shape[0] == 0:
        return _embed_output(s, LC)
    X = np.linalg.solve(np.eye(LD.shape[0]) - LD, LC)
    return _embed_output(s, X)


def transfer_partial_sum(s, point, N):
    """The degree ≤ N part of the transfer series at the point.

    Algebraically identical to evaluating the degree-N Taylor polynomial,
    but computed as A + B (sum_{n<N} (L*D)^n) L*C so no path enumeration
    is needed.
    """
    LD, LC = _insertion_blocks(s, point)
    if LD.shape[0] == 0 or N == 0:
        acc = np.zeros_like(LC)
    else:
        term = LC.copy()
        acc = LC.copy()
        for _ in range(N - 1):
            term = LD @ term
            acc += term
    return _embed_output(s, acc)


def series_residual(s, point, N):
    """Spectral-norm gap between the transfer value and its degree-N
    partial sum.  For a validated system it is bounded by the geometric
    tail ||eta||^{N+1} / (1 - ||eta||)."""
    full = transfer_eval(s, point)
    part = transfer_partial_sum(s, point, N)
    return _spec_norm(full - part)


def taylor_extract(s, N):
    """Taylor coefficients of the transfer function through degree N.

    Returns a list of HardyPoly, one per degree.  Degree n holds the path
    coefficients B_{r(e1)} D^{(e1)} ... D^{(e_{n-1})} C^{(e_n)}; the cost
    grows with the number of paths, so keep N moderate and use
    transfer_partial_sum for high-degree tails.
    """
    g = s.graph
    out = [HardyPoly(g, {v: a for v, a in s.A.items()})]
    q2 = set(s.q2)
    # state: path -> vector in H_{r(first edge)}
    level = {}
    for e in g.edges:
        if g.src[e.name] in set(s.q1) and s.m[e.dst] > 0:
            level[(e.name,)] = s.C[e.name][:, 0]
    for n in range(1, N + 1):
        coeffs = {}
        for path, vec in level.items():
            v2 = g.dst[path[0]]
            if v2 in q2 and s.m[v2] > 0:
                c = complex(s.B[v2][0] @ vec)
                if c != 0:
                    coeffs[path] = c
        out.append(HardyPoly(g, coeffs))
        if n == N:
            break
        nxt = {}
        for path, vec in level.items():
            head = g.dst[path[0]]
            # prepend e: requires s(e) = r(path) = head
            for e in g.out_edges(head):
                if s.m[g.dst[e]] == 0:
                    continue
                nxt[(e,) + path] = s.D[e] @ vec
        level = nxt
    return out


def taylor_poly(s, N):
    total = HardyPoly.zero(s.graph)
    for piece in taylor_extract(s, N):
        total = total + piece
    return total


# ---------------------------------------------------------------------------
# random validated systems

def _haar_unitary(rng, n):
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(G)
    d = np.diag(R)
    return Q * (d / np.abs(np.where(d == 0, 1, d)))


def feasible_multiplicities(g, q1, q2, m):
    """Shrink m / q2 until every vertex block can be a coisometry, i.e.
    domain_v >= codomain_v for all v.  Returns (q2, m).  On graphs whose
    branching loops force unbounded state growth the only fixed points
    push multiplicities down, so this always terminates."""
    m = dict(m)
    q1 = set(q1)
    q2 = set(q2)
    for _ in range(10000):
        bad = None
        for v in g.vertices:
            dom = (1 if v in q1 else 0) + m[v]
            cod = (1 if v in q2 else 0) + sum(m[g.dst[e]] for e in g.out_edges(v))
            if dom < cod:
                bad = v
                break
        if bad is None:
            return tuple(v for v in g.vertices if v in q2), m
        targets = [g.dst[e] for e in g.out_edges(bad) if m[g.dst[e]] > 0]
        if targets:
            t = max(targets, key=lambda u: m[u])
            m[t] -= 1
        elif bad in q2:
            q2.discard(bad)
        else:
            raise RuntimeError("unreachable: deficit with no reducible source")
    raise RuntimeError("feasibility repair did not terminate")


def random_system(g, rng, mmax=3, q1=None, q2=None):
    """Random validated coisometric system: per-vertex Haar coisometries
    over feasible multiplicities."""
    q1 = tuple(g.vertices) if q1 is None else tuple(q1)
    for _ in range(50):
        if q2 is None:
            qq2 = tuple(v for v in g.vertices if rng.random() < 0.7)
            if not qq2:
                qq2 = (g.vertices[int(rng.integers(0, g.nv))],)
        else:
            qq2 = tuple(q2)
        m = {v: int(rng.integers(0, mmax + 1)) for v in g.vertices}
        qq2, m = feasible_multiplicities(g, q1, qq2, m)
        if qq2 or any(m.values()):
            break
    s = SystemMatrix(g, m, q1, qq2)
    blocks = {}
    for v in g.vertices:
        dom, cod = s.domain_dim(v), s.codomain_dim(v)
        blocks[v] = _haar_unitary(rng, dom)[:cod, :]
    return _system_from_vertex_blocks(g, m, q1, qq2, blocks)


def _system_from_vertex_blocks(g, m, q1, q2, blocks):
    """Slice per-vertex (codomain_v x domain_v) matrices into A, B, C, D."""
    q1s, q2s = set(q1), set(q2)
    A, B, C, D = {}, {}, {}, {}
    for v in g.vertices:
        blk = blocks[v]
        c0 = 1 if v in q1s else 0
        r0 = 1 if v in q2s else 0
        if v in q1s and v in q2s:
            A[v] = complex(blk[0, 0])
        if v in q2s:
            B[v] = blk[0:1, c0:]
        row = r0
        for e in g.out_edges(v):
            mr = m[g.dst[e]]
            if v in q1s:
                C[e] = blk[row:row + mr, 0:1]
            D[e] = blk[row:row + mr, c0:]
            row += mr
    return SystemMatrix(g, m, q1, q2, A, B, C, D)


# ---------------------------------------------------------------------------
# realization from samples

def _pad_multiplicities(g, q1, q2, m, max_total=4000):
    """Smallest padding p >= 0 with domain >= codomain once m + p is used.
    Returns (p, feasible).  The iteration is monotone; if the out-degree
    structure amplifies multiplicities (branching loops) it diverges and
    we report infeasibility instead."""
    q1s, q2s = set(q1), set(q2)
    p = {v: 0 for v in g.vertices}
    for _ in range(10000):
        changed = False
        for v in g.vertices:
            dom = (1 if v in q1s else 0) + m[v] + p[v]
            cod = (1 if v in q2s else 0) + sum(m[g.dst[e]] + p[g.dst[e]]
                                               for e in g.out_edges(v))
            if dom < cod:
                p[v] += cod - dom
                changed = True
        if not changed:
            return p, True
        if sum(p.values()) > max_total:
            return {v: 0 for v in g.vertices}, False
    return {v: 0 for v in g.vertices}, False


def _complete_block(blk, rank_tol=1e-8):
    """Extend a partial isometry (cod x dom) to a coisometry when dom allows.

    Pairs an orthonormal basis of the cokernel with unused domain
    directions; returns (completed block, leftover codomain dimensions).
    """
    cod, dom = blk.shape
    if cod == 0:
        return blk, 0
    if dom == 0:
        return blk, cod
    W, sig, Th = np.linalg.svd(blk, full_matrices=False)
    r = int(np.sum(sig > rank_tol * max(1.0, sig[0] if sig.size else 1.0)))
    Wr = W[:, :r]
    Tr = Th[:r, :].conj().T
    w_extra = scipy.linalg.null_space(Wr.conj().T) if r < cod else np.zeros((cod, 0))
    t_extra = scipy.linalg.null_space(Tr.conj().T) if r < dom else np.zeros((dom, 0))
    t = min(w_extra.shape[1], t_extra.shape[1])
    out = blk + w_extra[:, :t] @ t_extra[:, :t].conj().T
    return out, w_extra.shape[1] - t


def realize_from_samples(points, values, q1, q2, tol=1e-9, rank_tol=None):
    """Build a system matrix whose transfer interpolates the given samples.

    points: dual points in the open ball; values: nv x nv sample matrices
    supported on q2 x q1.  Steps: (1) Schur-kernel CP check (raises
    FeasibilityError if it fails); (2) per-vertex Gram spaces from the
    Choi blocks, rank-truncated at rank_tol * (largest eigenvalue);
    (3) the lurking isometry u_(v,i,w) -> y_(v,i,w) that the kernel
    identity makes inner-product preserving; (4) per-vertex padding of
    the multiplicities so a coisometric completion can exist, then the
    completion; (5) read off A, B, C, D.  Returns (system, report); the
    report carries multiplicities, padding, residuals, and the Gram
    ranks.  The transfer of the result reproduces the samples; away from
    the samples it is one specific Schur-class interpolant.
    """
    if rank_tol is None:
        rank_tol = 1e-9
    k = len(points)
    if k == 0 or len(values) != k:
        raise ValueError("need one value matrix per point")
    g = points[0].graph
    nv = g.nv
    q1t = tuple(v for v in g.vertices if v in set(q1))
    q2t = tuple(v for v in g.vertices if v in set(q2))
    Z = [np.asarray(z, dtype=complex) for z in values]
    scale = max(1.0, max(np.abs(z).max(initial=0.0) for z in Z))
    q1s, q2s = set(q1t), set(q2t)
    for z in Z:
        for a in range(nv):
            for b in range(nv):
                if abs(z[a, b]) > 1e-9 * scale and not (
                        g.vertices[a] in q2s and g.vertices[b] in q1s):
                    raise GraphError("sample values must be supported on q2 x q1")

    kern = schur_kernel_matrix(points, Z)
    cp = is_completely_positive(kern, tol=tol)
    if not cp["cp"]:
        raise FeasibilityError(
            "samples are not Schur-class data (worst Choi eigenvalue %.3e)"
            % cp["worst_min_eig"])

    # Gram spaces: one per vertex, spanned by symbols (point i, vertex w)
    phi = {}
    m = {}
    ranks = {}
    for u, v in enumerate(g.vertices):
        ch = kern.choi_block(u)
        lam, U = np.linalg.eigh(0.5 * (ch + ch.conj().T))
        lmax = float(lam.max(initial=0.0))
        keep = lam > rank_tol * max(lmax, 0.0) if lmax > 0 else lam > np.inf
        r = int(np.sum(keep))
        lam_r = np.clip(lam[keep], 0.0, None)
        phi[v] = (np.sqrt(lam_r)[:, None] * U[:, keep].conj().T)  # (r, k*nv)
        m[v] = r
        ranks[v] = r

    pad, pad_ok = _pad_multiplicities(g, q1t, q2t, m)
    mp = {v: m[v] + pad[v] for v in g.vertices}

    def phi_col(v, i, w_idx):
        col = np.zeros(mp[v], dtype=complex)
        col[:m[v]] = phi[v][:, i * nv + w_idx]
        return col

    sys0 = SystemMatrix(g, mp, q1t, q2t)  # for index bookkeeping only
    blocks = {}
    iso_dev = 0.0
    for v in g.vertices:
        dom, cod = sys0.domain_dim(v), sys0.codomain_dim(v)
        vi = g.vindex[v]
        cols_u, cols_y = [], []
        for i in range(k):
            for w in q2t:
                wi = g.vindex[w]
                uvec = np.zeros(dom, dtype=complex)
                yvec = np.zeros(cod, dtype=complex)
                c0 = 1 if v in q1s else 0
                if v in q1s:
                    uvec[0] = np.conj(Z[i][wi, vi])
                uvec[c0:] = phi_col(v, i, wi)
                r0 = 1 if v in q2s else 0
                if v in q2s and w == v:
                    yvec[0] = 1.0
                row = r0
                for e in g.out_edges(v):
                    mr = mp[g.dst[e]]
                    yvec[row:row + mr] = points[i].weights[g.eindex[e]] * phi_col(g.dst[e], i, wi)
                    row += mr
                cols_u.append(uvec)
                cols_y.append(yvec)
        if cols_u:
            Umat = np.array(cols_u, dtype=complex).T
            Ymat = np.array(cols_y, dtype=complex).T
        else:
            Umat = np.zeros((dom, 0), dtype=complex)
            Ymat = np.zeros((cod, 0), dtype=complex)
        gram_gap = np.abs(Umat.conj().T @ Umat - Ymat.conj().T @ Ymat).max(initial=0.0)
        iso_dev = max(iso_dev, float(gram_gap))
        if gram_gap > 1e-6 * (1.0 + scale ** 2):
            raise ConditioningError(
                "lurking isometry broke at vertex %r (Gram gap %.3e)" % (v, gram_gap))
        # partial isometry on the span of the u columns
        if Umat.shape[1] and dom and np.abs(Umat).max(initial=0.0) > 0:
            W, sig, Th = np.linalg.svd(Umat, full_matrices=False)
            smax = sig[0] if sig.size else 0.0
            r = int(np.sum(sig > 1e-12 * max(1.0, smax)))
            coeff = Th[:r, :].conj().T / sig[:r]
            v0 = (Ymat @ coeff) @ W[:, :r].conj().T
        else:
            v0 = np.zeros((cod, dom), dtype=complex)
        blk, defect = _complete_block(v0)
        blocks[v] = blk

    system = _system_from_vertex_blocks(g, mp, q1t, q2t, blocks)
    val = validate_system(system, tol=max(tol, 1e-9))
    interp = 0.0
    for i in range(k):
        interp = max(interp, float(np.abs(transfer_eval(system, points[i]) - Z[i]).max(initial=0.0)))
    report = {
        "multiplicities": dict(mp),
        "gram_ranks": ranks,
        "padding": pad,
        "padding_feasible": pad_ok,
        "isometry_gap": iso_dev,
        "coisometry_residual": val["coisometry_residual"],
        "interpolation_residual": interp,
        "cp_worst_min_eig": cp["worst_min_eig"],
    }
    if interp > max(100 * tol, 1e-6) * (1.0 + scale):
        raise ConditioningError(
            "realized transfer misses the samples by %.3e" % interp)
    return system, report


# ---------------------------------------------------------------------------
# JSON form

def _c2p(z):
    return [float(np.real(z)), float(np.imag(z))]


def _mat_to_json(M):
    return [[_c2p(z) for z in row] for row in np.asarray(M)]


def _mat_from_json(rows, shape):
    M = np.zeros(shape, dtype=complex)
    arr = [[complex(p[0], p[1] if len(p) > 1 else 0.0) for p in row] for row in rows]
    got = np.array(arr, dtype=complex) if arr else np.zeros((0, 0), dtype=complex)
    if got.size == 0 and 0 in shape:
        return M
    if got.shape != shape:
        raise GraphError("matrix has shape %s, expected %s" % (got.shape, shape))
    return got


def system_to_dict(s):
    return {
        "multiplicities": {v: s.m[v] for v in s.graph.vertices},
        "q1": list(s.q1),
        "q2": list(s.q2),
        "A": {v: _c2p(a) for v, a in s.A.items()},
        "B": {v: _mat_to_json(b) for v, b in s.B.items()},
        "C": {e: _mat_to_json(c) for e, c in s.C.items()},
        "D": {e: _mat_to_json(d) for e, d in s.D.items()},
    }


def system_from_dict(g, data):
    try:
        m = {v: int(x) for v, x in data["multiplicities"].items()}
        q1 = list(data["q1"])
        q2 = list(data["q2"])
    except (KeyError, TypeError) as exc:
        raise GraphError("system dict needs multiplicities, q1, q2: %s" % exc)
    mfull = {v: m.get(v, 0) for v in g.vertices}
    A = {v: complex(p[0], p[1] if len(p) > 1 else 0.0)
         for v, p in data.get("A", {}).items()}
    B = {v: _mat_from_json(rows, (1, mfull.get(v, 0)))
         for v, rows in data.get("B", {}).items()}
    C = {e: _mat_from_json(rows, (mfull.get(g.dst.get(e), 0), 1))
         for e, rows in data.get("C", {}).items()}
    D = {e: _mat_from_json(rows, (mfull.get(g.dst.get(e), 0), mfull.get(g.src.get(e), 0)))
         for e, rows in data.get("D", {}).items()}
    return SystemMatrix(g, mfull, q1, q2, A, B, C, D)


def load_system(g, path):
    with open(path) as fh:
        return system_from_dict(g, json.load(fh))
