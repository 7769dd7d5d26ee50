"""Fock space of a graph and the noncommutative Hardy polynomials.

The Fock space of the edge bimodule has an orthonormal basis indexed by
all finite paths (vertices count as paths of length zero).  Each edge e
gives a creation operator

    S_e xi_beta = xi_{e beta}   if s(e) = r(beta), else 0,

and each vertex v gives the projection P_v onto the paths with range v.
These satisfy the Cuntz-Toeplitz relations: the P_v are orthogonal
projections summing to the identity, S_e* S_f = 0 for e != f,
S_e* S_e = P_{s(e)}, and for each vertex the row sum
sum_{r(e) = v} S_e S_e* is dominated by P_v.

A HardyPoly is a finitely supported coefficient map on paths; it acts on
the Fock space by concatenation, which is how all norms and relations
here are computed.  Truncating the basis at path length N compresses the
operators to a finite block; the compression kills the top degree, so
relation checks are asserted on the paths of length at most N - 1.
"""

from __future__ import annotations

import json

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg

from .graph_core import (
    GraphError,
    compose,
    is_path,
    path_basis,
    path_range,
    path_source,
)


class HardyPoly:
    """Finitely supported path -> coefficient map, multiplied by concatenation.

    Vertex paths are vertex names (str), positive-length paths are tuples
    of edge names.  Zero coefficients are dropped on construction.
    """

    def __init__(self, graph, coeffs=None):
        self.graph = graph
        clean = {}
        for path, c in (coeffs or {}).items():
            if not is_path(graph, path):
                raise GraphError("not a path of this graph: %r" % (path,))
            c = complex(c)
            if c != 0:
                clean[path] = clean.get(path, 0j) + c
        self.coeffs = clean

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, graph):
        return cls(graph, {})

    @classmethod
    def one(cls, graph):
        return cls(graph, {v: 1.0 for v in graph.vertices})

    @classmethod
    def vertex(cls, graph, v):
        """The projection P_v as a polynomial."""
        if v not in graph.vindex:
            raise GraphError("unknown vertex %r" % (v,))
        return cls(graph, {v: 1.0})

    @classmethod
    def shift(cls, graph, *edges):
        """S_alpha for the path alpha = edges (leftmost edge acts last)."""
        path = tuple(edges)
        if len(path) == 1 and isinstance(edges[0], tuple):
            path = edges[0]
        return cls(graph, {path: 1.0})

    @classmethod
    def monomial(cls, graph, path, c=1.0):
        return cls(graph, {path: c})

    # algebra --------------------------------------------------------------
    def degree(self):
        return max((0 if isinstance(p, str) else len(p) for p in self.coeffs), default=0)

    def __add__(self, other):
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, 0j) + c
        return HardyPoly(self.graph, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, 0j) - c
        return HardyPoly(self.graph, out)

    def __neg__(self):
        return HardyPoly(self.graph, {p: -c for p, c in self.coeffs.items()})

    def __mul__(self, other):
        if np.isscalar(other):
            return HardyPoly(self.graph, {p: c * other for p, c in self.coeffs.items()})
        return hardy_mul(self, other)

    def __rmul__(self, scalar):
        return HardyPoly(self.graph, {p: scalar * c for p, c in self.coeffs.items()})

    def coeff(self, path):
        return self.coeffs.get(path, 0j)

    def max_coeff(self):
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def __repr__(self):
        terms = sorted(self.coeffs.items(), key=lambda kv: (0 if isinstance(kv[0], str) else len(kv[0]), str(kv[0])))
        return "HardyPoly(%s)" % ", ".join("%r: %.4g%+.4gj" % (p, c.real, c.imag) for p, c in terms)


def hardy_mul(x, y):
    """Product by path concatenation; non-composable pairs contribute zero."""
    if x.graph != y.graph:
        raise GraphError("polynomials live on different graphs")
    out = {}
    for p, cp in x.coeffs.items():
        for q, cq in y.coeffs.items():
            pq = compose(x.graph, p, q)
            if pq is not None:
                out[pq] = out.get(pq, 0j) + cp * cq
    return HardyPoly(x.graph, out)


def fourier_coeff(x, k):
    """The degree-k homogeneous part of x (k = 0 keeps the vertex terms)."""
    sel = {p: c for p, c in x.coeffs.items()
           if (0 if isinstance(p, str) else len(p)) == k}
    return HardyPoly(x.graph, sel)


# ---------------------------------------------------------------------------
# truncated Fock space

def fock_basis(g, N):
    """All paths of length 0..N: vertices first, then by length, each level
    in the lexicographic edge-index order of path_basis."""
    basis = []
    for k in range(N + 1):
        basis.extend(path_basis(g, k))
    return basis


def fock_index(g, N):
    basis = fock_basis(g, N)
    return basis, {p: i for i, p in enumerate(basis)}


def creation_matrix(x, N):
    """Matrix of left multiplication by the HardyPoly x on paths of length <= N.

    Returns a scipy CSR matrix over fock_basis(x.graph, N).  Products that
    would leave the truncation are dropped, which is the compression of the
    true operator to the finite block.
    """
    g = x.graph
    basis, index = fock_index(g, N)
    rows, cols, vals = [], [], []
    for p, c in x.coeffs.items():
        plen = 0 if isinstance(p, str) else len(p)
        for j, beta in enumerate(basis):
            blen = 0 if isinstance(beta, str) else len(beta)
            if plen + blen > N:
                continue
            gamma = compose(g, p, beta)
            if gamma is None:
                continue
            rows.append(index[gamma])
            cols.append(j)
            vals.append(c)
    dim = len(basis)
    return sp.csr_matrix(sp.coo_matrix((vals, (rows, cols)), shape=(dim, dim), dtype=complex))


def cuntz_toeplitz_check(g, N, tol=1e-12):
    """Verify the compressed Cuntz-Toeplitz relations at truncation N >= 2.

    The compression is exact on paths of length at most N - 1, so every
    relation is restricted to that sub-block before measuring deviations.
    Returns a report dict; 'passed' is True when the worst deviation is
    below tol.
    """
    if N < 2:
        raise ValueError("need N >= 2 so the restricted block sees length-1 paths")
    basis, _ = fock_index(g, N)
    lengths = np.array([0 if isinstance(p, str) else len(p) for p in basis])
    keep = np.where(lengths <= N - 1)[0]

    S = {e.name: creation_matrix(HardyPoly.shift(g, e.name), N) for e in g.edges}
    P = {v: creation_matrix(HardyPoly.vertex(g, v), N) for v in g.vertices}

    def restrict(m):
        return m.tocsr()[keep][:, keep].toarray()

    d_proj = 0.0
    for i, u in enumerate(g.vertices):
        for v in g.vertices[i + 1:]:
            d_proj = max(d_proj, np.abs(restrict(P[u] @ P[v])).max(initial=0.0))

    d_orth = 0.0
    d_isom = 0.0
    for e in g.edges:
        for f in g.edges:
            prod = S[e.name].getH() @ S[f.name]
            if e.name == f.name:
                d_isom = max(d_isom, np.abs(restrict(prod - P[e.src])).max(initial=0.0))
            else:
                d_orth = max(d_orth, np.abs(restrict(prod)).max(initial=0.0))

    d_row = 0.0
    for v in g.vertices:
        gap = P[v].tocsr(copy=True).astype(complex)
        for e in g.edges:
            if e.dst == v:
                gap = gap - S[e.name] @ S[e.name].getH()
        sub = gap.tocsr()[keep][:, keep].toarray()
        herm = np.abs(sub - sub.conj().T).max(initial=0.0)
        eigs = np.linalg.eigvalsh(0.5 * (sub + sub.conj().T))
        d_row = max(d_row, herm, max(0.0, -float(eigs.min())))

    worst = max(d_proj, d_orth, d_isom, d_row)
    return {
        "N": N,
        "tol": tol,
        "dim": len(basis),
        "restricted_dim": len(keep),
        "deviations": {
            "orthogonal_projections": float(d_proj),
            "orthogonal_shifts": float(d_orth),
            "shift_isometries": float(d_isom),
            "row_contraction": float(d_row),
        },
        "max_deviation": float(worst),
        "passed": bool(worst < tol),
    }


def fock_norm_bound(x, N):
    """Operator norm of the compression of x to paths of length <= N.

    This is a lower bound for the Hardy-algebra norm of x, and it is
    monotone nondecreasing in N because the compressions are nested.
    """
    m = creation_matrix(x, N)
    if m.nnz == 0:
        return 0.0
    dim = m.shape[0]
    if dim <= 600:
        return float(np.linalg.svd(m.toarray(), compute_uv=False)[0])
    try:
        s = scipy.sparse.linalg.svds(m, k=1, return_singular_vectors=False)
        return float(s[0])
    except Exception:
        return float(np.linalg.svd(m.toarray(), compute_uv=False)[0])


def certify_contraction(x, N, slack=1e-6):
    """Rescale x by 1 / (fock_norm_bound(x, N) * (1 + slack)).

    The bound is only a lower bound for the true norm, so the rescaled
    polynomial is a certified contraction once N is large enough that the
    compression norm has converged to within the slack.  Returns
    (rescaled_poly, bound).
    """
    bound = fock_norm_bound(x, N)
    if bound == 0.0:
        return x, 0.0
    return x * (1.0 / (bound * (1.0 + slack))), bound


def random_poly(g, rng, degree=2, scale=1.0):
    """Random polynomial with independent complex Gaussian coefficients on
    every path of length <= degree."""
    coeffs = {}
    for k in range(degree + 1):
        for p in path_basis(g, k):
            c = (rng.standard_normal() + 1j * rng.standard_normal()) * scale
            coeffs[p] = c
    return HardyPoly(g, coeffs)


# ---------------------------------------------------------------------------
# JSON form

def poly_to_terms(x):
    terms = []
    for p, c in x.coeffs.items():
        if isinstance(p, str):
            key = {"vertex": p}
        else:
            key = list(p)
        terms.append({"path": key, "re": float(c.real), "im": float(c.imag)})
    terms.sort(key=lambda t: (isinstance(t["path"], list), str(t["path"])))
    return terms


def poly_from_terms(g, terms):
    coeffs = {}
    for t in terms:
        key = t["path"]
        if isinstance(key, dict):
            path = key["vertex"]
        else:
            path = tuple(key)
        c = complex(t.get("re", 0.0), t.get("im", 0.0))
        coeffs[path] = coeffs.get(path, 0j) + c
    return HardyPoly(g, coeffs)


def load_poly(g, path):
    with open(path) as fh:
        return poly_from_terms(g, json.load(fh))
