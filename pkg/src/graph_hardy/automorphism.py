"""Gauge unitaries of the edge bimodule and the induced automorphisms.

A bimodule unitary u acts on edge functions and commutes with both
vertex actions, so it decomposes over the parallel classes: for each
ordered vertex pair (src, dst) it restricts to a unitary on the span of
the edges with that source and range.  Such a u induces an automorphism
alpha_u of the Hardy algebra by S_e |-> S_{u delta_e} on the generators
and P_v |-> P_v; composing with the Mobius involution of a central
point gives the full automorphism group action used here.

The two-vertex worked example (e: v -> w, f: w -> v, g: w -> w) has a
one-parameter Mobius family alpha_lambda indexed by the loop weight.
Its action on the generators, written in the Fock picture, is

    T(e) = -(1 - |lambda|^2)^{1/2} sum_k (lambda S_g)^k S_e
    T(f) = -S_f
    T(g) =  (conj(lambda) P_w - S_g) sum_k (lambda S_g)^k

and evaluating T at a dual point reproduces the closed-form Mobius
matrix entries.  At lambda = 0 all three generators are negated,
matching g_0 = -id.
"""

from __future__ import annotations

import numpy as np

from .graph_core import GraphError, two_vertex_example
from .dual_eval import DualPoint, evaluate_poly
from .fock import HardyPoly, random_poly
from .mobius import CentralPoint, mobius_matrix
from .pick_kernel import StructuralError


class BimoduleUnitary:
    """Block unitary over the parallel edge classes of a graph.

    blocks: dict (src, dst) -> (tuple of edge names, unitary ndarray).
    Every parallel class with at least one edge must be covered exactly
    once, the listed edges must be exactly that class, and each matrix
    must be unitary within utol.
    """

    def __init__(self, graph, blocks, utol=1e-12):
        self.graph = graph
        classes = {}
        for e in graph.edges:
            classes.setdefault((e.src, e.dst), []).append(e.name)
        got = {}
        for key, (edges, mat) in blocks.items():
            key = (str(key[0]), str(key[1]))
            if key not in classes:
                raise GraphError("no edges from %r to %r" % key)
            if sorted(edges) != sorted(classes[key]):
                raise GraphError("block %r must list exactly the parallel edges %r"
                                 % (key, classes[key]))
            mat = np.asarray(mat, dtype=complex)
            d = len(edges)
            if mat.shape != (d, d):
                raise GraphError("block %r must be %d x %d" % (key, d, d))
            dev = float(np.abs(mat @ mat.conj().T - np.eye(d)).max(initial=0.0))
            dev = max(dev, float(np.abs(mat.conj().T @ mat - np.eye(d)).max(initial=0.0)))
            if dev > utol:
                raise GraphError("block %r is not unitary (deviation %.3e)" % (key, dev))
            got[key] = (tuple(edges), mat)
        missing = set(classes) - set(got)
        if missing:
            raise GraphError("missing unitary blocks for classes %s" % sorted(missing))
        self.blocks = got

    def full_matrix(self):
        """ne x ne matrix: entry (f, e) is the coefficient of delta_f in
        u(delta_e); block diagonal over parallel classes."""
        g = self.graph
        U = np.zeros((g.ne, g.ne), dtype=complex)
        for (edges, mat) in self.blocks.values():
            idx = [g.eindex[e] for e in edges]
            U[np.ix_(idx, idx)] = mat
        return U


def identity_unitary(g):
    blocks = {}
    for e in g.edges:
        blocks.setdefault((e.src, e.dst), []).append(e.name)
    return BimoduleUnitary(g, {k: (tuple(v), np.eye(len(v))) for k, v in blocks.items()})


def diagonal_unitary(g, phases):
    """u(delta_e) = phases[e] delta_e; every phase must be unimodular."""
    blocks = {}
    for e in g.edges:
        blocks.setdefault((e.src, e.dst), []).append(e.name)
    out = {}
    for key, edges in blocks.items():
        out[key] = (tuple(edges), np.diag([complex(phases.get(e, 1.0)) for e in edges]))
    return BimoduleUnitary(g, out)


def unitary_from_dict(g, data):
    """JSON form: {"blocks": [{"src": .., "dst": .., "edges": [..],
    "matrix": [[[re, im], ..], ..]}, ..]}."""
    try:
        items = data["blocks"]
    except (KeyError, TypeError):
        raise GraphError("bimodule unitary dict must have a 'blocks' entry")
    blocks = {}
    for item in items:
        mat = np.array([[complex(p[0], p[1] if len(p) > 1 else 0.0) for p in row]
                        for row in item["matrix"]], dtype=complex)
        blocks[(item["src"], item["dst"])] = (tuple(item["edges"]), mat)
    return BimoduleUnitary(g, blocks)


def unitary_to_dict(u):
    out = []
    for (src, dst), (edges, mat) in sorted(u.blocks.items()):
        out.append({
            "src": src, "dst": dst, "edges": list(edges),
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in mat],
        })
    return {"blocks": out}


def apply_alpha_u(u, x):
    """alpha_u on a HardyPoly: substitute S_e -> sum_f U[f, e] S_f in every
    path term and keep vertex terms fixed."""
    g = u.graph
    if x.graph != g:
        raise GraphError("polynomial lives on a different graph")
    U = u.full_matrix()
    out = {}
    for p, c in x.coeffs.items():
        if isinstance(p, str):
            out[p] = out.get(p, 0j) + c
            continue
        # expand the tensor product of the per-edge images
        partial = {(): c}
        for e in p:
            col = U[:, g.eindex[e]]
            nxt = {}
            for prefix, amp in partial.items():
                for fi in np.nonzero(col)[0]:
                    f = g.edges[fi].name
                    nxt[prefix + (f,)] = nxt.get(prefix + (f,), 0j) + amp * col[fi]
            partial = nxt
        for q, amp in partial.items():
            if amp != 0:
                out[q] = out.get(q, 0j) + amp
    return HardyPoly(g, out)


def pullback_evaluate(gamma, u, x, point):
    """Value of the automorphism image of x at a dual point, computed by
    moving the point instead of the polynomial.

    The gauge layer sends the evaluation weights w to U^H w, and the
    Mobius layer moves the result by g_gamma; combined, the matrix
    M = g_gamma(eta*) U has the image point's conjugated weights on its
    edge support.  gamma may be None for the pure gauge action composed
    with the central inversion at 0.
    """
    g = x.graph
    if gamma is None:
        gamma = CentralPoint(g, {})
    M = mobius_matrix(gamma, point) @ u.full_matrix()
    support = np.zeros((g.nv, g.ne), dtype=bool)
    for i, e in enumerate(g.edges):
        support[g.vindex[e.dst], i] = True
    off = float(np.abs(np.where(support, 0.0, M)).max(initial=0.0))
    if off > 1e-12 * (1.0 + float(np.abs(M).max(initial=0.0))):
        raise StructuralError("pulled-back point leaks off the edge support by %.3e" % off)
    weights = np.array([np.conj(M[g.vindex[e.dst], i]) for i, e in enumerate(g.edges)])
    moved = DualPoint(g, weights, allow_boundary=point.norm >= 1.0 - 1e-12)
    return evaluate_poly(x, moved)


# ---------------------------------------------------------------------------
# the two-vertex worked example

def _check_two_vertex(g):
    ref = two_vertex_example()
    if g is None:
        return ref
    if g != ref:
        raise GraphError("this construction is specific to the standard "
                         "two-vertex graph (e: v->w, f: w->v, g: w->w)")
    return g


def two_vertex_alpha_lambda(lam, N, graph=None):
    """Generator images (T(e), T(f), T(g)) of the Mobius automorphism of
    the two-vertex example, truncated at path length N.

    T(e) = -(1-|lam|^2)^{1/2} sum_{k<N} lam^k S_{g^k e}
    T(f) = -S_f
    T(g) = conj(lam) P_w - (1-|lam|^2) sum_{1<=j<=N} lam^{j-1} S_{g^j}

    The geometric tails are dropped; evaluating at a point with loop
    weight c leaves a truncation error O(|lam c|^N).
    """
    g = _check_two_vertex(graph)
    lam = complex(lam)
    if abs(lam) >= 1.0:
        raise ValueError("|lambda| must be < 1")
    root = np.sqrt(1.0 - abs(lam) ** 2)
    te = {}
    for k in range(N):
        te[("g",) * k + ("e",)] = -root * lam ** k
    tf = {("f",): -1.0}
    tg = {"w": np.conj(lam)}
    for j in range(1, N + 1):
        tg[("g",) * j] = -(1.0 - abs(lam) ** 2) * lam ** (j - 1)
    return HardyPoly(g, te), HardyPoly(g, tf), HardyPoly(g, tg)


def tau_lambda_matrix(lam, point):
    """Closed form of the two-vertex Mobius map: the nv x ne matrix whose
    (r(e'), e') entries are the conjugated weights of the image point.

    Columns e, f, g; with a, b, c the weights of the point,
        row v:  (0, -conj(b), 0)
        row w:  (-conj(a) sqrt(1-|lam|^2) / (1 - lam conj(c)),  0,
                 (conj(lam) - conj(c)) / (1 - lam conj(c))).
    """
    g = _check_two_vertex(point.graph)
    lam = complex(lam)
    a, b, c = (point.weight("e"), point.weight("f"), point.weight("g"))
    den = 1.0 - lam * np.conj(c)
    M = np.zeros((2, 3), dtype=complex)
    M[g.vindex["v"], g.eindex["f"]] = -np.conj(b)
    M[g.vindex["w"], g.eindex["e"]] = -np.conj(a) * np.sqrt(1.0 - abs(lam) ** 2) / den
    M[g.vindex["w"], g.eindex["g"]] = (np.conj(lam) - np.conj(c)) / den
    return M


def kernel_ideal_check(samples, rng=None, n_multiples=10, degree=2, tol=1e-13):
    """Evaluate the commutator [S_g, S_e S_f] and random two-sided
    multiples of it at the given dual points of the two-vertex example.

    The commutator generates the kernel of the evaluation at every
    central point, and in fact every evaluation here kills it, so all
    values must vanish to rounding error.
    """
    if not samples:
        raise ValueError("need at least one sample point")
    g = _check_two_vertex(samples[0].graph)
    if rng is None:
        rng = np.random.default_rng(0)
    sg = HardyPoly.shift(g, "g")
    sef = HardyPoly.shift(g, "e") * HardyPoly.shift(g, "f")
    K = sg * sef - sef * sg
    gen_max = 0.0
    for pt in samples:
        gen_max = max(gen_max, float(np.abs(evaluate_poly(K, pt)).max(initial=0.0)))
    mult_max = 0.0
    for _ in range(n_multiples):
        a = random_poly(g, rng, degree=degree, scale=0.5)
        b = random_poly(g, rng, degree=degree, scale=0.5)
        y = a * K * b
        for pt in samples:
            mult_max = max(mult_max, float(np.abs(evaluate_poly(y, pt)).max(initial=0.0)))
    worst = max(gen_max, mult_max)
    return {
        "generator_max": gen_max,
        "multiples_max": mult_max,
        "max_abs": worst,
        "n_samples": len(samples),
        "n_multiples": n_multiples,
        "tol": tol,
        "passed": bool(worst < tol),
    }
