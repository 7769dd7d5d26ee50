"""
The automorphism family of the two-vertex worked graph
======================================================

On the graph with edges e: v->w, f: w->v, g: w->w, each loop weight
lambda (|lambda| < 1) induces an automorphism of the Hardy algebra.  The
generator images are infinite series in the loop; their truncations
evaluate, at every dual point, to the entries of a closed-form matrix,
up to a geometric tail.  The commutator of S_g with S_e S_f generates
the ideal of elements vanishing at every point.
"""

import numpy as np

from graph_hardy import (
    HardyPoly,
    evaluate_poly,
    kernel_ideal_check,
    random_point,
    tau_lambda_matrix,
    two_vertex_alpha_lambda,
    two_vertex_example,
)

g = two_vertex_example()
lam = 0.5 + 0.2j
N = 25

te, tf, tg = two_vertex_alpha_lambda(lam, N)
print("T(e) truncation has %d terms; leading coefficients:" % len(te.coeffs))
for path in [("e",), ("g", "e"), ("g", "g", "e")]:
    print("   %-16s %s" % ("".join(path), np.round(te.coeff(path), 6)))
print("T(f) is exactly -S_f:", tf.coeffs == {("f",): -1.0})
print("T(g) starts with the vertex term %s and the loop term %s"
      % (np.round(tg.coeff("w"), 6), np.round(tg.coeff(("g",)), 6)))

# evaluating the truncations against the closed-form matrix
rng = np.random.default_rng(3)
iv, iw = g.vindex["v"], g.vindex["w"]
print("\npointwise agreement with the closed form (10 random points):")
worst = 0.0
for _ in range(10):
    p = random_point(g, rng, max_norm=0.8)
    tau = tau_lambda_matrix(lam, p)
    dev = max(abs(evaluate_poly(te, p)[iw, iv] - tau[iw, g.eindex["e"]]),
              abs(evaluate_poly(tf, p)[iv, iw] - tau[iv, g.eindex["f"]]),
              abs(evaluate_poly(tg, p)[iw, iw] - tau[iw, g.eindex["g"]]))
    worst = max(worst, dev)
lr = abs(lam) * 0.8
print("worst deviation: %.3e   geometric tail bound: %.3e"
      % (worst, lr ** N / (1 - lr)))

# the vanishing ideal: [S_g, S_e S_f] and random multiples of it evaluate
# to zero at every dual point
pts = [random_point(g, rng, max_norm=0.85) for _ in range(10)]
rep = kernel_ideal_check(pts, rng=rng, n_multiples=10)
print("\nkernel ideal check: generator max %.3e, multiples max %.3e, passed %s"
      % (rep["generator_max"], rep["multiples_max"], rep["passed"]))

# the generator in coefficients: S_g S_e S_f - S_e S_f S_g
sg, se, sf = (HardyPoly.shift(g, n) for n in "gef")
K = sg * (se * sf) - (se * sf) * sg
print("generator paths:", sorted("".join(p) for p in K.coeffs))
