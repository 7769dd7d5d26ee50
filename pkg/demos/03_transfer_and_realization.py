"""
System matrices, transfer functions, realization from samples
=============================================================

A system matrix is a block colligation V = [[A,B],[C,D]] with one block
row/column per vertex and per edge fiber.  Its transfer function
A + B (I - L*D)^{-1} L*C evaluates on the dual ball, and coincides with
the sum of its own Taylor series.  Running the construction backwards,
realize_from_samples builds a system matrix from point samples.
"""

import numpy as np

from graph_hardy import (
    HardyPoly,
    evaluate_poly,
    make_dual_point,
    random_point,
    random_system,
    realize_from_samples,
    series_residual,
    taylor_poly,
    transfer_eval,
    two_vertex_example,
    validate_system,
)

g = two_vertex_example()
rng = np.random.default_rng(5)

# a random coisometric system matrix and its validation report; the
# input/output vertex sets q1, q2 are drawn along with the multiplicities
s = random_system(g, rng, mmax=3)
rep = validate_system(s)
print("multiplicities:", s.m, " q1:", s.q1, " q2:", s.q2)
print("coisometry residual: %.3e  passed: %s"
      % (rep["coisometry_residual"], rep["passed"]))

# the transfer value agrees with evaluating the degree-N Taylor polynomial
pt = random_point(g, rng, max_norm=0.5)
direct = transfer_eval(s, pt)
taylor = evaluate_poly(taylor_poly(s, 6), pt)
print("transfer vs Taylor(6):  %.3e" % np.abs(direct - taylor).max())

# partial sums converge at the geometric rate set by the point norm;
# once the tail passes ~1e-16 the measured residual sits at the
# machine-precision floor instead
for n in (5, 10, 20, 40):
    print("  series residual at N=%2d: %.3e   (geometric tail %.3e)"
          % (n, series_residual(s, pt, n), pt.norm ** (n + 1) / (1 - pt.norm)))

# --- realization from samples ---------------------------------------------
# sample the loop shift S_g at points supported on the loop; the
# canonical model is one-dimensional per vertex here, so the realized
# system reproduces held-out evaluations exactly
x = HardyPoly.shift(g, "g")
pts = [make_dual_point(g, {"g": c}) for c in (0.55, -0.35, 0.2 + 0.4j)]
vals = [evaluate_poly(x, p) for p in pts]
system, report = realize_from_samples(pts, vals, list(g.vertices), list(g.vertices))
print("\nrealizing S_g from 3 loop-supported samples:")
print("multiplicities:", report["multiplicities"],
      " interpolation residual: %.3e" % report["interpolation_residual"])

held = [make_dual_point(g, {"g": c}) for c in (0.3, -0.52, 0.1 - 0.3j)]
dev = max(np.abs(transfer_eval(system, p) - evaluate_poly(x, p)).max() for p in held)
print("held-out deviation: %.3e" % dev)

# generic samples also interpolate, but the finite model they induce is a
# data interpolant rather than the sampled polynomial: held-out agreement
# then degrades to the size of the truncation
xr = HardyPoly(g, {("e",): 0.4, ("g",): 0.3, ("e", "f"): 0.2})
pts = [random_point(g, rng, max_norm=0.5) for _ in range(4)]
vals = [evaluate_poly(xr, p) for p in pts]
system, report = realize_from_samples(pts, vals, list(g.vertices), list(g.vertices))
held = [random_point(g, rng, max_norm=0.5) for _ in range(3)]
dev = max(np.abs(transfer_eval(system, p) - evaluate_poly(xr, p)).max() for p in held)
print("\ngeneric samples: interpolation %.3e, held-out deviation %.3e"
      % (report["interpolation_residual"], dev))
