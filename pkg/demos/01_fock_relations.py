"""
Creation operators on the path Fock space
=========================================

Build the two-vertex worked graph (edges e: v->w, f: w->v, and a loop
g: w->w), enumerate its path Fock space, and check the compressed
creation-operator relations.
"""

import numpy as np

from graph_hardy import (
    HardyPoly,
    creation_matrix,
    cuntz_toeplitz_check,
    fock_basis,
    fock_norm_bound,
    path_basis,
    two_vertex_example,
)

g = two_vertex_example()
print("vertices:", g.vertices)
print("edges:   ", [(e.name, e.src, e.dst) for e in g.edges])

# paths of each length; the counts grow like the Fibonacci numbers
# because the adjacency matrix is [[0,1],[1,1]]
for k in range(6):
    print("length %d: %2d paths  %s" % (k, len(path_basis(g, k)),
                                        path_basis(g, k) if k <= 3 else "..."))

# the Fock space truncated at length N carries one coordinate per path
N = 4
basis = fock_basis(g, N)
print("\ntruncated Fock dimension at N=%d: %d" % (N, len(basis)))

# creation operators prepend an edge to a path when the endpoints match;
# as sparse matrices they are partial permutations
Se = creation_matrix(HardyPoly.shift(g, "e"), N)
print("S_e has %d nonzero entries, all equal to 1" % Se.nnz)

# compressed Cuntz-Toeplitz relations: vertex projections are orthogonal,
# shifts with different edges have orthogonal ranges, each shift is an
# isometry from its source projection, and the row of shifts entering a
# vertex is a contraction.  Compression to length <= N kills the top
# degree, so the relations are asserted on paths of length <= N-1.
rep = cuntz_toeplitz_check(g, N)
print("\ncompressed relations at N=%d (restricted dim %d of %d):"
      % (N, rep["restricted_dim"], rep["dim"]))
for name, dev in rep["deviations"].items():
    print("  %-24s %.3e" % (name, dev))
print("max deviation:", rep["max_deviation"], "passed:", rep["passed"])

# compression norms are lower bounds that increase with N; for the loop
# shift the bound is exactly 1 already at small N
for x, label in [(HardyPoly.shift(g, "g"), "S_g"),
                 (HardyPoly.one(g) + HardyPoly.shift(g, "g"), "1 + S_g")]:
    bounds = [fock_norm_bound(x, n) for n in (2, 4, 8, 12)]
    print("\nnorm bounds for %-7s at N=2,4,8,12: %s" % (label, np.round(bounds, 6)))
