"""Hardy polynomials and the truncated Fock space."""

import json

import numpy as np
import pytest

from graph_hardy import (
    Graph,
    GraphError,
    HardyPoly,
    certify_contraction,
    creation_matrix,
    cuntz_toeplitz_check,
    fock_basis,
    fock_norm_bound,
    fourier_coeff,
    poly_from_terms,
    poly_to_terms,
    random_poly,
    two_vertex_example,
)
from graph_hardy.fock import fock_index, load_poly
from conftest import random_graph


@pytest.fixture
def g2():
    return two_vertex_example()


def test_poly_constructors(g2):
    one = HardyPoly.one(g2)
    assert one.coeffs == {"v": 1.0, "w": 1.0}
    assert HardyPoly.zero(g2).coeffs == {}
    assert HardyPoly.vertex(g2, "w").coeffs == {"w": 1.0}
    assert HardyPoly.shift(g2, "e", "f").coeffs == {("e", "f"): 1.0}
    assert HardyPoly.shift(g2, ("f", "g")).coeffs == {("f", "g"): 1.0}
    assert HardyPoly.monomial(g2, "v", 0.0).coeffs == {}  # zeros dropped
    with pytest.raises(GraphError):
        HardyPoly(g2, {("e", "e"): 1.0})
    with pytest.raises(GraphError):
        HardyPoly.vertex(g2, "z")


def test_product_frozen(g2):
    se = HardyPoly.shift(g2, "e")
    sf = HardyPoly.shift(g2, "f")
    pv = HardyPoly.vertex(g2, "v")
    pw = HardyPoly.vertex(g2, "w")
    assert ((se + pv) * sf).coeffs == {("e", "f"): 1.0, ("f",): 1.0}
    assert (se * se).coeffs == {}            # e does not follow e
    assert (sf * se).coeffs == {("f", "e"): 1.0}
    assert (pw * se).coeffs == {("e",): 1.0}  # r(e) = w
    assert (pv * se).coeffs == {}
    assert (se * pv).coeffs == {("e",): 1.0}  # s(e) = v
    unit = HardyPoly.one(g2)
    x = HardyPoly(g2, {"v": 2.0, ("e",): 3.0, ("f", "g"): -1.0})
    assert (unit * x).coeffs == x.coeffs
    assert (x * unit).coeffs == x.coeffs


def test_algebra_ops(g2):
    x = HardyPoly(g2, {"v": 1.0, ("e",): 2.0})
    y = HardyPoly(g2, {"v": -1.0, ("g",): 1.0j})
    assert (x + y).coeffs == {("e",): 2.0, ("g",): 1.0j}
    assert (x - x).coeffs == {}
    assert (-y).coeffs == {"v": 1.0, ("g",): -1.0j}
    assert (2.0 * x).coeffs == {"v": 2.0, ("e",): 4.0}
    assert (x * 0.5).coeffs == {"v": 0.5, ("e",): 1.0}
    assert x.degree() == 1
    assert HardyPoly.zero(g2).degree() == 0
    assert x.coeff(("e",)) == 2.0 and x.coeff(("f",)) == 0j
    assert x.max_coeff() == 2.0


def test_fourier_coeff(g2):
    x = HardyPoly(g2, {"v": 1.0, ("e",): 2.0, ("e", "f"): 3.0})
    assert fourier_coeff(x, 0).coeffs == {"v": 1.0}
    assert fourier_coeff(x, 1).coeffs == {("e",): 2.0}
    assert fourier_coeff(x, 2).coeffs == {("e", "f"): 3.0}
    assert fourier_coeff(x, 3).coeffs == {}


def test_fock_basis_frozen(g2):
    basis = fock_basis(g2, 2)
    assert basis == ["v", "w", ("e",), ("f",), ("g",),
                     ("e", "f"), ("f", "e"), ("f", "g"), ("g", "e"), ("g", "g")]


def test_creation_matrix_frozen(g2):
    basis, index = fock_index(g2, 2)
    Se = creation_matrix(HardyPoly.shift(g2, "e"), 2).toarray()
    # S_e sends a path with range v to e followed by that path
    assert Se[index[("e",)], index["v"]] == 1.0
    assert Se[index[("e", "f")], index[("f",)]] == 1.0
    assert np.count_nonzero(Se) == 2
    Pv = creation_matrix(HardyPoly.vertex(g2, "v"), 2).toarray()
    on = {index["v"], index[("f",)], index[("f", "e")], index[("f", "g")]}
    for i in range(len(basis)):
        for j in range(len(basis)):
            expected = 1.0 if (i == j and i in on) else 0.0
            assert Pv[i, j] == expected


def test_creation_matrix_multiplicative_on_low_degrees(g2):
    rng = np.random.default_rng(2)
    N = 4
    basis, _ = fock_index(g2, N)
    lengths = np.array([0 if isinstance(p, str) else len(p) for p in basis])
    x = random_poly(g2, rng, degree=1)
    y = random_poly(g2, rng, degree=1)
    Mx = creation_matrix(x, N).toarray()
    My = creation_matrix(y, N).toarray()
    Mxy = creation_matrix(x * y, N).toarray()
    cols = lengths <= N - 2  # products cannot overflow the truncation there
    np.testing.assert_allclose(Mxy[:, cols], (Mx @ My)[:, cols], atol=1e-13)


def test_cuntz_toeplitz_two_vertex_exact(g2):
    rep = cuntz_toeplitz_check(g2, 4)
    assert rep["max_deviation"] == 0.0
    assert rep["passed"]
    assert rep["dim"] == 2 + 3 + 5 + 8 + 13
    assert rep["restricted_dim"] == 2 + 3 + 5 + 8
    with pytest.raises(ValueError):
        cuntz_toeplitz_check(g2, 1)


def test_cuntz_toeplitz_random_graphs():
    rng = np.random.default_rng(17)
    for _ in range(5):
        g = random_graph(rng)
        rep = cuntz_toeplitz_check(g, 3)
        assert rep["max_deviation"] < 1e-12


def test_norm_bound_shift_and_scaling(g2):
    se = HardyPoly.shift(g2, "e")
    assert abs(fock_norm_bound(se, 3) - 1.0) < 1e-12
    assert abs(fock_norm_bound(2.0 * se, 3) - 2.0) < 1e-12
    assert fock_norm_bound(HardyPoly.zero(g2), 3) == 0.0


def test_norm_bound_classical_oracle():
    # one loop: 1 + S_z compresses to I + (lower shift) on C^{N+1}; the true
    # norm is the sup of |1 + z| on the circle, which is 2
    g = Graph(["u"], [("z", "u", "u")])
    x = HardyPoly(g, {"u": 1.0, ("z",): 1.0})
    bounds = [fock_norm_bound(x, N) for N in (2, 4, 8, 12)]
    for lo, hi in zip(bounds, bounds[1:]):
        assert lo <= hi + 1e-12          # monotone in N
    assert bounds[-1] <= 2.0 + 1e-12     # never exceeds the true norm
    assert bounds[-1] > 1.95             # and converges towards it


def test_norm_bound_monotone_random(g2):
    rng = np.random.default_rng(23)
    for _ in range(3):
        x = random_poly(g2, rng, degree=2)
        b1, b2, b3 = (fock_norm_bound(x, N) for N in (3, 5, 8))
        assert b1 <= b2 + 1e-10 and b2 <= b3 + 1e-10


def test_certify_contraction(g2):
    rng = np.random.default_rng(29)
    x = random_poly(g2, rng, degree=2)
    xc, bound = certify_contraction(x, 8)
    assert bound > 0
    assert fock_norm_bound(xc, 8) <= 1.0
    z, zb = certify_contraction(HardyPoly.zero(g2), 5)
    assert zb == 0.0 and z.coeffs == {}


def test_random_poly_covers_all_paths(g2):
    rng = np.random.default_rng(31)
    x = random_poly(g2, rng, degree=2)
    assert x.degree() == 2
    assert len(x.coeffs) == 2 + 3 + 5


def test_poly_json_roundtrip(tmp_path, g2):
    x = HardyPoly(g2, {"v": 1.5, ("e",): 2.0 - 1.0j, ("f", "g"): 0.25j})
    terms = poly_to_terms(x)
    y = poly_from_terms(g2, terms)
    assert y.coeffs == x.coeffs
    path = tmp_path / "poly.json"
    path.write_text(json.dumps(terms))
    assert load_poly(g2, str(path)).coeffs == x.coeffs


def test_poly_graph_mismatch(g2):
    other = Graph(["u"], [("z", "u", "u")])
    with pytest.raises(GraphError):
        HardyPoly.shift(g2, "e") * HardyPoly.vertex(other, "u")
