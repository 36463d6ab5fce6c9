import math

import numpy as np
import pytest

import quasilat as ql


def closed_form_gram(pts):
    """Analytic <pi(z')g, pi(z)g> for the unit Gaussian, rows z, columns z'."""
    x, w = pts[:, 0], pts[:, 1]
    dx = x[None, :] - x[:, None]
    dw = w[None, :] - w[:, None]
    sx = x[None, :] + x[:, None]
    return np.exp(1j * math.pi * dw * sx) * np.exp(-math.pi * (dx ** 2 + dw ** 2) / 2.0)


def sparse_system(grid12):
    lat = ql.Lattice(np.diag([2.0, 2.0]))
    pts = ql.lattice_points_in_box(lat, 4.0)
    return ql.GaborSystem(ql.gaussian_window(grid12), pts)


def test_grid_spec_properties():
    grid = ql.GridSpec(12.0, 0.01)
    assert grid.size == 2401
    assert grid.times[0] == pytest.approx(-12.0)
    assert grid.times[-1] == pytest.approx(12.0)
    assert grid.xi_max == pytest.approx(25.0)
    assert grid.quad_weights.sum() == pytest.approx(24.0)
    with pytest.raises(ValueError):
        ql.GridSpec(1.0, 2.0)
    with pytest.raises(ValueError):
        ql.GridSpec(1.0, 0.3)  # only 7 samples


def test_gaussian_is_normalized(gauss12):
    assert gauss12.norm() == pytest.approx(1.0, abs=1e-12)


def test_hermite_orthonormality(grid12):
    basis = ql.hermite_basis(grid12, 12)
    G = np.array([[ql.inner(a, b) for b in basis] for a in basis])
    assert np.max(np.abs(G - np.eye(12))) < 1e-8
    with pytest.raises(ValueError):
        ql.hermite_basis(grid12, 0)


def test_inner_product_symmetry(grid12, gauss12):
    h1 = ql.hermite_basis(grid12, 2)[1]
    mixed = ql.tf_shift(gauss12, 0.13, 0.4)
    assert ql.inner(mixed, h1) == pytest.approx(np.conj(ql.inner(h1, mixed)))
    other = ql.Waveform(ql.GridSpec(12.0, 0.02), np.zeros(1201))
    with pytest.raises(ValueError):
        ql.inner(gauss12, other)


def test_tf_shift_on_grid_is_exact(grid12, gauss12):
    x = 0.07  # exactly 7 grid steps
    shifted = ql.tf_shift(gauss12, x, 0.0)
    t = grid12.times
    ref = (2.0 ** 0.25) * np.exp(-math.pi * (t - x) ** 2)
    assert np.max(np.abs(shifted.samples - ref)) < 1e-12


def test_tf_shift_off_grid_within_budget(grid12, gauss12):
    x = 0.0051  # misses every grid node
    shifted = ql.tf_shift(gauss12, x, 0.0)
    t = grid12.times
    ref = (2.0 ** 0.25) * np.exp(-math.pi * (t - x) ** 2)
    err = math.sqrt(float(np.sum(grid12.quad_weights
                                 * np.abs(shifted.samples - ref) ** 2)))
    assert err < 1e-6


def test_modulation_is_exact(grid12, gauss12):
    out = ql.tf_shift(gauss12, 0.0, 3.0)
    ref = gauss12.samples * np.exp(2j * math.pi * 3.0 * grid12.times)
    assert np.max(np.abs(out.samples - ref)) < 1e-12
    assert out.norm() == pytest.approx(1.0, abs=1e-12)


def test_shift_range_guards(gauss12):
    with pytest.raises(ql.ShiftRangeError):
        ql.tf_shift(gauss12, 6.5, 0.0)
    with pytest.raises(ql.ShiftRangeError):
        ql.tf_shift(gauss12, 0.0, 26.0)


def test_cocycle_values():
    assert ql.cocycle((0.5, 0.3), (0.7, 0.5)) == pytest.approx(-1j)
    assert ql.cocycle((0.0, 1.0), (1.0, 0.0)) == pytest.approx(1.0)
    x, xi = 0.31, 1.7
    assert ql.cocycle((x, 0.0), (0.0, xi)) == pytest.approx(
        np.exp(-2j * math.pi * xi * x))


def test_composition_identity_on_grid(grid12, gauss12):
    z, zp = (0.25, 1.5), (-0.13, 0.8)
    lhs = ql.tf_shift(ql.tf_shift(gauss12, zp[0], zp[1]), z[0], z[1])
    rhs = ql.tf_shift(gauss12, z[0] + zp[0], z[1] + zp[1])
    sigma = ql.cocycle(z, zp)
    err = np.max(np.abs(lhs.samples - sigma * rhs.samples))
    assert err < 1e-10


def test_orthogonality_relation_unit_value(grid12, gauss12):
    val = ql.orthogonality_check(gauss12, gauss12, tf_grid_step=0.5, tf_radius=4.0)
    assert val == pytest.approx(1.0, rel=0.01)


def test_system_requires_2d_points(gauss12):
    with pytest.raises(ValueError):
        ql.GaborSystem(gauss12, ql.from_points([0.0, 1.0]))


def test_synthesis_columns_are_unit_atoms(grid12, gauss12):
    sys = sparse_system(grid12)
    V = sys.synthesis_matrix()
    norms = np.linalg.norm(V, axis=0)
    assert np.max(np.abs(norms - 1.0)) < 1e-10
    assert sys.synthesis_matrix() is V  # cached
    bad = ql.GaborSystem(gauss12, ql.from_points([[20.0, 0.0]]))
    with pytest.raises(ql.ShiftRangeError):
        bad.synthesis_matrix()


def test_gram_matches_closed_form(grid12):
    sys = ql.GaborSystem(ql.gaussian_window(grid12),
                         ql.lattice_points_in_box(ql.Lattice(np.diag([2.0, 1.0])), 2.0))
    G = ql.gram_matrix(sys)
    ref = closed_form_gram(sys.points.points)
    assert np.max(np.abs(G - ref)) < 1e-9
    with pytest.raises(ValueError, match="cap"):
        ql.gram_matrix(sys, max_points=2)


def test_frame_bounds_monotone_sweeps():
    grid = ql.GridSpec(20.0, 0.01)
    lat = ql.Lattice(np.diag([2.0 ** -0.5, 2.0 ** -0.5]))
    sys = ql.GaborSystem(ql.gaussian_window(grid),
                         ql.lattice_points_in_box(lat, 10.0))
    fb = ql.frame_bounds(sys, 20, n_step=5)
    assert fb.converged
    assert 0.5 < fb.A_est <= fb.B_est < 4.0
    assert all(a1 <= a0 + 1e-10 for a0, a1 in zip(fb.A_sweep, fb.A_sweep[1:]))
    assert all(b1 >= b0 - 1e-10 for b0, b1 in zip(fb.B_sweep, fb.B_sweep[1:]))
    assert fb.test_sizes[-1] == 20


def test_frame_bounds_guard(grid12, gauss12):
    sys = sparse_system(grid12)  # truncation 4 < sqrt(60/pi) + 6
    with pytest.raises(ql.TruncationTooSmallError):
        ql.frame_bounds(sys, 60)


def test_riesz_bounds_nearly_orthonormal(grid12):
    sys = sparse_system(grid12)
    rb = ql.riesz_bounds(sys, edge_margin=0.0)
    assert rb.subspace_dim == 25
    assert rb.A_est == pytest.approx(1.0, abs=0.02)
    assert rb.B_est == pytest.approx(1.0, abs=0.02)
    with pytest.raises(ValueError):
        ql.riesz_bounds(sys, edge_margin=10.0)


def test_biorthogonal_dual_properties(grid12, gauss12):
    sys = sparse_system(grid12)
    dual = ql.biorthogonal_dual(sys)
    assert dual.biorth_residual < 1e-10
    norms_sq = [w.norm() ** 2 for w in dual.duals]
    assert max(norms_sq) == pytest.approx(dual.B_sup, rel=1e-9)
    # spot-check biorthogonality with independently built atoms
    pts = sys.points.points
    for i in (0, 12):
        atom = ql.tf_shift(gauss12, pts[i, 0], pts[i, 1])
        assert abs(ql.inner(atom, dual.duals[i]) - 1.0) < 1e-8
        assert abs(ql.inner(atom, dual.duals[(i + 3) % 25])) < 1e-8


def test_near_duplicate_points_not_minimal(grid12, gauss12):
    pts = ql.from_points([[0.0, 0.0], [1e-6, 0.0]], truncation_radius=1.0)
    sys = ql.GaborSystem(gauss12, pts)
    with pytest.raises(ql.NotMinimalError):
        ql.biorthogonal_dual(sys)


def test_uniform_min_delta(grid12, gauss12):
    sys = sparse_system(grid12)
    delta = ql.uniform_min_delta(sys)
    assert delta == pytest.approx(1.0, abs=0.01)
    single = ql.GaborSystem(gauss12, ql.from_points([[0.0, 0.0]], truncation_radius=1.0))
    assert ql.uniform_min_delta(single) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValueError):
        ql.uniform_min_delta(sys, interior_margin=100.0)


def test_hap_residual_behaviour(grid12, gauss12):
    sys = sparse_system(grid12)
    at_node = ql.hap_residual(sys, gauss12, (0.0, 0.0), 3.0)
    assert at_node < 1e-10  # pi(0) g belongs to the local family
    off = (0.3, 0.4)
    r_small = ql.hap_residual(sys, gauss12, off, 2.0)
    r_large = ql.hap_residual(sys, gauss12, off, 3.5)
    assert r_large <= r_small + 1e-12
    with pytest.raises(ql.InsufficientTruncationError):
        ql.hap_residual(sys, gauss12, (3.0, 3.0), 2.0)


def test_completeness_residual_basics(grid12, gauss12):
    sys = sparse_system(grid12)
    res = ql.completeness_residual(sys, [gauss12])
    assert res < 1e-10  # the window itself sits in the family
    probes = ql.hermite_basis(grid12, 3)
    assert ql.completeness_residual(sys, probes) >= 0.0
    with pytest.raises(ValueError):
        ql.completeness_residual(sys, [])


def test_formal_degree_constant():
    assert ql.D_PI == 1.0
