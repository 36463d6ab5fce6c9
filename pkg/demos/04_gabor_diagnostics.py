"""Diagnose coherent Gabor systems pi(x, xi) g over 2d time-frequency node sets.

The density of the node set controls which properties are attainable:
oversampled Gaussian systems are frames, undersampled ones leave holes the
finite sections expose, and sparse interior families are Riesz with a
well-conditioned biorthogonal dual.
"""

import math

import numpy as np

import quasilat as ql


def lattice_system(grid, a, b, radius):
    pts = ql.lattice_points_in_box(ql.Lattice(np.diag([a, b])), radius)
    return ql.GaborSystem(ql.gaussian_window(grid), pts)


def main():
    grid = ql.GridSpec(20.0, 0.01)
    g = ql.gaussian_window(grid)

    val = ql.orthogonality_check(g, g)
    print(f"orthogonality relation, Gaussian window: integral = {val:.5f} "
          f"(formal degree {ql.D_PI})")

    z, zp = (0.25, 1.5), (-0.4, 0.8)
    sigma = ql.cocycle(z, zp)
    print(f"cocycle sigma(z, z') for z={z}, z'={zp}: {sigma:.4f}")

    print("\nframe bounds via finite sections (Hermite test basis, N=40):")
    a = 2.0 ** -0.5
    dense = lattice_system(grid, a, a, 10.0)
    fb = ql.frame_bounds(dense, 40, n_step=10)
    print(f"  cell area 0.5 ({len(dense.points)} nodes): A = {fb.A_est:.4f}, "
          f"B = {fb.B_est:.4f}, converged {fb.converged}")
    sparse = lattice_system(grid, 3.5, 0.3, 10.0)
    fb2 = ql.frame_bounds(sparse, 40, n_step=10)
    print(f"  cell area 1.05 ({len(sparse.points)} nodes): A = {fb2.A_est:.2e} "
          f"-> no frame at this tolerance (A sweep {[f'{x:.1e}' for x in fb2.A_sweep]})")

    grid12 = ql.GridSpec(12.0, 0.01)
    riesz_sys = lattice_system(grid12, 2.0, 1.0, 6.0)
    rb = ql.riesz_bounds(riesz_sys, edge_margin=2.0)
    print(f"\nRiesz bounds for 2Z x Z (interior {rb.subspace_dim} nodes): "
          f"A = {rb.A_est:.4f}, B = {rb.B_est:.4f}")

    interior = ql.GaborSystem(riesz_sys.window, riesz_sys.points.restrict(4.0))
    dual = ql.biorthogonal_dual(interior)
    delta = ql.uniform_min_delta(interior)
    max_norm = max(w.norm() for w in dual.duals)
    print(f"  biorthogonal dual: residual {dual.biorth_residual:.1e}, "
          f"minimality gap delta = {delta:.4f}, delta * max dual norm = "
          f"{delta * max_norm:.6f}")

    probe = ql.gaussian_window(grid)
    res = [ql.hap_residual(dense, probe, (0.3, -0.7), k) for k in (4.0, 5.0, 6.0)]
    print(f"\nlocal approximation residuals at x=(0.3,-0.7), K=4,5,6: "
          f"{[f'{r:.2e}' for r in res]} (non-increasing in K)")

    critical = lattice_system(grid, 1.0, 1.0, 10.0)
    probes = ql.hermite_basis(grid, 6)
    per = [float(np.linalg.norm((probes[n].samples
                                 * np.sqrt(grid.quad_weights))
                                - critical.synthesis_matrix()
                                @ np.linalg.lstsq(critical.synthesis_matrix(),
                                                  probes[n].samples
                                                  * np.sqrt(grid.quad_weights),
                                                  rcond=None)[0]))
           for n in range(6)]
    print(f"\ncell area exactly 1: per-Hermite completeness residuals "
          f"{[f'{r:.2e}' for r in per]}")
    print("  indices 1 and 5 stay high: expanding those functions needs "
          "unboundedly large coefficients, so the truncated least squares "
          "cannot drive the residual down.")


if __name__ == "__main__":
    main()
