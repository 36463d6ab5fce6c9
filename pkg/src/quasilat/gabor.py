"""Sampled time-frequency analysis for coherent systems pi(lambda) g over point sets.

Functions live on a uniform grid over [-T, T]; inner products use trapezoidal
quadrature. pi(x, xi) f(t) = exp(2 pi i xi t) f(t - x), so composing two shifts
produces the scalar cocycle(z, z') = exp(-2 pi i xi' x). The formal degree of
this representation is 1 under Lebesgue normalization, which makes
integral |<f, pi(z) g>|^2 dz = ||f||^2 ||g||^2 the reference identity.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import (InsufficientTruncationError, NotMinimalError,
                     ShiftRangeError, TruncationTooSmallError)
from .pointset import DEDUP_TOL, PointSet

# Formal degree of the sampled representation under Lebesgue normalization.
D_PI = 1.0

# Relative error budget for off-grid cubic time shifts.
INTERP_TOL = 1e-6


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid of step dt on [-T, T]."""

    T: float
    dt: float

    def __post_init__(self):
        if self.T <= 0 or self.dt <= 0 or self.dt >= self.T:
            raise ValueError("need 0 < dt < T")
        if self.size < 8:
            raise ValueError("grid too coarse")

    @property
    def size(self):
        return int(math.floor(2.0 * self.T / self.dt + 1e-9)) + 1

    @property
    def times(self):
        return -self.T + self.dt * np.arange(self.size)

    @property
    def xi_max(self):
        """Anti-aliasing cap on modulations: dt < 1 / (4 xi)."""
        return 1.0 / (4.0 * self.dt)

    @property
    def quad_weights(self):
        w = np.full(self.size, self.dt)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w


@dataclass
class Waveform:
    """Complex samples of a function on a GridSpec, with quadrature norm."""

    grid: GridSpec
    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.shape != (self.grid.size,):
            raise ValueError("sample count does not match grid")
        self.samples = s

    def norm(self):
        return math.sqrt(float(np.sum(self.grid.quad_weights * np.abs(self.samples) ** 2)))


def inner(f, g):
    """Quadrature inner product <f, g>, linear in f, conjugate linear in g."""
    if f.grid != g.grid:
        raise ValueError("waveforms live on different grids")
    return complex(np.sum(f.grid.quad_weights * f.samples * np.conj(g.samples)))


def gaussian_window(grid):
    """Unit-norm Gaussian 2^(1/4) exp(-pi t^2)."""
    t = grid.times
    return Waveform(grid, (2.0 ** 0.25) * np.exp(-math.pi * t * t))


def hermite_basis(grid, count):
    """First `count` Hermite functions, orthonormal and Fourier-invariant.

    Stable two-term recurrence in y = sqrt(2 pi) t seeded with the unit
    Gaussian; h_n concentrates on the time-frequency annulus of radius
    about sqrt(n / pi).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    t = grid.times
    y = math.sqrt(2.0 * math.pi) * t
    h = np.zeros((count, grid.size))
    h[0] = (2.0 ** 0.25) * np.exp(-math.pi * t * t)
    if count > 1:
        h[1] = math.sqrt(2.0) * y * h[0]
    for n in range(2, count):
        h[n] = math.sqrt(2.0 / n) * y * h[n - 1] - math.sqrt((n - 1) / n) * h[n - 2]
    return [Waveform(grid, row) for row in h]


def _time_shift_samples(grid, samples, x):
    """Samples of t -> f(t - x); integer grid shifts are exact, otherwise cubic."""
    steps = x / grid.dt
    k = round(steps)
    out = np.zeros(grid.size, dtype=complex)
    if abs(steps - k) < 1e-9:
        if k >= 0:
            out[k:] = samples[:grid.size - k] if k < grid.size else 0.0
        else:
            out[:k] = samples[-k:]
        return out
    t = grid.times
    spline = CubicSpline(t, samples)
    src = t - x
    mask = (src >= t[0] - 1e-12) & (src <= t[-1] + 1e-12)
    out[mask] = spline(np.clip(src[mask], t[0], t[-1]))
    return out


def tf_shift(f, x, xi):
    """pi(x, xi) f: time shift by x then modulation by xi.

    Preconditions keep the result trustworthy: |x| <= T/2 so the shifted
    support stays on the grid, |xi| <= 1/(4 dt) against aliasing.
    """
    grid = f.grid
    if abs(x) > grid.T / 2.0 + 1e-12:
        raise ShiftRangeError(f"time shift {x} exceeds T/2 = {grid.T / 2}")
    if abs(xi) > grid.xi_max + 1e-12:
        raise ShiftRangeError(f"modulation {xi} exceeds 1/(4 dt) = {grid.xi_max}")
    shifted = _time_shift_samples(grid, f.samples, x)
    phase = np.exp(2j * math.pi * xi * grid.times)
    return Waveform(grid, phase * shifted)


def cocycle(z, zp):
    """Scalar sigma with pi(z) pi(z') = sigma * pi(z + z')."""
    return complex(np.exp(-2j * math.pi * zp[1] * z[0]))


def orthogonality_check(f, g, tf_grid_step=0.25, tf_radius=4.5):
    """Riemann sum of |<f, pi(x, xi) g>|^2 over the centered TF grid.

    For well-concentrated f, g this approximates the orthogonality-relation
    integral, whose exact value is ||f||^2 ||g||^2 (formal degree 1).
    """
    grid = f.grid
    if g.grid != grid:
        raise ValueError("waveforms live on different grids")
    m = int(math.floor(tf_radius / tf_grid_step + 1e-12))
    offs = tf_grid_step * np.arange(-m, m + 1)
    t = grid.times
    w = grid.quad_weights
    kernel = np.exp(-2j * math.pi * np.outer(offs, t))  # rows: xi values
    total = 0.0
    for x in offs:
        s = _time_shift_samples(grid, g.samples, x)
        u = w * f.samples * np.conj(s)
        coeffs = kernel @ u
        total += float(np.sum(np.abs(coeffs) ** 2))
    return total * tf_grid_step ** 2


@dataclass
class SpectralBounds:
    """Extremal eigenvalue estimates for a frame-type or Riesz-type operator."""

    A_est: float
    B_est: float
    subspace_dim: int
    converged: bool
    test_sizes: list = field(default=None)
    A_sweep: list = field(default=None)
    B_sweep: list = field(default=None)

    def to_dict(self):
        return {"A_est": self.A_est, "B_est": self.B_est,
                "subspace_dim": self.subspace_dim, "converged": self.converged,
                "test_sizes": self.test_sizes,
                "A_sweep": self.A_sweep, "B_sweep": self.B_sweep}


@dataclass
class GaborSystem:
    """Window plus a finite 2d time-frequency point set Lambda."""

    window: Waveform
    points: PointSet
    formal_degree: float = D_PI
    _matrix: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.points.dim != 2:
            raise ValueError("Gabor systems need dim-2 point sets (time, frequency)")

    def synthesis_matrix(self):
        """Weighted sample matrix: column j = sqrt(quad weights) * pi(lambda_j) g."""
        if self._matrix is None:
            grid = self.window.grid
            pts = self.points.points
            t = grid.times
            sqrtw = np.sqrt(grid.quad_weights)
            V = np.zeros((grid.size, len(pts)), dtype=complex)
            # group by time shift: one interpolation per distinct x
            xs = pts[:, 0] if len(pts) else np.zeros(0)
            for x in np.unique(xs):
                idx = np.nonzero(xs == x)[0]
                if abs(x) > grid.T / 2.0 + 1e-12:
                    raise ShiftRangeError(f"point time shift {x} exceeds T/2")
                shifted = _time_shift_samples(grid, self.window.samples, float(x))
                xis = pts[idx, 1]
                if np.max(np.abs(xis), initial=0.0) > grid.xi_max + 1e-12:
                    raise ShiftRangeError("point modulation exceeds 1/(4 dt)")
                V[:, idx] = shifted[:, None] * np.exp(2j * math.pi * np.outer(t, xis))
            self._matrix = sqrtw[:, None] * V
        return self._matrix


def gram_matrix(sys, max_points=6000):
    """Hermitian Gram G[i][j] = <pi(lambda_j) g, pi(lambda_i) g>."""
    n = len(sys.points)
    if n == 0:
        raise ValueError("empty point set")
    if n > max_points:
        raise ValueError(f"Gram size cap exceeded ({n} > {max_points}); "
                         "restrict to an interior truncation first")
    V = sys.synthesis_matrix()
    G = V.conj().T @ V
    return 0.5 * (G + G.conj().T)


def frame_bounds(sys, test_basis_size, n_step=10, rel_tol=0.1, a_floor=1e-2,
                 k_guard=6.0):
    """Finite-section frame bound estimates on the span of Hermite functions.

    M[i][j] = sum over lambda of <h_i, pi(lambda) g><pi(lambda) g, h_j>; the
    estimates are the extremal eigenvalues of M for growing basis size, with
    A_est non-increasing and B_est non-decreasing in the size. Requires the
    point truncation to cover the basis concentration radius sqrt(N/pi) plus
    the guard margin.
    """
    N = int(test_basis_size)
    need = math.sqrt(N / math.pi) + k_guard
    if sys.points.truncation_radius + 1e-9 < need:
        raise TruncationTooSmallError(
            f"truncation {sys.points.truncation_radius} below guard radius "
            f"{need:.3f} for a {N}-function test basis")
    grid = sys.window.grid
    basis = hermite_basis(grid, N)
    sqrtw = np.sqrt(grid.quad_weights)
    H = np.stack([b.samples for b in basis], axis=1) * sqrtw[:, None]
    V = sys.synthesis_matrix()
    C = H.T @ np.conj(V)  # C[i, lambda] = <h_i, pi(lambda) g>
    M = C @ C.conj().T
    M = 0.5 * (M + M.conj().T)

    sizes = list(range(n_step, N + 1, n_step))
    if not sizes or sizes[-1] != N:
        sizes.append(N)
    a_sweep, b_sweep = [], []
    for k in sizes:
        eigs = np.linalg.eigvalsh(M[:k, :k])
        a_sweep.append(max(float(eigs[0]), 0.0))
        b_sweep.append(float(eigs[-1]))
    if len(sizes) >= 2:
        converged = abs(a_sweep[-1] - a_sweep[-2]) <= rel_tol * max(a_sweep[-1], a_floor)
    else:
        converged = False
    return SpectralBounds(a_sweep[-1], b_sweep[-1], N, bool(converged),
                          sizes, a_sweep, b_sweep)


def riesz_bounds(sys, edge_margin=0.0):
    """Riesz bound estimates: extremal Gram eigenvalues on the interior sub-family."""
    radius = sys.points.truncation_radius - edge_margin
    interior = sys.points.restrict(radius)
    if len(interior) == 0:
        raise ValueError("no interior points at this edge margin")
    sub = GaborSystem(sys.window, interior, sys.formal_degree)
    eigs = np.linalg.eigvalsh(gram_matrix(sub))
    return SpectralBounds(max(float(eigs[0]), 0.0), float(eigs[-1]),
                          len(interior), True)


@dataclass
class DualFamily:
    """Biorthogonal dual waveforms h_lambda with <pi(lambda) g, h_mu> = delta."""

    duals: list
    B_sup: float
    biorth_residual: float


def biorthogonal_dual(sys, eig_tol=1e-10):
    """Dual family via the inverse Gram; raises NotMinimalError if G is singular."""
    G = gram_matrix(sys)
    eigs, U = np.linalg.eigh(G)
    if eigs[0] <= eig_tol * max(float(eigs[-1]), 1.0):
        raise NotMinimalError("not minimal at tolerance: Gram matrix numerically singular")
    Ginv = (U / eigs) @ U.conj().T
    V = sys.synthesis_matrix()
    duals_w = V @ Ginv
    sqrtw = np.sqrt(sys.window.grid.quad_weights)
    duals = [Waveform(sys.window.grid, duals_w[:, j] / sqrtw)
             for j in range(duals_w.shape[1])]
    residual = float(np.max(np.abs(G @ Ginv - np.eye(len(eigs)))))
    b_sup = float(np.max(np.real(np.diag(Ginv))))
    return DualFamily(duals, b_sup, residual)


def uniform_min_delta(sys, interior_margin=0.0):
    """Min least-squares distance from pi(lambda) g to the span of the others.

    The minimum runs over points with sup-norm <= truncation - interior_margin;
    the spanning family always includes every point.
    """
    V = sys.synthesis_matrix()
    pts = sys.points.points
    if len(pts) == 0:
        raise ValueError("empty point set")
    if len(pts) == 1:
        return float(np.linalg.norm(V[:, 0]))
    cutoff = sys.points.truncation_radius - interior_margin
    interior = np.nonzero(np.max(np.abs(pts), axis=1) <= cutoff + DEDUP_TOL)[0]
    if len(interior) == 0:
        raise ValueError("no interior points at this margin")
    best = math.inf
    for j in interior:
        others = np.delete(V, j, axis=1)
        coef, *_ = np.linalg.lstsq(others, V[:, j], rcond=None)
        best = min(best, float(np.linalg.norm(V[:, j] - others @ coef)))
    return best


def hap_residual(sys, f, x, box_radius):
    """Least-squares distance from pi(x) f to span{pi(lambda) g : lambda in x + box}.

    The box x + [-box_radius, box_radius]^2 must fit inside the point
    truncation, otherwise the residual would be inflated by missing points.
    """
    x = np.asarray(x, dtype=float).reshape(2)
    if np.max(np.abs(x)) + box_radius > sys.points.truncation_radius + DEDUP_TOL:
        raise InsufficientTruncationError("local box leaves the point truncation")
    target = tf_shift(f, x[0], x[1])
    tw = np.sqrt(sys.window.grid.quad_weights) * target.samples
    pts = sys.points.points
    mask = np.all(np.abs(pts - x) <= box_radius + DEDUP_TOL, axis=1)
    if not mask.any():
        return float(np.linalg.norm(tw))
    V = sys.synthesis_matrix()[:, mask]
    coef, *_ = np.linalg.lstsq(V, tw, rcond=None)
    return float(np.linalg.norm(tw - V @ coef))


def completeness_residual(sys, probes):
    """Max least-squares residual of the probes against the whole truncated family.

    A truncation-level proxy only: small residuals certify nothing about the
    infinite system, they are merely consistent with completeness.
    """
    if not probes:
        raise ValueError("need at least one probe")
    sqrtw = np.sqrt(sys.window.grid.quad_weights)
    B = np.stack([p.samples * sqrtw for p in probes], axis=1)
    V = sys.synthesis_matrix()
    coef, *_ = np.linalg.lstsq(V, B, rcond=None)
    R = B - V @ coef
    return float(np.max(np.linalg.norm(R, axis=0)))
