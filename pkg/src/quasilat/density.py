"""Beurling-type density estimates over centered box Folner sequences.

Counting is boundary inclusive: a point within DEDUP_TOL of the closed box
counts as inside. Per-box lower/upper estimates are the exact inf/sup of the
normalized count over all translates in the scan region (the count is
piecewise constant on an axis-aligned arrangement, so the extrema are
attained on a finite evaluation grid), or over an explicit uniform translate
grid when a step is requested. The reported D_minus/D_plus extrapolate the
per-box estimates linearly in 1/radius since each carries an O(1/radius)
boundary term.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientTruncationError
from .pointset import DEDUP_TOL


@dataclass(frozen=True)
class FolnerBoxes:
    """Strictly increasing radii r_n of centered boxes [-r_n, r_n]^dim."""

    dim: int
    radii: tuple

    def __post_init__(self):
        r = tuple(float(x) for x in self.radii)
        if not r or any(x <= 0 for x in r):
            raise ValueError("box radii must be positive")
        if any(b <= a for a, b in zip(r, r[1:])):
            raise ValueError("box radii must be strictly increasing")
        object.__setattr__(self, "radii", r)

    def measure(self, n):
        """Lebesgue measure (2 r_n)^dim of the n-th box."""
        return (2.0 * self.radii[n]) ** self.dim


def van_hove_ratio(boxes, n, half_width):
    """Relative measure of the half_width-thickened boundary of the n-th box.

    Closed form ((2r+2a)^d - max(2r-2a, 0)^d) / (2r)^d; tends to 0 in n for
    fixed a, which is the strong Folner property of the box sequence.
    """
    if half_width < 0:
        raise ValueError("half_width must be nonnegative")
    r = boxes.radii[n]
    d = boxes.dim
    outer = (2.0 * r + 2.0 * half_width) ** d
    inner = max(2.0 * r - 2.0 * half_width, 0.0) ** d
    return (outer - inner) / (2.0 * r) ** d


@dataclass
class DensityReport:
    """Per-box inf/sup counts plus extrapolated lower/upper densities."""

    radii: list
    lower_counts: list
    upper_counts: list
    lower_estimates: list
    upper_estimates: list
    D_minus: float
    D_plus: float
    slope_minus: float
    slope_plus: float
    translate_step: float | None  # None: exact extrema over all translates
    scan_region_radius: float

    def to_dict(self):
        return {
            "radii": list(self.radii),
            "lower_counts": [int(c) for c in self.lower_counts],
            "upper_counts": [int(c) for c in self.upper_counts],
            "lower_estimates": list(self.lower_estimates),
            "upper_estimates": list(self.upper_estimates),
            "D_minus": self.D_minus,
            "D_plus": self.D_plus,
            "slope_minus": self.slope_minus,
            "slope_plus": self.slope_plus,
            "translate_step": self.translate_step,
            "scan_region_radius": self.scan_region_radius,
        }


def count_in_translate(ps, x, radius):
    """Exact count of points in the closed box x + [-radius, radius]^dim.

    The box must sit inside the truncation region, else the count would be a
    truncation artifact and an InsufficientTruncationError is raised.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (ps.dim,):
        raise ValueError("translate must have the point set's dimension")
    if np.max(np.abs(x)) + radius > ps.truncation_radius + DEDUP_TOL:
        raise InsufficientTruncationError(
            "translated box leaves the truncation region")
    if len(ps) == 0:
        return 0
    inside = np.all(np.abs(ps.points - x) <= radius + DEDUP_TOL, axis=1)
    return int(np.count_nonzero(inside))


class _PrefixCounter:
    """Exact box counts via per-axis coordinate compression and a prefix-sum table."""

    def __init__(self, points):
        self.dim = points.shape[1]
        self.axes = [np.unique(points[:, j]) for j in range(self.dim)]
        shape = tuple(len(a) + 1 for a in self.axes)
        if math.prod(shape) > 200_000_000:
            raise MemoryError("coordinate grid too large for prefix counting")
        table = np.zeros(shape, dtype=np.int64)
        idx = tuple(np.searchsorted(self.axes[j], points[:, j]) + 1
                    for j in range(self.dim))
        np.add.at(table, idx, 1)
        for axis in range(self.dim):
            np.cumsum(table, axis=axis, out=table)
        self.table = table

    def counts_grid(self, lows, highs):
        """Counts for every box in the product grid lows[j][i]..highs[j][i]."""
        lo_idx = [np.searchsorted(self.axes[j], lows[j], side="left")
                  for j in range(self.dim)]
        hi_idx = [np.searchsorted(self.axes[j], highs[j], side="right")
                  for j in range(self.dim)]
        if self.dim == 1:
            return self.table[hi_idx[0]] - self.table[lo_idx[0]]
        if self.dim == 2:
            hx, hy = hi_idx
            lx, ly = lo_idx
            t = self.table
            return (t[np.ix_(hx, hy)] - t[np.ix_(lx, hy)]
                    - t[np.ix_(hx, ly)] + t[np.ix_(lx, ly)])
        # inclusion-exclusion over corners for d >= 3
        grids = np.meshgrid(*[np.arange(len(l)) for l in lo_idx], indexing="ij")
        out = np.zeros(grids[0].shape, dtype=np.int64)
        for corner in range(1 << self.dim):
            pick = tuple(hi_idx[j][grids[j]] if corner >> j & 1 else lo_idx[j][grids[j]]
                         for j in range(self.dim))
            sign = (-1) ** (self.dim - bin(corner).count("1"))
            out += sign * self.table[pick]
        return out


def translate_count_grid(ps, radius, step, scan_radius):
    """Counts of ps in x + [-radius, radius]^d for x over the grid step*Z^d in [-scan, scan]^d.

    Returns (centers_1d, counts) with counts indexed by the per-axis grid.
    Used by density_scan and by union subadditivity checks that need the
    full count field rather than only its extrema.
    """
    if scan_radius + radius > ps.truncation_radius + DEDUP_TOL:
        raise InsufficientTruncationError("scan region plus box leaves the truncation")
    if scan_radius <= 0:
        centers = np.array([0.0])
    else:
        k = int(math.floor(2.0 * scan_radius / step + 1e-12))
        centers = -scan_radius + step * np.arange(k + 1)
    if len(ps) == 0:
        shape = tuple([len(centers)] * ps.dim)
        return centers, np.zeros(shape, dtype=np.int64)
    counter = _PrefixCounter(ps.points)
    lows = [centers - radius - DEDUP_TOL] * ps.dim
    highs = [centers + radius + DEDUP_TOL] * ps.dim
    return centers, counter.counts_grid(lows, highs)


def _axis_eval_points(coords, radius, scan):
    """Translate coordinates at which the 1d count can change, plus cell midpoints.

    Along one axis the count only changes where a box face meets a point
    coordinate, i.e. at translates p - radius and p + radius. Evaluating at
    those breakpoints (sup side, boundary inclusive) and at the midpoints of
    consecutive cells (inf side) covers every value the count takes on
    [-scan, scan].
    """
    b = np.concatenate([coords - radius, coords + radius])
    b = np.unique(b[(b >= -scan) & (b <= scan)])
    seq = np.concatenate([[-scan], b, [scan]])
    mids = (seq[:-1] + seq[1:]) / 2.0
    return np.unique(np.concatenate([seq, mids]))


def _extreme_counts(counter, points, radius, scan):
    """Exact (inf, sup) of the box count over all translates in [-scan, scan]^d."""
    evals = [_axis_eval_points(np.unique(points[:, j]), radius, scan)
             for j in range(points.shape[1])]
    counts = counter.counts_grid([e - radius - DEDUP_TOL for e in evals],
                                 [e + radius + DEDUP_TOL for e in evals])
    return int(counts.min()), int(counts.max())


def _extrapolate(radii, values):
    """Intercept and slope of a least-squares line in h = 1/r over the box radii."""
    r = np.asarray(radii, dtype=float)
    v = np.asarray(values, dtype=float)
    if len(v) == 1:
        return float(v[0]), 0.0
    h = 1.0 / r
    design = np.stack([np.ones(len(v)), h], axis=1)
    coef, *_ = np.linalg.lstsq(design, v, rcond=None)
    return float(max(coef[0], 0.0)), float(coef[1])


def density_scan(ps, boxes, translate_step=None, scan_region_radius=None):
    """Lower/upper Beurling density estimates of ps over the given box sequence.

    With translate_step=None (default) each per-box count is the exact
    inf/sup over every translate in the scan region. With an explicit step
    the extrema are taken over the uniform grid step*Z^d instead, which is
    cheaper in high dimension but can miss the worst translate phase.
    """
    if boxes.dim != ps.dim:
        raise ValueError("box dimension must match point set dimension")
    r_max = boxes.radii[-1]
    if scan_region_radius is None:
        scan = ps.truncation_radius - r_max
        if scan < -DEDUP_TOL:
            raise InsufficientTruncationError(
                "largest box exceeds the truncation region")
        scan = max(scan, 0.0)
    else:
        scan = float(scan_region_radius)
        if scan + r_max > ps.truncation_radius + DEDUP_TOL:
            raise InsufficientTruncationError(
                "scan region plus largest box exceeds the truncation region")
    if translate_step is not None and translate_step <= 0:
        raise ValueError("translate_step must be positive")

    counter = _PrefixCounter(ps.points) if len(ps) else None
    lower_counts, upper_counts, lower_est, upper_est = [], [], [], []
    for n, r in enumerate(boxes.radii):
        if counter is None:
            c_min = c_max = 0
        elif translate_step is None:
            c_min, c_max = _extreme_counts(counter, ps.points, r, scan)
        else:
            _, counts = translate_count_grid(ps, r, translate_step, scan)
            c_min = int(counts.min())
            c_max = int(counts.max())
        mu = boxes.measure(n)
        lower_counts.append(c_min)
        upper_counts.append(c_max)
        lower_est.append(c_min / mu)
        upper_est.append(c_max / mu)

    d_minus, slope_minus = _extrapolate(boxes.radii, lower_est)
    d_plus, slope_plus = _extrapolate(boxes.radii, upper_est)
    if d_minus > d_plus:  # independent fits may cross; restore the ordering
        d_minus, d_plus = min(d_minus, d_plus), max(d_minus, d_plus)
    step_out = None if translate_step is None else float(translate_step)
    return DensityReport(list(boxes.radii), lower_counts, upper_counts,
                         lower_est, upper_est, d_minus, d_plus,
                         slope_minus, slope_plus, step_out, float(scan))
