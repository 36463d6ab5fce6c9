"""Finite truncations of lattices, cut-and-project model sets, and derived point sets.

Every construction returns a :class:`PointSet`: a deduplicated, lexicographically
ordered array of points together with the sup-norm truncation radius and a JSON-able
``source`` recipe from which the set can be regenerated bit for bit.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateLatticeError, EnumerationBoundError

# Sup-norm tolerance for deduplication and boundary-inclusive membership.
# Assumed far below the minimum gap of every set handled here.
DEDUP_TOL = 1e-9

# Cap on integer candidates per enumeration.
MAX_CANDIDATES = 20_000_000


def _as_points(points, dim):
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return np.zeros((0, dim))
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[1] != dim:
        raise ValueError(f"expected points of dimension {dim}, got shape {pts.shape}")
    return pts


def _canonical(points, tol=DEDUP_TOL):
    """Lex-sort points and merge neighbours closer than tol in sup norm."""
    if len(points) == 0:
        return points
    pts = points + 0.0  # normalizes -0.0 to +0.0
    order = np.lexsort(pts.T[::-1])
    pts = pts[order]
    keep = np.ones(len(pts), dtype=bool)
    last = 0
    for i in range(1, len(pts)):
        if np.max(np.abs(pts[i] - pts[last])) <= tol:
            keep[i] = False
        else:
            last = i
    return pts[keep]


@dataclass(frozen=True)
class PointSet:
    """Finite truncation of a point set in R^dim.

    Attributes
    ----------
    dim : int
        Ambient dimension.
    points : ndarray, shape (N, dim)
        Canonically ordered (lexicographic), deduplicated points.
    truncation_radius : float
        Every point lies in the closed sup-ball of this radius.
    source : dict
        Generation recipe; ``regenerate(source)`` reproduces the set.
    """

    dim: int
    points: np.ndarray
    truncation_radius: float
    source: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.points) and np.max(np.abs(self.points)) > self.truncation_radius + DEDUP_TOL:
            raise ValueError("point outside the declared truncation radius")

    def __len__(self):
        return len(self.points)

    def restrict(self, radius):
        """Sub-truncation: points with sup-norm <= radius (boundary inclusive)."""
        if len(self.points):
            mask = np.max(np.abs(self.points), axis=1) <= radius + DEDUP_TOL
            pts = self.points[mask]
        else:
            pts = self.points
        return PointSet(self.dim, pts, float(radius),
                        {"kind": "explicit", "points": pts.tolist(),
                         "truncation_radius": float(radius)})

    def translate(self, v):
        v = np.asarray(v, dtype=float)
        pts = _canonical(self.points + v)
        radius = float(np.max(np.abs(pts))) if len(pts) else 0.0
        return PointSet(self.dim, pts, radius,
                        {"kind": "explicit", "points": pts.tolist(),
                         "truncation_radius": radius})


def from_points(points, dim=None, truncation_radius=None):
    """Wrap an explicit list of points as a PointSet."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1 and dim is None:
        pts = pts[:, None]
    if dim is None:
        dim = pts.shape[1] if pts.size else 1
    pts = _as_points(pts, dim)
    pts = _canonical(pts)
    if truncation_radius is None:
        truncation_radius = float(np.max(np.abs(pts))) if len(pts) else 0.0
    src = {"kind": "explicit", "points": pts.tolist(),
           "truncation_radius": float(truncation_radius)}
    return PointSet(dim, pts, float(truncation_radius), src)


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice B Z^d given by the columns of ``basis`` acting on Z^d rows."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ValueError("lattice basis must be a square matrix")
        object.__setattr__(self, "basis", b)

    @property
    def dim(self):
        return self.basis.shape[0]

    @property
    def covolume(self):
        """Volume of a fundamental domain, |det basis|."""
        d = abs(float(np.linalg.det(self.basis)))
        if not np.isfinite(d) or d < 1e-12:
            raise DegenerateLatticeError("degenerate lattice: |det| below 1e-12")
        return d


@dataclass(frozen=True)
class Window:
    """Centered box in internal space: product of [-h_j, h_j]."""

    half_widths: tuple

    def __post_init__(self):
        hw = tuple(float(h) for h in self.half_widths)
        if not hw or any(h <= 0 for h in hw):
            raise ValueError("window half-widths must be positive")
        object.__setattr__(self, "half_widths", hw)

    @property
    def dim(self):
        return len(self.half_widths)

    @property
    def measure(self):
        return float(np.prod([2.0 * h for h in self.half_widths]))


@dataclass(frozen=True)
class CutAndProjectScheme:
    """Cut-and-project data: lattice in R^(d+m), physical dim d, internal dim m, box window.

    ``total_basis`` rows 0..d-1 give physical coordinates of the generator columns,
    rows d..d+m-1 internal coordinates. Integer combinations z map to
    ``total_basis @ z``.
    """

    total_basis: np.ndarray
    d: int
    m: int
    window: Window

    def __post_init__(self):
        b = np.asarray(self.total_basis, dtype=float)
        n = self.d + self.m
        if b.shape != (n, n):
            raise ValueError(f"total_basis must be {n}x{n}")
        if self.window.dim != self.m:
            raise ValueError("window dimension must equal internal dimension m")
        object.__setattr__(self, "total_basis", b)
        self.covolume  # validates invertibility eagerly

    @property
    def covolume(self):
        d = abs(float(np.linalg.det(self.total_basis)))
        if not np.isfinite(d) or d < 1e-12:
            raise DegenerateLatticeError("degenerate cut-and-project lattice")
        return d

    def density(self):
        """Density of the model set: window measure / covolume."""
        return self.window.measure / self.covolume


def fibonacci_scheme(window_half_width=1.0):
    """Quadratic-irrational scheme with star map n + m*tau -> n + m*tau' (tau golden)."""
    tau = (1.0 + math.sqrt(5.0)) / 2.0
    tau_conj = (1.0 - math.sqrt(5.0)) / 2.0
    basis = np.array([[1.0, tau], [1.0, tau_conj]])
    return CutAndProjectScheme(basis, d=1, m=1, window=Window((float(window_half_width),)))


def _integer_box(transform_inv, bounds):
    """Per-axis integer ranges for z with |(transform z)_i| <= bounds_i (interval arithmetic)."""
    amp = np.abs(transform_inv) @ np.asarray(bounds, dtype=float)
    lo = np.ceil(-amp - 1e-12).astype(np.int64)
    hi = np.floor(amp + 1e-12).astype(np.int64)
    return lo, hi


def _enumerate_integers(lo, hi):
    sizes = (hi - lo + 1).astype(np.int64)
    total = int(np.prod(sizes, dtype=np.int64))
    if total <= 0:
        return np.zeros((0, len(lo)), dtype=np.int64)
    if total > MAX_CANDIDATES:
        raise EnumerationBoundError(
            f"enumeration bound exceeded: {total} integer candidates "
            f"(cap {MAX_CANDIDATES}); reduce the radius")
    axes = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def lattice_points_in_box(lattice, radius):
    """All lattice points in the closed box [-radius, radius]^d, canonically ordered."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    lattice.covolume  # raises DegenerateLatticeError on singular bases
    binv = np.linalg.inv(lattice.basis)
    d = lattice.dim
    lo, hi = _integer_box(binv, [radius + DEDUP_TOL] * d)
    z = _enumerate_integers(lo, hi)
    pts = z @ lattice.basis.T
    mask = np.all(np.abs(pts) <= radius + DEDUP_TOL, axis=1)
    pts = _canonical(pts[mask])
    src = {"kind": "lattice", "basis": lattice.basis.tolist(), "radius": float(radius)}
    return PointSet(d, pts, float(radius), src)


def model_set_generate(scheme, radius):
    """Physical projections of scheme lattice points whose internal part lies in the window.

    Internal parts are recomputed from the integer coordinates, never from the
    floating physical parts, so exact schemes stay exact at the window boundary.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    n = scheme.d + scheme.m
    binv = np.linalg.inv(scheme.total_basis)
    bounds = [radius + DEDUP_TOL] * scheme.d + [h + 1e-12 for h in scheme.window.half_widths]
    lo, hi = _integer_box(binv, bounds)
    z = _enumerate_integers(lo, hi)
    coords = z @ scheme.total_basis.T
    phys = coords[:, :scheme.d]
    internal = coords[:, scheme.d:]
    hw = np.array(scheme.window.half_widths)
    mask = np.all(np.abs(internal) <= hw, axis=1)
    mask &= np.all(np.abs(phys) <= radius + DEDUP_TOL, axis=1)
    phys = phys[mask]
    # injectivity of the physical projection on the truncation
    if len(phys) > 1:
        order = np.lexsort(phys.T[::-1])
        sorted_phys = phys[order]
        gaps = np.max(np.abs(np.diff(sorted_phys, axis=0)), axis=1)
        if np.any(gaps <= DEDUP_TOL):
            raise ValueError("physical projection not injective on this truncation")
        phys = sorted_phys
    src = {"kind": "cut_and_project", "total_basis": scheme.total_basis.tolist(),
           "d": scheme.d, "m": scheme.m,
           "window": list(scheme.window.half_widths), "radius": float(radius)}
    return PointSet(scheme.d, phys + 0.0, float(radius), src)


def symmetrize(ps, sublattice, radius):
    """ps together with -ps and a sublattice truncation; contains 0 and is symmetric."""
    if sublattice.dim != ps.dim:
        raise ValueError("sublattice dimension must match point set dimension")
    lat = lattice_points_in_box(sublattice, radius)
    stacked = np.vstack([ps.points, -ps.points, lat.points]) if len(ps) else lat.points
    pts = _canonical(stacked)
    out_radius = float(max(ps.truncation_radius, radius))
    src = {"kind": "symmetrize", "base": ps.source,
           "sublattice_basis": sublattice.basis.tolist(), "radius": float(radius)}
    return PointSet(ps.dim, pts, out_radius, src)


def sumset_truncated(a, b, radius):
    """All pairwise sums with sup-norm <= radius, deduplicated.

    The recipe records ``boundary_safe``: True only when one operand's truncation
    exceeds the requested radius plus the other operand's truncation, the
    sufficient condition for the truncated sumset to list every sum in the box.
    """
    if a.dim != b.dim:
        raise ValueError("sumset operands must share a dimension")
    if radius <= 0:
        raise ValueError("radius must be positive")
    if len(a) * len(b) > MAX_CANDIDATES:
        raise EnumerationBoundError("enumeration bound exceeded: sumset pair count too large")
    if len(a) == 0 or len(b) == 0:
        pts = np.zeros((0, a.dim))
    else:
        sums = (a.points[:, None, :] + b.points[None, :, :]).reshape(-1, a.dim)
        mask = np.all(np.abs(sums) <= radius + DEDUP_TOL, axis=1)
        pts = _canonical(sums[mask])
    safe = (a.truncation_radius >= radius + b.truncation_radius - 1e-12
            or b.truncation_radius >= radius + a.truncation_radius - 1e-12)
    src = {"kind": "sumset", "a": a.source, "b": b.source,
           "radius": float(radius), "boundary_safe": bool(safe)}
    return PointSet(a.dim, pts, float(radius), src)


def min_separation(points):
    """Minimum pairwise sup-norm distance; inf for fewer than two points."""
    pts = np.asarray(points, dtype=float)
    if len(pts) < 2:
        return math.inf
    if len(pts) <= 4000:
        from scipy.spatial.distance import pdist
        return float(np.min(pdist(pts, metric="chebyshev")))
    from scipy.spatial import cKDTree
    tree = cKDTree(pts)
    dist, _ = tree.query(pts, k=2, p=np.inf)
    return float(np.min(dist[:, 1]))


def regenerate(source):
    """Rebuild a PointSet from its recipe. Deterministic: same recipe, same floats."""
    kind = source.get("kind")
    if kind == "lattice":
        return lattice_points_in_box(Lattice(np.array(source["basis"])), source["radius"])
    if kind == "cut_and_project":
        scheme = CutAndProjectScheme(np.array(source["total_basis"]), source["d"],
                                     source["m"], Window(tuple(source["window"])))
        return model_set_generate(scheme, source["radius"])
    if kind == "explicit":
        pts = np.array(source["points"], dtype=float)
        dim = pts.shape[1] if pts.ndim == 2 and pts.size else 1
        return PointSet(dim, _canonical(pts.reshape(-1, dim)),
                        float(source["truncation_radius"]), dict(source))
    if kind == "symmetrize":
        base = regenerate(source["base"])
        return symmetrize(base, Lattice(np.array(source["sublattice_basis"])),
                          source["radius"])
    if kind == "sumset":
        return sumset_truncated(regenerate(source["a"]), regenerate(source["b"]),
                                source["radius"])
    raise ValueError(f"unknown point set recipe kind: {kind!r}")


def save_pointset(ps, path):
    """Write a point CSV (header ``dim=<d>``, 17 significant digits) plus a JSON sidecar.

    The sidecar path is ``<path>.json`` and mirrors the source recipe verbatim.
    """
    path = str(path)
    with open(path, "w") as fh:
        fh.write(f"dim={ps.dim}\n")
        for p in ps.points:
            fh.write(",".join(format(x, ".17g") for x in p) + "\n")
    sidecar = {"source": ps.source, "truncation_radius": ps.truncation_radius,
               "dim": ps.dim, "count": len(ps)}
    with open(path + ".json", "w") as fh:
        json.dump(sidecar, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_pointset(path):
    """Read a point CSV written by save_pointset; the sidecar is optional."""
    path = str(path)
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("dim="):
            raise ValueError(f"malformed point CSV {path}: missing dim= header")
        try:
            dim = int(header[4:])
        except ValueError as exc:
            raise ValueError(f"malformed point CSV {path}: bad dimension") from exc
        rows = []
        for ln, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            if len(cells) != dim:
                raise ValueError(f"malformed point CSV {path}: line {ln} has "
                                 f"{len(cells)} fields, expected {dim}")
            try:
                rows.append([float(c) for c in cells])
            except ValueError as exc:
                raise ValueError(f"malformed point CSV {path}: line {ln}") from exc
    pts = np.array(rows, dtype=float).reshape(-1, dim)
    source = None
    try:
        with open(path + ".json") as fh:
            meta = json.load(fh)
        source = meta.get("source")
        radius = float(meta.get("truncation_radius"))
    except FileNotFoundError:
        radius = float(np.max(np.abs(pts))) if len(pts) else 0.0
    if source is None:
        source = {"kind": "explicit", "points": pts.tolist(), "truncation_radius": radius}
    return PointSet(dim, _canonical(pts), radius, source)
