#!/usr/bin/env python3
"""Independent reference values for the test suite.

Everything here is recomputed from first principles: brute-force enumeration
for point sets, exhaustive search for minimal covers, the closed-form inner
product of two shifted Gaussians, and dense linear algebra over analytic
synthesis columns on a finer quadrature grid (dt = 0.005) than the library
uses. The script deliberately does not import the package, so a shared bug
cannot cancel out. Running it rewrites golden.json next to it; the tests
compare library output against the frozen values.

Usage: python3 golden/oracle.py
"""

import itertools
import json
import math
import os
from fractions import Fraction

import numpy as np

TAU = (1.0 + math.sqrt(5.0)) / 2.0
TAUP = 1.0 - TAU
DT = 0.005
TOL = 1e-6


# ---------------------------------------------------------------- point sets

def fib_points(radius, window=1.0):
    """Fibonacci model set by direct enumeration: x = n + m*tau with
    |n + m*tau'| <= window and |x| <= radius."""
    out = []
    m_max = int(math.ceil((radius + window) / math.sqrt(5.0))) + 2
    for m in range(-m_max, m_max + 1):
        lo = -window - m * TAUP
        hi = window - m * TAUP
        for n in range(int(math.ceil(lo - 1e-12)), int(math.floor(hi + 1e-12)) + 1):
            x = n + m * TAU
            if abs(x) <= radius + 1e-12:
                out.append(x)
    out = sorted(out)
    for a, b in zip(out, out[1:]):
        assert b - a > 1e-9, "fibonacci physical projection not injective"
    return np.array(out)


def exhaustive_min_cover(targets, candidates, base, tol, k_cap=4):
    """Smallest F subset of candidates with targets within tol of F + base.

    Returns (k_min, witness) by brute force over subset sizes; base is a
    sorted 1d array."""
    base = np.sort(np.asarray(base, dtype=float))

    def covers(f):
        d = targets - f
        idx = np.searchsorted(base, d)
        near = np.full(len(d), np.inf)
        for shift in (-1, 0):
            j = np.clip(idx + shift, 0, len(base) - 1)
            near = np.minimum(near, np.abs(d - base[j]))
        return near <= tol

    rows = [covers(f) for f in candidates]
    for k in range(1, k_cap + 1):
        for combo in itertools.combinations(range(len(candidates)), k):
            mask = np.zeros(len(targets), dtype=bool)
            for i in combo:
                mask |= rows[i]
            if mask.all():
                return k, [float(candidates[i]) for i in combo]
    return None, None


def fibonacci_facts():
    pts10 = fib_points(10.0)
    pts50 = fib_points(50.0)
    pts100 = fib_points(100.0)
    gaps = np.diff(pts100)
    interior = pts100[np.abs(pts100) <= 98.0]
    interior_gaps = np.diff(interior)

    base = fib_points(30.0)
    sumset = np.unique(np.concatenate(
        [np.round((base[:, None] + base[None, :]).ravel(), 12)]))
    sumset = sumset[np.abs(sumset) <= 15.0 + 1e-9]
    k_min, witness = exhaustive_min_cover(sumset, sumset, base, TOL)

    # the toy instance: base {-1,0,1}, sumset {-2..2}
    toy_k, toy_witness = exhaustive_min_cover(
        np.arange(-2.0, 3.0), np.arange(-2.0, 3.0), np.arange(-1.0, 2.0), TOL)

    return {
        "count_r10": int(len(pts10)),
        "count_r50": int(len(pts50)),
        "count_r100": int(len(pts100)),
        "min_gap": float(gaps.min()),
        "max_interior_gap": float(interior_gaps.max()),
        "half_max_gap": float(interior_gaps.max() / 2.0),
        "sumset_r15_count": int(len(sumset)),
        "cover_k_exhaustive": int(k_min),
        "cover_witness": witness,
        "toy_k_exhaustive": int(toy_k),
        "toy_witness": toy_witness,
    }


# -------------------------------------------------------------------- p-adic

def padic_elements(p, w, n_max):
    """All a/p^k with k <= n_max, gcd stripped, |a/p^k| <= w, as Fractions."""
    out = set()
    for k in range(n_max + 1):
        bound = int(w * p ** k)  # w is a Fraction; floor of w p^k
        for a in range(-bound, bound + 1):
            if k > 0 and a % p == 0:
                continue
            q = Fraction(a, p ** k)
            if abs(q) <= w:
                out.add(q)
    return sorted(out)


def padic_facts(p, w, n_max, cover_n):
    w = Fraction(w)
    counts = []
    for n in range(n_max + 1):
        counts.append(len(padic_elements(p, w, n)))
    ratios = [Fraction(c, p ** n) for n, c in enumerate(counts)]
    deviation = max(abs(r - 2 * w) * p ** n for n, r in enumerate(ratios))
    # geometric tail: ratios approach 2w like c/p^n, so the limit is
    # r_N + (r_N - r_{N-1}) / (p - 1)
    density = ratios[-1] + (ratios[-1] - ratios[-2]) / (p - 1)

    elems = padic_elements(p, w, cover_n)
    elem_set = set(elems)
    sums = sorted({a + b for a in elems for b in elems})

    def member(q):
        return q in elem_set

    k_min = None
    witness = None
    for k in (1, 2, 3):
        for combo in itertools.combinations(sums, k):
            if all(any(member(s - f) for f in combo) for s in sums):
                k_min, witness = k, [str(f) for f in combo]
                break
        if k_min:
            break

    return {
        "counts": counts,
        "ratios": [str(r) for r in ratios],
        "deviation_constant": str(deviation),
        "density": str(density),
        "cover_n_max": cover_n,
        "cover_k_exhaustive": k_min,
        "cover_witness": witness,
    }


# ------------------------------------------------------------------- L2 model

def make_grid(T):
    size = int(math.floor(2.0 * T / DT + 1e-9)) + 1
    t = -T + DT * np.arange(size)
    wq = np.full(size, DT)
    wq[0] *= 0.5
    wq[-1] *= 0.5
    return t, wq


def hermites(t, wq, count):
    """Orthonormal Hermite functions for the exp(-pi t^2) normalization."""
    h = np.empty((count, len(t)))
    h[0] = 2.0 ** 0.25 * np.exp(-np.pi * t * t)
    y = math.sqrt(2.0 * np.pi) * t
    for n in range(1, count):
        prev2 = h[n - 2] if n >= 2 else 0.0
        h[n] = math.sqrt(2.0 / n) * y * h[n - 1] - math.sqrt((n - 1.0) / n) * prev2
    gram = (h * wq) @ h.T
    err = np.max(np.abs(gram - np.eye(count)))
    assert err < 1e-8, f"oracle hermite orthonormality off by {err}"
    return h


def atom_columns(t, pts):
    """Analytic samples of exp(2 pi i xi t) * 2^(1/4) exp(-pi (t-x)^2)."""
    x = pts[:, 0]
    xi = pts[:, 1]
    return 2.0 ** 0.25 * np.exp(
        2j * np.pi * np.outer(t, xi) - np.pi * (t[:, None] - x[None, :]) ** 2)


def section_extremes(T, pts, count):
    """(min, max) eigenvalue of the frame operator compressed to the Hermite span."""
    t, wq = make_grid(T)
    h = hermites(t, wq, count)
    hw = h * wq
    C = np.empty((count, len(pts)), dtype=complex)
    for j in range(0, len(pts), 200):
        cols = atom_columns(t, pts[j:j + 200])
        C[:, j:j + 200] = hw @ np.conj(cols)
    M = C @ C.conj().T
    M = 0.5 * (M + M.conj().T)
    eigs = np.linalg.eigvalsh(M)
    return float(eigs[0]), float(eigs[-1])


def lattice_pts(a, b, radius):
    xs = np.arange(-math.floor(radius / a + 1e-9), math.floor(radius / a + 1e-9) + 1) * a
    ys = np.arange(-math.floor(radius / b + 1e-9), math.floor(radius / b + 1e-9) + 1) * b
    g = np.stack(np.meshgrid(xs, ys, indexing="ij"), axis=-1).reshape(-1, 2)
    return g


def exact_gram(pts):
    """Closed form <pi(z_j) g, pi(z_i) g> = e^{i pi (w_j - w_i)(x_j + x_i)}
    e^{-pi (|dx|^2 + |dw|^2) / 2}."""
    x = pts[:, 0]
    w = pts[:, 1]
    dw = w[None, :] - w[:, None]
    sx = x[None, :] + x[:, None]
    dx = x[None, :] - x[:, None]
    return np.exp(1j * np.pi * dw * sx - np.pi * (dx ** 2 + dw ** 2) / 2.0)


def riesz_facts():
    # 2Z x Z truncated at 6, interior margin 2 -> radius 4
    pts = lattice_pts(2.0, 1.0, 4.0)
    G = exact_gram(pts)
    eigs = np.linalg.eigvalsh(G)
    Ginv = np.linalg.inv(G)
    b_sup = float(np.max(np.real(np.diag(Ginv))))
    return {
        "subspace_dim": int(len(pts)),
        "A": float(eigs[0]),
        "B": float(eigs[-1]),
        "B_sup": b_sup,
        "delta": 1.0 / math.sqrt(b_sup),
    }


def hap_facts():
    T = 24.0
    t, wq = make_grid(T)
    sq = np.sqrt(wq)
    pts = lattice_pts(2.0 ** -0.5, 2.0 ** -0.5, 11.0)
    axis = np.linspace(-1.0, 1.0, 5)
    res = []
    for x1 in axis:
        for x2 in axis:
            target = atom_columns(t, np.array([[x1, x2]]))[:, 0] * sq
            mask = np.max(np.abs(pts - np.array([x1, x2])), axis=1) <= 6.0 + 1e-9
            cols = atom_columns(t, pts[mask]) * sq[:, None]
            c, *_ = np.linalg.lstsq(cols, target, rcond=None)
            res.append(float(np.linalg.norm(target - cols @ c)))
    worst = max(res)
    return {"max_residual": worst,
            "residual_bound": max(2.0 * worst, 1e-4)}


def completeness_facts():
    T = 24.0
    t, wq = make_grid(T)
    sq = np.sqrt(wq)
    pts = lattice_pts(2.0 ** -0.5, 2.0 ** -0.5, 11.0)
    cols = atom_columns(t, pts) * sq[:, None]
    probes = (hermites(t, wq, 10) * sq).T.astype(complex)
    c, *_ = np.linalg.lstsq(cols, probes, rcond=None)
    resid = np.linalg.norm(probes - cols @ c, axis=0)
    worst = float(np.max(resid))
    return {"max_residual": worst,
            "residual_bound": max(2.0 * worst, 1e-4)}


def main():
    golden = {}
    golden["fibonacci"] = fibonacci_facts()
    golden["padic_2_1"] = padic_facts(2, 1, 12, cover_n=4)
    golden["padic_3_half"] = padic_facts(3, Fraction(1, 2), 8, cover_n=4)

    a_half, b_half = section_extremes(
        24.0, lattice_pts(2.0 ** -0.5, 2.0 ** -0.5, 11.0), 60)
    golden["frame_half"] = {"A_60": a_half, "B_60": b_half}

    a_no, b_no = section_extremes(22.0, lattice_pts(3.5, 0.3, 10.5), 60)
    golden["frame_105"] = {"A_60": a_no, "B_60": b_no}

    fibs = fib_points(12.0)
    ys = np.arange(-24, 25) * 0.5
    prod = np.array([(x, y) for x in fibs for y in ys])
    a_fib, b_fib = section_extremes(26.0, prod, 70)
    golden["fibonacci_gabor"] = {"A_70": a_fib, "B_70": b_fib}

    golden["riesz_2"] = riesz_facts()
    golden["hap_half"] = hap_facts()
    golden["completeness_half"] = completeness_facts()

    out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden.json")
    with open(out, "w") as fh:
        json.dump(golden, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote {out}")
    for key, val in sorted(golden.items()):
        print(f"[{key}]")
        for k, v in val.items():
            print(f"  {k}: {v}")


if __name__ == "__main__":
    main()
