"""Model sets cut from Z[1/p] sitting diagonally in Q_p x R.

Everything here is exact: elements are a/p^k in canonical form, window
comparisons use Fraction arithmetic, counts and ratios are integers and
Fractions. Floats appear only when callers ask for them.
"""

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .errors import CoverError


def _is_prime(p):
    if p < 2:
        return False
    q = 2
    while q * q <= p:
        if p % q == 0:
            return False
        q += 1
    return True


def parse_window(w):
    """Exact Fraction from int, Fraction, float (exact binary value), or string.

    Strings may be decimal ("0.3") or rational ("3/10"); both parse exactly.
    """
    if isinstance(w, Fraction):
        frac = w
    elif isinstance(w, int):
        frac = Fraction(w)
    elif isinstance(w, float):
        frac = Fraction(w)
    elif isinstance(w, str):
        try:
            frac = Fraction(Decimal(w)) if "/" not in w else Fraction(w)
        except (InvalidOperation, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse window half-width {w!r}") from exc
    else:
        raise ValueError(f"unsupported window type {type(w).__name__}")
    if frac <= 0:
        raise ValueError("window half-width must be positive")
    return frac


@dataclass(frozen=True)
class PAdicRational:
    """Canonical a / p^k with p prime and (p does not divide a, or a = 0 and k = 0)."""

    p: int
    a: int
    k: int

    @classmethod
    def make(cls, p, a, k=0):
        if k < 0:
            a *= p ** (-k)
            k = 0
        if a == 0:
            return cls(p, 0, 0)
        while k > 0 and a % p == 0:
            a //= p
            k -= 1
        return cls(p, a, k)

    def value(self):
        return Fraction(self.a, self.p ** self.k)

    def __neg__(self):
        return PAdicRational(self.p, -self.a, self.k)

    def __add__(self, other):
        if self.p != other.p:
            raise ValueError("mixed primes")
        k = max(self.k, other.k)
        a = self.a * self.p ** (k - self.k) + other.a * self.p ** (k - other.k)
        return PAdicRational.make(self.p, a, k)

    def __sub__(self, other):
        return self + (-other)


def padic_norm(q):
    """|a/p^k|_p = p^(k - v_p(a)) as an exact Fraction; |0|_p = 0."""
    if q.a == 0:
        return Fraction(0)
    v = 0
    a = abs(q.a)
    while a % q.p == 0:
        a //= q.p
        v += 1
    e = q.k - v
    return Fraction(q.p ** e) if e >= 0 else Fraction(1, q.p ** (-e))


@dataclass(frozen=True)
class PAdicModelSet:
    """Z[1/p] elements of denominator exponent <= n_max with real part in [-w, w]."""

    p: int
    w: Fraction
    n_max: int
    elements: tuple

    @classmethod
    def build(cls, p, w, n_max):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if n_max < 0:
            raise ValueError("n_max must be nonnegative")
        w = parse_window(w)
        return cls(p, w, n_max, tuple(enumerate_model_set(p, w, n_max)))


def enumerate_model_set(p, w, n_max):
    """All canonical a/p^k with k <= n_max and |a/p^k| <= w, ordered by (k, a).

    The window comparison |a| <= w * p^k is exact Fraction arithmetic; no
    floats are involved anywhere.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    w = parse_window(w)
    out = []
    for k in range(n_max + 1):
        bound = w * p ** k
        a_max = bound.numerator // bound.denominator  # floor of a Fraction
        for a in range(-a_max, a_max + 1):
            if k > 0 and a % p == 0:
                continue
            out.append(PAdicRational(p, a, k))
    return out


@dataclass
class PAdicDensityReport:
    """Counts and exact ratios count / p^n over the ball sequence p^(-n) Z_p."""

    p: int
    w: Fraction
    n_max: int
    counts: list
    ratios: list          # Fractions
    density: Fraction     # geometric extrapolation of the ratio sequence

    def deviation_constant(self):
        """Smallest c with |ratio_n - 2w| <= c p^(-n) over the computed range."""
        return max(abs(r - 2 * self.w) * self.p ** n
                   for n, r in enumerate(self.ratios))

    def to_dict(self):
        return {"p": self.p,
                "w": str(self.w),
                "n_max": self.n_max,
                "counts": list(self.counts),
                "ratios": [str(r) for r in self.ratios],
                "ratios_float": [float(r) for r in self.ratios],
                "density": str(self.density),
                "density_float": float(self.density)}


def padic_density(ms):
    """Ratios |Lambda cap p^(-n) Z_p| / p^n for n <= n_max, with an exact extrapolation.

    Membership in the ball p^(-n) Z_p is k <= n. The ratio sequence equals
    2w + O(p^(-n)), so the two-term geometric extrapolation
    r_N + (r_N - r_{N-1}) / (p - 1) removes the leading deviation exactly
    when it is exactly geometric.
    """
    counts = [0] * (ms.n_max + 1)
    for q in ms.elements:
        counts[q.k] += 1
    for n in range(1, ms.n_max + 1):
        counts[n] += counts[n - 1]
    ratios = [Fraction(counts[n], ms.p ** n) for n in range(ms.n_max + 1)]
    if ms.n_max >= 1:
        density = ratios[-1] + (ratios[-1] - ratios[-2]) / (ms.p - 1)
    else:
        density = ratios[-1]
    return PAdicDensityReport(ms.p, ms.w, ms.n_max, counts, ratios, density)


@dataclass
class PAdicCoverResult:
    defect_set: tuple      # PAdicRationals
    k: int
    window: Fraction
    verified: bool

    def to_dict(self):
        return {"k": self.k,
                "defect_set": [f"{q.a}/{q.p}^{q.k}" for q in self.defect_set],
                "defect_values": [str(q.value()) for q in self.defect_set],
                "window": str(self.window),
                "verified": self.verified}


def padic_cover_set(ms, max_cover_size=None):
    """Greedy cover of the sumset Lambda + Lambda by translates of Lambda.

    Candidates are the sumset's own elements; a candidate f covers s exactly
    when |s - f| <= w (the difference is automatically in Z[1/p]). Raises
    CoverError if more than max_cover_size translates would be needed.
    """
    elements = ms.elements
    sums = {}
    for q1 in elements:
        for q2 in elements:
            s = q1 + q2
            sums[(s.k, s.a)] = s
    # order: |real value| ascending, then (k, a)
    sumset = sorted(sums.values(), key=lambda q: (abs(q.value()), q.k, q.a))
    values = [q.value() for q in sumset]

    uncovered = set(range(len(sumset)))
    picks = []
    while uncovered:
        if max_cover_size is not None and len(picks) >= max_cover_size:
            raise CoverError(f"cover needs more than {max_cover_size} translates "
                             "at this truncation")
        best_gain, best_idx, best_cov = -1, None, None
        for ci, fval in enumerate(values):
            cov = {ti for ti in uncovered if abs(values[ti] - fval) <= ms.w}
            if len(cov) > best_gain:
                best_gain, best_idx, best_cov = len(cov), ci, cov
        if best_gain <= 0:
            raise CoverError("not approximately closed at this truncation")
        picks.append(best_idx)
        uncovered -= best_cov

    defect = tuple(sorted((sumset[i] for i in picks), key=lambda q: (q.value(), q.k)))
    verified = all(any(abs(v - sumset[i].value()) <= ms.w for i in picks)
                   for v in values)
    return PAdicCoverResult(defect, len(picks), ms.w, verified)
