"""Turan-Nazarov bounds for exponential sums, log-geometry of the positive
orthant, K_d distortion constants, and the fewnomial Remez-type bounds.

The absolute constant c appearing in every Turan-Nazarov-style bound is not
specified by the theory; it is therefore a required explicit argument
everywhere (except in the single-term case m = 0, where it cancels), and
``estimate_c`` quantifies it empirically from seeded random instances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np


def _require_c(c, m):
    if m > 0 and c is None:
        raise ValueError("the absolute constant c must be supplied "
                         "(see estimate_c for an empirical value)")


# ---------------------------------------------------------------------------
# exponential polynomials


@dataclass(frozen=True, eq=False)
class ExpPoly:
    """p(x) = sum_k c_k * exp(f_k(x)) with complex coefficients and rates."""

    coefficients: tuple
    rates: tuple  # tuple of complex n-vectors

    def __post_init__(self):
        coefs = tuple(complex(c) for c in self.coefficients)
        rates = tuple(tuple(complex(r) for r in rate) for rate in self.rates)
        if not coefs or len(coefs) != len(rates):
            raise ValueError("need matching, nonempty coefficient and rate lists")
        if len(set(rates)) != len(rates):
            raise ValueError("rates must be pairwise distinct")
        object.__setattr__(self, "coefficients", coefs)
        object.__setattr__(self, "rates", rates)

    @staticmethod
    def univariate(coefficients, lambdas) -> "ExpPoly":
        return ExpPoly(tuple(coefficients), tuple((lam,) for lam in lambdas))

    @property
    def term_count(self) -> int:
        return len(self.coefficients)

    @property
    def nvars(self) -> int:
        return len(self.rates[0])

    @property
    def max_abs_re_rate(self) -> float:
        return max(max(abs(r.real) for r in rate) if self.nvars > 1 else abs(rate[0].real)
                   for rate in self.rates)

    def __call__(self, x):
        pts = np.asarray(x, dtype=float)
        single = pts.ndim == 0 if self.nvars == 1 else pts.ndim == 1
        pts = np.atleast_1d(pts)
        if self.nvars == 1 and pts.ndim == 1:
            pts = pts[:, None]
        R = np.asarray(self.rates, dtype=complex)  # (terms, n)
        C = np.asarray(self.coefficients, dtype=complex)
        vals = np.exp(pts @ R.T) @ C
        return vals[0] if single else vals


def sup_abs_on_interval(p: ExpPoly, a: float, b: float, *, rel_tol: float = 1e-6,
                        start: int = 257, cap: int = 1 << 14) -> float:
    """Dense-sampling estimate of sup |p| on [a, b], refined by doubling the
    sample until the relative change drops below ``rel_tol``. Uncertified:
    no Markov constant is available for exponential sums here."""
    if b < a:
        raise ValueError("empty interval")
    m = start
    prev = None
    while True:
        xs = np.linspace(a, b, m)
        cur = float(np.max(np.abs(p(xs))))
        if prev is not None and (cur - prev) <= rel_tol * max(cur, 1e-300):
            return cur
        if m >= cap:
            return cur
        prev = cur
        m = 2 * m - 1


def sup_abs_on_union(p: ExpPoly, intervals) -> float:
    return max(sup_abs_on_interval(p, a, b) for a, b in intervals)


# ---------------------------------------------------------------------------
# log-geometry of the positive orthant


def en_map(u):
    """Componentwise exponential R^n -> positive orthant."""
    return np.exp(np.asarray(u, dtype=float))


def log_map(x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("log_map needs positive coordinates")
    return np.log(x)


def geodesic_point(x, y, t: float):
    """(x_1^t y_1^(1-t), ..., x_n^t y_n^(1-t)): the log-segment between x and y."""
    if not (0.0 <= t <= 1.0):
        raise ValueError("t must lie in [0, 1]")
    return en_map(t * log_map(x) + (1.0 - t) * log_map(y))


@dataclass(frozen=True, eq=False)
class LogBody:
    """A compact logarithmically convex region in the positive orthant.

    ``box(a, b)`` has a computed Hausdorff measure (product of the positive
    side lengths). General log-polytopes require a user-supplied measure,
    echoed in reports as user-asserted; the one computed exception is a
    two-vertex log-segment along a single coordinate axis, whose image is a
    straight segment of known length.
    """

    kind: str  # "box" | "log_polytope"
    a: Optional[np.ndarray] = None
    b: Optional[np.ndarray] = None
    log_vertices: Optional[np.ndarray] = None
    dim: int = 0
    measure: float = 0.0
    measure_source: str = "computed"

    @staticmethod
    def box(a, b) -> "LogBody":
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if np.any(a <= 0) or np.any(b < a):
            raise ValueError("need 0 < a <= b componentwise")
        sides = b - a
        dim = int(np.sum(sides > 0))
        measure = float(np.prod(sides[sides > 0])) if dim else 0.0
        if measure <= 0:
            raise ValueError("box must have positive measure")
        return LogBody("box", a=a, b=b, dim=dim, measure=measure)

    @staticmethod
    def log_polytope(log_vertices, dim: int, measure: Optional[float] = None) -> "LogBody":
        V = np.atleast_2d(np.asarray(log_vertices, dtype=float))
        source = "user"
        if measure is None:
            if V.shape[0] == 2 and np.sum(np.abs(V[1] - V[0]) > 1e-15) == 1:
                # axis-aligned log-segment: the image is a straight segment
                j = int(np.argmax(np.abs(V[1] - V[0])))
                measure = abs(math.exp(V[1, j]) - math.exp(V[0, j]))
                source = "computed"
            else:
                raise ValueError("measure must be supplied for general log-polytopes")
        if measure <= 0:
            raise ValueError("measure must be positive")
        return LogBody("log_polytope", log_vertices=V, dim=dim,
                       measure=float(measure), measure_source=source)

    def vertices(self) -> np.ndarray:
        """Vertices in orthant coordinates."""
        if self.kind == "box":
            n = self.a.size
            corners = np.array(np.meshgrid(*[(self.a[j], self.b[j]) for j in range(n)],
                                           indexing="ij")).reshape(n, -1).T
            return np.unique(corners, axis=0)
        return en_map(self.log_vertices)

    def log_width(self, alpha) -> float:
        """sup over x, y in the body of <alpha, log x - log y>; exact at vertices."""
        alpha = np.asarray(alpha, dtype=float)
        L = np.log(self.vertices())
        vals = L @ alpha
        return float(np.max(vals) - np.min(vals))


def kd_constant(body, d: int) -> float:
    """K_d: ratio of max to min d-fold coordinate products over the set.

    Accepts a LogBody or a finite array of positive points. Coordinate
    products are log-linear, so extrema sit at vertices / sample points.
    """
    if isinstance(body, LogBody):
        pts = body.vertices()
    else:
        pts = np.atleast_2d(np.asarray(body, dtype=float))
        if np.any(pts <= 0):
            raise ValueError("points must have positive coordinates")
    n = pts.shape[1]
    if not (1 <= d <= n):
        raise ValueError("need 1 <= d <= n")
    hi = -math.inf
    lo = math.inf
    for idx in combinations(range(n), d):
        prods = np.prod(pts[:, idx], axis=1)
        hi = max(hi, float(np.max(prods)))
        lo = min(lo, float(np.min(prods)))
    return hi / lo


# ---------------------------------------------------------------------------
# convex bodies in R^n (for the multivariate Turan-Nazarov bound)


@dataclass(frozen=True, eq=False)
class ConvexBody:
    """A convex body in R^n given by a box or by polytope vertices."""

    kind: str
    a: Optional[np.ndarray] = None
    b: Optional[np.ndarray] = None
    verts: Optional[np.ndarray] = None
    dim: int = 0
    measure: Optional[float] = None

    @staticmethod
    def box(a, b) -> "ConvexBody":
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if np.any(b < a):
            raise ValueError("need a <= b componentwise")
        sides = b - a
        dim = int(np.sum(sides > 0))
        measure = float(np.prod(sides[sides > 0])) if dim else None
        return ConvexBody("box", a=a, b=b, dim=dim, measure=measure)

    @staticmethod
    def polytope(vertices, dim: int, measure: Optional[float] = None) -> "ConvexBody":
        V = np.atleast_2d(np.asarray(vertices, dtype=float))
        return ConvexBody("polytope", verts=V, dim=dim, measure=measure)

    def vertices(self) -> np.ndarray:
        if self.kind == "box":
            n = self.a.size
            corners = np.array(np.meshgrid(*[(self.a[j], self.b[j]) for j in range(n)],
                                           indexing="ij")).reshape(n, -1).T
            return np.unique(corners, axis=0)
        return self.verts

    def re_width(self, rate) -> float:
        """sup over x, y in the body of Re f(x - y), f linear with the given rate."""
        re = np.asarray([complex(r).real for r in rate])
        if self.kind == "box":
            return float(np.abs(re) @ (self.b - self.a))
        vals = self.vertices() @ re
        return float(np.max(vals) - np.min(vals))


# ---------------------------------------------------------------------------
# the bounds


def tn_bound_1d(m: int, max_re_rate: float, len_I: float, meas_Z: float,
                c: Optional[float] = None) -> float:
    """exp(len_I * max|Re rate|) * (c * len_I / meas_Z)^m."""
    if not (0.0 < meas_Z <= len_I):
        raise ValueError("need 0 < meas_Z <= len_I")
    _require_c(c, m)
    factor = 1.0 if m == 0 else (c * len_I / meas_Z) ** m
    return math.exp(len_I * max_re_rate) * factor


def tn_bound_multi(p: ExpPoly, body: ConvexBody, meas_Z: float,
                   c: Optional[float] = None, meas_B: Optional[float] = None) -> float:
    """Multivariate bound exp(max_k width_k(B)) * (c * d * meas_B / meas_Z)^m."""
    m = p.term_count - 1
    _require_c(c, m)
    if meas_B is None:
        meas_B = body.measure
    if meas_B is None:
        raise ValueError("the body's Hausdorff measure must be supplied")
    if not (0.0 < meas_Z <= meas_B):
        raise ValueError("need 0 < meas_Z <= meas_B")
    width = max(body.re_width(rate) for rate in p.rates)
    factor = 1.0 if m == 0 else (c * body.dim * meas_B / meas_Z) ** m
    return math.exp(width) * factor


def fewnomial_bound(exponents, body: LogBody, meas_Z: float,
                    c: Optional[float] = None) -> float:
    """max_k sup(x/y)^alpha_k * (c * d * K_d(B) * H_d(B) / meas_Z)^m."""
    alphas = [np.asarray(a, dtype=float) for a in exponents]
    m = len(alphas) - 1
    _require_c(c, m)
    if meas_Z <= 0:
        raise ValueError("meas_Z must be positive")
    first = max(math.exp(body.log_width(a)) for a in alphas)
    if m == 0:
        return first
    d = body.dim
    return first * (c * d * kd_constant(body, d) * body.measure / meas_Z) ** m


def rectangle_fewnomial_bound(a, b, exponents, meas_Z: float,
                              c: Optional[float] = None) -> float:
    """Refined bound for full-dimensional rectangles [a, b] in the orthant."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(a <= 0) or np.any(b <= a):
        raise ValueError("need 0 < a < b componentwise")
    alphas = [np.asarray(al, dtype=float) for al in exponents]
    m = len(alphas) - 1
    _require_c(c, m)
    if not (0.0 < meas_Z <= float(np.prod(b - a))):
        raise ValueError("need 0 < meas_Z <= vol(box)")
    first = max(float(np.prod((b / a) ** al)) for al in alphas)
    if m == 0:
        return first
    n = a.size
    second = c * n * float(np.prod(b * np.log(b / a))) / meas_Z
    return first * second**m


def cor31_bound(exponents, body: LogBody, meas_Z: float,
                c: Optional[float] = None) -> float:
    """K_1(B)^(m + max_k |alpha_k|) * (c * d * H_d(B) / meas_Z)^m."""
    alphas = [np.asarray(a, dtype=float) for a in exponents]
    m = len(alphas) - 1
    _require_c(c, m)
    if meas_Z <= 0:
        raise ValueError("meas_Z must be positive")
    deg = max(float(np.sum(a)) for a in alphas)
    k1 = kd_constant(body, 1)
    second = 1.0 if m == 0 else (c * body.dim * body.measure / meas_Z) ** m
    return k1 ** (m + deg) * second


def discrete_fewnomial_bound(a: float, b: float, exponents, span: float,
                             c: Optional[float] = None) -> float:
    """(b/a)^n_m * (c * b * ln(b/a) / span)^m for sparse integer-exponent polynomials."""
    if not (0.0 < a < b):
        raise ValueError("need 0 < a < b")
    exps = sorted(int(e) for e in exponents)
    if len(set(exps)) != len(exps) or exps[0] < 0:
        raise ValueError("exponents must be distinct nonnegative integers")
    m = len(exps) - 1
    _require_c(c, m)
    if m == 0:
        return (b / a) ** exps[-1]
    if span <= 0:
        raise ValueError("span must be positive")
    return (b / a) ** exps[-1] * (c * b * math.log(b / a) / span) ** m


def nested_fewnomial_bound(R: float, rho: float, N: float, m: int, delta: float,
                           c: Optional[float] = None) -> float:
    """(R/rho)^N * (c * R * ln(R/rho) / delta)^m for nested hypersurface families."""
    if not (0.0 < rho < R):
        raise ValueError("need 0 < rho < R")
    if delta <= 0:
        raise ValueError("delta must be positive")
    _require_c(c, m)
    if m == 0:
        return (R / rho) ** N
    return (R / rho) ** N * (c * R * math.log(R / rho) / delta) ** m


# ---------------------------------------------------------------------------
# empirical constant estimation


@dataclass(frozen=True)
class CEstimate:
    value: float
    trials: int
    m_max: int
    rate_box: float
    seed: int
    argmax_trial: int

    def to_json(self) -> dict:
        return {"value": self.value, "trials": self.trials, "m_max": self.m_max,
                "rate_box": self.rate_box, "seed": self.seed,
                "argmax_trial": self.argmax_trial}


def sample_tn_instance(rng: np.random.Generator, m_max: int, rate_box: float):
    """One random 1-D Turan-Nazarov instance: (p, I=(0, L), Z intervals)."""
    m = int(rng.integers(1, m_max + 1)) if m_max >= 1 else 0
    coefs = rng.standard_normal(m + 1) + 1j * rng.standard_normal(m + 1)
    lambdas = (rng.uniform(-rate_box, rate_box, m + 1)
               + 1j * rng.uniform(-rate_box, rate_box, m + 1))
    p = ExpPoly.univariate(coefs, lambdas)
    L = float(rng.uniform(0.5, 2.0))
    k = int(rng.integers(1, 4))
    cuts = np.sort(rng.uniform(0.0, L, 2 * k))
    intervals = [(float(cuts[2 * j]), float(cuts[2 * j + 1])) for j in range(k)]
    intervals = [(a, b) for a, b in intervals if b > a + 1e-9]
    if not intervals:
        mid = L / 2
        intervals = [(mid - L / 8, mid + L / 8)]
    return p, (0.0, L), intervals


def minimal_c_for_instance(p: ExpPoly, interval, z_intervals) -> float:
    """Smallest c making the 1-D bound hold for one instance (sampled sups)."""
    m = p.term_count - 1
    if m == 0:
        return 0.0
    a, b = interval
    len_I = b - a
    meas_Z = sum(bb - aa for aa, bb in z_intervals)
    sup_I = sup_abs_on_interval(p, a, b)
    sup_Z = sup_abs_on_union(p, z_intervals)
    if sup_Z <= 0.0:
        return math.inf
    ratio = sup_I / (math.exp(len_I * p.max_abs_re_rate) * sup_Z)
    return max(ratio, 0.0) ** (1.0 / m) * meas_Z / len_I


def estimate_c(trials: int, m_max: int = 3, rate_box: float = 2.0,
               seed: int = 0) -> CEstimate:
    """Empirical minimal c over seeded random instances (a running maximum).

    With only single-term instances possible (m_max = 0) the exponent is
    zero and c is irrelevant; the 0-marker is returned.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if m_max == 0:
        return CEstimate(0.0, trials, m_max, rate_box, seed, -1)
    rng = np.random.default_rng(seed)
    best = 0.0
    arg = -1
    for t in range(trials):
        p, interval, zs = sample_tn_instance(rng, m_max, rate_box)
        ct = minimal_c_for_instance(p, interval, zs)
        if math.isfinite(ct) and ct > best:
            best, arg = ct, t
    return CEstimate(best, trials, m_max, rate_box, seed, arg)
