"""Function-space descriptors: bases, evaluation, and Markov constants.

Supported families:

* ``polynomial(n, d)`` -- real polynomials of total degree <= d on the
  closed cube [-1, 1]^n, monomial basis in graded-lexicographic order.
* ``trigonometric(n, d)`` -- tensor products of {1, cos(k*pi*x_i),
  sin(k*pi*x_i), k <= d}, period 2 in each coordinate, dimension (2d+1)^n.
  The tensor (rather than total-degree) convention is deliberate: it makes
  the Bernstein constant pi*d*n exact coordinate-wise.
* ``fewnomial_span(exponents)`` -- the linear span of monomials x^alpha
  with real exponent vectors, defined on the open positive orthant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np


class DomainError(ValueError):
    """A point lies outside the declared domain of the space."""


class RankDeficiencyError(RuntimeError):
    """A basis is linearly dependent on the supplied sample."""


# ---------------------------------------------------------------------------
# moduli of continuity


@dataclass(frozen=True)
class ModulusOfContinuity:
    """omega(t): increasing concave, omega(0) = 0, omega(t) -> infinity.

    Built-ins: ``identity`` (omega(t) = t) and ``power`` (omega(t) = t**gamma,
    0 < gamma <= 1).
    """

    kind: str = "identity"
    gamma: float = 1.0

    def __post_init__(self):
        if self.kind not in ("identity", "power"):
            raise ValueError(f"unknown modulus kind {self.kind!r}")
        if self.kind == "power" and not (0.0 < self.gamma <= 1.0):
            raise ValueError("power modulus needs gamma in (0, 1]")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            raise ValueError("modulus argument must be nonnegative")
        out = t if self.kind == "identity" else t**self.gamma
        return float(out) if out.ndim == 0 else out


IDENTITY = ModulusOfContinuity("identity")


def power_modulus(gamma: float) -> ModulusOfContinuity:
    return ModulusOfContinuity("power", gamma)


# ---------------------------------------------------------------------------
# basis functions


@dataclass(frozen=True)
class BasisFunction:
    """One basis element, with enough data to evaluate it anywhere.

    ``kind`` is "monomial" (integer exponent tuple), "trig" (per-axis
    frequency/phase table) or "power" (real exponent vector).
    """

    kind: str
    data: tuple

    def __call__(self, point):
        x = np.atleast_2d(np.asarray(point, dtype=float))
        if self.kind == "monomial":
            return float(np.prod(x[0] ** np.asarray(self.data)))
        if self.kind == "trig":
            val = 1.0
            for xi, (freq, phase) in zip(x[0], self.data):
                if freq == 0:
                    continue
                f = math.cos if phase == 0 else math.sin
                val *= f(freq * math.pi * xi)
            return val
        if np.any(x <= 0):
            raise DomainError("fewnomial basis needs positive coordinates")
        return float(np.exp(np.log(x[0]) @ np.asarray(self.data)))


def _monomial_exponents(n: int, d: int) -> list[tuple[int, ...]]:
    exps = [a for a in product(range(d + 1), repeat=n) if sum(a) <= d]
    # graded lexicographic: by total degree, then x1 before x2 before ...
    exps.sort(key=lambda a: (sum(a), tuple(-ai for ai in a)))
    return exps


def _trig_axis_index(k: int) -> tuple[int, int]:
    # 0 -> constant; 2j-1 -> cos(j pi x); 2j -> sin(j pi x)
    if k == 0:
        return (0, 0)
    j = (k + 1) // 2
    return (j, 0) if k % 2 == 1 else (j, 1)


def _trig_tuples(n: int, d: int) -> list[tuple[int, ...]]:
    tuples = list(product(range(2 * d + 1), repeat=n))
    freq = lambda t: sum((k + 1) // 2 for k in t)
    tuples.sort(key=lambda t: (freq(t), t))
    return tuples


# ---------------------------------------------------------------------------
# space descriptors


@dataclass(frozen=True)
class SpaceDescriptor:
    kind: str  # "polynomial" | "trigonometric" | "fewnomial"
    n: int
    degree: int = 0
    exponents: tuple[tuple[float, ...], ...] = ()
    modulus: ModulusOfContinuity = IDENTITY

    @staticmethod
    def polynomial(n: int, d: int, modulus: ModulusOfContinuity = IDENTITY):
        if n < 1 or d < 0:
            raise ValueError("need n >= 1 and d >= 0")
        return SpaceDescriptor("polynomial", n, d, (), modulus)

    @staticmethod
    def trigonometric(n: int, d: int, modulus: ModulusOfContinuity = IDENTITY):
        if n < 1 or d < 0:
            raise ValueError("need n >= 1 and d >= 0")
        return SpaceDescriptor("trigonometric", n, d, (), modulus)

    @staticmethod
    def fewnomial_span(exponents, modulus: ModulusOfContinuity = IDENTITY):
        exps = tuple(tuple(float(a) for a in alpha) for alpha in exponents)
        if not exps:
            raise ValueError("fewnomial exponent list must be nonempty")
        if len(set(exps)) != len(exps):
            raise ValueError("fewnomial exponents must be duplicate-free")
        n = len(exps[0])
        if any(len(a) != n for a in exps):
            raise ValueError("exponent vectors must share one length")
        return SpaceDescriptor("fewnomial", n, 0, exps, modulus)

    # -- structure ---------------------------------------------------------

    def dimension(self) -> int:
        if self.kind == "polynomial":
            return math.comb(self.n + self.degree, self.degree)
        if self.kind == "trigonometric":
            return (2 * self.degree + 1) ** self.n
        return len(self.exponents)

    def basis(self) -> list[BasisFunction]:
        if self.kind == "polynomial":
            return [BasisFunction("monomial", e) for e in _monomial_exponents(self.n, self.degree)]
        if self.kind == "trigonometric":
            return [
                BasisFunction("trig", tuple(_trig_axis_index(k) for k in t))
                for t in _trig_tuples(self.n, self.degree)
            ]
        return [BasisFunction("power", alpha) for alpha in self.exponents]

    def evaluate_basis(self, points) -> np.ndarray:
        """Basis values at one point (returns (l,)) or many ((m, l))."""
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        if pts.shape[1] != self.n:
            raise ValueError(f"points must have {self.n} coordinates")
        if self.kind == "polynomial":
            V = self._eval_poly(pts)
        elif self.kind == "trigonometric":
            V = self._eval_trig(pts)
        else:
            V = self._eval_fewnomial(pts)
        return V[0] if single else V

    def _eval_poly(self, pts):
        exps = np.asarray(_monomial_exponents(self.n, self.degree))
        m = pts.shape[0]
        V = np.ones((m, exps.shape[0]))
        for j in range(self.n):
            powers = pts[:, j][:, None] ** np.arange(self.degree + 1)[None, :]
            V *= powers[:, exps[:, j]]
        return V

    def _eval_trig(self, pts):
        d = self.degree
        m = pts.shape[0]
        tables = []
        for j in range(self.n):
            t = np.empty((m, 2 * d + 1))
            t[:, 0] = 1.0
            for k in range(1, d + 1):
                t[:, 2 * k - 1] = np.cos(k * np.pi * pts[:, j])
                if 2 * k <= 2 * d:
                    t[:, 2 * k] = np.sin(k * np.pi * pts[:, j])
            tables.append(t)
        tuples = np.asarray(_trig_tuples(self.n, d))
        V = np.ones((m, tuples.shape[0]))
        for j in range(self.n):
            V *= tables[j][:, tuples[:, j]]
        return V

    def _eval_fewnomial(self, pts):
        if np.any(pts <= 0):
            raise DomainError("fewnomial evaluation needs positive coordinates")
        alphas = np.asarray(self.exponents)
        return np.exp(np.log(pts) @ alphas.T)

    def default_box(self):
        """Natural evaluation box: the unit cube, or None for fewnomials."""
        if self.kind == "fewnomial":
            return None
        return (-np.ones(self.n), np.ones(self.n))

    def to_json(self) -> dict:
        mod = "identity" if self.modulus.kind == "identity" else {
            "kind": "power", "gamma": self.modulus.gamma}
        if self.kind == "fewnomial":
            return {"kind": "fewnomial", "exponents": [list(a) for a in self.exponents],
                    "modulus": mod}
        return {"kind": self.kind, "vars": self.n, "degree": self.degree, "modulus": mod}


def space_from_json(obj: dict) -> SpaceDescriptor:
    mod = obj.get("modulus", "identity")
    if isinstance(mod, str):
        if mod == "identity":
            modulus = IDENTITY
        elif mod.startswith("power:"):
            modulus = power_modulus(float(mod.split(":", 1)[1]))
        else:
            raise ValueError(f"unknown modulus {mod!r}")
    else:
        modulus = power_modulus(float(mod["gamma"]))
    kind = obj["kind"]
    if kind == "polynomial":
        return SpaceDescriptor.polynomial(int(obj["vars"]), int(obj["degree"]), modulus)
    if kind == "trigonometric":
        return SpaceDescriptor.trigonometric(int(obj["vars"]), int(obj["degree"]), modulus)
    if kind == "fewnomial":
        return SpaceDescriptor.fewnomial_span(obj["exponents"], modulus)
    raise ValueError(f"unknown space kind {kind!r}")


# ---------------------------------------------------------------------------
# Markov constants


@dataclass(frozen=True)
class MarkovConstant:
    value: float
    certified: bool


def markov_constant(space: SpaceDescriptor, box=None) -> MarkovConstant:
    """Least M with L_f <= M * sup|f| over the space, relative to its modulus.

    Exact for polynomial/trigonometric spaces with the identity modulus
    (Markov resp. Bernstein); otherwise an uncertified sampled estimate.
    """
    if space.modulus.kind == "identity":
        if space.kind == "polynomial":
            return MarkovConstant(float(space.degree**2 * space.n), True)
        if space.kind == "trigonometric":
            return MarkovConstant(math.pi * space.degree * space.n, True)
    if box is None:
        box = space.default_box()
    if box is None:
        raise ValueError("fewnomial Markov estimate needs an explicit box")
    pts, w = uniform_quadrature(box, samples_per_axis=_axis_samples(space.n))
    return MarkovConstant(gram_schmidt_markov_bound(space, pts, w), False)


def _axis_samples(n: int) -> int:
    return {1: 513, 2: 65}.get(n, 17)


def uniform_quadrature(box, samples_per_axis: int = 65):
    """Tensor trapezoid rule on a box; returns (points, weights)."""
    lo, hi = (np.asarray(b, dtype=float) for b in box)
    axes, wts = [], []
    for a, b in zip(lo, hi):
        x = np.linspace(a, b, samples_per_axis)
        w = np.full(samples_per_axis, (b - a) / (samples_per_axis - 1))
        w[0] *= 0.5
        w[-1] *= 0.5
        axes.append(x)
        wts.append(w)
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    weight = wts[0]
    for w in wts[1:]:
        weight = np.multiply.outer(weight, w)
    return pts, weight.ravel()


def gram_schmidt_markov_bound(space: SpaceDescriptor, sample_points, weights) -> float:
    """Sampled upper estimate of the Markov constant.

    Orthonormalizes the basis in L2 of the supplied quadrature, estimates
    the Lipschitz constants of the orthonormal functions by difference
    quotients on sampled pairs, and returns max_i L_i * sqrt(l) * sqrt(mass).
    The difference quotients only lower-bound the true Lipschitz constants,
    so the result is not a certificate.
    """
    pts = np.atleast_2d(np.asarray(sample_points, dtype=float))
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0) or w.sum() <= 0:
        raise ValueError("weights must be nonnegative with positive mass")
    Phi = space.evaluate_basis(pts)
    G = Phi.T @ (w[:, None] * Phi)
    try:
        R = np.linalg.cholesky(G)
    except np.linalg.LinAlgError as exc:
        raise RankDeficiencyError("basis is rank-deficient on the sample") from exc
    # columns of Psi are the orthonormalized basis sampled on the grid
    Psi = np.linalg.solve(R, Phi.T).T
    l = Phi.shape[1]
    pairs = _quotient_pairs(len(pts))
    dx = np.max(np.abs(pts[pairs[:, 0]] - pts[pairs[:, 1]]), axis=1)
    keep = dx > 1e-14
    if not np.any(keep):
        return 0.0
    denom = space.modulus(dx[keep])
    dpsi = np.abs(Psi[pairs[keep, 0]] - Psi[pairs[keep, 1]])
    lip = float(np.max(dpsi / denom[:, None])) if l else 0.0
    return lip * math.sqrt(l) * math.sqrt(float(w.sum()))


def _quotient_pairs(m: int, extra: int = 4000) -> np.ndarray:
    idx = np.arange(m - 1)
    pairs = np.stack([idx, idx + 1], axis=1)
    rng = np.random.default_rng(0)
    rand = rng.integers(0, m, size=(extra, 2))
    return np.vstack([pairs, rand])
