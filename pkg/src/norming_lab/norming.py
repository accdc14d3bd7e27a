"""Exact norming constants over the cube.

The norming constant of a finite set Z is computed as the certified sup,
over a uniform grid on the cube, of the per-point linear program

    maximize  sum_i a_i f_i(x)   s.t.  |sum_i a_i f_i(z_j)| <= 1  for all j.

The LP optimum is attained at a vertex of the feasible polytope, and the
polytope does not depend on x, so we enumerate its vertices once and take
the grid-wise maximum of |f_v(x)| over vertices v. This is exactly the
per-grid-point LP value, evaluated in bulk. ``simplex.norming_lp_value``
solves individual LPs directly and is used as a cross-check.

Certification: the grid maximum is a lower bound; the Markov constant of
the space turns it into the upper bound lower / (1 - M * omega(h/2)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from .spaces import MarkovConstant, SpaceDescriptor, markov_constant

DEFAULT_RANK_THRESHOLD = 1e-10
DEFAULT_GRID_BUDGET = 200_001
VERTEX_BUDGET = 4_000_000
FEKETE_CAP = 500_000


class NotNormingError(RuntimeError):
    """The supplied subset cannot certify a finite norming constant."""


class IllConditionedError(RuntimeError):
    def __init__(self, message, direction=None):
        super().__init__(message)
        self.direction = direction


# ---------------------------------------------------------------------------
# point sets


@dataclass(frozen=True, eq=False)
class PointSet:
    """A finite list of n-vectors, duplicate-free within 1e-12 in l-inf."""

    points: np.ndarray
    box: Optional[tuple] = None  # declared bounding box for fewnomial domains

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        object.__setattr__(self, "points", pts)
        _check_duplicates(pts)

    def __len__(self):
        return self.points.shape[0]


def _check_duplicates(pts: np.ndarray):
    if pts.shape[0] < 1:
        raise ValueError("point set must be nonempty")
    if pts.shape[0] > 1:
        diff = np.max(np.abs(pts[:, None, :] - pts[None, :, :]), axis=2)
        np.fill_diagonal(diff, np.inf)
        if np.min(diff) < 1e-12:
            raise ValueError("duplicate points (within 1e-12 in l-inf)")


def as_points(points, n: Optional[int] = None) -> np.ndarray:
    if isinstance(points, PointSet):
        pts = points.points
    else:
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        _check_duplicates(pts)
    if n is not None and pts.shape[1] != n:
        raise ValueError(f"points must have {n} coordinates")
    return pts


def _domain_box(space: SpaceDescriptor, points=None, box=None):
    if box is not None:
        return (np.asarray(box[0], dtype=float), np.asarray(box[1], dtype=float))
    if isinstance(points, PointSet) and points.box is not None:
        return (np.asarray(points.box[0], dtype=float),
                np.asarray(points.box[1], dtype=float))
    cube = space.default_box()
    if cube is None:
        raise ValueError("fewnomial spaces need an explicit bounding box")
    return cube


def uniform_grid(box, spacing=None, budget=None):
    """Uniform grid on a box; returns (points, effective_spacing)."""
    lo, hi = (np.asarray(b, dtype=float) for b in box)
    n = lo.size
    if budget is None:
        budget = DEFAULT_GRID_BUDGET
    axes = []
    h_eff = 0.0
    if spacing is None:
        per_axis = max(2, int(budget ** (1.0 / n)))
    else:
        per_axis = None
    for a, b in zip(lo, hi):
        if b <= a + 1e-15:
            axes.append(np.array([a]))
            continue
        if per_axis is not None:
            m = per_axis
        else:
            m = int(math.ceil((b - a) / spacing)) + 1
        axes.append(np.linspace(a, b, m))
        h_eff = max(h_eff, (b - a) / (m - 1))
    total = math.prod(len(ax) for ax in axes)
    if total > 50_000_000:
        raise ValueError("grid exceeds the hard point budget; coarsen spacing")
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    return pts, h_eff


# ---------------------------------------------------------------------------
# interpolation machinery


def interpolation_matrix(space: SpaceDescriptor, points) -> np.ndarray:
    """Matrix (f_i(x^j))_{j,i} in canonical basis order."""
    pts = as_points(points, space.n)
    return space.evaluate_basis(pts)


def interpolation_determinant(space: SpaceDescriptor, points) -> float:
    pts = as_points(points, space.n)
    l = space.dimension()
    if pts.shape[0] != l:
        raise ValueError(f"need exactly {l} points, got {pts.shape[0]}")
    return float(np.linalg.det(space.evaluate_basis(pts)))


def lagrange_basis(space: SpaceDescriptor, points) -> np.ndarray:
    """Coefficient vectors of the Lagrange functions, as columns.

    Column i holds the coefficients of L_i with L_i(x^j) = delta_ij.
    Computed by a linear solve; the Kronecker property is verified to 1e-10.
    """
    B = interpolation_matrix(space, points)
    l = space.dimension()
    if B.shape[0] != l:
        raise ValueError(f"need exactly {l} points")
    try:
        C = np.linalg.solve(B, np.eye(l))
    except np.linalg.LinAlgError as exc:
        raise NotNormingError("interpolation system is singular") from exc
    resid = np.max(np.abs(B @ C - np.eye(l)))
    if resid > 1e-10:
        raise IllConditionedError(
            f"Lagrange residual {resid:.2e} exceeds 1e-10; system is near-singular")
    return C


def cramer_bound(space: SpaceDescriptor, points, *, grid_spacing=None,
                 budget=None, box=None) -> float:
    """Upper bound (max_i sup|f_i|)^l * l * l! / |det| on the norming constant."""
    pts = as_points(points, space.n)
    l = space.dimension()
    if pts.shape[0] != l:
        raise ValueError(f"need exactly {l} points")
    delta = interpolation_determinant(space, pts)
    if delta == 0.0:
        raise NotNormingError("zero interpolation determinant: not norming via this subset")
    sup = 0.0
    for i in range(l):
        coeff = np.zeros(l)
        coeff[i] = 1.0
        bracket = certified_supnorm(space, coeff, box=_domain_box(space, points, box),
                                    grid_spacing=grid_spacing, budget=budget)
        sup = max(sup, bracket.upper)
    return sup**l * l * math.factorial(l) / abs(delta)


# ---------------------------------------------------------------------------
# certified sup-norms


@dataclass(frozen=True)
class SupBracket:
    lower: float
    upper: float
    certified: bool
    grid_spacing: float
    argmax: np.ndarray


def certified_supnorm(space: SpaceDescriptor, coefficients, box=None, *,
                      grid_spacing=None, budget=None) -> SupBracket:
    """Bracket [lower, upper] containing sup |f| over a box.

    ``lower`` is the grid maximum; ``upper`` inflates it by the Markov
    factor 1/(1 - M*omega(h/2)). On a strict sub-box of the space's natural
    domain the additive form lower + M*omega(h/2)*sup_domain is used, since
    the Markov constant is relative to the sup over the full domain.
    """
    coeff = np.asarray(coefficients, dtype=float)
    domain = space.default_box()
    if box is None:
        box = _domain_box(space)
    lo, hi = (np.asarray(b, dtype=float) for b in box)
    M = markov_constant(space, box=(lo, hi) if domain is None else domain)
    omega = space.modulus

    h = grid_spacing
    if h is None:
        _, h = uniform_grid((lo, hi), budget=budget)
    # refine until the certification factor is meaningful
    tries = 0
    while M.value * omega(h / 2) >= 1.0 and tries < 20:
        h /= 2.0
        tries += 1
    grid, h_eff = uniform_grid((lo, hi), spacing=h, budget=budget)
    vals = np.abs(space.evaluate_basis(grid) @ coeff)
    k = int(np.argmax(vals))
    lower = float(vals[k])
    pad = M.value * omega(h_eff / 2)
    certified = M.certified and pad < 1.0
    if pad >= 1.0:
        upper = math.inf
    elif domain is not None and (np.any(lo > domain[0] + 1e-15) or np.any(hi < domain[1] - 1e-15)):
        dom_grid, dom_h = uniform_grid(domain, spacing=h, budget=budget)
        dom_lower = float(np.max(np.abs(space.evaluate_basis(dom_grid) @ coeff)))
        dom_pad = M.value * omega(dom_h / 2)
        dom_upper = dom_lower / (1.0 - dom_pad) if dom_pad < 1.0 else math.inf
        upper = lower + M.value * omega(h_eff / 2) * dom_upper
        certified = certified and math.isfinite(dom_upper)
    else:
        upper = lower / (1.0 - pad)
    return SupBracket(lower, upper, certified, h_eff, grid[k])


# ---------------------------------------------------------------------------
# the norming constant


@dataclass(frozen=True)
class NormingReport:
    norming: bool
    value: Optional[float]
    lower: float
    upper: float
    grid_spacing: float
    witness_coefficients: np.ndarray
    witness_point: Optional[np.ndarray]
    method: str
    certified: bool = True

    @property
    def reciprocal(self) -> float:
        return 0.0 if not self.norming else 1.0 / self.value

    def to_json(self) -> dict:
        return {
            "norming": self.norming,
            "value": self.value,
            "reciprocal": self.reciprocal,
            "lower": self.lower,
            "upper": self.upper,
            "grid_spacing": self.grid_spacing,
            "witness_coefficients": np.asarray(self.witness_coefficients).tolist(),
            "witness_point": None if self.witness_point is None
            else np.asarray(self.witness_point).tolist(),
            "method": self.method,
            "certified": self.certified,
        }


def _feasible_vertices(B: np.ndarray) -> np.ndarray:
    """Vertices of {a : |Ba| <= 1}, one representative per +/- pair."""
    m, l = B.shape
    signs = np.array(list(_half_signs(l)), dtype=float)  # (2^(l-1), l)
    if m == l:
        return np.linalg.solve(B, signs.T).T
    combos = list(combinations(range(m), l))
    if len(combos) * signs.shape[0] > VERTEX_BUDGET:
        raise ValueError("vertex enumeration budget exceeded; reduce |Z| or dim V")
    sub = B[np.asarray(combos)]  # (C, l, l)
    dets = np.linalg.det(sub)
    scale = np.max(np.abs(sub), axis=(1, 2))
    ok = np.abs(dets) > 1e-12 * np.maximum(scale, 1.0) ** l
    if not np.any(ok):
        return np.empty((0, l))
    rhs = np.broadcast_to(signs.T, (int(ok.sum()), l, signs.shape[0]))
    verts = np.linalg.solve(sub[ok], rhs)  # (C_ok, l, S)
    verts = np.swapaxes(verts, 1, 2).reshape(-1, l)
    feas = np.max(np.abs(verts @ B.T), axis=1) <= 1.0 + 1e-9
    return verts[feas]


def _half_signs(l: int):
    for bits in range(2 ** max(l - 1, 0)):
        yield [1.0] + [1.0 if (bits >> k) & 1 else -1.0 for k in range(l - 1)]


def norming_constant(space: SpaceDescriptor, points, *, grid_spacing=None,
                     budget=None, rank_threshold=DEFAULT_RANK_THRESHOLD,
                     box=None) -> NormingReport:
    """Exact-at-desk-scale norming constant of a finite set, with certificate.

    Not-norming detection: smallest singular value of the column-scaled
    interpolation matrix below ``rank_threshold``; the witness is the
    corresponding null direction (an f in V vanishing on Z), normalized to
    unit grid sup over the cube.
    """
    pts = as_points(points, space.n)
    B = interpolation_matrix(space, pts)
    l = space.dimension()
    dom = _domain_box(space, points, box)

    colmax = np.maximum(np.max(np.abs(B), axis=0), 1e-300)
    Bs = B / colmax
    U, s, Vh = np.linalg.svd(Bs, full_matrices=True)
    smin = s[-1] if B.shape[0] >= l else 0.0
    if B.shape[0] < l or smin < rank_threshold:
        null = Vh[-1] / colmax
        bracket = certified_supnorm(space, null, box=dom,
                                    grid_spacing=grid_spacing, budget=budget)
        if bracket.lower > 0:
            null = null / bracket.lower
        return NormingReport(
            norming=False, value=None, lower=math.inf, upper=math.inf,
            grid_spacing=bracket.grid_spacing, witness_coefficients=null,
            witness_point=None, method="rank_deficient", certified=True)

    verts = _feasible_vertices(B)
    if verts.shape[0] == 0:
        raise IllConditionedError("no feasible LP vertex despite full rank",
                                  direction=Vh[-1] / colmax)
    grid, h_eff = uniform_grid(dom, spacing=grid_spacing, budget=budget)
    Phi = space.evaluate_basis(grid)
    vals = np.abs(Phi @ verts.T)  # (G, K)
    per_point = vals.max(axis=1)
    gi = int(np.argmax(per_point))
    lower = float(per_point[gi])
    if not math.isfinite(lower):
        raise IllConditionedError("LP value not finite despite full rank",
                                  direction=verts[int(np.argmax(vals[gi]))])
    vi = int(np.argmax(vals[gi]))
    M = markov_constant(space, box=dom)
    pad = M.value * space.modulus(h_eff / 2)
    upper = lower / (1.0 - pad) if pad < 1.0 else math.inf
    return NormingReport(
        norming=True, value=lower, lower=lower, upper=upper,
        grid_spacing=h_eff, witness_coefficients=verts[vi],
        witness_point=grid[gi], method="lp_grid",
        certified=M.certified and pad < 1.0)


def lebesgue_constant(space: SpaceDescriptor, points, *, grid_spacing=None,
                      budget=None, box=None) -> float:
    """Certified grid sup of the Lebesgue function sum_i |L_i| of a unisolvent set."""
    C = lagrange_basis(space, points)
    dom = _domain_box(space, points, box)
    grid, _ = uniform_grid(dom, spacing=grid_spacing, budget=budget)
    lam = np.abs(space.evaluate_basis(grid) @ C).sum(axis=1)
    return float(np.max(lam))


# ---------------------------------------------------------------------------
# Fekete subsets and the sandwich inequality


def fekete_select(space: SpaceDescriptor, points, mode: str = "exhaustive"):
    """Subset of cardinality dim V maximizing |det| of the interpolation matrix.

    Returns (indices, |det|). Exhaustive mode scans all subsets (canonical
    tie-break: first combination in index order); greedy mode does
    determinant pivoting (row-by-row volume maximization).
    """
    pts = as_points(points, space.n)
    l = space.dimension()
    m = pts.shape[0]
    if m < l:
        raise ValueError(f"need at least {l} points, got {m}")
    Phi = space.evaluate_basis(pts)
    if mode == "exhaustive":
        if math.comb(m, l) > FEKETE_CAP:
            raise ValueError("exhaustive Fekete above the configured cap")
        combos = np.asarray(list(combinations(range(m), l)))
        dets = np.abs(np.linalg.det(Phi[combos]))
        k = int(np.argmax(dets))
        if dets[k] <= 0.0:
            raise NotNormingError("all square subsets are singular: not norming")
        return tuple(int(i) for i in combos[k]), float(dets[k])
    if mode != "greedy":
        raise ValueError("mode must be 'exhaustive' or 'greedy'")
    # volume-maximizing row pivoting via modified Gram-Schmidt
    R = Phi.copy()
    chosen: list[int] = []
    for _ in range(l):
        norms = np.linalg.norm(R, axis=1)
        norms[chosen] = -1.0
        j = int(np.argmax(norms))
        if norms[j] <= 1e-13:
            raise NotNormingError("greedy pivoting found no nonsingular subset")
        chosen.append(j)
        q = R[j] / norms[j]
        R -= np.outer(R @ q, q)
    idx = tuple(sorted(chosen))
    det = abs(float(np.linalg.det(Phi[list(idx)])))
    if det == 0.0:
        raise NotNormingError("greedy subset is singular")
    return idx, det


@dataclass(frozen=True)
class SandwichReport:
    fekete_indices: tuple
    n_full: float
    n_fekete: float
    lower_ok: bool
    upper_ok: bool
    lagrange_ok: bool
    max_abs_lagrange_on_z: float

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok and self.lagrange_ok


def sandwich_check(space: SpaceDescriptor, points, *, grid_spacing=None,
                   budget=None, rel_tol=1e-6) -> SandwichReport:
    """Verify (1/l) N(Z_fekete) <= N(Z) <= N(Z_fekete) plus max_Z |L_i| <= 1."""
    pts = as_points(points, space.n)
    l = space.dimension()
    idx, _ = fekete_select(space, pts, mode="exhaustive")
    sub = pts[list(idx)]
    rep_full = norming_constant(space, pts, grid_spacing=grid_spacing, budget=budget)
    if not rep_full.norming:
        raise NotNormingError("Z is not norming")
    rep_sub = norming_constant(space, sub, grid_spacing=grid_spacing, budget=budget)
    n_full, n_sub = rep_full.value, rep_sub.value
    lower_ok = n_sub >= n_full * (1.0 - rel_tol)
    upper_ok = n_sub <= l * n_full * (1.0 + rel_tol)
    C = lagrange_basis(space, sub)
    on_z = float(np.max(np.abs(space.evaluate_basis(pts) @ C)))
    lagrange_ok = on_z <= 1.0 + 1e-9
    return SandwichReport(idx, n_full, n_sub, lower_ok, upper_ok, lagrange_ok, on_z)
