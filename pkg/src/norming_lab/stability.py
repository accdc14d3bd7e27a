"""Hausdorff-metric machinery and the Lipschitz stability of 1/N_V(Z).

The modulus of continuity lives on the space descriptor, so the Markov
constant and the omega-Hausdorff distance always share one modulus.
Reciprocals of non-norming sets are 0 by convention.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .norming import NormingReport, as_points, norming_constant
from .spaces import SpaceDescriptor, markov_constant


def hausdorff_distance(z1, z2) -> float:
    """l-inf Hausdorff distance between finite nonempty sets."""
    a = as_points(z1)
    b = as_points(z2)
    if a.shape[1] != b.shape[1]:
        raise ValueError("point sets must share one dimension")
    D = np.max(np.abs(a[:, None, :] - b[None, :, :]), axis=2)
    return float(max(D.min(axis=1).max(), D.min(axis=0).max()))


@dataclass(frozen=True)
class LipschitzReport:
    d_h: float
    d_omega_h: float
    inv_n1: float
    inv_n2: float
    lhs: float
    rhs: float
    satisfied: bool
    markov: float
    markov_certified: bool

    @property
    def status(self) -> str:
        if not self.satisfied:
            return "violated"
        return "satisfied" if self.markov_certified else "satisfied-with-uncertified-constant"

    def to_json(self) -> dict:
        return {"d_h": self.d_h, "d_omega_h": self.d_omega_h,
                "inv_n1": self.inv_n1, "inv_n2": self.inv_n2,
                "lhs": self.lhs, "rhs": self.rhs, "satisfied": self.satisfied,
                "status": self.status, "markov": self.markov,
                "markov_certified": self.markov_certified}


def lipschitz_audit(space: SpaceDescriptor, z1, z2, *, grid_spacing=None,
                    budget=None) -> LipschitzReport:
    """Check |1/N(Z1) - 1/N(Z2)| <= M_V * omega(d_H(Z1, Z2))."""
    M = markov_constant(space)
    r1 = norming_constant(space, z1, grid_spacing=grid_spacing, budget=budget)
    r2 = norming_constant(space, z2, grid_spacing=grid_spacing, budget=budget)
    dh = hausdorff_distance(z1, z2)
    dwh = float(space.modulus(dh))
    lhs = abs(r1.reciprocal - r2.reciprocal)
    rhs = M.value * dwh
    satisfied = lhs <= rhs * (1.0 + 1e-9) + 1e-12
    return LipschitzReport(dh, dwh, r1.reciprocal, r2.reciprocal, lhs, rhs,
                           satisfied, M.value, M.certified)


@dataclass(frozen=True, eq=False)
class StabilityBall:
    space: SpaceDescriptor
    center: np.ndarray
    center_report: NormingReport
    radius: float
    markov: float

    def bound_for(self, y):
        """Guaranteed upper bound on N(Y) for Y inside the open ball, else None."""
        dwh = float(self.space.modulus(hausdorff_distance(self.center, y)))
        if dwh >= self.radius:
            return None
        n = self.center_report.value
        return n / (1.0 - self.markov * n * dwh)


def stability_ball(space: SpaceDescriptor, z, *, grid_spacing=None,
                   budget=None) -> StabilityBall:
    """Open d_omegaH-ball of radius 1/(M_V * N_V(Z)) of guaranteed norming sets."""
    rep = norming_constant(space, z, grid_spacing=grid_spacing, budget=budget)
    if not rep.norming:
        raise ValueError("the center set must be norming")
    M = markov_constant(space)
    return StabilityBall(space, as_points(z, space.n), rep,
                         1.0 / (M.value * rep.value), M.value)


@dataclass(frozen=True)
class PerturbationRow:
    magnitude: float
    trials: int
    skipped: int
    max_ratio: float
    within_markov: bool
    non_norming: int

    def to_json(self) -> dict:
        return {"magnitude": self.magnitude, "trials": self.trials,
                "skipped": self.skipped, "max_ratio": self.max_ratio,
                "within_markov": self.within_markov,
                "non_norming": self.non_norming}


def perturbation_experiment(space: SpaceDescriptor, z, magnitudes: Sequence[float],
                            trials: int, seed: int, *, grid_spacing=None,
                            budget=None) -> list[PerturbationRow]:
    """Empirical sharpness study of the Lipschitz bound.

    For each magnitude, points of Z are perturbed uniformly and clamped to
    the cube (so Z stays admissible); the max observed ratio lhs/omega(d_H)
    is compared against the Markov constant. Deterministic given the seed.
    """
    pts = as_points(z, space.n)
    base = norming_constant(space, pts, grid_spacing=grid_spacing, budget=budget)
    if not base.norming:
        raise ValueError("Z must be norming")
    M = markov_constant(space)
    rng = np.random.default_rng(seed)
    rows = []
    for mag in magnitudes:
        max_ratio = 0.0
        skipped = 0
        non_norming = 0
        for _ in range(trials):
            shift = rng.uniform(-mag, mag, size=pts.shape)
            pert = np.clip(pts + shift, -1.0, 1.0)
            dh = hausdorff_distance(pts, pert)
            if dh <= 0.0:
                skipped += 1
                continue
            try:
                rep = norming_constant(space, pert, grid_spacing=grid_spacing,
                                       budget=budget)
            except ValueError:
                # clamping may merge points; treat as a skipped trial
                skipped += 1
                continue
            if not rep.norming:
                non_norming += 1
            lhs = abs(base.reciprocal - rep.reciprocal)
            max_ratio = max(max_ratio, lhs / float(space.modulus(dh)))
        rows.append(PerturbationRow(mag, trials, skipped, max_ratio,
                                    (not M.certified) or max_ratio <= M.value * (1 + 1e-9),
                                    non_norming))
    return rows
