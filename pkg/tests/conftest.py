import numpy as np
import pytest

from norming_lab import SpaceDescriptor


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_points(rng, m, n, lo=-1.0, hi=1.0, min_sep=5e-2):
    """m well-separated random points in [lo, hi]^n."""
    pts = []
    while len(pts) < m:
        cand = rng.uniform(lo, hi, size=n)
        if all(np.max(np.abs(cand - p)) > min_sep for p in pts):
            pts.append(cand)
    return np.array(pts)


def small_poly_space(rng, max_n=2, max_d=3, max_dim=6):
    while True:
        n = int(rng.integers(1, max_n + 1))
        d = int(rng.integers(1, max_d + 1))
        space = SpaceDescriptor.polynomial(n, d)
        if space.dimension() <= max_dim:
            return space
