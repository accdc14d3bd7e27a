import math

import numpy as np
import pytest

from norming_lab import (IDENTITY, SpaceDescriptor, markov_constant,
                         power_modulus, space_from_json)
from norming_lab.spaces import (DomainError, _monomial_exponents,
                                gram_schmidt_markov_bound, uniform_quadrature)


def test_polynomial_dimension():
    assert SpaceDescriptor.polynomial(1, 3).dimension() == 4
    assert SpaceDescriptor.polynomial(2, 2).dimension() == 6
    assert SpaceDescriptor.polynomial(3, 2).dimension() == 10


def test_trigonometric_dimension():
    assert SpaceDescriptor.trigonometric(1, 2).dimension() == 5
    assert SpaceDescriptor.trigonometric(2, 1).dimension() == 9


def test_monomial_order_graded_lex():
    exps = _monomial_exponents(2, 2)
    assert exps[0] == (0, 0)
    assert set(exps[1:3]) == {(1, 0), (0, 1)}
    # within a degree block x1 comes first
    assert exps[1] == (1, 0)
    assert exps[3] == (2, 0)
    assert len(exps) == 6


def test_vectorized_matches_scalar_basis(rng):
    for space in (SpaceDescriptor.polynomial(2, 3),
                  SpaceDescriptor.trigonometric(2, 1),
                  SpaceDescriptor.fewnomial_span([(0.5, 1.0), (2.0, 0.0)])):
        lo = 0.1 if space.kind == "fewnomial" else -1.0
        pts = rng.uniform(lo, 1.0, size=(20, space.n))
        V = space.evaluate_basis(pts)
        funcs = space.basis()
        for j, f in enumerate(funcs):
            for i in range(20):
                assert V[i, j] == pytest.approx(f(pts[i]), abs=1e-12)


def test_single_point_shape():
    space = SpaceDescriptor.polynomial(2, 1)
    v = space.evaluate_basis(np.array([0.5, -0.5]))
    assert v.shape == (3,)


def test_fewnomial_domain_guard():
    space = SpaceDescriptor.fewnomial_span([(1.5,)])
    with pytest.raises(DomainError):
        space.evaluate_basis(np.array([[-1.0]]))


def test_modulus_validation():
    with pytest.raises(ValueError):
        power_modulus(0.0)
    with pytest.raises(ValueError):
        power_modulus(1.5)
    assert IDENTITY(0.25) == 0.25
    assert power_modulus(0.5)(0.25) == pytest.approx(0.5)


def test_markov_certified_values():
    assert markov_constant(SpaceDescriptor.polynomial(1, 3)).value == 9.0
    assert markov_constant(SpaceDescriptor.polynomial(2, 2)).value == 8.0
    assert markov_constant(SpaceDescriptor.polynomial(1, 3)).certified
    M = markov_constant(SpaceDescriptor.trigonometric(2, 3))
    assert M.value == pytest.approx(6 * math.pi)
    assert M.certified


def test_markov_sampled_estimate_flagged():
    space = SpaceDescriptor.fewnomial_span([(1.0,), (2.5,)])
    M = markov_constant(space, box=(np.array([0.5]), np.array([2.0])))
    assert not M.certified
    assert M.value > 0.0 and math.isfinite(M.value)


def test_gram_schmidt_bound_covers_affine_lipschitz():
    # for P_1 on [-1, 1] the exact Markov constant is 1; the sampled
    # estimate must be an over-estimate of the Lipschitz behaviour it saw
    space = SpaceDescriptor.polynomial(1, 1)
    pts, w = uniform_quadrature(space.default_box(), samples_per_axis=401)
    est = gram_schmidt_markov_bound(space, pts, w)
    assert est >= 1.0


def test_json_roundtrip():
    for space in (SpaceDescriptor.polynomial(2, 3),
                  SpaceDescriptor.trigonometric(1, 2),
                  SpaceDescriptor.fewnomial_span([(1.0, 0.0), (0.0, 2.5)],
                                                 power_modulus(0.5))):
        back = space_from_json(space.to_json())
        assert back == space
