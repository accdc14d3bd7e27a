import math

import numpy as np
import pytest

from norming_lab import (SpaceDescriptor, analytic_bound, audit, bg_bound,
                         bg_upper_envelope, chebyshev, cor22_bound, curve_bound,
                         e_function, nested_bound, rd_span_bound, remez_bound)

P2 = SpaceDescriptor.polynomial(1, 2)


def test_chebyshev_small_values():
    assert chebyshev(0, 0.3) == pytest.approx(1.0)
    assert chebyshev(1, 0.3) == pytest.approx(0.3)
    assert chebyshev(2, 0.3) == pytest.approx(2 * 0.09 - 1)
    assert chebyshev(3, 2.0) == pytest.approx(26.0)


def test_chebyshev_recurrence(rng):
    for x in rng.uniform(-3, 3, size=50):
        t0, t1 = 1.0, x
        for d in range(2, 12):
            t0, t1 = t1, 2 * x * t1 - t0
            assert chebyshev(d, float(x)) == pytest.approx(t1, rel=1e-10, abs=1e-10)


def test_chebyshev_parity():
    assert chebyshev(3, -2.0) == pytest.approx(-26.0)
    assert chebyshev(4, -2.0) == pytest.approx(chebyshev(4, 2.0))


def test_e_function():
    assert e_function(1.0) == pytest.approx(1.0)
    assert e_function(1.25) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        e_function(0.5)


def test_bg_domain():
    with pytest.raises(ValueError):
        bg_bound(1, 2, 0.0)
    with pytest.raises(ValueError):
        bg_bound(1, 2, 1.5)
    assert bg_bound(2, 3, 1.0).value == pytest.approx(1.0)


def test_remez_equals_bg_reduction():
    for d in range(0, 8):
        for mu in (0.1, 0.5, 1.0, 1.7, 2.0):
            assert remez_bound(d, mu).value == pytest.approx(
                bg_bound(1, d, mu / 2).value, abs=1e-12)


def test_envelope_strictly_dominates(rng):
    for _ in range(100):
        n = int(rng.integers(1, 4))
        d = int(rng.integers(1, 8))
        lam = float(rng.uniform(0.01, 1.0))
        assert bg_bound(n, d, lam).value < bg_upper_envelope(n, d, lam).value


def test_analytic_bound():
    b = analytic_bound(1, 0.5, 2.0)
    assert b.value == pytest.approx(e_function(3.0) ** 2, rel=1e-12)
    with pytest.raises(ValueError):
        analytic_bound(1, 0.5, None)


def test_rd_span_domain():
    assert rd_span_bound(1, 2, 0.5).applicable
    out = rd_span_bound(1, 2, 1.5)
    assert not out.applicable
    assert math.isinf(out.value)


def test_cor22_few_points_inapplicable():
    out = cor22_bound([[0.0], [1.0]], 2)
    assert not out.applicable


def test_curve_bound_lacunarity():
    ok = curve_bound(2, 2, [1, 3])
    assert ok.applicable
    assert ok.value == pytest.approx(2.0 ** 6 * math.comb(4, 2))
    bad = curve_bound(2, 2, [1, 2])
    assert not bad.applicable


def test_nested_bound_doubles_degree():
    assert nested_bound(1, 1.0).value == pytest.approx(chebyshev(2, 1.0))
    with pytest.raises(ValueError):
        nested_bound(1, 0.0)


def test_audit_reports_expected_violation():
    report = audit(P2, [[-1.0], [0.0], [1.0]], ["cor22"], budget=20001)
    assert report.violations == 1
    f = report.findings[0]
    assert f.name == "cor22"
    assert f.bound.value == pytest.approx(1.0)
    assert f.exact == pytest.approx(1.25, abs=1e-6)
    assert "VIOLATION" in report.summary()


def test_audit_cramer_not_violating():
    report = audit(P2, [[-1.0], [0.0], [1.0]], ["cramer"], budget=20001)
    assert report.violations == 0
    assert report.findings[0].ratio >= 1.0
