import numpy as np
import pytest
from scipy.integrate import solve_ivp

from tempograph import CompoundSpec, NumericError, RarePattern, compound, lorenz, rossler
from tempograph.generators import LORENZ_PARAMS, ROSSLER_PARAMS


class TestLorenz:
    def test_zero_dt_freezes_state(self):
        out = lorenz(steps=2, dt=0.0, initial=(1.0, 1.0, 1.0))
        np.testing.assert_array_equal(out.values, [1.0, 1.0])

    def test_deterministic(self):
        a = lorenz(steps=500, dt=0.01)
        b = lorenz(steps=500, dt=0.01)
        assert np.array_equal(a.values, b.values)

    def test_bounded_on_attractor(self):
        # bound double-checked against the fine-step oracle below
        out = lorenz(steps=1000, dt=0.01, initial=(1.0, 1.0, 1.0))
        assert np.all(np.abs(out.values) <= 25.0)

    def test_matches_adaptive_integrator_short_horizon(self):
        p = LORENZ_PARAMS

        def deriv(_, s):
            x, y, z = s
            return [p["sigma"] * (y - x), x * (p["rho"] - z) - y, x * y - p["beta"] * z]

        steps, dt = 201, 0.005
        ours = lorenz(steps=steps, dt=dt).values
        t_eval = np.arange(steps) * dt
        ref = solve_ivp(deriv, (0, t_eval[-1]), [1.0, 1.0, 1.0],
                        t_eval=t_eval, rtol=1e-11, atol=1e-12)
        # fixed-step RK4 truncation leaves ~3e-5 over this horizon; an
        # integrator of the wrong order would miss by orders of magnitude
        np.testing.assert_allclose(ours, ref.y[0], atol=5e-4)

    def test_divergence_raises(self):
        with pytest.raises(NumericError):
            lorenz(steps=200, dt=10.0)


class TestRossler:
    def test_zero_dt_constant_pair(self):
        out = rossler(steps=2, dt=0.0)
        assert out.values[0] == out.values[1]

    def test_bounded(self):
        out = rossler(steps=5000, dt=0.05)
        assert np.all(np.abs(out.values) < 15.0)

    def test_matches_adaptive_integrator_short_horizon(self):
        p = ROSSLER_PARAMS

        def deriv(_, s):
            x, y, z = s
            return [-y - z, x + p["a"] * y, p["b"] + z * (x - p["c"])]

        steps, dt = 201, 0.01
        ours = rossler(steps=steps, dt=dt).values
        t_eval = np.arange(steps) * dt
        ref = solve_ivp(deriv, (0, t_eval[-1]), [1.0, 1.0, 1.0],
                        t_eval=t_eval, rtol=1e-11, atol=1e-12)
        np.testing.assert_allclose(ours, ref.y[0], atol=1e-6)

    def test_deterministic(self):
        assert np.array_equal(rossler(300, 0.05).values, rossler(300, 0.05).values)


class TestCompound:
    def test_flat_notch_only_changes_window(self):
        spec = CompoundSpec(n=500, period=50.0,
                            rare=[RarePattern("flat", 100, 120, level=0.0)])
        series, truth = compound(spec)
        base, _ = compound(CompoundSpec(n=500, period=50.0))
        assert truth == [(100, 120)]
        np.testing.assert_array_equal(series.values[:100], base.values[:100])
        np.testing.assert_array_equal(series.values[120:], base.values[120:])
        assert np.all(series.values[100:120] == 0.0)

    def test_empty_injections_pure_base(self):
        series, truth = compound(CompoundSpec(n=64, period=16.0))
        assert truth == []
        t = np.arange(64)
        np.testing.assert_allclose(series.values, np.sin(2 * np.pi * t / 16.0))

    def test_two_disjoint_injections_ordered(self):
        spec = CompoundSpec(n=300, rare=[
            RarePattern("highfreq", 200, 230, period=4.0, amplitude=0.5),
            RarePattern("flat", 40, 60, level=1.0),
        ])
        _, truth = compound(spec)
        assert truth == [(40, 60), (200, 230)]

    def test_overlap_rejected(self):
        spec = CompoundSpec(n=300, rare=[
            RarePattern("flat", 40, 80), RarePattern("flat", 79, 100),
        ])
        with pytest.raises(ValueError, match="overlap"):
            compound(spec)

    def test_from_dict(self):
        spec = CompoundSpec.from_dict(
            {"n": 128, "period": 32, "rare": [{"kind": "flat", "start": 10, "end": 20}]}
        )
        series, truth = compound(spec)
        assert len(series) == 128
        assert truth == [(10, 20)]
