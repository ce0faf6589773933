import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from chirpfilt.dfrft import dfrft_denoise
from chirpfilt.errors import EmptyMethodSet, InvalidParams, LengthMismatch, ZeroSignal
from chirpfilt.harness import (
    Method,
    NoiseKind,
    NoiseSpec,
    SweepConfig,
    add_awgn,
    mae,
    mae_gain_db,
    reference_chirp,
    run_sweep,
    synth_chirp,
    trial_seed,
)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


class TestSynth:
    def test_reference_samples(self):
        x = reference_chirp()
        assert x.shape == (256,)
        assert x[0] == 1 + 0j
        assert x[1] == pytest.approx(np.exp(1j * np.pi * 10.1 / 256), abs=1e-15)

    def test_flat(self):
        np.testing.assert_array_equal(synth_chirp(16, 0, 0), np.ones(16))

    def test_unit_modulus(self):
        assert np.max(np.abs(np.abs(reference_chirp()) - 1)) < 1e-12

    def test_bad_length(self):
        with pytest.raises(InvalidParams):
            synth_chirp(0)


class TestNoise:
    def test_0db_energy_exact(self):
        x = reference_chirp()
        _, w = add_awgn(x, NoiseSpec(0.0, 1), return_noise=True)
        es = np.vdot(x, x).real
        assert abs(np.vdot(w, w).real - es) / es < 1e-12

    def test_seeded(self):
        x = reference_chirp()
        a, b = add_awgn(x, NoiseSpec(3.0, 99)), add_awgn(x, NoiseSpec(3.0, 99))
        assert a.tobytes() == b.tobytes()
        assert not np.array_equal(a, add_awgn(x, NoiseSpec(3.0, 100)))

    def test_mae_equals_mean_noise_modulus(self):
        x = reference_chirp()
        noisy, w = add_awgn(x, NoiseSpec(20.0, 5), return_noise=True)
        assert abs(mae(x, noisy) - np.mean(np.abs(w))) < 1e-12

    @pytest.mark.parametrize("snr", [-10.0, 0.0, 7.5, 40.0])
    def test_realized_snr(self, snr):
        x = reference_chirp()
        _, w = add_awgn(x, NoiseSpec(snr, 2), return_noise=True)
        realized = 10 * np.log10(np.vdot(x, x).real / np.vdot(w, w).real)
        assert abs(realized - snr) < 1e-10

    def test_kind_follows_signal(self):
        real = np.cos(np.arange(64) * 0.3)
        noisy = add_awgn(real, NoiseSpec(0.0, 1))
        assert not np.any(noisy.imag)
        noisy = add_awgn(real, NoiseSpec(0.0, 1, NoiseKind.COMPLEX))
        assert np.any(noisy.imag)

    def test_zero_signal(self):
        with pytest.raises(ZeroSignal):
            add_awgn(np.zeros(8), NoiseSpec(0.0))


class TestMae:
    def test_identical(self):
        assert mae(reference_chirp(), reference_chirp()) == 0

    def test_ones_vs_zeros(self):
        assert mae([1, 1], [0, 0]) == 1.0

    def test_constant_offset(self, rng):
        x = rng.standard_normal(50) + 1j * rng.standard_normal(50)
        assert mae(x, x + 0.5) == pytest.approx(0.5, abs=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            mae([1, 2], [1])

    @settings(max_examples=50, deadline=None)
    @given(arrays(np.float64, 12, elements=finite), arrays(np.float64, 12, elements=finite),
           st.complex_numbers(max_magnitude=100, allow_nan=False, allow_infinity=False))
    def test_symmetry_and_scaling(self, a, b, c):
        x, y = a + 0.5j * b, b - 1j * a
        assert mae(x, y) == mae(y, x) >= 0
        assert (mae(x, y) == 0) == bool(np.all(x == y))
        assert mae(c * x, c * y) == pytest.approx(abs(c) * mae(x, y), rel=1e-12, abs=1e-12)

    def test_gain_db(self):
        assert mae_gain_db(1.0, 0.5) == pytest.approx(20 * np.log10(2))


class TestSweep:
    def test_seeds_stable_and_distinct(self):
        assert trial_seed(0, 1, 2) == trial_seed(0, 1, 2)
        seeds = {trial_seed(b, s, t) for b in range(3) for s in range(4) for t in range(5)}
        assert len(seeds) == 60

    def test_high_snr_sanity(self):
        x = reference_chirp()
        res = run_sweep(x, SweepConfig(snr_points=[40.0], trials=1))
        noisy = add_awgn(x, NoiseSpec(40.0, trial_seed(0, 0, 0)))
        assert res.row(40.0, "dlct").mean_mae < mae(x, noisy)
        for m in Method:
            assert res.row(40.0, m).noisy_mae == mae(x, noisy)
        # The fixed-width order-domain mask has a leakage floor: near-clean
        # input lands on the same error as clean input.
        floor = mae(x, dfrft_denoise(x))
        assert res.row(40.0, "frft").mean_mae == pytest.approx(floor, rel=0.05)

    def test_empty_methods(self):
        with pytest.raises(EmptyMethodSet):
            SweepConfig(methods=[])

    @pytest.mark.parametrize("kw", [dict(trials=0), dict(snr_points=[]), dict(snr_points=[0, 0]),
                                    dict(snr_points=[5, 0]), dict(methods=["dlct", "dlct"])])
    def test_invalid(self, kw):
        with pytest.raises(InvalidParams):
            SweepConfig(**kw)

    def test_shape_and_determinism(self):
        cfg = SweepConfig(snr_points=[-5, 5, 15], trials=3, base_seed=17)
        a, b = run_sweep(reference_chirp(), cfg), run_sweep(reference_chirp(), cfg)
        assert len(a.rows) == 6
        assert [r.__dict__ for r in a.rows] == [r.__dict__ for r in b.rows]
        assert all(r.mean_mae >= 0 and r.trials == 3 for r in a.rows)
        assert a.metadata["snr_points"] == [-5.0, 5.0, 15.0]

    def test_single_method(self):
        res = run_sweep(reference_chirp(), SweepConfig(snr_points=[10], trials=2, methods=["frft"]))
        assert [r.method for r in res.rows] == [Method.DFRFT]

    def test_improvement_readings(self):
        res = run_sweep(reference_chirp(), SweepConfig(snr_points=[0], trials=4))
        imp = res.improvement(0.0)
        assert imp["mae_ratio_db"] == pytest.approx(
            mae_gain_db(res.row(0.0, "frft").mean_mae, res.row(0.0, "dlct").mean_mae))
        assert set(imp) == {"mae_ratio_db", "output_snr_db"}

    def test_real_signal_sweep(self):
        n = np.arange(700)
        x = 0.5 * np.cos(2 * np.pi * (0.05 * n + 1e-4 * n**2))
        res = run_sweep(x, SweepConfig(snr_points=[0], trials=2))
        for m in Method:
            assert res.row(0.0, m).mean_mae < res.row(0.0, m).noisy_mae
