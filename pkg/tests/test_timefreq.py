import json

import numpy as np
import pytest

from saftkit.engine import make_plan, saft_fast
from saftkit.grid import Signal, centered_grid, lr_norm, sample
from saftkit.operators import chirp
from saftkit.params import (fourier_params, freq_scaled_weight, frft_params,
                            make_params, radial_weight, sheared_weight,
                            transported_weight, unit_weight)
from saftkit.timefreq import (TFMatrix, a_covariance_check, a_mod_norm,
                              chirp_stft_covariance_check, gaussian_window,
                              mod_norm, moyal_energy, raised_cosine_window,
                              saft_stft_identity_check, stft, tf_from_dict,
                              tf_to_dict, weighted_tf_norm, window_flip)
from saftkit.families import gaussian_mixture_family

GENERIC = make_params(1, 2, -2, -3, 0.3, -0.2)
PSETS = (fourier_params(), frft_params(np.pi / 4), GENERIC)


def test_stft_gaussian_peaks_at_origin():
    grid = centered_grid(10.0, 256)
    g = gaussian_window(grid)
    V = stft(g, g)
    m, k = np.unravel_index(np.argmax(np.abs(V.values)), V.values.shape)
    assert abs(V.x_grid.node(m)) <= V.x_grid.step
    assert abs(V.w_grid.node(k)) <= V.w_grid.step
    assert moyal_energy(V) == pytest.approx(1.0, abs=1e-8)


def test_stft_zero_signal():
    grid = centered_grid(10.0, 128)
    V = stft(Signal(grid, np.zeros(128), "cyclic"), gaussian_window(grid))
    assert np.all(V.values == 0)


def test_moyal_identity_random():
    grid = centered_grid(10.0, 256)
    f, g = gaussian_mixture_family(grid, 2, 60)
    V = stft(f, g)
    ref = lr_norm(f, 2) ** 2 * lr_norm(g, 2) ** 2
    assert moyal_energy(V) == pytest.approx(ref, rel=1e-8)


def test_chirp_stft_covariance_aligned():
    grid = centered_grid(10.0, 256)
    f = gaussian_mixture_family(grid, 1, 61)[0]
    g = gaussian_window(grid)
    dxi = 1.0 / grid.span
    dev = chirp_stft_covariance_check(f, g, 3 * dxi / grid.step)
    assert dev <= 1e-9 * np.max(np.abs(stft(f, g).values))


def test_chirp_stft_covariance_rejects_misaligned():
    grid = centered_grid(10.0, 128)
    f = gaussian_mixture_family(grid, 1, 62)[0]
    with pytest.raises(ValueError):
        chirp_stft_covariance_check(f, gaussian_window(grid), 0.123456)


def test_a_covariance_zero_offsets():
    grid = centered_grid(10.0, 128)
    f = gaussian_mixture_family(grid, 1, 63)[0]
    assert a_covariance_check(GENERIC, f, gaussian_window(grid), 0.0, 0.0) <= 1e-13


@pytest.mark.parametrize("p", PSETS, ids=("fourier", "frft", "generic"))
def test_a_covariance_aligned(p):
    grid = centered_grid(10.0, 256)
    f = gaussian_mixture_family(grid, 1, 64)[0]
    g = gaussian_window(grid)
    dxi = 1.0 / grid.span
    xi = 16 * grid.step
    eta = p.a * xi - p.b * 2 * dxi
    dev = a_covariance_check(p, f, g, xi, eta)
    assert dev <= 1e-9 * np.max(np.abs(stft(f, g).values))


def test_a_covariance_reports_required_alignment():
    grid = centered_grid(10.0, 128)
    f = gaussian_mixture_family(grid, 1, 65)[0]
    g = gaussian_window(grid)
    with pytest.raises(ValueError, match="multiple of the frequency step"):
        a_covariance_check(GENERIC, f, g, 16 * grid.step, 0.01234)
    with pytest.raises(ValueError, match="multiple of the grid step"):
        a_covariance_check(GENERIC, f, g, 0.1234567, 0.0)


def _self_dual_grid(n):
    dt = 1.0 / np.sqrt(n)
    return centered_grid(n * dt / 2.0, n)


def test_saft_stft_identity_fourier_mapping():
    grid = _self_dual_grid(256)
    f, g = gaussian_mixture_family(grid, 2, 66)
    vmax = np.max(np.abs(stft(f, g).values))
    assert saft_stft_identity_check(fourier_params(), f, g) <= 1e-6 * vmax


def test_saft_stft_identity_shear_mapping():
    grid = _self_dual_grid(256)
    f, g = gaussian_mixture_family(grid, 2, 67)
    p = make_params(1, 1, 0, 1, 0, 0)
    vmax = np.max(np.abs(stft(f, g).values))
    assert saft_stft_identity_check(p, f, g) <= 1e-6 * vmax


def test_saft_stft_identity_zero_signal():
    grid = _self_dual_grid(128)
    z = Signal(grid, np.zeros(128), "cyclic")
    g = gaussian_window(grid)
    assert saft_stft_identity_check(fourier_params(), z, g) == 0.0


def test_saft_stft_identity_rejects_incompatible():
    grid = _self_dual_grid(128)
    f, g = gaussian_mixture_family(grid, 2, 68)
    with pytest.raises(ValueError):
        saft_stft_identity_check(frft_params(0.7), f, g)
    bad_grid = centered_grid(10.0, 128)
    f2, g2 = gaussian_mixture_family(bad_grid, 2, 68)
    with pytest.raises(ValueError):
        saft_stft_identity_check(fourier_params(), f2, g2)


def test_mod_norm_moyal_case():
    grid = centered_grid(10.0, 256)
    f = gaussian_mixture_family(grid, 1, 69)[0]
    g = gaussian_window(grid)
    ref = lr_norm(f, 2) * lr_norm(g, 2)
    assert mod_norm(f, g, 2.0, 2.0, unit_weight()) == pytest.approx(ref, rel=1e-6)


def test_mod_norm_zero_exponent_weight_matches_unit():
    grid = centered_grid(10.0, 128)
    f = gaussian_mixture_family(grid, 1, 70)[0]
    g = gaussian_window(grid)
    assert (mod_norm(f, g, 2.0, 3.0, radial_weight(0.0))
            == pytest.approx(mod_norm(f, g, 2.0, 3.0, unit_weight()), rel=1e-12))


def test_mod_norm_rejects_zero_window():
    grid = centered_grid(10.0, 128)
    f = gaussian_mixture_family(grid, 1, 71)[0]
    with pytest.raises(ValueError):
        mod_norm(f, Signal(grid, np.zeros(128), "cyclic"), 2.0, 2.0, unit_weight())


def test_chirp_shear_transport_two_sided():
    # chirping by rate s moves the norm to the sheared weight within
    # window-dependent constants; pin a generous two-sided band
    grid = centered_grid(10.0, 256)
    fam = gaussian_mixture_family(grid, 6, 72)
    g = gaussian_window(grid)
    s = 3 * (1.0 / grid.span) / grid.step
    m = radial_weight(1.0)
    ratios = []
    for f in fam:
        lhs = mod_norm(chirp(f, s), g, 2.0, 2.0, sheared_weight(m, s))
        rhs = mod_norm(f, g, 2.0, 2.0, m)
        ratios.append(lhs / rhs)
    assert 0.2 <= min(ratios) and max(ratios) <= 5.0


def test_a_mod_norm_fourier_equals_classical():
    grid = centered_grid(10.0, 256)
    f = gaussian_mixture_family(grid, 1, 73)[0]
    g = gaussian_window(grid)
    for r, s in ((2.0, 2.0), (2.0, 4.0)):
        assert (a_mod_norm(fourier_params(), f, g, r, s, unit_weight())
                == pytest.approx(mod_norm(f, g, r, s, unit_weight()), rel=1e-12))


@pytest.mark.parametrize("p", PSETS, ids=("fourier", "frft", "generic"))
def test_a_mod_norm_scaling_identity(p):
    grid = centered_grid(10.0, 256)
    f = gaussian_mixture_family(grid, 1, 74)[0]
    g = gaussian_window(grid)
    r, s = 2.0, 3.0
    m = radial_weight(1.0)
    rate = p.a / p.b
    lhs = a_mod_norm(p, f, g, r, s, m)
    rhs = (abs(p.b) ** (1.0 / s - 0.5)
           * mod_norm(chirp(f, rate), chirp(g, rate), r, s,
                      freq_scaled_weight(m, p.b)))
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_a_mod_norm_zero_signal():
    grid = centered_grid(10.0, 128)
    z = Signal(grid, np.zeros(128), "cyclic")
    assert a_mod_norm(GENERIC, z, gaussian_window(grid), 2.0, 2.0,
                      unit_weight()) == 0.0


def test_a_mod_norm_index_monotonicity_bounded():
    # higher-index norms of unit-norm signals stay uniformly bounded
    grid = centered_grid(10.0, 128)
    fam = gaussian_mixture_family(grid, 5, 75)
    g = gaussian_window(grid)
    for f in fam:
        base = a_mod_norm(GENERIC, f, g, 2.0, 2.0, unit_weight())
        fn = f.with_samples(f.samples / base)
        higher = a_mod_norm(GENERIC, fn, g, 3.0, 4.0, unit_weight())
        assert higher <= 2.0


def test_weight_transport_exact_for_concentrated_signals():
    n = 256
    grid = _self_dual_grid(n)
    f = sample(lambda t: np.exp(-np.pi * (t - 0.4) ** 2)
               * np.exp(2j * np.pi * 0.7 * t), grid, "cyclic")
    g = sample(lambda t: np.exp(-np.pi * t * t), grid, "cyclic")
    for abcd in ((0, 1, -1, 0), (1, 1, 0, 1)):
        p = make_params(*abcd)
        F = saft_fast(make_plan(p, grid), f)
        G = saft_fast(make_plan(p, grid), g)
        VA = stft(Signal(F.freq_grid, F.samples, "cyclic"),
                  Signal(G.freq_grid, G.samples, "cyclic"))
        V0 = stft(f, g)
        for ell in (0, 1, 2):
            lhs = weighted_tf_norm(VA, transported_weight(ell, p), 2.0)
            rhs = weighted_tf_norm(V0, radial_weight(ell), 2.0)
            assert lhs == pytest.approx(rhs, rel=1e-2)


def test_window_independence_band():
    grid = centered_grid(10.0, 128)
    fam = gaussian_mixture_family(grid, 8, 76)
    gw = gaussian_window(grid)
    rw = raised_cosine_window(grid)
    ratios = [a_mod_norm(GENERIC, f, gw, 2.0, 4.0, unit_weight())
              / a_mod_norm(GENERIC, f, rw, 2.0, 4.0, unit_weight())
              for f in fam]
    assert 0.90 <= min(ratios) and max(ratios) <= 1.20


def test_window_flip_is_conjugate_reversal():
    grid = centered_grid(4.0, 8)
    g = Signal(grid, np.arange(8) + 1j, "cyclic")
    flipped = window_flip(g)
    assert np.allclose(flipped.samples,
                       np.conj(g.samples[[0, 7, 6, 5, 4, 3, 2, 1]]))


def test_tf_matrix_serialization_roundtrip():
    grid = centered_grid(4.0, 32)
    f = gaussian_mixture_family(grid, 1, 77)[0]
    V = stft(f, gaussian_window(grid), window_id="gaussian")
    back = tf_from_dict(json.loads(json.dumps(tf_to_dict(V))))
    assert back.window_id == "gaussian"
    assert np.allclose(back.values, V.values)
    assert back.x_grid == V.x_grid and back.w_grid == V.w_grid


def test_tf_matrix_shape_validation():
    grid = centered_grid(4.0, 8)
    with pytest.raises(ValueError):
        TFMatrix(grid, grid, np.zeros((8, 4)))
