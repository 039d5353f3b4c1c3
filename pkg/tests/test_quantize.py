import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import crandn
from tfloc.berezin import berezin_transform
from tfloc.exceptions import InvalidParameterError, VanishingAmbiguityError
from tfloc.oper import (localization_operator,
                        random_operator, schatten_norm, to_spreading)
from tfloc.quantize import (approximation_report, berezin_bound_check,
                            clip_symbol, density_sweep, fourier_gap_experiment,
                            projection_residual, solve_symbol,
                            spreading_multiplier, zero_set_witness)
from tfloc.tfcore import (PhasePoint, cross_ambiguity, tf_shift_matrix,
                          window_gallery, zero_mask)

ZERO_FREE = ("gauss:1.0", "gauss:0.5")


def _pair(n, specs=ZERO_FREE):
    return window_gallery(specs[0], n), window_gallery(specs[1], n)


def _hs(T):
    return np.linalg.norm(T)


# --- solve_symbol -------------------------------------------------------------

@pytest.mark.parametrize("n", [4, 8])
def test_round_trip_recovers_symbol(n, rng):
    phi1, phi2 = _pair(n)
    b = crandn(rng, n, n)
    a = solve_symbol(localization_operator(b, phi1, phi2), phi1, phi2)
    assert np.abs(a - b).max() <= 1e-8 * np.abs(b).max()


def test_zero_target_gives_zero_symbol():
    phi1, phi2 = _pair(4)
    np.testing.assert_array_equal(solve_symbol(np.zeros((4, 4)), phi1, phi2), 0)


def test_target_on_zero_set_regularized(rng):
    phi = window_gallery("zeromaker", 4)
    T = zero_set_witness(phi, phi, seed=3)
    rep = approximation_report(T, phi, phi, lam=0.1)
    assert np.abs(rep.symbol).max() < 1e-12
    assert rep.residual_hs == pytest.approx(_hs(T), rel=1e-12)


def test_vanishing_ambiguity_raises_with_zero_set():
    d = window_gallery("delta", 2)
    with pytest.raises(VanishingAmbiguityError) as info:
        solve_symbol(np.eye(2), d, d)
    assert info.value.zero_set == [PhasePoint(1, 0), PhasePoint(1, 1)]
    assert "(1, 0)" in str(info.value) or "x=1, omega=0" in str(info.value)


def test_negative_lambda_rejected():
    phi1, phi2 = _pair(4)
    with pytest.raises(InvalidParameterError):
        solve_symbol(np.eye(4), phi1, phi2, lam=-1)
    with pytest.raises(InvalidParameterError):
        solve_symbol(np.eye(4), phi1, phi2, lam=float("nan"))


def test_pseudo_inverse_drops_zero_set(rng):
    phi = window_gallery("gauss:1.0", 8)
    T = crandn(rng, 8, 8)
    a = solve_symbol(T, phi, phi, pseudo_inverse=True)
    E = zero_mask(cross_ambiguity(phi, phi))
    eta_fit = to_spreading(localization_operator(a, phi, phi))
    np.testing.assert_allclose(eta_fit[~E], to_spreading(T)[~E], atol=1e-9)
    assert np.abs(eta_fit[E]).max() < 1e-12
    # agrees with the small-lambda limit
    a_small = solve_symbol(T, phi, phi, lam=1e-14)
    assert np.abs(a - a_small).max() <= 1e-6 * np.abs(a).max()


# --- approximation report -----------------------------------------------------

def test_report_zero_free_n8(rng):
    phi1, phi2 = _pair(8)
    T = crandn(rng, 8, 8)
    rep = approximation_report(T, phi1, phi2)
    assert rep.residual_hs <= 1e-8 * _hs(T)
    assert rep.n == 8 and rep.lam == 0.0


def test_report_delta_n2_shift_on_zero_set():
    d = window_gallery("delta", 2)
    T = tf_shift_matrix((1, 0), 2)
    rep = approximation_report(T, d, d, pseudo_inverse=True)
    assert rep.residual_hs == pytest.approx(_hs(T), rel=1e-13)


@pytest.mark.parametrize("lam", [1e4, 1e8, 1e12])
def test_large_lambda_limit(lam, rng):
    phi1, phi2 = _pair(4)
    T = crandn(rng, 4, 4)
    rep = approximation_report(T, phi1, phi2, lam=lam)
    assert rep.symbol_sup <= 10 / lam * _hs(T)
    assert rep.residual_hs == pytest.approx(_hs(T), rel=100 / lam)


def test_report_invariants(rng):
    phi = window_gallery("gauss:1.0", 6)
    T = crandn(rng, 6, 6)
    prev = math.inf
    for lam in [10.0, 1.0, 0.1, 0.01, 0.0]:
        rep = approximation_report(T, phi, phi, lam=lam, pseudo_inverse=True)
        assert rep.residual_op <= rep.residual_hs * (1 + 1e-12)
        assert rep.residual_hs <= rep.residual_s1 * (1 + 1e-12)
        assert rep.residual_hs <= prev * (1 + 1e-12)
        prev = rep.residual_hs


def test_report_consistent_with_direct_norms(rng):
    phi1, phi2 = _pair(6)
    T = crandn(rng, 6, 6)
    rep = approximation_report(T, phi1, phi2, lam=0.3)
    R = T - localization_operator(rep.symbol, phi1, phi2)
    for p, val in [(2, rep.residual_hs), (np.inf, rep.residual_op), (1, rep.residual_s1)]:
        assert abs(val - schatten_norm(R, p)) <= 1e-12 * max(1.0, val)
    assert rep.symbol_sup == np.abs(rep.symbol).max()


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_projection_formula_exhaustive(n, rng):
    specs = ["delta", "gauss:1.0", "rect:2", "zeromaker"] if n % 2 == 0 else ["delta", "gauss:1.0", "rect:2"]
    for s1, s2 in itertools.product(specs, repeat=2):
        phi1, phi2 = window_gallery(s1, n), window_gallery(s2, n)
        T = crandn(rng, n, n)
        rep = approximation_report(T, phi1, phi2, pseudo_inverse=True)
        E = zero_mask(cross_ambiguity(phi1, phi2))
        predicted = math.sqrt(n * np.sum(np.abs(to_spreading(T)[E]) ** 2))
        assert rep.residual_hs == pytest.approx(predicted, rel=1e-9, abs=1e-9 * _hs(T))
        assert projection_residual(T, phi1, phi2) == pytest.approx(predicted, rel=1e-12, abs=1e-15)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), lam=st.floats(1e-3, 10))
def test_tikhonov_optimality(seed, lam):
    rng = np.random.default_rng(seed)
    n = 4
    phi1, phi2 = window_gallery("gauss:1.0", n), window_gallery("rect:3", n)
    T = crandn(rng, n, n)

    def objective(a):
        return _hs(T - localization_operator(a, phi1, phi2)) ** 2 / n + lam * np.sum(np.abs(a) ** 2)

    a = solve_symbol(T, phi1, phi2, lam=lam)
    best = objective(a)
    for _ in range(5):
        d = crandn(rng, n, n)
        for eps in (1e-3, 1e-1):
            assert objective(a + eps * d) >= best - 1e-12 * best
    # stationarity: B(T - A_a) / N^2 = lam * a
    grad = berezin_transform(T - localization_operator(a, phi1, phi2), phi1, phi2) / n ** 2
    np.testing.assert_allclose(grad, lam * a, atol=1e-12 * max(1.0, np.abs(grad).max()))


def test_multiplier_is_scaled_ambiguity():
    phi1, phi2 = _pair(5)
    np.testing.assert_allclose(spreading_multiplier(phi1, phi2), cross_ambiguity(phi1, phi2) / 5)


# --- witnesses and clipping ------------------------------------------------------

def test_witness_none_when_zero_free():
    assert zero_set_witness(*_pair(4)) is None


def test_witness_deterministic_and_on_zero_set():
    phi = window_gallery("zeromaker", 4)
    W1, W2 = zero_set_witness(phi, phi, seed=5), zero_set_witness(phi, phi, seed=5)
    assert np.array_equal(W1, W2)
    E = zero_mask(cross_ambiguity(phi, phi))
    assert np.abs(to_spreading(W1)[~E]).max() < 1e-14


def test_clip_symbol():
    a = np.array([[3 + 4j, 0.5], [0, -2]])
    c = clip_symbol(a, 1.0)
    np.testing.assert_allclose(c, [[0.6 + 0.8j, 0.5], [0, -1]])
    np.testing.assert_array_equal(clip_symbol(a, 1e300), a)
    with pytest.raises(InvalidParameterError):
        clip_symbol(a, 0)


# --- experiments ------------------------------------------------------------------

def test_density_sweep_rows():
    pairs = [("gauss:1.0", "gauss:1.0"), ("zeromaker", "zeromaker"), ("delta", "gauss:1.0")]
    rows = density_sweep(pairs, [8, 4], seed=0, n_targets=2)
    assert [(r.n, r.window1, r.window2) for r in rows] == [
        (4, "delta", "gauss:1.0"), (4, "gauss:1.0", "gauss:1.0"), (4, "zeromaker", "zeromaker"),
        (8, "delta", "gauss:1.0"), (8, "gauss:1.0", "gauss:1.0"), (8, "zeromaker", "zeromaker")]
    for r in rows:
        assert r.rank_law_holds
        if r.injective:
            assert r.max_residual <= 1e-8 and math.isnan(r.witness_residual)
        else:
            assert r.witness_residual == pytest.approx(1.0, abs=1e-10)
    by = {(r.n, r.window1): r for r in rows}
    assert by[(8, "delta")].injective
    assert not by[(8, "gauss:1.0")].injective and by[(8, "gauss:1.0")].zero_count == 8


def test_density_sweep_skips_invalid_windows():
    rows = density_sweep([("zeromaker", "delta")], [3, 4], n_targets=1)
    assert [r.n for r in rows] == [4]


def test_fourier_gap_small():
    rows = fourier_gap_experiment([16, 8], clip_level=1.0)
    assert [r.n for r in rows] == [8, 16]
    assert rows[0].symbol_sup < rows[1].symbol_sup
    for r in rows:
        assert r.residual_hs <= 1e-8
        assert r.zero_count == r.n
        assert r.clipped_residual_op >= 1.0


def test_fourier_gap_clip_limit():
    (r,) = fourier_gap_experiment([8], clip_level=1e12)
    assert r.clipped_residual_op == pytest.approx(r.residual_op, abs=1e-9)


# --- norm bound ------------------------------------------------------------------

def test_bound_identity_inf():
    phi = window_gallery("gauss:1.0", 8)
    chk = berezin_bound_check(np.eye(8), phi, phi, np.inf)
    assert chk.lhs == pytest.approx(1, abs=1e-13) and chk.holds


def test_bound_rank_one_p1(rng):
    u, v = crandn(rng, 4), crandn(rng, 4)
    phi1, phi2 = crandn(rng, 4), crandn(rng, 4)
    chk = berezin_bound_check(np.outer(u, v.conj()), phi1, phi2, 1)
    assert chk.holds and chk.lhs <= chk.rhs


def test_bound_rank_one_p1_equality_for_self_pair(rng):
    # T = phi phi^H attains the bound with p = 1 (equality in Moyal)
    phi = crandn(rng, 4)
    chk = berezin_bound_check(np.outer(phi, phi.conj()), phi, phi, 1)
    assert chk.lhs == pytest.approx(chk.rhs, rel=1e-12)


@pytest.mark.parametrize("p", [1, 2, np.inf])
def test_bound_random_corpus(p):
    phi1, phi2 = window_gallery("gauss:1.0", 8), window_gallery("rect:3", 8)
    for seed in range(20):
        assert berezin_bound_check(random_operator(seed, 8), phi1, phi2, p).holds
