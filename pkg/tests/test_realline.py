import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from nsgkit import DomainError, NumericalGuardError, SymbolSingular
from nsgkit.realline import (
    AwhConfig,
    Beta,
    EnergySeries,
    Gaussian,
    Hat,
    Indicator,
    PiecewisePolynomial,
    QuadratureGrid,
    SpectralWindow,
    WaveletRangeWarning,
    adaptive_simpson,
    awh_symbol,
    dyadic_range,
    energy_series,
    example1_closed_form,
    example1_symbol_exact,
    lambda_section_constant,
    ramp_down,
    ramp_up,
    symbol_derivative_check,
    truncated_analysis_energy,
    wavelet_admissibility,
    wavelet_dual_commutation,
    wavelet_symbol,
)

PSI, PHI = ramp_down(), ramp_up()
XI_GRID = QuadratureGrid(-1.0, 1.0, 201)


# windows


def test_piecewise_polynomial_evaluation():
    w = PiecewisePolynomial([0.0, 1.0, 3.0], [[1.0, 2.0], [0.0, 0.0, 1.0]])
    assert w(-0.1) == 0.0 and w(3.1) == 0.0
    assert w(0.5) == pytest.approx(2.0)
    assert w(1.0) == pytest.approx(1.0)  # second piece starts at 1
    assert w(3.0) == pytest.approx(9.0)  # last piece is closed
    np.testing.assert_allclose(w(np.array([0.0, 2.0])), [1.0, 4.0])
    with pytest.raises(ValueError):
        PiecewisePolynomial([1.0, 0.0], [[1.0]])
    with pytest.raises(ValueError):
        PiecewisePolynomial([0.0, 1.0], [[1.0], [2.0]])


def test_hat_gaussian_indicator():
    h = Hat(0.5, 1.0, 2.0)
    assert h(1.0) == 1.0 and h(0.5) == 0.0 and h(2.0) == 0.0
    assert h(0.75) == pytest.approx(0.5) and h(1.5) == pytest.approx(0.5)
    xs = np.linspace(0.4, 2.1, 2001)
    assert np.max(np.abs(np.diff(h(xs)))) < 3 * (xs[1] - xs[0])  # continuous
    g = Gaussian(1.0, 0.5)
    assert g(1.0) == 1.0 and g(1.5) == pytest.approx(math.exp(-0.5))
    ind = Indicator(1.0, 2.0, include_right=False)
    assert ind(1.0) == 1.0 and ind(2.0) == 0.0 and ind(1.999) == 1.0
    with pytest.raises(ValueError):
        Gaussian(0.0, 0.0)
    with pytest.raises(ValueError):
        Hat(1.0, 0.5, 2.0)


@pytest.mark.parametrize("w", [ramp_down(), Hat(-1, 0, 2, 3.0), Gaussian(0.3, 2.0, 0.5),
                               Indicator(-1, 1, False, True, 2.0)])
def test_window_round_trip_and_scaling(w):
    xs = np.linspace(-4, 4, 801)
    again = SpectralWindow.from_dict(w.to_dict())
    np.testing.assert_array_equal(again(xs), w(xs))
    np.testing.assert_allclose(w.scaled(-2.5)(xs), -2.5 * w(xs), rtol=1e-15, atol=0)
    lo, hi = w.support()
    outside = xs[(xs < lo) | (xs > hi)]
    assert np.all(w(outside) == 0.0)


def test_beta_variants():
    w = np.array([-3.0, 0.0, 2.0])
    np.testing.assert_allclose(Beta.constant(2.0)(w), 2.0)
    np.testing.assert_allclose(Beta.identity()(w), w)
    np.testing.assert_allclose(Beta.inverse_linear()(w), 1 / (1 + np.abs(w)))
    np.testing.assert_allclose(Beta.power_law(0.5)(w), (1 + np.abs(w)) ** -0.5)
    assert Beta.identity().vanishes_somewhere
    with pytest.raises(ValueError):
        Beta.constant(0.0)
    with pytest.raises(ValueError):
        Beta.power_law(1.5)
    assert Beta.from_dict(Beta.power_law(0.25).to_dict()) == Beta.power_law(0.25)


def test_quadrature_grid():
    g = QuadratureGrid(-2.0, 3.0, 11)
    assert np.all(g.weights > 0) and g.weights.sum() == pytest.approx(5.0)
    with pytest.raises(ValueError):
        QuadratureGrid(1.0, 1.0, 5)
    with pytest.raises(ValueError):
        QuadratureGrid(0.0, 1.0, 1)


# section symbol by quadrature


def test_awh_symbol_omega_independent():
    conf = AwhConfig(Beta.constant(1.0), "zero", 0.0)
    g = Gaussian(0.2, 1.0)
    for xi in (-0.7, 0.0, 1.3):
        got = awh_symbol(conf, g, PHI, QuadratureGrid(0.0, 1.0, 3), xi)
        assert got == pytest.approx(g(xi) * PHI(xi), abs=1e-15)


def test_awh_symbol_against_trapezoid_oracle():
    grid = QuadratureGrid(-200.0, 200.0, 40001)
    for xi in (-0.5, 0.2, 1.7):
        got = awh_symbol(AwhConfig.example(), PSI, PHI, grid, xi)
        assert got == pytest.approx(oracles.example_symbol_trapezoid(xi, 200.0, 40001),
                                    rel=1e-12)


def test_awh_symbol_rejects_beta_zero_node():
    conf = AwhConfig(Beta.identity(), "identity", 1.0)
    with pytest.raises(NumericalGuardError):
        awh_symbol(conf, PSI, PHI, QuadratureGrid(-1.0, 1.0, 11), 0.0)
    awh_symbol(conf, PSI, PHI, QuadratureGrid(-1.0, 1.0, 10), 0.0)


def test_awh_symbol_power_law_smoke():
    conf = AwhConfig(Beta.power_law(0.5), "identity", 1.0)
    v = awh_symbol(conf, Gaussian(0.0, 1.0), Gaussian(0.0, 1.0), QuadratureGrid(-50, 50, 5001),
                   0.3)
    assert np.isfinite(v) and v > 0


@pytest.mark.parametrize("xi", [-0.9, -0.5, 0.0, 0.5, 0.9, 1.5, 3.0])
def test_awh_symbol_converges_to_closed_form(xi):
    grid = QuadratureGrid(-1e4, 1e4, 10**6)
    got = awh_symbol(AwhConfig.example(), PSI, PHI, grid, xi)
    assert abs(got - example1_closed_form(xi)) <= 1e-2 * example1_closed_form(xi)


# exact route


def test_adaptive_simpson():
    assert adaptive_simpson(math.sin, 0.0, math.pi) == pytest.approx(2.0, abs=1e-9)
    assert adaptive_simpson(lambda x: x ** 3, -1.0, 2.0) == pytest.approx(3.75, abs=1e-12)
    assert adaptive_simpson(math.exp, 1.0, 1.0) == 0.0


def test_exact_examples():
    assert example1_symbol_exact(PSI, PHI, 0.0) == pytest.approx(3.0, abs=1e-9)
    assert example1_symbol_exact(PSI, PHI, 1.0) == pytest.approx(2.0, abs=1e-9)
    assert example1_symbol_exact(PSI, PHI, -1.0) == pytest.approx(2.0, abs=1e-9)
    for xi in np.linspace(-1, 1, 21):
        assert abs(example1_symbol_exact(PSI, PHI, xi) - (3 - xi * xi)) <= 1e-8
    for xi in (-3.0, -1.5, 1.5, 3.0, 40.0):
        assert abs(example1_symbol_exact(PSI, PHI, xi) - 2.0) <= 1e-8


@given(st.floats(-1.0, 1.0))
def test_exact_symmetry_for_even_product(xi):
    w = PiecewisePolynomial([-1.0, 1.0], [[1.0, 0.0, -1.0]])  # 1 - z^2, even
    one = Indicator(-1.0, 1.0)
    assert abs(example1_symbol_exact(w, one, xi) - example1_symbol_exact(w, one, -xi)) <= 1e-9


def test_exact_endpoint_guard():
    with pytest.raises(NumericalGuardError):
        example1_symbol_exact(Indicator(-1.0, 1.0), Indicator(-1.0, 1.0), 0.0)
    with pytest.raises(DomainError):
        example1_symbol_exact(Indicator(-2.0, 2.0), Indicator(-2.0, 2.0), 0.0)


# derivative identity


@pytest.mark.parametrize("xi", [-0.5, 0.25, 0.5])
def test_derivative_identity(xi):
    fd, an = symbol_derivative_check(PSI, PHI, xi, 1e-4)
    assert an == pytest.approx(-2 * xi, abs=1e-14)
    assert abs(fd - an) <= 1e-4 * (1 + abs(an))


def test_derivative_examples():
    fd, an = symbol_derivative_check(PSI, PHI, 0.0)
    assert abs(fd) <= 1e-8 and abs(an) <= 1e-8
    fd, an = symbol_derivative_check(PSI, PHI, 0.5)
    assert fd == pytest.approx(-1.0, abs=1e-4) and an == pytest.approx(-1.0, abs=1e-4)
    zero = PiecewisePolynomial([-1.0, 1.0], [[0.0]])
    for xi in (-0.7, 0.0, 0.3):
        assert symbol_derivative_check(zero, PHI, xi) == (0.0, 0.0)
    with pytest.raises(DomainError):
        symbol_derivative_check(PSI, PHI, 1.0)
    with pytest.raises(DomainError):
        symbol_derivative_check(PSI, PHI, 0.99995, 1e-4)


# energy


def test_energy_examples():
    f = Indicator(-1.0, 1.0)
    assert truncated_analysis_energy(PSI, f, 0.0, XI_GRID) == 0.0
    zero = PiecewisePolynomial([-1.0, 1.0], [[0.0]])
    for cap in (1, 8, 64):
        assert truncated_analysis_energy(PSI, zero, cap, XI_GRID) == 0.0


@pytest.mark.parametrize("cap", [2.0, 16.0, 64.0])
def test_energy_against_2d_trapezoid_oracle(cap):
    got = truncated_analysis_energy(PSI, Indicator(-1.0, 1.0), cap, XI_GRID)
    assert got == pytest.approx(oracles.energy_trapezoid(cap, 201, 4), rel=1e-12)


def test_energy_divergence_pattern():
    caps = [2.0 ** k for k in range(5, 13)]
    series = energy_series(PSI, Indicator(-1.0, 1.0), caps, XI_GRID)
    inc = series.increments
    assert np.all(np.diff(series.energies) > 0)
    assert np.all(inc >= 0.1) and np.all(inc[1:] >= 0.5 * inc[:-1])
    # increments approach 8 ln 2 per doubling
    assert abs(inc[-1] - 8 * math.log(2)) < 0.05
    assert np.all(np.diff(np.abs(inc - 8 * math.log(2))) <= 0)
    both = energy_series(PHI, Indicator(-1.0, 1.0), caps, XI_GRID)
    assert np.all(np.diff(both.energies) > 0)


@given(st.lists(st.integers(1, 400), min_size=2, max_size=6, unique=True))
def test_energy_monotone_on_lattice(quarters):
    caps = sorted(q / 4 for q in quarters)
    series = energy_series(PSI, Gaussian(0.0, 0.5), caps, QuadratureGrid(-1.0, 1.0, 41))
    assert np.all(np.diff(series.energies) >= 0)


def test_energy_series_validation():
    with pytest.raises(ValueError):
        EnergySeries([1.0, 1.0], [0.0, 1.0])
    with pytest.raises(ValueError):
        EnergySeries([1.0, 2.0], [2.0, 1.0])
    with pytest.raises(DomainError):
        truncated_analysis_energy(PSI, PHI, -1.0, XI_GRID)


# lambda section


def test_lambda_section_examples():
    one = Indicator(1.0, 2.0)
    grid = QuadratureGrid(1.0, 2.0, 20001)
    assert abs(lambda_section_constant(one, one, 0.0, grid) - math.log(2)) <= 1e-6
    other = Indicator(3.0, 4.0)
    assert lambda_section_constant(one, other, 0.0, QuadratureGrid(0.5, 4.5, 8001)) == 0.0
    c = lambda_section_constant(one.scaled(3.0), one, 0.0, grid)
    assert c == pytest.approx(3 * lambda_section_constant(one, one, 0.0, grid), rel=1e-14)


@pytest.mark.parametrize("psi, phi, lam, lo, hi, exact", [
    (Indicator(1.0, 2.0), Indicator(1.0, 2.0), 0.0, 1.0, 2.0, math.log(2)),
    (Indicator(1.0, 3.0), Indicator(1.0, 3.0), 1.0, 1.0, 3.0, math.log(2)),
    (Indicator(-3.0, -1.0), Indicator(-3.0, -1.0), 0.0, -3.0, -1.0, math.log(3)),
    (PiecewisePolynomial([1.0, 2.0], [[0.0, 1.0]]), Indicator(1.0, 2.0), 0.0, 1.0, 2.0, 1.0),
])
def test_lambda_section_closed_forms(psi, phi, lam, lo, hi, exact):
    grid = QuadratureGrid(lo, hi, 40001)
    assert abs(lambda_section_constant(psi, phi, lam, grid) - exact) <= 1e-6


def test_lambda_section_guard():
    wide = Indicator(-0.5, 2.0)
    with pytest.raises(NumericalGuardError):
        lambda_section_constant(wide, Indicator(1.0, 2.0), 0.0, QuadratureGrid(-0.5, 2.0, 101))
    with pytest.raises(NumericalGuardError):
        lambda_section_constant(Indicator(1.0, 2.0), wide, 0.0, QuadratureGrid(-0.5, 2.0, 101))


# dyadic wavelets

BAND = Indicator(1.0, 2.0, include_right=False)
HAT = Hat(0.5, 1.0, 2.0)


def test_wavelet_symbol_tiling(rng):
    xs = rng.uniform(0.01, 100.0, 100)
    j_min, j_max = dyadic_range(BAND, xs)
    m = wavelet_symbol(BAND, j_min, j_max, xs)
    assert np.max(np.abs(m - 1.0)) <= 1e-12
    for x in xs[:10]:
        brute = sum(BAND(2.0 ** j * x) ** 2 for j in range(-60, 60))
        assert brute == 1.0
    powers = 2.0 ** np.arange(-6, 7)
    np.testing.assert_array_equal(wavelet_symbol(BAND, -10, 10, powers), 1.0)


def test_wavelet_dyadic_invariance():
    xs = np.logspace(-2, 2, 200)
    j_min, j_max = dyadic_range(HAT, np.concatenate([xs, 2 * xs]))
    m1 = wavelet_symbol(HAT, j_min, j_max, xs)
    m2 = wavelet_symbol(HAT, j_min, j_max, 2 * xs)
    assert np.max(np.abs(m2 - m1)) <= 1e-12
    brute = np.array([sum(HAT(2.0 ** j * x) ** 2 for j in range(-40, 40)) for x in xs[:20]])
    np.testing.assert_allclose(m1[:20], brute, atol=1e-15)
    shifted = wavelet_symbol(HAT, j_min - 1, j_max - 1, 2 * xs)
    assert np.max(np.abs(shifted - m1)) <= 1e-12


def test_wavelet_symbol_errors_and_warnings():
    with pytest.raises(DomainError):
        wavelet_symbol(BAND, -5, 5, 0.0)
    with pytest.raises(DomainError):
        wavelet_symbol(BAND, 3, 2, 1.0)
    with pytest.warns(WaveletRangeWarning):
        wavelet_symbol(BAND, 0, 1, 1e-3)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        wavelet_symbol(BAND, -10, 10, 1.0)
    with pytest.warns(WaveletRangeWarning):
        dyadic_range(Gaussian(0.0, 1.0), 1.0)


def test_wavelet_dual_commutation():
    assert wavelet_dual_commutation(HAT, 0, QuadratureGrid(0.1, 10.0, 1001)) == 0.0
    for j in range(-3, 4):
        assert wavelet_dual_commutation(BAND, j, QuadratureGrid(0.01, 50.0, 2001)) <= 1e-12
    grid = QuadratureGrid(0.1, 10.0, 2001)
    for j in range(-2, 3):
        assert wavelet_dual_commutation(HAT, j, grid) <= 1e-10
    with pytest.raises(DomainError):
        wavelet_dual_commutation(HAT, 1, QuadratureGrid(0.0, 1.0, 11))


def test_wavelet_dual_commutation_singular():
    narrow = Hat(1.0, 1.2, 1.4)  # leaves gaps in every octave
    with pytest.raises(SymbolSingular):
        wavelet_dual_commutation(narrow, 1, QuadratureGrid(0.1, 10.0, 501))


def test_wavelet_admissibility():
    rep = wavelet_admissibility(HAT, 0.75)
    assert rep.lower_condition and rep.decay_condition
    assert rep.inf_on_octave == pytest.approx(0.5)
    xs = np.linspace(-6, 6, 20001)
    xs = xs[xs != 0]
    assert np.all(HAT(xs) ** 2 <= rep.decay_constant * np.abs(xs) / (1 + np.abs(xs)) ** 2
                  * (1 + 1e-9))
    # at xi0 = 1 the octave [1, 2] reaches the zero of the hat at 2
    assert not wavelet_admissibility(HAT, 1.0).lower_condition
    # a window that is nonzero at the origin violates the decay bound
    assert not wavelet_admissibility(Gaussian(0.0, 1.0), 1.0).decay_condition
    with pytest.raises(DomainError):
        wavelet_admissibility(HAT, 0.0)
