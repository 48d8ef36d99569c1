"""The compiled loops and the numpy twins must agree on every kernel."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

import oracles
from nsgkit import FiniteLcaGroup
from nsgkit import _kernels as K
from nsgkit.realline import Beta, Gaussian, Hat, Indicator, PiecewisePolynomial, ramp_down

WINDOWS = [ramp_down(), PiecewisePolynomial([-2.0, 0.0, 1.5], [[1.0, 0.5], [0.2, -1.0, 3.0]]),
           Hat(-0.5, 0.25, 2.0, 1.5), Gaussian(0.3, 0.7, 2.0),
           Indicator(-1.0, 1.0, False, True, 0.5)]
BETAS = [Beta.constant(-1.5), Beta.identity(), Beta.inverse_linear(), Beta.power_law(0.3)]


@pytest.mark.parametrize("orders", [(7,), (3, 4), (2, 3, 2)])
@pytest.mark.parametrize("sign", [-1.0, 1.0])
def test_dft_backends(orders, sign, rng):
    g = FiniteLcaGroup(orders)
    v = rng.standard_normal(g.cardinality) + 1j * rng.standard_normal(g.cardinality)
    orders_arr = np.array(orders, dtype=np.int64)
    loop = K._dft_direct_loop(v, g.residues, orders_arr, sign)
    vec = K._dft_direct_numpy(v, g.residues, orders_arr, sign)
    np.testing.assert_allclose(loop, vec, atol=1e-12)
    if sign < 0:
        np.testing.assert_allclose(loop, oracles.dft(orders, v), atol=1e-12)


def test_atom_backends(rng):
    atoms = rng.standard_normal((15, 6)) + 1j * rng.standard_normal((15, 6))
    f = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    c = rng.standard_normal(15) + 1j * rng.standard_normal(15)
    c[3] = 0
    w = rng.uniform(0.1, 2, 15)
    np.testing.assert_allclose(K._atom_coefficients_loop(f, atoms),
                               K._atom_coefficients_numpy(f, atoms), atol=1e-13)
    np.testing.assert_allclose(K._atom_synthesis_loop(c, w, atoms),
                               K._atom_synthesis_numpy(c, w, atoms), atol=1e-13)


@pytest.mark.parametrize("window", WINDOWS, ids=lambda w: type(w).__name__)
def test_window_backends(window):
    xs = np.concatenate([np.linspace(-3, 3, 1201), [-1.0, 1.0, 0.25, -0.5, 2.0, 1.5]])
    code, params, coeffs = window.pack()
    # libm and numpy may differ in the last ulp of exp and division
    np.testing.assert_allclose(K._window_loop(code, params, coeffs, xs),
                               K._window_numpy(code, params, coeffs, xs), rtol=1e-14, atol=0)


@pytest.mark.parametrize("beta", BETAS, ids=lambda b: b.kind)
def test_beta_backends(beta):
    w = np.linspace(-5, 5, 101) + 0.05
    code, param = beta.packed()
    loop = np.array([K._beta_scalar(code, param, x) for x in w])
    np.testing.assert_allclose(loop, K._beta_numpy(code, param, w), rtol=1e-15)
    np.testing.assert_allclose(loop, beta(w), rtol=1e-15)


@pytest.mark.parametrize("beta", BETAS, ids=lambda b: b.kind)
@pytest.mark.parametrize("eta", [K.ETA_ZERO, K.ETA_IDENTITY])
def test_awh_quadrature_backends(beta, eta):
    nodes = np.linspace(-30, 30, 6000) + 1e-3
    weights = np.full(nodes.size, nodes[1] - nodes[0])
    w1, w2 = WINDOWS[3].pack(), WINDOWS[2].pack()
    code, param = beta.packed()
    for xi in (-0.4, 0.0, 1.1):
        args = (xi, nodes, weights, code, param, eta, 1.0) + w1 + w2
        a = K._awh_quadrature_loop(*args)
        b = K._awh_quadrature_numpy(*args)
        assert a == pytest.approx(b, rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("chunk", [7, 4096])
def test_energy_quadrature_backends(chunk):
    xs = np.linspace(-1, 1, 51)
    xw = np.full(51, 0.04)
    om = np.linspace(-20, 20, 161)
    ow = np.full(161, 0.25)
    code, param = Beta.inverse_linear().packed()
    args = (xs, xw, om, ow, code, param, K.ETA_IDENTITY, 1.0) + Indicator(-1, 1).pack() \
        + ramp_down().pack()
    a = K._energy_quadrature_loop(*args)
    b = K._energy_quadrature_numpy(*args, chunk=chunk)
    assert a == pytest.approx(b, rel=1e-12)


def test_numpy_backend_selected_by_env():
    code = (
        "import json, numpy as np\n"
        "import nsgkit\n"
        "from nsgkit import FiniteLcaGroup, Signal, fourier\n"
        "from nsgkit.realline import AwhConfig, QuadratureGrid, awh_symbol, ramp_down, ramp_up\n"
        "g = FiniteLcaGroup((3, 4))\n"
        "f = Signal(g, np.arange(12) + 1j)\n"
        "d = fourier(f, method='direct').values\n"
        "m = awh_symbol(AwhConfig.example(), ramp_down(), ramp_up(),"
        " QuadratureGrid(-50, 50, 20001), 0.3)\n"
        "print(json.dumps({'backend': nsgkit.BACKEND, 'd': [[z.real, z.imag] for z in d],"
        " 'm': m}))\n"
    )
    results = {}
    for flag in ("1", ""):
        env = dict(os.environ, NSGKIT_DISABLE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True)
        results[flag] = json.loads(out.stdout)
    assert results["1"]["backend"] == "numpy"
    np.testing.assert_allclose(results["1"]["d"], results[""]["d"], atol=1e-12)
    assert results["1"]["m"] == pytest.approx(results[""]["m"], rel=1e-12)
