"""Hot numeric kernels, each with a loop implementation and a vectorized one.

The loop versions are compiled with numba when it is available; the numpy
versions are used otherwise (or when ``NSGKIT_DISABLE_NUMBA=1``). Both are
always importable so the test-suite and the benchmark can compare them.

Spectral windows and scale functions cross into the kernels in a packed form
(integer code plus float parameter arrays) because numba cannot dispatch on
Python objects. Parameter layouts:

    piecewise  params = breakpoints, coeffs[piece] = ascending powers of x
    hat        params = [left, center, right, amplitude]
    gaussian   params = [center, width, amplitude]
    indicator  params = [left, right, include_left, include_right, amplitude]
"""

import math

import numpy as np

from ._accel import BACKEND, jit

# window codes
WIN_PIECEWISE = 0
WIN_HAT = 1
WIN_GAUSSIAN = 2
WIN_INDICATOR = 3

# scale-function (beta) codes
BETA_CONSTANT = 0
BETA_IDENTITY = 1
BETA_INVERSE_LINEAR = 2
BETA_POWER_LAW = 3

# shift-function (eta) codes
ETA_ZERO = 0
ETA_IDENTITY = 1

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# direct character sums on a finite abelian group
# ---------------------------------------------------------------------------


@jit
def _dft_direct_loop(values, residues, orders, sign):
    n = values.shape[0]
    d = orders.shape[0]
    out = np.zeros(n, dtype=np.complex128)
    for k in range(n):
        acc = 0.0 + 0.0j
        for x in range(n):
            # reduce rationally first so the phase stays in [0, d)
            phase = 0.0
            for i in range(d):
                phase += ((residues[k, i] * residues[x, i]) % orders[i]) / orders[i]
            ang = sign * TWO_PI * phase
            acc += (math.cos(ang) + 1j * math.sin(ang)) * values[x]
        out[k] = acc
    return out


def _dft_direct_numpy(values, residues, orders, sign):
    phase = np.zeros((values.shape[0], values.shape[0]))
    for i in range(orders.shape[0]):
        r = residues[:, i]
        phase += np.mod(np.outer(r, r), orders[i]) / orders[i]
    return np.exp(sign * TWO_PI * 1j * phase) @ values


def dft_direct(values, residues, orders, sign):
    """Sum ``out[k] = sum_x exp(sign*2*pi*i*<k,x>) * values[x]`` by brute force."""
    values = np.ascontiguousarray(values, dtype=np.complex128)
    residues = np.ascontiguousarray(residues, dtype=np.int64)
    orders = np.ascontiguousarray(orders, dtype=np.int64)
    if BACKEND == "numba":
        return _dft_direct_loop(values, residues, orders, float(sign))
    return _dft_direct_numpy(values, residues, orders, float(sign))


# ---------------------------------------------------------------------------
# explicit atom systems
# ---------------------------------------------------------------------------


@jit
def _atom_coefficients_loop(f, atoms):
    m, n = atoms.shape
    out = np.zeros(m, dtype=np.complex128)
    for i in range(m):
        acc = 0.0 + 0.0j
        for t in range(n):
            acc += f[t] * np.conj(atoms[i, t])
        out[i] = acc
    return out


def _atom_coefficients_numpy(f, atoms):
    return atoms.conj() @ f


def atom_coefficients(f, atoms):
    """Inner products ``<f, atoms[i]>`` for every row of ``atoms``."""
    f = np.ascontiguousarray(f, dtype=np.complex128)
    atoms = np.ascontiguousarray(atoms, dtype=np.complex128)
    if BACKEND == "numba":
        return _atom_coefficients_loop(f, atoms)
    return _atom_coefficients_numpy(f, atoms)


@jit
def _atom_synthesis_loop(coeffs, weights, atoms):
    m, n = atoms.shape
    out = np.zeros(n, dtype=np.complex128)
    for i in range(m):
        c = weights[i] * coeffs[i]
        if c == 0:
            continue
        for t in range(n):
            out[t] += c * atoms[i, t]
    return out


def _atom_synthesis_numpy(coeffs, weights, atoms):
    return (weights * coeffs) @ atoms


def atom_synthesis(coeffs, weights, atoms):
    """Weighted superposition ``sum_i weights[i] * coeffs[i] * atoms[i]``."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    atoms = np.ascontiguousarray(atoms, dtype=np.complex128)
    if BACKEND == "numba":
        return _atom_synthesis_loop(coeffs, weights, atoms)
    return _atom_synthesis_numpy(coeffs, weights, atoms)


# ---------------------------------------------------------------------------
# packed spectral windows
# ---------------------------------------------------------------------------


@jit
def _window_scalar(code, params, coeffs, x):
    if code == WIN_PIECEWISE:
        nb = params.shape[0]
        if x < params[0] or x > params[nb - 1]:
            return 0.0
        piece = nb - 2
        for p in range(nb - 1):
            if x < params[p + 1]:
                piece = p
                break
        acc = 0.0
        for c in range(coeffs.shape[1] - 1, -1, -1):
            acc = acc * x + coeffs[piece, c]
        return acc
    if code == WIN_HAT:
        left, center, right = params[0], params[1], params[2]
        if x <= left or x >= right:
            return 0.0
        if x <= center:
            return params[3] * (x - left) / (center - left)
        return params[3] * (right - x) / (right - center)
    if code == WIN_GAUSSIAN:
        u = (x - params[0]) / params[1]
        return params[2] * math.exp(-0.5 * u * u)
    # indicator
    left, right = params[0], params[1]
    if x < left or x > right:
        return 0.0
    if x == left and params[2] == 0.0:
        return 0.0
    if x == right and params[3] == 0.0:
        return 0.0
    return params[4]


def _window_numpy(code, params, coeffs, x):
    x = np.asarray(x, dtype=np.float64)
    if code == WIN_PIECEWISE:
        nb = params.shape[0]
        piece = np.clip(np.searchsorted(params, x, side="right") - 1, 0, nb - 2)
        acc = np.zeros_like(x)
        for c in range(coeffs.shape[1] - 1, -1, -1):
            acc = acc * x + coeffs[piece, c]
        return np.where((x >= params[0]) & (x <= params[nb - 1]), acc, 0.0)
    if code == WIN_HAT:
        left, center, right = params[0], params[1], params[2]
        up = (x - left) / (center - left)
        down = (right - x) / (right - center)
        val = np.where(x <= center, up, down)
        return np.where((x > left) & (x < right), params[3] * val, 0.0)
    if code == WIN_GAUSSIAN:
        u = (x - params[0]) / params[1]
        return params[2] * np.exp(-0.5 * u * u)
    left, right = params[0], params[1]
    lo_ok = (x > left) | ((x == left) & (params[2] != 0.0))
    hi_ok = (x < right) | ((x == right) & (params[3] != 0.0))
    return np.where(lo_ok & hi_ok, params[4], 0.0)


@jit
def _window_loop(code, params, coeffs, x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _window_scalar(code, params, coeffs, x[i])
    return out


def evaluate_window(code, params, coeffs, x):
    """Evaluate a packed window on a 1-D array of points."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if BACKEND == "numba":
        return _window_loop(code, params, coeffs, x)
    return _window_numpy(code, params, coeffs, x)


# ---------------------------------------------------------------------------
# scale / shift functions
# ---------------------------------------------------------------------------


@jit
def _beta_scalar(code, param, w):
    if code == BETA_CONSTANT:
        return param
    if code == BETA_IDENTITY:
        return w
    if code == BETA_INVERSE_LINEAR:
        return 1.0 / (1.0 + abs(w))
    return (1.0 + abs(w)) ** (-param)


def _beta_numpy(code, param, w):
    if code == BETA_CONSTANT:
        return np.full_like(w, param)
    if code == BETA_IDENTITY:
        return w.copy()
    if code == BETA_INVERSE_LINEAR:
        return 1.0 / (1.0 + np.abs(w))
    return (1.0 + np.abs(w)) ** (-param)


# ---------------------------------------------------------------------------
# real-line quadratures
# ---------------------------------------------------------------------------


@jit
def _awh_quadrature_loop(xi, nodes, weights, beta_code, beta_param, eta_code, s,
                         c1, p1, k1, c2, p2, k2):
    acc = 0.0
    for i in range(nodes.shape[0]):
        w = nodes[i]
        b = _beta_scalar(beta_code, beta_param, w)
        shift = w if eta_code == ETA_IDENTITY else 0.0
        z = b * (xi - shift)
        v = _window_scalar(c1, p1, k1, z)
        if v == 0.0:
            continue
        v *= _window_scalar(c2, p2, k2, z)
        if v == 0.0:
            continue
        acc += weights[i] * v * abs(b) ** s
    return acc


def _awh_quadrature_numpy(xi, nodes, weights, beta_code, beta_param, eta_code, s,
                          c1, p1, k1, c2, p2, k2):
    b = _beta_numpy(beta_code, beta_param, nodes)
    shift = nodes if eta_code == ETA_IDENTITY else 0.0
    z = b * (xi - shift)
    v = _window_numpy(c1, p1, k1, z) * _window_numpy(c2, p2, k2, z)
    return float(np.sum(weights * v * np.abs(b) ** s))


def awh_quadrature(xi, nodes, weights, beta, eta_code, s, win1, win2):
    """Weighted sum of ``w1(z) * w2(z) * |beta|^s`` with ``z = beta(w) * (xi - eta(w))``.

    ``beta`` is ``(code, param)``; ``win1``/``win2`` are packed windows.
    """
    args = (float(xi), np.ascontiguousarray(nodes, dtype=np.float64),
            np.ascontiguousarray(weights, dtype=np.float64),
            int(beta[0]), float(beta[1]), int(eta_code), float(s)) + tuple(win1) + tuple(win2)
    if BACKEND == "numba":
        return float(_awh_quadrature_loop(*args))
    return _awh_quadrature_numpy(*args)


@jit
def _energy_quadrature_loop(xi_nodes, xi_weights, om_nodes, om_weights, beta_code, beta_param,
                            eta_code, s, cf, pf, kf, cp, pp, kp):
    fsq = np.empty(xi_nodes.shape[0])
    for j in range(xi_nodes.shape[0]):
        v = _window_scalar(cf, pf, kf, xi_nodes[j])
        fsq[j] = xi_weights[j] * v * v
    total = 0.0
    for i in range(om_nodes.shape[0]):
        w = om_nodes[i]
        b = _beta_scalar(beta_code, beta_param, w)
        shift = w if eta_code == ETA_IDENTITY else 0.0
        scale = om_weights[i] * abs(b) ** s
        inner = 0.0
        for j in range(xi_nodes.shape[0]):
            if fsq[j] == 0.0:
                continue
            v = _window_scalar(cp, pp, kp, b * (xi_nodes[j] - shift))
            inner += fsq[j] * v * v
        total += scale * inner
    return total


def _energy_quadrature_numpy(xi_nodes, xi_weights, om_nodes, om_weights, beta_code, beta_param,
                             eta_code, s, cf, pf, kf, cp, pp, kp, chunk=4096):
    fsq = xi_weights * _window_numpy(cf, pf, kf, xi_nodes) ** 2
    keep = fsq != 0.0
    fsq, xs = fsq[keep], xi_nodes[keep]
    total = 0.0
    for start in range(0, om_nodes.shape[0], chunk):
        w = om_nodes[start:start + chunk]
        b = _beta_numpy(beta_code, beta_param, w)
        shift = w if eta_code == ETA_IDENTITY else np.zeros_like(w)
        z = b[:, None] * (xs[None, :] - shift[:, None])
        v = _window_numpy(cp, pp, kp, z.ravel()).reshape(z.shape)
        inner = (v * v) @ fsq
        total += float(np.sum(om_weights[start:start + chunk] * np.abs(b) ** s * inner))
    return total


def energy_quadrature(xi_nodes, xi_weights, om_nodes, om_weights, beta, eta_code, s, fwin, pwin):
    """Tensor trapezoid sum of ``|f(xi)|^2 |psi(beta(w)(xi - eta(w)))|^2 |beta(w)|^s``."""
    args = (np.ascontiguousarray(xi_nodes, dtype=np.float64),
            np.ascontiguousarray(xi_weights, dtype=np.float64),
            np.ascontiguousarray(om_nodes, dtype=np.float64),
            np.ascontiguousarray(om_weights, dtype=np.float64),
            int(beta[0]), float(beta[1]), int(eta_code), float(s)) + tuple(fwin) + tuple(pwin)
    if BACKEND == "numba":
        return float(_energy_quadrature_loop(*args))
    return _energy_quadrature_numpy(*args)
