"""Real-line computations for affine Weyl-Heisenberg sections and dyadic wavelets.

Windows are given by closed-form descriptions of their Fourier transforms
(:class:`SpectralWindow`), real-valued and evaluable anywhere. Integrals over
the frequency-shift parameter use a composite trapezoid rule on an explicit
:class:`QuadratureGrid`; the one-dimensional weighted integrals of the
``s = 1``, ``beta = 1/(1+|w|)``, ``eta = w`` example use adaptive Simpson.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels as K
from .errors import DomainError, NumericalGuardError, SymbolSingular

SIMPSON_TOL = 1e-9
SIMPSON_MAX_DEPTH = 40
ENDPOINT_GUARD = 1e6
ENDPOINT_PROBE = 1e-9
LIMIT_STEP = 1e-4


class WaveletRangeWarning(RuntimeWarning):
    """The dyadic scale range may cut off nonzero terms of the wavelet symbol."""


# ---------------------------------------------------------------------------
# spectral windows
# ---------------------------------------------------------------------------


class SpectralWindow:
    """Real-valued closed-form function of frequency."""

    def pack(self):
        raise NotImplementedError

    def support(self) -> tuple:
        raise NotImplementedError

    def scaled(self, c: float) -> "SpectralWindow":
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    def __call__(self, xi):
        x = np.asarray(xi, dtype=np.float64)
        code, params, coeffs = self.pack()
        out = K.evaluate_window(code, params, coeffs, x.ravel()).reshape(x.shape)
        return float(out) if out.ndim == 0 else out

    @staticmethod
    def from_dict(spec: dict) -> "SpectralWindow":
        kind = spec.get("type")
        if kind == "piecewise_polynomial":
            return PiecewisePolynomial(spec["breakpoints"], spec["coefficients"])
        if kind == "hat":
            return Hat(spec["left"], spec["center"], spec["right"], spec.get("amplitude", 1.0))
        if kind == "gaussian":
            return Gaussian(spec["center"], spec["width"], spec.get("amplitude", 1.0))
        if kind == "indicator":
            return Indicator(spec["left"], spec["right"], spec.get("include_left", True),
                             spec.get("include_right", True), spec.get("amplitude", 1.0))
        raise ValueError(f"unknown window type {kind!r}")


@dataclass(frozen=True, eq=False)
class PiecewisePolynomial(SpectralWindow):
    """Polynomials in ``xi`` (ascending coefficients) on consecutive pieces.

    Pieces are half-open ``[b_i, b_{i+1})`` except the last, which is closed;
    the window is zero outside ``[b_0, b_n]``.
    """

    breakpoints: tuple
    coefficients: tuple

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        coeffs = tuple(tuple(float(c) for c in piece) for piece in self.coefficients)
        if len(bp) < 2 or any(b >= c for b, c in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing, at least two")
        if len(coeffs) != len(bp) - 1 or any(len(p) == 0 for p in coeffs):
            raise ValueError("need one non-empty coefficient list per piece")
        if not all(math.isfinite(b) for b in bp):
            raise ValueError("breakpoints must be finite")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "coefficients", coeffs)

    def pack(self):
        width = max(len(p) for p in self.coefficients)
        table = np.zeros((len(self.coefficients), width))
        for i, p in enumerate(self.coefficients):
            table[i, :len(p)] = p
        return K.WIN_PIECEWISE, np.array(self.breakpoints), table

    def support(self):
        return self.breakpoints[0], self.breakpoints[-1]

    def scaled(self, c):
        return PiecewisePolynomial(self.breakpoints,
                                   [[c * a for a in p] for p in self.coefficients])

    def to_dict(self):
        return {"type": "piecewise_polynomial", "breakpoints": list(self.breakpoints),
                "coefficients": [list(p) for p in self.coefficients]}


@dataclass(frozen=True)
class Hat(SpectralWindow):
    left: float
    center: float
    right: float
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.left < self.center < self.right:
            raise ValueError("hat needs left < center < right")

    def pack(self):
        return (K.WIN_HAT, np.array([self.left, self.center, self.right, self.amplitude], float),
                np.zeros((1, 1)))

    def support(self):
        return self.left, self.right

    def scaled(self, c):
        return Hat(self.left, self.center, self.right, c * self.amplitude)

    def to_dict(self):
        return {"type": "hat", "left": self.left, "center": self.center, "right": self.right,
                "amplitude": self.amplitude}


@dataclass(frozen=True)
class Gaussian(SpectralWindow):
    """``amplitude * exp(-(xi - center)^2 / (2 width^2))``."""

    center: float
    width: float
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("gaussian width must be positive")

    def pack(self):
        return K.WIN_GAUSSIAN, np.array([self.center, self.width, self.amplitude], float), \
            np.zeros((1, 1))

    def support(self):
        # exp(-0.5 * 40^2) underflows to zero
        return self.center - 40 * self.width, self.center + 40 * self.width

    def scaled(self, c):
        return Gaussian(self.center, self.width, c * self.amplitude)

    def to_dict(self):
        return {"type": "gaussian", "center": self.center, "width": self.width,
                "amplitude": self.amplitude}


@dataclass(frozen=True)
class Indicator(SpectralWindow):
    left: float
    right: float
    include_left: bool = True
    include_right: bool = True
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.left < self.right:
            raise ValueError("indicator needs left < right")

    def pack(self):
        return (K.WIN_INDICATOR,
                np.array([self.left, self.right, float(self.include_left),
                          float(self.include_right), self.amplitude], float),
                np.zeros((1, 1)))

    def support(self):
        return self.left, self.right

    def scaled(self, c):
        return Indicator(self.left, self.right, self.include_left, self.include_right,
                         c * self.amplitude)

    def to_dict(self):
        return {"type": "indicator", "left": self.left, "right": self.right,
                "include_left": self.include_left, "include_right": self.include_right,
                "amplitude": self.amplitude}


def ramp_down() -> PiecewisePolynomial:
    """``(1 - xi)`` on ``[-1, 1]``."""
    return PiecewisePolynomial((-1.0, 1.0), ((1.0, -1.0),))


def ramp_up() -> PiecewisePolynomial:
    """``(1 + xi)`` on ``[-1, 1]``."""
    return PiecewisePolynomial((-1.0, 1.0), ((1.0, 1.0),))


def example1_closed_form(xi):
    """Closed-form symbol of the ramp pair: ``3 - xi^2`` on ``[-1, 1]``, ``2`` outside."""
    x = np.asarray(xi, dtype=float)
    out = np.where(np.abs(x) <= 1.0, 3.0 - x * x, 2.0)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# section configuration and grids
# ---------------------------------------------------------------------------


_BETA_CODES = {
    "constant": K.BETA_CONSTANT,
    "identity": K.BETA_IDENTITY,
    "inverse_linear": K.BETA_INVERSE_LINEAR,
    "power_law": K.BETA_POWER_LAW,
}
_ETA_CODES = {"zero": K.ETA_ZERO, "identity": K.ETA_IDENTITY}


@dataclass(frozen=True)
class Beta:
    """Scale function of the section.

    ``constant`` (``c != 0``), ``identity`` (``w``), ``inverse_linear``
    (``1/(1+|w|)``) or ``power_law`` (``(1+|w|)^(-alpha)``, ``alpha`` in [0, 1]).
    """

    kind: str
    param: float = 0.0

    def __post_init__(self):
        if self.kind not in _BETA_CODES:
            raise ValueError(f"unknown beta kind {self.kind!r}")
        if self.kind == "constant" and self.param == 0:
            raise ValueError("constant beta must be nonzero")
        if self.kind == "power_law" and not 0.0 <= self.param <= 1.0:
            raise ValueError("power-law exponent must lie in [0, 1]")

    @classmethod
    def constant(cls, c: float) -> "Beta":
        return cls("constant", float(c))

    @classmethod
    def identity(cls) -> "Beta":
        return cls("identity")

    @classmethod
    def inverse_linear(cls) -> "Beta":
        return cls("inverse_linear")

    @classmethod
    def power_law(cls, alpha: float) -> "Beta":
        return cls("power_law", float(alpha))

    @property
    def vanishes_somewhere(self) -> bool:
        return self.kind == "identity"

    def packed(self):
        return _BETA_CODES[self.kind], float(self.param)

    def __call__(self, w):
        w = np.asarray(w, dtype=float)
        if self.kind == "constant":
            return np.full_like(w, self.param)
        if self.kind == "identity":
            return w.copy()
        if self.kind == "inverse_linear":
            return 1.0 / (1.0 + np.abs(w))
        return (1.0 + np.abs(w)) ** (-self.param)

    def to_dict(self):
        d = {"type": self.kind}
        if self.kind == "constant":
            d["value"] = self.param
        elif self.kind == "power_law":
            d["alpha"] = self.param
        return d

    @classmethod
    def from_dict(cls, spec) -> "Beta":
        if isinstance(spec, str):
            spec = {"type": spec}
        kind = spec.get("type")
        if kind == "constant":
            return cls.constant(spec["value"])
        if kind == "power_law":
            return cls.power_law(spec["alpha"])
        return cls(kind)


@dataclass(frozen=True)
class AwhConfig:
    """Section ``(x, eta(w), beta(w), 1)`` with measure ``|beta(w)|^(s-1) dx dw``."""

    beta: Beta
    eta: str = "identity"
    s: float = 1.0

    def __post_init__(self):
        if self.eta not in _ETA_CODES:
            raise ValueError(f"unknown eta {self.eta!r}")

    @classmethod
    def example(cls) -> "AwhConfig":
        """``beta = 1/(1+|w|)``, ``eta = w``, ``s = 1``."""
        return cls(Beta.inverse_linear(), "identity", 1.0)

    @property
    def eta_code(self) -> int:
        return _ETA_CODES[self.eta]

    def to_dict(self):
        return {"beta": self.beta.to_dict(), "eta": self.eta, "s": self.s}


@dataclass(frozen=True)
class QuadratureGrid:
    """Composite trapezoid rule with ``count`` equispaced nodes on ``[lo, hi]``."""

    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or not self.lo < self.hi:
            raise ValueError(f"grid needs finite lo < hi, got [{self.lo}, {self.hi}]")
        if int(self.count) != self.count or self.count < 2:
            raise ValueError("grid needs at least two nodes")
        object.__setattr__(self, "count", int(self.count))

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)

    @property
    def weights(self) -> np.ndarray:
        h = (self.hi - self.lo) / (self.count - 1)
        w = np.full(self.count, h)
        w[0] = w[-1] = h / 2
        return w

    def to_dict(self):
        return {"lo": self.lo, "hi": self.hi, "count": self.count}


# ---------------------------------------------------------------------------
# symbols of the section
# ---------------------------------------------------------------------------


def awh_symbol(config: AwhConfig, psi_hat: SpectralWindow, phi_hat: SpectralWindow,
               grid: QuadratureGrid, xi: float) -> float:
    """Trapezoid value of ``int psi^(z) phi^(z) |beta(w)|^s dw``, ``z = beta(w)(xi - eta(w))``."""
    nodes = grid.nodes
    if config.beta.vanishes_somewhere and np.any(config.beta(nodes) == 0.0):
        raise NumericalGuardError("quadrature grid samples a zero of beta")
    return K.awh_quadrature(xi, nodes, grid.weights, config.beta.packed(), config.eta_code,
                            config.s, psi_hat.pack(), phi_hat.pack())


def adaptive_simpson(fn, a: float, b: float, tol: float = SIMPSON_TOL,
                     max_depth: int = SIMPSON_MAX_DEPTH) -> float:
    """Adaptive Simpson quadrature with Richardson correction."""
    if a == b:
        return 0.0

    def simpson(fa, fm, fb, lo, hi):
        return (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(lo, hi, fa, fm, fb, whole, eps, depth):
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = fn(lm), fn(rm)
        left = simpson(fa, flm, fm, lo, mid)
        right = simpson(fm, frm, fb, mid, hi)
        delta = left + right - whole
        if depth >= max_depth or abs(delta) <= 15.0 * eps:
            return left + right + delta / 15.0
        return (recurse(lo, mid, fa, flm, fm, left, eps / 2.0, depth + 1)
                + recurse(mid, hi, fm, frm, fb, right, eps / 2.0, depth + 1))

    fa, fb, fm = fn(a), fn(b), fn(0.5 * (a + b))
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 0)


def _product(psi_hat, phi_hat):
    return lambda z: psi_hat(z) * phi_hat(z)


def _weighted(prod, pole: float):
    """``prod(z) / |z - pole|`` with the one-sided limit at the pole itself."""

    def g(z):
        d = abs(z - pole)
        if d == 0.0:
            # second-order one-sided difference quotient
            sign = 1.0 if pole < 0 else -1.0
            h = LIMIT_STEP
            return 2.0 * prod(z + sign * h) / h - prod(z + 2.0 * sign * h) / (2.0 * h)
        return prod(z) / d

    return g


def _check_endpoint(prod, pole: float, guard: float):
    inward = pole + ENDPOINT_PROBE if pole < 0 else pole - ENDPOINT_PROBE
    ratio = abs(prod(inward)) / ENDPOINT_PROBE
    if not ratio <= guard:
        raise NumericalGuardError(
            f"integrand near {pole:+g} reaches {ratio:.3e} (guard {guard:.1e}); "
            "the window product does not vanish there")


def example1_symbol_exact(psi_hat: SpectralWindow, phi_hat: SpectralWindow, xi: float,
                          tol: float = SIMPSON_TOL, guard: float = ENDPOINT_GUARD) -> float:
    """Two-term weighted-integral form of the ``s = 1`` example symbol.

    ``int_{-1}^{xi} p(z) dz/(1+z) + int_{xi}^{1} p(z) dz/(1-z)`` with
    ``p = psi^ phi^``; for ``|xi| > 1`` the limits clamp to ``[-1, 1]``.
    """
    lo_a, hi_a = psi_hat.support()
    lo_b, hi_b = phi_hat.support()
    lo, hi = max(lo_a, lo_b), min(hi_a, hi_b)
    if lo < hi and (lo < -1.0 or hi > 1.0):
        raise DomainError("the window product must vanish outside [-1, 1]")
    prod = _product(psi_hat, phi_hat)
    x = min(max(float(xi), -1.0), 1.0)
    first = second = 0.0
    if x > -1.0:
        _check_endpoint(prod, -1.0, guard)
        first = adaptive_simpson(_weighted(prod, -1.0), -1.0, x, tol)
    if x < 1.0:
        _check_endpoint(prod, 1.0, guard)
        second = adaptive_simpson(_weighted(prod, 1.0), x, 1.0, tol)
    return first + second


def symbol_derivative_check(psi_hat: SpectralWindow, phi_hat: SpectralWindow, xi: float,
                            h: float = 1e-4) -> tuple:
    """Central difference of the exact symbol next to ``2 xi/(xi^2 - 1) psi^(xi) phi^(xi)``."""
    if not -1.0 < xi < 1.0:
        raise DomainError("xi must lie in (-1, 1)")
    if not h > 0 or not (-1.0 < xi - h and xi + h < 1.0):
        raise DomainError("xi +- h must stay inside (-1, 1)")
    fd = (example1_symbol_exact(psi_hat, phi_hat, xi + h)
          - example1_symbol_exact(psi_hat, phi_hat, xi - h)) / (2.0 * h)
    analytic = 2.0 * xi / (xi * xi - 1.0) * psi_hat(xi) * phi_hat(xi)
    return fd, analytic


# ---------------------------------------------------------------------------
# non-Bessel energy
# ---------------------------------------------------------------------------


def _omega_rule(cap: float, density: int):
    n = max(1, int(math.ceil(cap * density - 1e-9)))
    right = np.linspace(0.0, cap, n + 1)
    h = cap / n
    w_right = np.full(n + 1, h)
    w_right[0] = w_right[-1] = h / 2
    nodes = np.concatenate([-right[:0:-1], right])
    weights = np.concatenate([w_right[:0:-1], w_right])
    weights[n] = h  # both halves meet at zero
    return nodes, weights


def truncated_analysis_energy(psi_hat: SpectralWindow, f_hat: SpectralWindow,
                              omega_cap: float, xi_grid: QuadratureGrid,
                              omega_density: int = 4,
                              config: Optional[AwhConfig] = None) -> float:
    """``int_{|w| <= cap} int |f^(xi)|^2 |psi^(beta(w)(xi - eta(w)))|^2 |beta(w)|^s dxi dw``.

    The w-rule uses ``ceil(cap * omega_density)`` equal intervals on each
    half-line; for caps that are multiples of ``1/omega_density`` the node
    sets are nested, so the energy is nondecreasing in the cap.
    """
    if omega_cap < 0:
        raise DomainError("omega_cap must be nonnegative")
    if int(omega_density) != omega_density or omega_density < 1:
        raise DomainError("omega_density must be a positive integer")
    if omega_cap == 0:
        return 0.0
    config = config if config is not None else AwhConfig.example()
    nodes, weights = _omega_rule(float(omega_cap), int(omega_density))
    if config.beta.vanishes_somewhere and np.any(config.beta(nodes) == 0.0):
        raise NumericalGuardError("quadrature grid samples a zero of beta")
    return K.energy_quadrature(xi_grid.nodes, xi_grid.weights, nodes, weights,
                               config.beta.packed(), config.eta_code, config.s,
                               f_hat.pack(), psi_hat.pack())


@dataclass(frozen=True, eq=False)
class EnergySeries:
    omega_caps: np.ndarray
    energies: np.ndarray

    def __post_init__(self):
        caps = np.asarray(self.omega_caps, dtype=float)
        en = np.asarray(self.energies, dtype=float)
        if caps.shape != en.shape or np.any(np.diff(caps) <= 0):
            raise ValueError("caps must be strictly increasing, one energy per cap")
        if np.any(en < 0) or np.any(np.diff(en) < 0):
            raise ValueError("energies must be nonnegative and nondecreasing")
        object.__setattr__(self, "omega_caps", caps)
        object.__setattr__(self, "energies", en)

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.energies)


def energy_series(psi_hat: SpectralWindow, f_hat: SpectralWindow, caps: Sequence[float],
                  xi_grid: QuadratureGrid, omega_density: int = 4,
                  config: Optional[AwhConfig] = None) -> EnergySeries:
    energies = [truncated_analysis_energy(psi_hat, f_hat, c, xi_grid, omega_density, config)
                for c in caps]
    if np.any(np.diff(energies) < 0):
        raise NumericalGuardError("truncated energies decreased; use caps on the w-grid lattice")
    return EnergySeries(np.asarray(caps, dtype=float), np.asarray(energies))


# ---------------------------------------------------------------------------
# lambda-section constant
# ---------------------------------------------------------------------------


def lambda_section_constant(psi_hat: SpectralWindow, phi_hat: SpectralWindow, lam: float,
                            grid: QuadratureGrid, guard_halfwidth: float = 1e-3,
                            guard_samples: int = 201) -> float:
    """Trapezoid value of ``int psi^(xi) phi^(xi) dxi / |xi + lam|``.

    Both windows must vanish on ``[-lam - guard_halfwidth, -lam + guard_halfwidth]``.
    """
    probe = np.linspace(-lam - guard_halfwidth, -lam + guard_halfwidth, guard_samples)
    for name, win in (("psi", psi_hat), ("phi", phi_hat)):
        if np.any(win(probe) != 0.0):
            raise NumericalGuardError(f"{name} window is nonzero near -lambda = {-lam:g}")
    xs = grid.nodes
    num = psi_hat(xs) * phi_hat(xs)
    den = np.abs(xs + lam)
    vals = np.divide(num, den, out=np.zeros_like(num), where=num != 0.0)
    return float(np.sum(grid.weights * vals))


# ---------------------------------------------------------------------------
# semi-discrete dyadic wavelets
# ---------------------------------------------------------------------------


def dyadic_range(psi_hat: SpectralWindow, xi) -> tuple:
    """Smallest ``(j_min, j_max)`` so every nonzero ``psi^(2^j xi)`` is included.

    Windows whose support touches zero need infinitely many scales; the
    range is then capped at ``+-60`` below the support and a warning is issued.
    """
    x = np.abs(np.atleast_1d(np.asarray(xi, dtype=float)))
    if np.any(x == 0):
        raise DomainError("the wavelet symbol is undefined at xi = 0")
    lo, hi = psi_hat.support()
    reach = max(abs(lo), abs(hi))
    near = 0.0 if lo <= 0.0 <= hi else min(abs(lo), abs(hi))
    j_max = int(math.ceil(math.log2(reach / x.min()))) + 1
    if near == 0.0:
        warnings.warn("window support touches zero; scale range truncated", WaveletRangeWarning,
                      stacklevel=2)
        j_min = j_max - 120
    else:
        j_min = int(math.floor(math.log2(near / x.max()))) - 1
    return j_min, j_max


def _range_adequate(psi_hat, j_min, j_max, x) -> bool:
    lo, hi = psi_hat.support()
    reach = max(abs(lo), abs(hi))
    near = 0.0 if lo <= 0.0 <= hi else min(abs(lo), abs(hi))
    top_ok = np.all(2.0 ** (j_max + 1) * x > reach)
    bottom_ok = near > 0.0 and np.all(2.0 ** (j_min - 1) * x < near)
    return bool(top_ok and bottom_ok)


def wavelet_symbol(psi_hat: SpectralWindow, j_min: int, j_max: int, xi):
    """``sum_{j=j_min}^{j_max} |psi^(2^j xi)|^2``; scalar or array ``xi``."""
    x = np.asarray(xi, dtype=float)
    if np.any(x == 0):
        raise DomainError("the wavelet symbol is undefined at xi = 0")
    if j_max < j_min:
        raise DomainError("empty scale range")
    if not _range_adequate(psi_hat, j_min, j_max, np.abs(x.ravel())):
        warnings.warn(f"scale range [{j_min}, {j_max}] may miss nonzero terms",
                      WaveletRangeWarning, stacklevel=2)
    flat = x.ravel()
    acc = np.zeros_like(flat)
    for j in range(j_min, j_max + 1):
        acc += psi_hat(math.ldexp(1.0, j) * flat) ** 2
    out = acc.reshape(x.shape)
    return float(out) if out.ndim == 0 else out


def wavelet_dual_commutation(psi_hat: SpectralWindow, j: int, xi_grid: QuadratureGrid,
                             scale_range: Optional[tuple] = None,
                             singular_rtol: float = 1e-8) -> float:
    """Largest gap between the dual of the dilated window and the dilated dual.

    Route one divides ``2^(j/2) psi^(2^-j xi)`` by ``m(xi)``; route two divides
    it by ``m(2^-j xi)``. The two agree because the symbol is dyadically
    periodic.
    """
    xs = xi_grid.nodes
    if np.any(xs == 0):
        raise DomainError("the wavelet symbol is undefined at xi = 0")
    shrunk = math.ldexp(1.0, -j) * xs
    if scale_range is None:
        scale_range = dyadic_range(psi_hat, np.concatenate([xs, shrunk]))
    j_min, j_max = scale_range
    m = wavelet_symbol(psi_hat, j_min, j_max, xs)
    m_shrunk = wavelet_symbol(psi_hat, j_min, j_max, shrunk)
    lower = min(m.min(), m_shrunk.min())
    if not lower > singular_rtol * max(m.max(), m_shrunk.max()):
        raise SymbolSingular(f"wavelet symbol lower bound {lower:.3e} is singular", lower=lower)
    dilated = 2.0 ** (j / 2.0) * psi_hat(shrunk)
    route1 = dilated / m
    route2 = dilated / m_shrunk
    return float(np.max(np.abs(route1 - route2)))


@dataclass(frozen=True)
class AdmissibilityReport:
    xi0: float
    inf_on_octave: float
    decay_constant: float
    lower_condition: bool
    decay_condition: bool


def wavelet_admissibility(psi_hat: SpectralWindow, xi0: float,
                          xi_grid: Optional[QuadratureGrid] = None,
                          octave_samples: int = 2001) -> AdmissibilityReport:
    """Check the two sufficient conditions for a bounded, invertible dyadic symbol.

    (i) ``inf_{a in [1, 2]} |psi^(a xi0)| > 0``; (ii) ``|psi^(xi)|^2 <= C|xi|/(1+|xi|)^2``,
    with ``C`` found as the maximum of the ratio over ``xi_grid``. Condition (ii)
    is reported as failing when the maximum sits on the grid's end nodes or on
    the nodes next to ``xi = 0``, where the ratio may keep growing.
    """
    if xi0 == 0:
        raise DomainError("xi0 must be nonzero")
    a = np.linspace(1.0, 2.0, octave_samples)
    inf_val = float(np.min(np.abs(psi_hat(a * xi0))))
    if xi_grid is None:
        lo, hi = psi_hat.support()
        reach = max(abs(lo), abs(hi))
        xi_grid = QuadratureGrid(-2 * reach, 2 * reach, 40001)
    xs = xi_grid.nodes
    xs = xs[xs != 0]
    ratio = np.abs(psi_hat(xs)) ** 2 * (1 + np.abs(xs)) ** 2 / np.abs(xs)
    i = int(np.argmax(ratio))
    C = float(ratio[i])
    edges = {0, len(xs) - 1}
    pos, neg = np.flatnonzero(xs > 0), np.flatnonzero(xs < 0)
    if pos.size:
        edges.add(int(pos[0]))
    if neg.size:
        edges.add(int(neg[-1]))
    decay_ok = C == 0.0 or bool(np.isfinite(C) and all(ratio[e] < C for e in edges))
    return AdmissibilityReport(float(xi0), inf_val, C, inf_val > 0.0, decay_ok)
