"""Nonstationary Gabor systems on finite abelian groups.

A system is a weighted window family ``{(y, mu_y, psi_y)}`` together with a
kind: translation-invariant systems use the atoms ``T_x psi_y`` (x in G),
character-invariant systems the atoms ``M_k psi_y`` (k in the dual group).
Coefficient arrays are indexed ``[point, label]``.

The measure on the index set is ``mu_y`` on the label axis times the Haar
measure of the point axis: counting measure for translation systems, weight
``1/|G|`` per character for character systems. With this choice the
resolution operator of a pair is exactly the Fourier (resp. pointwise)
multiplier with symbol ``sum_y mu_y conj(psi_y^) phi_y^`` (resp.
``sum_y mu_y conj(psi_y) phi_y``).
"""

from __future__ import annotations

import dataclasses
import enum
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import (
    GroupMismatchError,
    InvalidFamilyError,
    InvalidReindexError,
    OracleCapExceeded,
    SideError,
    SymbolSingular,
)
from .lca import FiniteLcaGroup, Side, Signal, delta, modulate, translate

DEFAULT_SINGULAR_RTOL = 1e-8
DEFAULT_TIGHT_RTOL = 1e-10
DEFAULT_SELF_ADJOINT_TOL = 1e-10
DEFAULT_ORACLE_CAP = 256


class Kind(str, enum.Enum):
    TRANSLATION = "translation"
    CHARACTER = "character"


def oracle_cap() -> int:
    """Largest |G| for dense oracle assembly (env ``NSGKIT_ORACLE_CAP``)."""
    raw = os.environ.get("NSGKIT_ORACLE_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_ORACLE_CAP
    return int(raw)


def _fft_rows(group: FiniteLcaGroup, rows: np.ndarray) -> np.ndarray:
    axes = tuple(range(1, group.rank + 1))
    return np.fft.fftn(rows.reshape((-1,) + group.shape), axes=axes).reshape(rows.shape)


def _ifft_rows(group: FiniteLcaGroup, rows: np.ndarray) -> np.ndarray:
    axes = tuple(range(1, group.rank + 1))
    return np.fft.ifftn(rows.reshape((-1,) + group.shape), axes=axes).reshape(rows.shape)


# ---------------------------------------------------------------------------
# families and systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WindowFamily:
    """Finite weighted window family over one group.

    ``windows`` has shape ``(|Y|, |G|)``; row ``i`` belongs to ``labels[i]``
    with weight ``weights[i]``.
    """

    group: FiniteLcaGroup
    labels: tuple
    weights: np.ndarray
    windows: np.ndarray

    def __post_init__(self):
        labels = tuple(self.labels)
        weights = np.array(self.weights, dtype=np.float64).ravel()
        windows = np.array(self.windows, dtype=np.complex128)
        if windows.ndim == 1:
            windows = windows[None, :]
        if not labels:
            raise InvalidFamilyError("a window family needs at least one entry")
        if len(set(labels)) != len(labels):
            raise InvalidFamilyError("labels must be unique")
        if weights.shape[0] != len(labels) or windows.shape[0] != len(labels):
            raise InvalidFamilyError(
                f"{len(labels)} labels, {weights.shape[0]} weights, {windows.shape[0]} windows")
        if windows.shape[1] != self.group.cardinality:
            raise GroupMismatchError(
                f"windows have {windows.shape[1]} samples, group has {self.group.cardinality}")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
            raise InvalidFamilyError("weights must be strictly positive and finite")
        if not np.all(np.isfinite(windows)):
            raise InvalidFamilyError("window values must be finite")
        weights.setflags(write=False)
        windows.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "windows", windows)

    @classmethod
    def from_entries(cls, group: FiniteLcaGroup, entries: Iterable) -> "WindowFamily":
        """Build from ``(label, weight, window)`` triples; windows may be Signals or arrays."""
        labels, weights, windows = [], [], []
        for label, weight, window in entries:
            if isinstance(window, Signal):
                if window.group != group:
                    raise GroupMismatchError(f"window for {label!r} lives on {window.group!r}")
                if window.side is not Side.GROUP:
                    raise SideError(f"window for {label!r} must be group-side")
                window = window.values
            labels.append(label)
            weights.append(weight)
            windows.append(np.asarray(window, dtype=np.complex128).ravel())
        if not labels:
            raise InvalidFamilyError("a window family needs at least one entry")
        return cls(group, tuple(labels), np.array(weights, dtype=float), np.vstack(windows))

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        for i, label in enumerate(self.labels):
            yield label, float(self.weights[i]), self.window(i)

    def window(self, i: int) -> Signal:
        return Signal(self.group, self.windows[i])

    def index_of(self, label: Hashable) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown label {label!r}") from None

    @cached_property
    def spectra(self) -> np.ndarray:
        """Fourier transforms of the windows, shape ``(|Y|, |G|)``."""
        out = _fft_rows(self.group, self.windows)
        out.setflags(write=False)
        return out

    def with_windows(self, windows: np.ndarray) -> "WindowFamily":
        return WindowFamily(self.group, self.labels, self.weights, windows)

    def same_structure(self, other: "WindowFamily") -> bool:
        return (self.group == other.group and self.labels == other.labels
                and np.array_equal(self.weights, other.weights))

    def equals(self, other: "WindowFamily") -> bool:
        return self.same_structure(other) and np.array_equal(self.windows, other.windows)


@dataclass(frozen=True, eq=False)
class NsgSystem:
    kind: Kind
    family: WindowFamily

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))

    @property
    def group(self) -> FiniteLcaGroup:
        return self.family.group

    @property
    def point_side(self) -> Side:
        return Side.GROUP if self.kind is Kind.TRANSLATION else Side.DUAL

    @property
    def point_weight(self) -> float:
        return point_weight(self.kind, self.group)

    def atom(self, point, label) -> Signal:
        """``T_x psi_y`` or ``M_k psi_y``."""
        w = self.family.window(self.family.index_of(label))
        return translate(point, w) if self.kind is Kind.TRANSLATION else modulate(point, w)


def point_weight(kind: Kind, group: FiniteLcaGroup) -> float:
    return 1.0 if Kind(kind) is Kind.TRANSLATION else 1.0 / group.cardinality


@dataclass(frozen=True, eq=False)
class PairSystem:
    """An analysis family and a synthesis family over one weighted index set."""

    analysis: WindowFamily
    synthesis: WindowFamily
    kind: Kind = Kind.TRANSLATION

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not self.analysis.same_structure(self.synthesis):
            raise InvalidFamilyError(
                "analysis and synthesis families must share group, labels and weights")

    @classmethod
    def frame(cls, family: WindowFamily, kind: Kind = Kind.TRANSLATION) -> "PairSystem":
        return cls(family, family, kind)

    @property
    def group(self) -> FiniteLcaGroup:
        return self.analysis.group

    @property
    def analysis_system(self) -> NsgSystem:
        return NsgSystem(self.kind, self.analysis)

    @property
    def synthesis_system(self) -> NsgSystem:
        return NsgSystem(self.kind, self.synthesis)

    @property
    def is_frame_pair(self) -> bool:
        """True when both families carry identical windows."""
        return self.analysis is self.synthesis or self.analysis.equals(self.synthesis)

    def swapped(self) -> "PairSystem":
        return PairSystem(self.synthesis, self.analysis, self.kind)

    def flat_index(self, point, label) -> int:
        return self.group.encode(point) * len(self.analysis) + self.analysis.index_of(label)


@dataclass(frozen=True, eq=False)
class CoefficientArray:
    """Coefficients indexed ``[point, label]``."""

    values: np.ndarray
    kind: Kind
    labels: tuple = field(default=())

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.complex128)
        if vals.ndim != 2:
            raise GroupMismatchError(f"coefficient array must be 2-D, got shape {vals.shape}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def shape(self):
        return self.values.shape


def _check_signal(system_group: FiniteLcaGroup, f: Signal):
    if f.group != system_group:
        raise GroupMismatchError(f"signal on {f.group!r}, system on {system_group!r}")
    if f.side is not Side.GROUP:
        raise SideError("the transform acts on group-side signals")


def _check_coefficients(system: NsgSystem, F: CoefficientArray):
    expected = (system.group.cardinality, len(system.family))
    if F.values.shape != expected:
        raise GroupMismatchError(f"coefficient shape {F.values.shape}, system expects {expected}")
    if F.kind is not system.kind:
        raise GroupMismatchError(f"{F.kind.value} coefficients for a {system.kind.value} system")


# ---------------------------------------------------------------------------
# explicit atoms (oracle route and equivalence transforms)
# ---------------------------------------------------------------------------


def _difference_table(group: FiniteLcaGroup) -> np.ndarray:
    # table[x, t] = flat(t - x)
    res = group.residues
    diff = np.mod(res[None, :, :] - res[:, None, :], np.array(group.orders))
    return np.ravel_multi_index(tuple(np.moveaxis(diff, -1, 0)), group.orders)


def system_atoms(system: NsgSystem) -> np.ndarray:
    """All atoms as rows, flat index ``point * |Y| + label``; shape ``(|G||Y|, |G|)``."""
    g, fam = system.group, system.family
    n, ny = g.cardinality, len(fam)
    if system.kind is Kind.TRANSLATION:
        table = _difference_table(g)
        # atoms[x, y, t] = psi_y(t - x)
        atoms = np.transpose(fam.windows[:, table], (1, 0, 2))
    else:
        chars = g.character_table()
        atoms = chars[:, None, :] * fam.windows[None, :, :]
    return np.ascontiguousarray(atoms.reshape(n * ny, n))


def system_index_weights(system: NsgSystem) -> np.ndarray:
    n = system.group.cardinality
    return np.tile(system.family.weights, n) * system.point_weight


@dataclass(frozen=True, eq=False)
class AtomicPair:
    """A pair of explicitly listed atom systems over a finite weighted index set.

    This is the general form reached by equivalence transforms, which in
    general destroy the translation or character structure.
    """

    group: FiniteLcaGroup
    analysis_atoms: np.ndarray
    synthesis_atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        a = np.array(self.analysis_atoms, dtype=np.complex128)
        s = np.array(self.synthesis_atoms, dtype=np.complex128)
        w = np.array(self.weights, dtype=np.float64).ravel()
        if a.shape != s.shape or a.ndim != 2 or a.shape[1] != self.group.cardinality:
            raise GroupMismatchError(f"atom arrays {a.shape} / {s.shape} do not fit {self.group!r}")
        if w.shape[0] != a.shape[0]:
            raise InvalidFamilyError(f"{w.shape[0]} weights for {a.shape[0]} atoms")
        if np.any(w <= 0) or not np.all(np.isfinite(w)):
            raise InvalidFamilyError("weights must be strictly positive and finite")
        for arr in (a, s, w):
            arr.setflags(write=False)
        object.__setattr__(self, "analysis_atoms", a)
        object.__setattr__(self, "synthesis_atoms", s)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return self.weights.shape[0]


def to_atomic(pair: PairSystem) -> AtomicPair:
    return AtomicPair(pair.group, system_atoms(pair.analysis_system),
                      system_atoms(pair.synthesis_system),
                      system_index_weights(pair.analysis_system))


# ---------------------------------------------------------------------------
# analysis and synthesis
# ---------------------------------------------------------------------------


def analyze(system: NsgSystem, f: Signal, method: str = "fast") -> CoefficientArray:
    """Coefficients ``<f, T_x psi_y>`` (or ``<f, M_k psi_y>``).

    The fast route convolves with the involuted windows through the FFT; the
    direct route takes every inner product explicitly.
    """
    _check_signal(system.group, f)
    g, fam = system.group, system.family
    if method == "direct":
        c = _kernels.atom_coefficients(f.values, system_atoms(system))
        values = c.reshape(g.cardinality, len(fam))
    elif method != "fast":
        raise ValueError(f"unknown method {method!r}")
    elif system.kind is Kind.TRANSLATION:
        fh = np.fft.fftn(f.values.reshape(g.shape)).ravel()
        values = _ifft_rows(g, fh[None, :] * np.conj(fam.spectra)).T
    else:
        values = _fft_rows(g, f.values[None, :] * np.conj(fam.windows)).T
    return CoefficientArray(values, system.kind, fam.labels)


def synthesize(system: NsgSystem, F: CoefficientArray, method: str = "fast") -> Signal:
    """``sum_y mu_y sum_x w_x F(x, y) Phi(x, y)`` with ``w_x`` the point Haar weight."""
    _check_coefficients(system, F)
    g, fam = system.group, system.family
    if method == "direct":
        out = _kernels.atom_synthesis(F.values.ravel(), system_index_weights(system),
                                      system_atoms(system))
    elif method != "fast":
        raise ValueError(f"unknown method {method!r}")
    elif system.kind is Kind.TRANSLATION:
        Fh = _fft_rows(g, np.ascontiguousarray(F.values.T))
        spec = np.sum(fam.weights[:, None] * Fh * fam.spectra, axis=0)
        out = np.fft.ifftn(spec.reshape(g.shape)).ravel()
    else:
        # (1/|G|) sum_k F(k, y) chi_k(x) is exactly the inverse FFT
        inv = _ifft_rows(g, np.ascontiguousarray(F.values.T))
        out = np.sum(fam.weights[:, None] * fam.windows * inv, axis=0)
    return Signal(g, out)


def coefficient_energy(system: NsgSystem, F: CoefficientArray) -> float:
    """Weighted energy ``sum_y mu_y sum_x w_x |F(x, y)|^2``."""
    _check_coefficients(system, F)
    return float(system.point_weight * np.sum(np.abs(F.values) ** 2 @ system.family.weights))


# ---------------------------------------------------------------------------
# symbols and diagnostics
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SymbolReport:
    """Multiplier ``m`` of a pair with its bounds and flags.

    ``A``/``B`` are ``min|m|``/``max|m|``; ``C`` is the L1-type bound
    ``max sum_y mu_y |psi_y^ phi_y^|``. ``m`` lives on the dual group for
    translation systems and on the group for character systems.
    """

    m: np.ndarray
    side: Side
    kind: Kind
    A: float
    B: float
    C: float
    singular_tol: float
    tight_rtol: float
    self_adjoint_tol: float
    is_reproducing_pair: bool
    is_self_adjoint_positive: bool
    is_tight: bool
    is_frame: Optional[bool] = None
    bessel_bounds: Optional[tuple] = None

    def tolerances(self) -> dict:
        return {"singular_tol": self.singular_tol, "tight_rtol": self.tight_rtol,
                "self_adjoint_tol": self.self_adjoint_tol}


def _symbol_arrays(pair: PairSystem):
    a, s = pair.analysis, pair.synthesis
    if pair.kind is Kind.TRANSLATION:
        pa, ps = a.spectra, s.spectra
    else:
        pa, ps = a.windows, s.windows
    w = a.weights[:, None]
    m = np.sum(w * np.conj(pa) * ps, axis=0)
    c = np.sum(w * np.abs(pa * ps), axis=0)
    return m, c


def symbol(pair: PairSystem, singular_rtol: float = DEFAULT_SINGULAR_RTOL,
           tight_rtol: float = DEFAULT_TIGHT_RTOL,
           self_adjoint_tol: float = DEFAULT_SELF_ADJOINT_TOL) -> SymbolReport:
    """Symbol ``m = sum_y mu_y conj(psi_y^) phi_y^`` with bounds and flags."""
    m, c = _symbol_arrays(pair)
    m.setflags(write=False)
    mag = np.abs(m)
    A, B, C = float(mag.min()), float(mag.max()), float(c.max())
    sing = singular_rtol * B
    sa_scale = self_adjoint_tol * max(B, np.finfo(float).tiny)
    return SymbolReport(
        m=m,
        side=Side.DUAL if pair.kind is Kind.TRANSLATION else Side.GROUP,
        kind=pair.kind,
        A=A, B=B, C=C,
        singular_tol=sing,
        tight_rtol=tight_rtol,
        self_adjoint_tol=self_adjoint_tol,
        is_reproducing_pair=bool(A > sing),
        is_self_adjoint_positive=bool(np.max(np.abs(m.imag)) <= sa_scale
                                      and np.min(m.real) >= -sa_scale),
        is_tight=bool(B - A <= tight_rtol * B),
    )


def diagnose(pair: PairSystem, singular_rtol: float = DEFAULT_SINGULAR_RTOL,
             tight_rtol: float = DEFAULT_TIGHT_RTOL,
             self_adjoint_tol: float = DEFAULT_SELF_ADJOINT_TOL) -> SymbolReport:
    """:func:`symbol` plus the frame verdict and the Bessel bounds of each family.

    For ``Psi == Phi`` the frame flag is set iff the pair is reproducing; the
    bounds ``A, B`` are then frame bounds. Finite families are always Bessel,
    with bound ``max_k sum_y mu_y |psi_y^(k)|^2``.
    """
    rep = symbol(pair, singular_rtol, tight_rtol, self_adjoint_tol)
    bounds = []
    for fam in (pair.analysis, pair.synthesis):
        own, _ = _symbol_arrays(PairSystem(fam, fam, pair.kind))
        bounds.append(float(np.max(own.real)))
    frame = rep.is_reproducing_pair if pair.is_frame_pair else None
    return dataclasses.replace(rep, is_frame=frame, bessel_bounds=tuple(bounds))


# ---------------------------------------------------------------------------
# resolution operators
# ---------------------------------------------------------------------------


def resolution_direct(pair, f: Signal, method: str = "fast") -> Signal:
    """``S f = D_Phi C_Psi f``; the oracle for :func:`resolution_fast`.

    Accepts a :class:`PairSystem` or an :class:`AtomicPair`.
    """
    if isinstance(pair, AtomicPair):
        _check_signal(pair.group, f)
        c = _kernels.atom_coefficients(f.values, pair.analysis_atoms)
        return Signal(pair.group, _kernels.atom_synthesis(c, pair.weights, pair.synthesis_atoms))
    F = analyze(pair.analysis_system, f, method)
    return synthesize(pair.synthesis_system, F, method)


def _apply_multiplier(pair: PairSystem, m: np.ndarray, f: Signal) -> Signal:
    _check_signal(pair.group, f)
    g = pair.group
    if pair.kind is Kind.TRANSLATION:
        fh = np.fft.fftn(f.values.reshape(g.shape)).ravel()
        return Signal(g, np.fft.ifftn((m * fh).reshape(g.shape)).ravel())
    return Signal(g, m * f.values)


def resolution_fast(pair: PairSystem, f: Signal, report: Optional[SymbolReport] = None) -> Signal:
    """Apply the resolution operator as a multiplier with the pair's symbol."""
    rep = report if report is not None else symbol(pair)
    return _apply_multiplier(pair, rep.m, f)


def require_reproducing(rep: SymbolReport):
    if not rep.is_reproducing_pair:
        raise SymbolSingular(
            f"symbol lower bound {rep.A:.3e} <= singular tolerance {rep.singular_tol:.3e}",
            lower=rep.A, upper=rep.B)


def inverse_resolution(pair: PairSystem, f: Signal, report: Optional[SymbolReport] = None,
                       singular_rtol: float = DEFAULT_SINGULAR_RTOL) -> Signal:
    """Apply the multiplier with symbol ``1/m``.

    Raises :class:`SymbolSingular` when the pair is not reproducing.
    """
    rep = report if report is not None else symbol(pair, singular_rtol)
    require_reproducing(rep)
    return _apply_multiplier(pair, 1.0 / rep.m, f)


def reconstruct(pair: PairSystem, F: CoefficientArray, report: Optional[SymbolReport] = None,
                singular_rtol: float = DEFAULT_SINGULAR_RTOL) -> Signal:
    """``S^{-1} D_Phi F``; recovers ``f`` from ``F = C_Psi f``.

    Defined for every coefficient array, inside the analysis range or not.
    """
    rep = report if report is not None else symbol(pair, singular_rtol)
    require_reproducing(rep)
    return inverse_resolution(pair, synthesize(pair.synthesis_system, F), rep)


def canonical_dual(family: WindowFamily, kind: Kind = Kind.TRANSLATION,
                   singular_rtol: float = DEFAULT_SINGULAR_RTOL) -> WindowFamily:
    """Windows ``S_Psi^{-1} psi_y``, again a system of the same kind.

    For translation systems this is ``F^{-1}(psi_y^ / m_Psi)``; for character
    systems ``psi_y / m_Psi``.
    """
    kind = Kind(kind)
    rep = symbol(PairSystem(family, family, kind), singular_rtol)
    require_reproducing(rep)
    if kind is Kind.TRANSLATION:
        windows = _ifft_rows(family.group, family.spectra / rep.m[None, :])
    else:
        windows = family.windows / rep.m[None, :]
    return family.with_windows(windows)


# ---------------------------------------------------------------------------
# reproducing kernel
# ---------------------------------------------------------------------------


def reproducing_kernel(pair: PairSystem, p: tuple, q: tuple,
                       report: Optional[SymbolReport] = None) -> complex:
    """``R(p, q) = <S^{-1} Phi(q), Psi(p)>`` for index points ``(point, label)``."""
    rep = report if report is not None else symbol(pair)
    require_reproducing(rep)
    target = inverse_resolution(pair, pair.synthesis_system.atom(*q), rep)
    psi_p = pair.analysis_system.atom(*p)
    return complex(np.vdot(psi_p.values, target.values))


def kernel_apply(pair: PairSystem, F: CoefficientArray,
                 report: Optional[SymbolReport] = None) -> CoefficientArray:
    """``(R F)(p) = sum_q w_q R(p, q) F(q)``, evaluated as ``C_Psi S^{-1} D_Phi F``.

    Fixes exactly the arrays in the range of the analysis operator.
    """
    rep = report if report is not None else symbol(pair)
    return analyze(pair.analysis_system, reconstruct(pair, F, rep))


def kernel_matrix(pair: PairSystem, report: Optional[SymbolReport] = None) -> np.ndarray:
    """Dense kernel ``R[p, q]`` in flat index order ``point * |Y| + label`` (oracle use)."""
    g = pair.group
    if g.cardinality > oracle_cap():
        raise OracleCapExceeded(f"|G| = {g.cardinality} exceeds oracle cap {oracle_cap()}")
    rep = report if report is not None else symbol(pair)
    require_reproducing(rep)
    A = system_atoms(pair.analysis_system)
    P = system_atoms(pair.synthesis_system)
    cols = []
    for row in P:
        t = inverse_resolution(pair, Signal(g, row), rep)
        cols.append(A.conj() @ t.values)
    return np.array(cols).T


# ---------------------------------------------------------------------------
# dense oracle
# ---------------------------------------------------------------------------


def dense_matrix(pair, method: str = "direct", cap: Optional[int] = None) -> np.ndarray:
    """Assemble the resolution operator column by column from impulses.

    Column ``x`` is ``resolution_direct(pair, delta_x)``. Refuses groups above
    the oracle cap (default 256, env ``NSGKIT_ORACLE_CAP``).
    """
    g = pair.group
    limit = oracle_cap() if cap is None else cap
    if g.cardinality > limit:
        raise OracleCapExceeded(f"|G| = {g.cardinality} exceeds oracle cap {limit}")
    n = g.cardinality
    out = np.empty((n, n), dtype=np.complex128)
    for x in range(n):
        d = delta(g, g.decode(x))
        if isinstance(pair, AtomicPair):
            col = resolution_direct(pair, d)
        else:
            col = resolution_direct(pair, d, method)
        out[:, x] = col.values
    return out


def is_reproducing(pair, singular_rtol: float = DEFAULT_SINGULAR_RTOL) -> bool:
    """Reproducing-pair verdict for either pair form.

    Structured pairs use the symbol; atomic pairs the singular values of the
    dense resolution matrix (which coincide with ``|m|`` for structured ones).
    """
    if isinstance(pair, PairSystem):
        return symbol(pair, singular_rtol).is_reproducing_pair
    sv = np.linalg.svd(dense_matrix(pair), compute_uv=False)
    return bool(sv.min() > singular_rtol * sv.max())


# ---------------------------------------------------------------------------
# equivalence transforms
# ---------------------------------------------------------------------------


class UnitarySpec:
    """A unitary operator on L2(G), applied row-wise to atom arrays."""

    def apply(self, group: FiniteLcaGroup, rows: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def matrix(self, group: FiniteLcaGroup) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class FourierConjugation(UnitarySpec):
    """``f -> F f / sqrt(|G|)``, identifying the dual group with the group."""

    def apply(self, group, rows):
        return _fft_rows(group, rows) / np.sqrt(group.cardinality)

    def matrix(self, group):
        return np.conj(group.character_table()) / np.sqrt(group.cardinality)


@dataclass(frozen=True)
class Translation(UnitarySpec):
    by: Any

    def apply(self, group, rows):
        z = group.element(self.by)
        axes = tuple(range(1, group.rank + 1))
        return np.roll(rows.reshape((-1,) + group.shape), shift=z, axis=axes).reshape(rows.shape)

    def matrix(self, group):
        z = np.array(group.element(self.by))
        target = np.mod(group.residues + z, np.array(group.orders))
        idx = np.ravel_multi_index(tuple(target.T), group.orders)
        U = np.zeros((group.cardinality, group.cardinality), dtype=np.complex128)
        U[idx, np.arange(group.cardinality)] = 1.0
        return U


@dataclass(frozen=True)
class Modulation(UnitarySpec):
    by: Any

    def apply(self, group, rows):
        return rows * group.character(self.by)[None, :]

    def matrix(self, group):
        return np.diag(group.character(self.by))


@dataclass(frozen=True, eq=False)
class DiagonalPhase(UnitarySpec):
    phases: np.ndarray

    def __post_init__(self):
        ph = np.array(self.phases, dtype=np.complex128).ravel()
        if not np.allclose(np.abs(ph), 1.0, rtol=0, atol=1e-12):
            raise ValueError("diagonal phases must be unimodular")
        object.__setattr__(self, "phases", ph)

    def apply(self, group, rows):
        if self.phases.shape[0] != group.cardinality:
            raise GroupMismatchError("phase vector length does not match the group")
        return rows * self.phases[None, :]

    def matrix(self, group):
        if self.phases.shape[0] != group.cardinality:
            raise GroupMismatchError("phase vector length does not match the group")
        return np.diag(self.phases)


@dataclass(frozen=True)
class Composition(UnitarySpec):
    """``parts[0] o parts[1] o ...``: the last part is applied first."""

    parts: tuple

    def apply(self, group, rows):
        for part in reversed(self.parts):
            rows = part.apply(group, rows)
        return rows

    def matrix(self, group):
        U = np.eye(group.cardinality, dtype=np.complex128)
        for part in self.parts:
            U = U @ part.matrix(group)
        return U


def _resolve_reindex(pair: AtomicPair, structured: Optional[PairSystem], reindex) -> np.ndarray:
    n = len(pair)
    if reindex is None:
        return np.arange(n)
    flat = []
    for item in reindex:
        if isinstance(item, (tuple, list)) and len(item) == 2 and structured is not None:
            flat.append(structured.flat_index(*item))
        else:
            flat.append(int(item))
    flat = np.array(flat, dtype=np.int64)
    if flat.shape[0] != n or not np.array_equal(np.sort(flat), np.arange(n)):
        raise InvalidReindexError("reindex must be a permutation of the index set")
    return flat


def equivalence_transform(pair, unitary: Optional[UnitarySpec] = None,
                          phase: Optional[Sequence[complex]] = None,
                          reindex: Optional[Sequence] = None,
                          weights: Optional[Sequence[float]] = None) -> AtomicPair:
    """New pair ``Psi~(i) = tau(i) U Psi(rho(i))`` (and likewise for ``Phi``).

    ``reindex[i] = rho(i)`` names the old index carried to new index ``i``,
    either as a flat index or as a ``(point, label)`` pair. The new weights
    are ``mu(rho(i))``; if ``weights`` is passed it must agree with that,
    otherwise :class:`InvalidReindexError` is raised. The resolution operator
    of the result is ``U S U*``.
    """
    structured = pair if isinstance(pair, PairSystem) else None
    atomic = to_atomic(pair) if structured is not None else pair
    g = atomic.group
    rho = _resolve_reindex(atomic, structured, reindex)
    new_w = atomic.weights[rho]
    if weights is not None:
        w = np.asarray(weights, dtype=np.float64).ravel()
        if w.shape != new_w.shape or not np.allclose(w, new_w, rtol=1e-12, atol=0):
            raise InvalidReindexError("reindex does not carry the weights along")
    if phase is None:
        tau = np.ones(len(atomic), dtype=np.complex128)
    else:
        tau = np.asarray(phase, dtype=np.complex128).ravel()
        if tau.shape[0] == 1:
            tau = np.full(len(atomic), tau[0])
        if tau.shape[0] != len(atomic):
            raise InvalidReindexError("phase needs one entry per index point")
        if not np.allclose(np.abs(tau), 1.0, rtol=0, atol=1e-12):
            raise ValueError("phase values must be unimodular")
    a = atomic.analysis_atoms[rho]
    s = atomic.synthesis_atoms[rho]
    if unitary is not None:
        a = unitary.apply(g, a)
        s = unitary.apply(g, s)
    return AtomicPair(g, tau[:, None] * a, tau[:, None] * s, new_w)
