"""Finite abelian groups, their characters, and the basic unitary operators.

A finite abelian group is a product of cyclic groups Z/N_1 x ... x Z/N_d,
written additively. Elements are residue tuples; signals store their values
in row-major order over those tuples, so ``values.reshape(group.shape)`` is
the natural d-dimensional view.

Haar measure is counting measure on the group and weight ``1/|G|`` on the dual
group, which makes the (unnormalized) forward transform isometric.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from . import _kernels
from .errors import GroupMismatchError, InvalidElementError, SideError

ElementLike = Union[int, Sequence[int], np.ndarray]


class Side(str, enum.Enum):
    GROUP = "group"
    DUAL = "dual"

    @property
    def flipped(self) -> "Side":
        return Side.DUAL if self is Side.GROUP else Side.GROUP


@dataclass(frozen=True)
class FiniteLcaGroup:
    """The group Z/N_1 x ... x Z/N_d."""

    orders: tuple

    def __post_init__(self):
        orders = tuple(int(n) for n in np.atleast_1d(self.orders))
        if not orders:
            raise ValueError("a group needs at least one cyclic factor")
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic orders must be >= 1, got {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def shape(self) -> tuple:
        return self.orders

    @property
    def cardinality(self) -> int:
        return math.prod(self.orders)

    def __len__(self):
        return self.cardinality

    def __repr__(self):
        return "FiniteLcaGroup(" + " x ".join(f"Z/{n}" for n in self.orders) + ")"

    def element(self, x: ElementLike) -> tuple:
        """Normalize ``x`` to a reduced residue tuple.

        A bare integer is accepted for rank-1 groups only; use :meth:`decode`
        to convert a flat index.
        """
        if isinstance(x, (int, np.integer)):
            if self.rank != 1:
                raise InvalidElementError(
                    f"bare integer {x} is ambiguous for a rank-{self.rank} group")
            x = (x,)
        try:
            res = tuple(int(v) for v in x)
        except TypeError as exc:
            raise InvalidElementError(f"not a group element: {x!r}") from exc
        if len(res) != self.rank:
            raise InvalidElementError(
                f"element {res} has {len(res)} components, group has rank {self.rank}")
        return tuple(r % n for r, n in zip(res, self.orders))

    def encode(self, x: ElementLike) -> int:
        """Flat row-major index of an element."""
        return int(np.ravel_multi_index(self.element(x), self.orders))

    def decode(self, index: int) -> tuple:
        """Residue tuple of a flat index."""
        index = int(index)
        if not 0 <= index < self.cardinality:
            raise InvalidElementError(f"flat index {index} outside [0, {self.cardinality})")
        return tuple(int(v) for v in np.unravel_index(index, self.orders))

    def add(self, a: ElementLike, b: ElementLike) -> tuple:
        return self.element(np.add(self.element(a), self.element(b)))

    def neg(self, a: ElementLike) -> tuple:
        return self.element(np.negative(self.element(a)))

    @cached_property
    def residues(self) -> np.ndarray:
        """All elements as a ``(|G|, d)`` integer array, in flat order."""
        grids = np.indices(self.orders).reshape(self.rank, -1).T
        return np.ascontiguousarray(grids, dtype=np.int64)

    def character(self, k: ElementLike) -> np.ndarray:
        """The character ``x -> chi_k(x)`` sampled at every element."""
        k = self.element(k)
        phase = np.zeros(self.cardinality)
        for i, n in enumerate(self.orders):
            phase += np.mod(k[i] * self.residues[:, i], n) / n
        return np.exp(2j * np.pi * phase)

    def character_table(self) -> np.ndarray:
        """Matrix with entry ``[k, x] = chi_k(x)``."""
        phase = np.zeros((self.cardinality, self.cardinality))
        for i, n in enumerate(self.orders):
            r = self.residues[:, i]
            phase += np.mod(np.outer(r, r), n) / n
        return np.exp(2j * np.pi * phase)


def character_value(group: FiniteLcaGroup, k: ElementLike, x: ElementLike) -> complex:
    """``chi_k(x) = prod_i exp(2 pi i k_i x_i / N_i)``."""
    k, x = group.element(k), group.element(x)
    phase = sum(((ki * xi) % n) / n for ki, xi, n in zip(k, x, group.orders))
    return complex(np.exp(2j * np.pi * phase))


@dataclass(frozen=True, eq=False)
class Signal:
    """Complex amplitudes over a finite group or its dual."""

    group: FiniteLcaGroup
    values: np.ndarray
    side: Side = Side.GROUP

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.complex128).ravel()
        if vals.shape[0] != self.group.cardinality:
            raise GroupMismatchError(
                f"signal has {vals.shape[0]} values, group has {self.group.cardinality} elements")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "side", Side(self.side))

    def __len__(self):
        return self.values.shape[0]

    def __repr__(self):
        return f"Signal({self.group!r}, side={self.side.value}, n={len(self)})"

    def replace(self, values, side=None) -> "Signal":
        return Signal(self.group, values, self.side if side is None else side)

    def grid(self) -> np.ndarray:
        """Values reshaped to the group's d-dimensional layout (a copy)."""
        return self.values.reshape(self.group.shape).copy()

    def _check_peer(self, other: "Signal"):
        if not isinstance(other, Signal):
            raise TypeError(f"expected a Signal, got {type(other).__name__}")
        if other.group != self.group:
            raise GroupMismatchError(f"{self.group!r} vs {other.group!r}")
        if other.side is not self.side:
            raise SideError(f"{self.side.value}-side vs {other.side.value}-side signal")

    def __add__(self, other):
        self._check_peer(other)
        return self.replace(self.values + other.values)

    def __sub__(self, other):
        self._check_peer(other)
        return self.replace(self.values - other.values)

    def __mul__(self, scalar):
        if isinstance(scalar, Signal):
            return NotImplemented
        return self.replace(complex(scalar) * self.values)

    __rmul__ = __mul__

    def __neg__(self):
        return self.replace(-self.values)


def delta(group: FiniteLcaGroup, at: ElementLike = None, side: Side = Side.GROUP) -> Signal:
    """Unit impulse at ``at`` (default: the identity)."""
    values = np.zeros(group.cardinality, dtype=np.complex128)
    values[0 if at is None else group.encode(at)] = 1.0
    return Signal(group, values, side)


def _require_side(f: Signal, side: Side):
    if f.side is not side:
        raise SideError(f"expected a {side.value}-side signal, got {f.side.value}-side")


def fourier(f: Signal, method: str = "fast") -> Signal:
    """Forward transform ``F(k) = sum_x conj(chi_k(x)) f(x)``; the result is dual-side.

    ``method="direct"`` uses the O(|G|^2) character sum, the reference the
    mixed-radix FFT path is validated against.
    """
    _require_side(f, Side.GROUP)
    g = f.group
    if method == "fast":
        out = np.fft.fftn(f.values.reshape(g.shape)).ravel()
    elif method == "direct":
        out = _kernels.dft_direct(f.values, g.residues, np.array(g.orders), -1.0)
    else:
        raise ValueError(f"unknown method {method!r}")
    return Signal(g, out, Side.DUAL)


def inverse_fourier(F: Signal, method: str = "fast") -> Signal:
    """Inverse transform ``f(x) = (1/|G|) sum_k chi_k(x) F(k)``."""
    _require_side(F, Side.DUAL)
    g = F.group
    if method == "fast":
        out = np.fft.ifftn(F.values.reshape(g.shape)).ravel()
    elif method == "direct":
        out = _kernels.dft_direct(F.values, g.residues, np.array(g.orders), 1.0) / g.cardinality
    else:
        raise ValueError(f"unknown method {method!r}")
    return Signal(g, out, Side.GROUP)


def translate(z: ElementLike, f: Signal) -> Signal:
    """``(T_z f)(x) = f(x - z)``. Works on either side; the side is kept."""
    g = f.group
    z = g.element(z)
    out = np.roll(f.values.reshape(g.shape), shift=z, axis=tuple(range(g.rank)))
    return f.replace(out.ravel())


def modulate(k: ElementLike, f: Signal) -> Signal:
    """``(M_k f)(x) = chi_k(x) f(x)``."""
    return f.replace(f.group.character(k) * f.values)


def reflect(f: Signal) -> Signal:
    """``x -> f(-x)``."""
    g = f.group
    axes = tuple(range(g.rank))
    out = np.roll(np.flip(f.values.reshape(g.shape), axis=axes), shift=1, axis=axes)
    return f.replace(out.ravel())


def involution(g: Signal) -> Signal:
    """``g*(x) = conj(g(-x))``."""
    _require_side(g, Side.GROUP)
    r = reflect(g)
    return r.replace(np.conj(r.values))


def convolve(f: Signal, g: Signal) -> Signal:
    """``(f * g)(x) = sum_z f(z) g(x - z)``, through the transform."""
    _require_side(f, Side.GROUP)
    f._check_peer(g)
    fh = fourier(f)
    return inverse_fourier(fh.replace(fh.values * fourier(g).values))


def inner(f: Signal, g: Signal) -> complex:
    """``sum_x f(x) conj(g(x))`` (unweighted on either side)."""
    f._check_peer(g)
    return complex(np.vdot(g.values, f.values))


def norm(f: Signal) -> float:
    return float(np.linalg.norm(f.values))
