"""Signal and coefficient interchange formats.

CSV signals are ``index,real,imag`` rows; CSV coefficients are
``point,label,real,imag`` rows, one per ``(point, label)`` in row-major order.
Binary files hold an 8-byte little-endian unsigned count followed by that many
complex values as interleaved little-endian float64 pairs.

Floats are written in shortest round-trip form (``repr``), so output bytes are
a pure function of the values.
"""

from __future__ import annotations

import csv
import io
import json
import os
import struct
import tempfile
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import GroupMismatchError

SIGNAL_HEADER = ("index", "real", "imag")
COEFF_HEADER = ("point", "label", "real", "imag")


class FormatError(ValueError):
    """A signal or coefficient file cannot be parsed."""


def fmt_float(x: float) -> str:
    x = float(x)
    if x == 0.0:
        return "0.0"
    return repr(x)


def to_jsonable(obj):
    """Recursively convert numpy scalars/arrays and complex numbers for ``json``."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(float(obj.real)), to_jsonable(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not np.isfinite(x):
            return str(x)
        return 0.0 if x == 0.0 else x
    return obj


def dump_json(obj) -> bytes:
    return (json.dumps(to_jsonable(obj), indent=2, sort_keys=True, allow_nan=False) + "\n").encode()


# ---------------------------------------------------------------------------
# encoders
# ---------------------------------------------------------------------------


def encode_signal_csv(values: np.ndarray) -> bytes:
    lines = [",".join(SIGNAL_HEADER)]
    for i, v in enumerate(np.asarray(values, dtype=np.complex128)):
        lines.append(f"{i},{fmt_float(v.real)},{fmt_float(v.imag)}")
    return ("\n".join(lines) + "\n").encode()


def encode_coefficients_csv(values: np.ndarray, labels: Sequence) -> bytes:
    vals = np.asarray(values, dtype=np.complex128)
    lines = [",".join(COEFF_HEADER)]
    for p in range(vals.shape[0]):
        for y, label in enumerate(labels):
            v = vals[p, y]
            lines.append(f"{p},{label},{fmt_float(v.real)},{fmt_float(v.imag)}")
    return ("\n".join(lines) + "\n").encode()


def encode_binary(values: np.ndarray) -> bytes:
    vals = np.asarray(values, dtype=np.complex128).ravel()
    inter = np.empty(2 * vals.shape[0], dtype="<f8")
    inter[0::2] = vals.real
    inter[1::2] = vals.imag
    return struct.pack("<Q", vals.shape[0]) + inter.tobytes()


# ---------------------------------------------------------------------------
# decoders
# ---------------------------------------------------------------------------


def decode_binary(data: bytes) -> np.ndarray:
    if len(data) < 8:
        raise FormatError("binary file shorter than its 8-byte count header")
    (count,) = struct.unpack("<Q", data[:8])
    body = data[8:]
    if len(body) != 16 * count:
        raise FormatError(f"header announces {count} values, body holds {len(body) / 16:g}")
    inter = np.frombuffer(body, dtype="<f8")
    return inter[0::2] + 1j * inter[1::2]


def _rows(data: bytes):
    reader = csv.reader(io.StringIO(data.decode()))
    rows = [r for r in reader if r and any(c.strip() for c in r)]
    if rows and not _is_number(rows[0][-1]):
        rows = rows[1:]
    return rows


def _is_number(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def decode_signal_csv(data: bytes) -> np.ndarray:
    rows = _rows(data)
    out = np.zeros(len(rows), dtype=np.complex128)
    seen = set()
    for r in rows:
        if len(r) not in (2, 3):
            raise FormatError(f"signal rows need index,real[,imag]; got {r}")
        try:
            i = int(r[0])
            out_val = complex(float(r[1]), float(r[2]) if len(r) == 3 else 0.0)
        except ValueError as exc:
            raise FormatError(f"bad signal row {r}") from exc
        if not 0 <= i < len(rows) or i in seen:
            raise FormatError(f"signal indices must be a permutation of 0..{len(rows) - 1}")
        seen.add(i)
        out[i] = out_val
    return out


def decode_coefficients_csv(data: bytes, n_points: int, labels: Sequence) -> np.ndarray:
    rows = _rows(data)
    index = {str(label): y for y, label in enumerate(labels)}
    out = np.zeros((n_points, len(labels)), dtype=np.complex128)
    filled = np.zeros(out.shape, dtype=bool)
    for r in rows:
        if len(r) != 4:
            raise FormatError(f"coefficient rows need point,label,real,imag; got {r}")
        try:
            p = int(r[0])
            y = index[r[1]]
            v = complex(float(r[2]), float(r[3]))
        except (ValueError, KeyError) as exc:
            raise FormatError(f"bad coefficient row {r}") from exc
        if not 0 <= p < n_points or filled[p, y]:
            raise FormatError(f"coefficient row {r} out of range or duplicated")
        out[p, y] = v
        filled[p, y] = True
    if not filled.all():
        raise FormatError("coefficient file does not cover every (point, label)")
    return out


def is_binary_path(path) -> bool:
    return str(path).lower().endswith(".bin")


def read_signal(path, expected: int) -> np.ndarray:
    data = Path(path).read_bytes()
    vals = decode_binary(data) if is_binary_path(path) else decode_signal_csv(data)
    if vals.shape[0] != expected:
        raise GroupMismatchError(f"signal has {vals.shape[0]} samples, group has {expected}")
    return vals


def read_coefficients(path, n_points: int, labels: Sequence) -> np.ndarray:
    data = Path(path).read_bytes()
    if is_binary_path(path):
        vals = decode_binary(data)
        if vals.shape[0] != n_points * len(labels):
            raise GroupMismatchError(
                f"coefficient file has {vals.shape[0]} values, expected {n_points * len(labels)}")
        return vals.reshape(n_points, len(labels))
    return decode_coefficients_csv(data, n_points, labels)


# ---------------------------------------------------------------------------
# all-or-nothing output
# ---------------------------------------------------------------------------


class OutputSet:
    """Collects output files in memory and writes them only on :meth:`commit`.

    Each file is written to a temporary sibling and renamed into place.
    """

    def __init__(self, directory):
        self.directory = Path(directory)
        self._files: dict = {}

    def add(self, name: str, data: bytes):
        self._files[name] = data

    def names(self):
        return sorted(self._files)

    def commit(self):
        self.directory.mkdir(parents=True, exist_ok=True)
        staged = []
        try:
            for name in sorted(self._files):
                fd, tmp = tempfile.mkstemp(prefix=f".{name}.", dir=self.directory)
                with os.fdopen(fd, "wb") as fh:
                    fh.write(self._files[name])
                staged.append((tmp, self.directory / name))
        except BaseException:
            for tmp, _ in staged:
                os.unlink(tmp)
            raise
        for tmp, final in staged:
            os.replace(tmp, final)
