"""JSON run configuration for the command-line front end.

A configuration names a group, a system kind and either one window family
(``"family"``, frame mode) or two (``"analysis"`` and ``"synthesis"``). Each
family is a list of entries or a generator::

    {"group": [8], "kind": "translation",
     "family": {"entries": [{"label": "a", "weight": 1.0,
                              "values": [[1, 0], [0, 0], ...]}]}}

    {"group": [32], "analysis": {"generator": "stft", "window": {"file": "g.csv"}},
                    "synthesis": {"generator": "stft", "window": [[...], ...]}}

Window values are ``[real, imag]`` pairs (or plain reals) inline, or
``{"file": path}`` referencing a signal file relative to the config. The
optional ``"awh"`` and ``"wavelet"`` sections drive the real-line verbs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import jsonschema
import numpy as np

from . import io as nio
from .lca import FiniteLcaGroup
from .nsg import DEFAULT_SINGULAR_RTOL, DEFAULT_TIGHT_RTOL, Kind, WindowFamily

_NUM = {"type": "number"}
_VALUES = {
    "oneOf": [
        {"type": "array", "items": {"oneOf": [
            _NUM, {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}]}},
        {"type": "object", "properties": {"file": {"type": "string"}},
         "required": ["file"], "additionalProperties": False},
    ]
}
_LABEL = {"type": ["string", "integer"], "pattern": "^[^,\\n\\r\"]+$"}
_FAMILY = {
    "type": "object",
    "oneOf": [
        {"properties": {"entries": {"type": "array", "minItems": 1, "items": {
            "type": "object",
            "properties": {"label": _LABEL, "weight": {"type": "number", "exclusiveMinimum": 0},
                           "values": _VALUES},
            "required": ["label", "weight", "values"], "additionalProperties": False}}},
         "required": ["entries"], "additionalProperties": False},
        {"properties": {"generator": {"const": "stft"}, "window": _VALUES},
         "required": ["generator", "window"], "additionalProperties": False},
        {"properties": {"generator": {"const": "delta"},
                        "weight": {"type": "number", "exclusiveMinimum": 0}},
         "required": ["generator"], "additionalProperties": False},
    ],
}
_GRID = {"type": "object",
         "properties": {"lo": _NUM, "hi": _NUM, "count": {"type": "integer", "minimum": 2}},
         "required": ["lo", "hi", "count"], "additionalProperties": False}
_WINDOW = {"type": "object", "properties": {"type": {"enum": [
    "piecewise_polynomial", "hat", "gaussian", "indicator"]}}, "required": ["type"]}
_XI = {"type": "array", "items": _NUM, "minItems": 1}

SCHEMA = {
    "type": "object",
    "properties": {
        "group": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "kind": {"enum": ["translation", "character"]},
        "family": _FAMILY,
        "analysis": _FAMILY,
        "synthesis": _FAMILY,
        "tolerance": {"type": "object", "properties": {
            "singular_rtol": {"type": "number", "exclusiveMinimum": 0},
            "tight_rtol": {"type": "number", "exclusiveMinimum": 0}},
            "additionalProperties": False},
        "awh": {
            "type": "object",
            "properties": {
                "beta": {"oneOf": [{"type": "string"}, {"type": "object"}]},
                "eta": {"enum": ["zero", "identity"]},
                "s": _NUM,
                "psi_hat": _WINDOW,
                "phi_hat": _WINDOW,
                "symbol": {"type": "object", "properties": {
                    "xi": _XI, "grid": _GRID, "reference": {"enum": ["closed_form_example"]}},
                           "required": ["xi", "grid"], "additionalProperties": False},
                "exact": {"type": "object", "properties": {
                    "xi": _XI, "reference": {"enum": ["closed_form_example"]}},
                    "required": ["xi"], "additionalProperties": False},
                "derivative": {"type": "object", "properties": {
                    "xi": _XI, "h": {"type": "number", "exclusiveMinimum": 0}},
                    "required": ["xi"], "additionalProperties": False},
                "energy": {"type": "object", "properties": {
                    "f_hat": _WINDOW, "caps": _XI, "xi_grid": _GRID,
                    "omega_density": {"type": "integer", "minimum": 1}},
                    "required": ["f_hat", "caps", "xi_grid"], "additionalProperties": False},
                "lambda_section": {"type": "object", "properties": {
                    "lambda": _NUM, "grid": _GRID, "guard_halfwidth": {
                        "type": "number", "exclusiveMinimum": 0}},
                    "required": ["lambda", "grid"], "additionalProperties": False},
            },
            "required": ["psi_hat", "phi_hat"],
            "additionalProperties": False,
        },
        "wavelet": {
            "type": "object",
            "properties": {
                "psi_hat": _WINDOW,
                "xi": _XI,
                "j_min": {"type": "integer"},
                "j_max": {"type": "integer"},
                "commutation": {"type": "object", "properties": {
                    "j": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
                    "xi_grid": _GRID},
                    "required": ["j", "xi_grid"], "additionalProperties": False},
                "admissibility": {"type": "object", "properties": {"xi0": _NUM},
                                  "required": ["xi0"], "additionalProperties": False},
            },
            "required": ["psi_hat"],
            "additionalProperties": False,
        },
    },
    "dependentRequired": {"analysis": ["synthesis"], "synthesis": ["analysis"]},
    "additionalProperties": False,
}


class ConfigError(ValueError):
    """The configuration is malformed or references missing files."""


@dataclass
class RunConfig:
    raw: dict
    sha256: str
    base_dir: Path
    group: Optional[FiniteLcaGroup] = None
    kind: Kind = Kind.TRANSLATION
    analysis: Optional[WindowFamily] = None
    synthesis: Optional[WindowFamily] = None
    singular_rtol: float = DEFAULT_SINGULAR_RTOL
    tight_rtol: float = DEFAULT_TIGHT_RTOL
    awh: Optional[dict] = None
    wavelet: Optional[dict] = None
    frame_mode: bool = field(default=False)

    def require_pair(self):
        if self.group is None or self.analysis is None:
            raise ConfigError("this command needs 'group' and a window family")


def _values(spec, base_dir: Path, n: int) -> np.ndarray:
    if isinstance(spec, dict):
        path = base_dir / spec["file"]
        if not path.is_file():
            raise ConfigError(f"referenced file {path} does not exist")
        return nio.read_signal(path, n)
    vals = np.array([complex(v[0], v[1]) if isinstance(v, list) else complex(v) for v in spec])
    if vals.shape[0] != n:
        raise ConfigError(f"window has {vals.shape[0]} values, group has {n}")
    return vals


def _family(spec: dict, group: FiniteLcaGroup, base_dir: Path) -> WindowFamily:
    n = group.cardinality
    if "entries" in spec:
        labels = [str(e["label"]) for e in spec["entries"]]
        if len(set(labels)) != len(labels):
            raise ConfigError("window labels must be unique")
        return WindowFamily(group, tuple(labels), [e["weight"] for e in spec["entries"]],
                            np.vstack([_values(e["values"], base_dir, n) for e in spec["entries"]]))
    if spec["generator"] == "delta":
        w = np.zeros(n, dtype=complex)
        w[0] = 1.0
        return WindowFamily(group, ("delta",), [spec.get("weight", 1.0)], w[None, :])
    # stft: M_k psi for every character k, weight 1/|G|
    window = _values(spec["window"], base_dir, n)
    chars = group.character_table()
    labels = tuple(f"k{i}" for i in range(n))
    return WindowFamily(group, labels, np.full(n, 1.0 / n), chars * window[None, :])


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        raw = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return parse_config(raw, path.parent, hashlib.sha256(data).hexdigest())


def parse_config(raw, base_dir=".", sha256: str = "") -> RunConfig:
    try:
        jsonschema.validate(raw, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"config invalid at {where}: {exc.message}") from exc
    base_dir = Path(base_dir)
    cfg = RunConfig(raw=raw, sha256=sha256, base_dir=base_dir)
    tol = raw.get("tolerance", {})
    cfg.singular_rtol = tol.get("singular_rtol", DEFAULT_SINGULAR_RTOL)
    cfg.tight_rtol = tol.get("tight_rtol", DEFAULT_TIGHT_RTOL)
    cfg.awh = raw.get("awh")
    cfg.wavelet = raw.get("wavelet")
    if "group" in raw:
        cfg.group = FiniteLcaGroup(tuple(raw["group"]))
        cfg.kind = Kind(raw.get("kind", "translation"))
        try:
            if "family" in raw:
                cfg.analysis = cfg.synthesis = _family(raw["family"], cfg.group, base_dir)
                cfg.frame_mode = True
            elif "analysis" in raw:
                cfg.analysis = _family(raw["analysis"], cfg.group, base_dir)
                cfg.synthesis = _family(raw["synthesis"], cfg.group, base_dir)
                if not cfg.analysis.same_structure(cfg.synthesis):
                    raise ConfigError("analysis and synthesis must share labels and weights")
        except (ValueError, nio.FormatError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc
    elif any(k in raw for k in ("family", "analysis", "kind")):
        raise ConfigError("window families need a 'group'")
    return cfg
