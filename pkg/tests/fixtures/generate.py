"""Regenerate the CLI fixture suite (``python3 tests/fixtures/generate.py``).

Values come from a fixed seed, so running this again reproduces the files.
"""

import json
from pathlib import Path

import numpy as np

HERE = Path(__file__).resolve().parent
rng = np.random.default_rng(20240611)


def pairs(v):
    return [[float(z.real), float(z.imag)] for z in v]


def cplx(n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def entries(n, labels, weights=None):
    weights = weights or [1.0] * len(labels)
    return {"entries": [{"label": lab, "weight": w, "values": pairs(cplx(n))}
                        for lab, w in zip(labels, weights)]}


def write(name, doc):
    (HERE / name).write_text(json.dumps(doc, indent=2) + "\n")


def signal_csv(name, v):
    lines = ["index,real,imag"] + [f"{i},{float(z.real)!r},{float(z.imag)!r}" for i, z in enumerate(v)]
    (HERE / name).write_text("\n".join(lines) + "\n")


def main():
    write("delta.json", {"group": [8], "kind": "translation", "family": {"generator": "delta"}})

    write("stft.json", {"group": [32], "kind": "translation",
                        "analysis": {"generator": "stft", "window": pairs(cplx(32))},
                        "synthesis": {"generator": "stft", "window": {"file": "stft_phi.csv"}}})
    signal_csv("stft_phi.csv", cplx(32))

    labels = ["a", "b", "c", "d", "e"]
    syn = entries(24, labels, [0.5, 1.0, 1.5, 2.0, 0.25])
    ana = entries(24, labels, [0.5, 1.0, 1.5, 2.0, 0.25])
    write("random_pair.json", {"group": [24], "kind": "translation",
                               "analysis": ana, "synthesis": syn})
    signal_csv("signal24.csv", cplx(24))

    write("random_frame.json", {"group": [4, 4], "kind": "translation",
                                "family": entries(16, ["x", "y", "z"], [1.0, 0.5, 2.0])})

    write("character_frame.json", {"group": [3, 4], "kind": "character",
                                   "family": entries(12, ["p", "q"], [1.0, 3.0])})

    # two half-band windows whose squared spectra sum to a constant
    n = 16
    spec = np.zeros((2, n))
    spec[0, : n // 2] = 1.0
    spec[1, n // 2:] = 1.0
    tight = np.fft.ifft(spec * np.sqrt(2.0), axis=1)
    write("tight.json", {"group": [n], "kind": "translation", "family": {"entries": [
        {"label": "low", "weight": 1.0, "values": pairs(tight[0])},
        {"label": "high", "weight": 1.0, "values": pairs(tight[1])}]}})

    diff = np.zeros(12, dtype=complex)
    diff[0], diff[1] = 1.0, -1.0
    write("singular.json", {"group": [12], "kind": "translation", "family": {"entries": [
        {"label": "diff", "weight": 1.0, "values": pairs(diff)}]}})
    signal_csv("signal12.csv", cplx(12))

    (HERE / "invalid.json").write_text('{"group": [8], "kind": "translation", "family": {\n')

    ramp_down = {"type": "piecewise_polynomial", "breakpoints": [-1.0, 1.0],
                 "coefficients": [[1.0, -1.0]]}
    ramp_up = {"type": "piecewise_polynomial", "breakpoints": [-1.0, 1.0],
               "coefficients": [[1.0, 1.0]]}
    xi21 = [round(-1.0 + 0.1 * i, 10) for i in range(21)]
    write("awh_example.json", {"awh": {
        "beta": "inverse_linear", "eta": "identity", "s": 1.0,
        "psi_hat": ramp_down, "phi_hat": ramp_up,
        "symbol": {"xi": [-0.5, 0.0, 0.5, 1.5], "grid": {"lo": -1000.0, "hi": 1000.0,
                                                          "count": 200001},
                   "reference": "closed_form_example"},
        "exact": {"xi": xi21 + [-3.0, -1.5, 1.5, 3.0], "reference": "closed_form_example"},
        "derivative": {"xi": [-0.5, 0.0, 0.25, 0.5]},
        "energy": {"f_hat": {"type": "indicator", "left": -1.0, "right": 1.0},
                   "caps": [32, 64, 128, 256], "xi_grid": {"lo": -1.0, "hi": 1.0, "count": 201}},
    }})

    write("lambda_guard.json", {"awh": {
        "psi_hat": {"type": "indicator", "left": -0.5, "right": 2.0},
        "phi_hat": {"type": "indicator", "left": -0.5, "right": 2.0},
        "lambda_section": {"lambda": 0.0, "grid": {"lo": -0.5, "hi": 2.0, "count": 2001}}}})

    write("lambda_ok.json", {"awh": {
        "psi_hat": {"type": "indicator", "left": 1.0, "right": 2.0},
        "phi_hat": {"type": "indicator", "left": 1.0, "right": 2.0},
        "lambda_section": {"lambda": 0.0, "grid": {"lo": 1.0, "hi": 2.0, "count": 20001}}}})

    write("wavelet.json", {"wavelet": {
        "psi_hat": {"type": "indicator", "left": 1.0, "right": 2.0, "include_right": False},
        "xi": [0.01, 0.3, 1.0, 7.5, 100.0]}})

    write("wavelet_hat.json", {"wavelet": {
        "psi_hat": {"type": "hat", "left": 0.5, "center": 1.0, "right": 2.0},
        "commutation": {"j": [-2, -1, 0, 1, 2], "xi_grid": {"lo": 0.05, "hi": 20.0,
                                                            "count": 4001}},
        "admissibility": {"xi0": 0.75}}})

    write("bad_grid.json", {"awh": {
        "psi_hat": ramp_down, "phi_hat": ramp_up,
        "symbol": {"xi": [0.0], "grid": {"lo": 5.0, "hi": -5.0, "count": 11}}}})


if __name__ == "__main__":
    main()
