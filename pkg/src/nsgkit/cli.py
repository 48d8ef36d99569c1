"""Command-line front end: ``nsgkit VERB --config CFG --out DIR [...]``.

Verbs: symbol, diagnose, analyze, synthesize, reconstruct, dual, awh, wavelet.
Exit codes: 0 success, 2 invalid input, 3 singular symbol or not a frame,
4 numerical guard tripped. Outputs are staged in memory and renamed into
place only after the whole command has succeeded.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from . import io as nio
from . import nsg, realline
from ._accel import BACKEND
from .config import ConfigError, RunConfig, load_config
from .errors import NsgError, NumericalGuardError, OracleCapExceeded, SymbolSingular
from .lca import Signal, norm

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SINGULAR = 3
EXIT_GUARD = 4


class NotAFrame(NsgError, ArithmeticError):
    """The family handed to ``dual`` has no positive lower frame bound."""


class UsageError(NsgError, ValueError):
    """Command-line arguments are inconsistent with the verb."""


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def _provenance(cfg: RunConfig) -> dict:
    return {"config_sha256": cfg.sha256, "nsgkit_version": __version__,
            "numpy_version": np.__version__, "backend": BACKEND}


def _pair(cfg: RunConfig) -> nsg.PairSystem:
    cfg.require_pair()
    return nsg.PairSystem(cfg.analysis, cfg.synthesis, cfg.kind)


def _report_dict(rep: nsg.SymbolReport, cfg: RunConfig) -> dict:
    bessel = rep.bessel_bounds
    return {
        "kind": rep.kind.value,
        "group": list(cfg.group.orders),
        "labels": list(cfg.analysis.labels),
        "A": rep.A, "B": rep.B, "C": rep.C,
        "flags": {
            "reproducing_pair": rep.is_reproducing_pair,
            "frame": rep.is_frame,
            "tight": rep.is_tight,
            "self_adjoint_positive": rep.is_self_adjoint_positive,
            "bessel_note": ("finite families are Bessel; bounds are max_k sum_y mu_y |psi_y^|^2"
                            if bessel is not None else None),
        },
        "bessel_bounds": ({"analysis": bessel[0], "synthesis": bessel[1]}
                          if bessel is not None else None),
        "symbol": rep.m,
        "symbol_side": rep.side.value,
        "tolerances": {"singular_rtol": cfg.singular_rtol, **rep.tolerances()},
        "provenance": _provenance(cfg),
    }


def _diagnose(cfg: RunConfig) -> nsg.SymbolReport:
    return nsg.diagnose(_pair(cfg), cfg.singular_rtol, cfg.tight_rtol)


def _need(args, attr: str, flag: str):
    value = getattr(args, attr)
    if value is None:
        raise UsageError(f"this command needs {flag}")
    return value


def _signal_name(fmt: str) -> str:
    return f"signal.{fmt}"


def _encode_signal(values, fmt: str) -> bytes:
    return nio.encode_binary(values) if fmt == "bin" else nio.encode_signal_csv(values)


def _rel_error(x: np.ndarray, ref: np.ndarray) -> float:
    scale = np.linalg.norm(ref)
    return float(np.linalg.norm(x - ref) / (scale if scale > 0 else 1.0))


# ---------------------------------------------------------------------------
# finite-group verbs
# ---------------------------------------------------------------------------


def cmd_symbol(args, cfg: RunConfig, out: nio.OutputSet):
    rep = _diagnose(cfg)
    out.add("symbol.csv", nio.encode_signal_csv(rep.m))
    doc = _report_dict(rep, cfg)
    if args.invert:
        nsg.require_reproducing(rep)
        out.add("inverse_symbol.csv", nio.encode_signal_csv(1.0 / rep.m))
        doc["inverted"] = True
    out.add("diagnostics.json", nio.dump_json(doc))


def cmd_diagnose(args, cfg: RunConfig, out: nio.OutputSet):
    out.add("diagnostics.json", nio.dump_json(_report_dict(_diagnose(cfg), cfg)))


def cmd_analyze(args, cfg: RunConfig, out: nio.OutputSet):
    pair = _pair(cfg)
    f = Signal(cfg.group, nio.read_signal(_need(args, "input", "--in"), cfg.group.cardinality))
    F = nsg.analyze(pair.analysis_system, f)
    if args.format == "bin":
        out.add("coefficients.bin", nio.encode_binary(F.values))
    else:
        out.add("coefficients.csv", nio.encode_coefficients_csv(F.values, cfg.analysis.labels))
    rep = nsg.symbol(pair, cfg.singular_rtol, cfg.tight_rtol)
    summary = {
        "points": F.values.shape[0], "labels": list(cfg.analysis.labels),
        "signal_norm": norm(f),
        "coefficient_energy": nsg.coefficient_energy(pair.analysis_system, F),
        "round_trip_relative_error": None,
        "tolerances": {"singular_rtol": cfg.singular_rtol, **rep.tolerances()},
        "provenance": _provenance(cfg),
    }
    if rep.is_reproducing_pair:
        back = nsg.reconstruct(pair, F, rep)
        summary["round_trip_relative_error"] = _rel_error(back.values, f.values)
    else:
        summary["note"] = "pair is not reproducing; round trip skipped"
    out.add("analyze.json", nio.dump_json(summary))


def _read_coefficients(args, cfg: RunConfig, pair: nsg.PairSystem) -> nsg.CoefficientArray:
    sysm = pair.synthesis_system
    n_points = cfg.group.cardinality
    vals = nio.read_coefficients(_need(args, "input", "--in"), n_points, cfg.synthesis.labels)
    return nsg.CoefficientArray(vals, cfg.kind, sysm.family.labels)


def cmd_synthesize(args, cfg: RunConfig, out: nio.OutputSet):
    pair = _pair(cfg)
    F = _read_coefficients(args, cfg, pair)
    g = nsg.synthesize(pair.synthesis_system, F)
    out.add(_signal_name(args.format), _encode_signal(g.values, args.format))
    out.add("synthesize.json", nio.dump_json({
        "signal_norm": norm(g), "provenance": _provenance(cfg)}))


def cmd_reconstruct(args, cfg: RunConfig, out: nio.OutputSet):
    pair = _pair(cfg)
    F = _read_coefficients(args, cfg, pair)
    rep = nsg.symbol(pair, cfg.singular_rtol, cfg.tight_rtol)
    f = nsg.reconstruct(pair, F, rep)
    summary = {"A": rep.A, "B": rep.B, "signal_norm": norm(f), "relative_error": None,
               "tolerances": {"singular_rtol": cfg.singular_rtol, **rep.tolerances()},
               "provenance": _provenance(cfg)}
    if args.reference is not None:
        ref = nio.read_signal(args.reference, cfg.group.cardinality)
        summary["relative_error"] = _rel_error(f.values, ref)
    out.add(_signal_name(args.format), _encode_signal(f.values, args.format))
    out.add("reconstruct.json", nio.dump_json(summary))


def cmd_dual(args, cfg: RunConfig, out: nio.OutputSet):
    cfg.require_pair()
    family = cfg.analysis
    rep = nsg.diagnose(nsg.PairSystem.frame(family, cfg.kind), cfg.singular_rtol, cfg.tight_rtol)
    if not rep.is_frame:
        raise NotAFrame(f"family is not a frame: lower bound {rep.A:.3e} "
                        f"<= singular tolerance {rep.singular_tol:.3e}")
    dual = nsg.canonical_dual(family, cfg.kind, cfg.singular_rtol)
    check = nsg.symbol(nsg.PairSystem(family, dual, cfg.kind))
    files = {}
    for i, label in enumerate(family.labels):
        name = f"dual_{i}.csv"
        files[name] = label
        out.add(name, nio.encode_signal_csv(dual.windows[i]))
    out.add("dual.json", nio.dump_json({
        "A": rep.A, "B": rep.B, "tight": rep.is_tight,
        "files": files,
        "verification_max_abs_m_minus_1": float(np.max(np.abs(check.m - 1.0))),
        "tolerances": {"singular_rtol": cfg.singular_rtol, **rep.tolerances()},
        "provenance": _provenance(cfg),
    }))


# ---------------------------------------------------------------------------
# real-line verbs
# ---------------------------------------------------------------------------


def _realline(builder, what: str):
    try:
        return builder()
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid {what}: {exc}") from exc


def _grid(spec) -> realline.QuadratureGrid:
    return _realline(lambda: realline.QuadratureGrid(spec["lo"], spec["hi"], spec["count"]),
                     "grid")


def _window(spec) -> realline.SpectralWindow:
    return _realline(lambda: realline.SpectralWindow.from_dict(spec), "window")


def _is_example(psi, phi, conf: realline.AwhConfig) -> bool:
    probe = np.linspace(-3.0, 3.0, 601)
    return (conf.to_dict() == realline.AwhConfig.example().to_dict()
            and np.array_equal(psi(probe), realline.ramp_down()(probe))
            and np.array_equal(phi(probe), realline.ramp_up()(probe)))


def _reference(job, psi, phi, conf, xs, values) -> dict:
    if job.get("reference") != "closed_form_example":
        return {}
    if not _is_example(psi, phi, conf):
        raise ConfigError("closed_form_example reference needs the ramp windows "
                          "and the inverse_linear/identity/s=1 section")
    ref = realline.example1_closed_form(xs)
    err = np.abs(np.asarray(values) - ref)
    return {"reference": ref, "abs_error": err, "max_abs_error": float(err.max()),
            "max_rel_error": float(np.max(err / np.abs(ref)))}


def cmd_awh(args, cfg: RunConfig, out: nio.OutputSet):
    spec = cfg.awh
    if spec is None:
        raise ConfigError("this command needs an 'awh' section")
    conf = _realline(lambda: realline.AwhConfig(
        realline.Beta.from_dict(spec.get("beta", "inverse_linear")),
        spec.get("eta", "identity"), float(spec.get("s", 1.0))), "awh section")
    psi, phi = _window(spec["psi_hat"]), _window(spec["phi_hat"])
    report = {"section": conf.to_dict(), "psi_hat": psi.to_dict(), "phi_hat": phi.to_dict(),
              "provenance": _provenance(cfg)}

    if "symbol" in spec:
        job = spec["symbol"]
        grid = _grid(job["grid"])
        xs = np.asarray(job["xi"], dtype=float)
        vals = [realline.awh_symbol(conf, psi, phi, grid, x) for x in xs]
        report["symbol"] = {"xi": xs, "values": vals, "grid": grid.to_dict(),
                            "rule": "composite trapezoid",
                            **_reference(job, psi, phi, conf, xs, vals)}

    if "exact" in spec:
        job = spec["exact"]
        xs = np.asarray(job["xi"], dtype=float)
        vals = [realline.example1_symbol_exact(psi, phi, x) for x in xs]
        report["exact"] = {"xi": xs, "values": vals, "rule": "adaptive Simpson",
                           "simpson_tol": realline.SIMPSON_TOL,
                           "simpson_max_depth": realline.SIMPSON_MAX_DEPTH,
                           "endpoint_guard": realline.ENDPOINT_GUARD,
                           **_reference(job, psi, phi, conf, xs, vals)}

    if "derivative" in spec:
        job = spec["derivative"]
        h = float(job.get("h", 1e-4))
        rows = [realline.symbol_derivative_check(psi, phi, x, h) for x in job["xi"]]
        fd = np.array([r[0] for r in rows])
        an = np.array([r[1] for r in rows])
        report["derivative"] = {"xi": job["xi"], "h": h, "finite_difference": fd,
                                "analytic": an,
                                "scaled_gap": np.abs(fd - an) / (1.0 + np.abs(an))}

    if "energy" in spec:
        job = spec["energy"]
        f_hat = _window(job["f_hat"])
        grid = _grid(job["xi_grid"])
        density = int(job.get("omega_density", 4))
        series = realline.energy_series(psi, f_hat, job["caps"], grid, density, conf)
        inc = series.increments
        report["energy"] = {"omega_caps": series.omega_caps, "energies": series.energies,
                            "increments": inc,
                            "increment_ratios": inc[1:] / inc[:-1] if inc.size > 1 else [],
                            "xi_grid": grid.to_dict(), "omega_density": density}

    if "lambda_section" in spec:
        job = spec["lambda_section"]
        grid = _grid(job["grid"])
        half = float(job.get("guard_halfwidth", 1e-3))
        value = realline.lambda_section_constant(psi, phi, float(job["lambda"]), grid, half)
        report["lambda_section"] = {"lambda": job["lambda"], "value": value,
                                    "grid": grid.to_dict(), "guard_halfwidth": half}

    out.add("awh.json", nio.dump_json(report))


def cmd_wavelet(args, cfg: RunConfig, out: nio.OutputSet):
    spec = cfg.wavelet
    if spec is None:
        raise ConfigError("this command needs a 'wavelet' section")
    psi = _window(spec["psi_hat"])
    report = {"psi_hat": psi.to_dict(), "singular_rtol": cfg.singular_rtol,
              "provenance": _provenance(cfg)}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", realline.WaveletRangeWarning)
        if "xi" in spec:
            xs = np.asarray(spec["xi"], dtype=float)
            if "j_min" in spec and "j_max" in spec:
                j_min, j_max = spec["j_min"], spec["j_max"]
            else:
                j_min, j_max = realline.dyadic_range(psi, xs)
            m = realline.wavelet_symbol(psi, j_min, j_max, xs)
            m2 = realline.wavelet_symbol(psi, j_min, j_max, 2.0 * xs)
            report["symbol"] = {"xi": xs, "values": np.atleast_1d(m), "j_min": j_min,
                                "j_max": j_max,
                                "dyadic_gap": float(np.max(np.abs(m2 - m)))}
        if "commutation" in spec:
            job = spec["commutation"]
            grid = _grid(job["xi_grid"])
            gaps = {str(j): realline.wavelet_dual_commutation(psi, j, grid,
                                                              singular_rtol=cfg.singular_rtol)
                    for j in job["j"]}
            report["commutation"] = {"xi_grid": grid.to_dict(), "max_deviation": gaps}
        if "admissibility" in spec:
            a = realline.wavelet_admissibility(psi, float(spec["admissibility"]["xi0"]))
            report["admissibility"] = {
                "xi0": a.xi0, "inf_on_octave": a.inf_on_octave,
                "decay_constant": a.decay_constant, "lower_condition": a.lower_condition,
                "decay_condition": a.decay_condition}
    report["warnings"] = sorted({str(w.message) for w in caught
                                 if issubclass(w.category, realline.WaveletRangeWarning)})
    out.add("wavelet.json", nio.dump_json(report))


COMMANDS = {
    "symbol": cmd_symbol,
    "diagnose": cmd_diagnose,
    "analyze": cmd_analyze,
    "synthesize": cmd_synthesize,
    "reconstruct": cmd_reconstruct,
    "dual": cmd_dual,
    "awh": cmd_awh,
    "wavelet": cmd_wavelet,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nsgkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"nsgkit {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in COMMANDS:
        p = sub.add_parser(verb)
        p.add_argument("--config", required=True, type=Path, help="JSON run configuration")
        p.add_argument("--out", required=True, type=Path, help="output directory")
        p.add_argument("--in", dest="input", type=Path, help="input signal or coefficients")
        p.add_argument("--format", choices=("csv", "bin"), default="csv")
        p.add_argument("--tolerance", type=float,
                       help="relative singular tolerance; overrides the config")
        if verb == "symbol":
            p.add_argument("--invert", action="store_true",
                           help="also write 1/m; exit 3 if the symbol is singular")
        if verb == "reconstruct":
            p.add_argument("--reference", type=Path, help="signal to compare against")
    return parser


def _fail(code: int, exc: BaseException) -> int:
    print(f"nsgkit: error: {exc}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.tolerance is not None:
            if not (np.isfinite(args.tolerance) and args.tolerance > 0):
                raise UsageError("--tolerance must be a positive number")
            cfg.singular_rtol = args.tolerance
        out = nio.OutputSet(args.out)
        COMMANDS[args.verb](args, cfg, out)
        out.commit()
    except (SymbolSingular, NotAFrame) as exc:
        return _fail(EXIT_SINGULAR, exc)
    except (NumericalGuardError, OracleCapExceeded) as exc:
        return _fail(EXIT_GUARD, exc)
    except (ValueError, OSError) as exc:
        return _fail(EXIT_INVALID, exc)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
