"""Command-line entry point.

Exit codes: 0 success, 1 an acceptance check FAILed, 2 usage or config
error, 3 numerical blow-up.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from carlfwm import __version__, kernels
from carlfwm.analysis import NoSaturation
from carlfwm.config import ConfigError, bundled_path, dumps, load, loads
from carlfwm.dynamics import COLUMNS, IntegrationError, RunConfig, simulate, write_csv, write_phase_space
from carlfwm.params import derive_parameters
from carlfwm.physical import PhysicalSystem, validate
from carlfwm.reproduce import FIG3_SIGMAS, fig3, growth_table, run_cs_example

log = logging.getLogger("carlfwm")

OUTPUT_ENV = "CARLFWM_OUTPUT_DIR"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BLOWUP = 0, 1, 2, 3

FLAG_FIELDS = {
    "sigma_bar": float,
    "kappa_bar": float,
    "n_particles": int,
    "dt": float,
    "t_end": float,
    "seed": int,
    "a0": float,
    "sample_every": int,
    "beamlets": int,
}


# ------------------------------------------------------------ resolution


def resolve_run(system: PhysicalSystem, file_run: dict, overrides: dict) -> RunConfig:
    """Defaults <- physics-derived sigma/kappa <- [run] section <- command-line flags."""
    scaled = derive_parameters(system).scaled
    values = {"sigma_bar": scaled.sigma_bar, "kappa_bar": scaled.kappa_bar}
    values.update(file_run)
    values.update(overrides)
    return RunConfig(**values)


def _sigma_label(s: float) -> str:
    return format(s, "g")


def _write_manifest(outdir: Path, command: str, system: PhysicalSystem, run: RunConfig, overrides: dict, params: dict):
    manifest = {
        "tool": "carlfwm",
        "version": __version__,
        "backend": kernels.BACKEND,
        "command": command,
        "seed": run.seed,
        "created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "config": dumps(system, run.as_dict()),
        "run": run.as_dict(),
        "overrides": overrides,
        "params": params,
    }
    path = outdir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n")
    return path


# ------------------------------------------------------------ commands


def _derived_report(system: PhysicalSystem) -> str:
    d = derive_parameters(system)
    items = d.as_dict()
    width = max(len(k) for k in items)
    lines = ["# derived parameters", ""]
    lines += [f"{k:<{width}}  {v:.6g}" for k, v in items.items()]
    for diag in validate(system):
        lines.append(f"# {diag.level}: {diag.message}")
    lines += ["", "# machine-readable", "[derived]"]
    lines += [f"{k} = {v!r}" for k, v in items.items()]
    return "\n".join(lines) + "\n"


def cmd_derive_params(system, run, params, outdir: Path) -> int:
    text = _derived_report(system)
    (outdir / "derived_params.txt").write_text(text)
    print(text, end="")
    return EXIT_OK


def cmd_run(system, run, params, outdir: Path) -> int:
    series = simulate(run)
    series.to_csv(outdir / "timeseries.csv")
    if params.get("phase_space"):
        write_phase_space(outdir / "phase_space.csv", series.final_state)
    print(f"wrote {len(series)} rows to {outdir / 'timeseries.csv'}")
    return EXIT_OK


def cmd_growth_rate(system, run, params, outdir: Path) -> int:
    kappas = params["kappas"]
    rows = growth_table(kappas, run if params.get("simulate") else None)
    header = ["kappa_bar"]
    for i in range(3):
        header += [f"root{i}_re", f"root{i}_im"]
    header += ["field_rate", "intensity_rate", "fitted_intensity_rate"]
    write_csv(outdir / "growth_rate.csv", header, rows)
    for r in rows:
        print(f"kappa_bar={r[0]:g}  intensity rate={r[-2]:.6f}  fitted={r[-1]:.6f}")
    return EXIT_OK


def _summary_rows(scan):
    return [(r.sigma_bar, r.growth_rate, r.t_sat, r.a2_max) for r in scan.rows]


SUMMARY_HEADER = ("sigma_bar", "growth_rate", "t_sat", "a2_max")


def cmd_scan_sigma(system, run, params, outdir: Path) -> int:
    _, scan = fig3(run, params["sigmas"], params.get("workers", 1))
    write_csv(outdir / "scan_sigma.csv", SUMMARY_HEADER, _summary_rows(scan))
    for r in scan.rows:
        print(f"sigma_bar={r.sigma_bar:g}  rate={r.growth_rate:.4f}  t_sat={r.t_sat:.4g}  a2_max={r.a2_max:.4g}")
    return EXIT_OK


def cmd_fig3(system, run, params, outdir: Path) -> int:
    sigmas = params["sigmas"]
    series, scan = fig3(run, sigmas, params.get("workers", 1))
    for s, ts in zip(sigmas, series):
        ts.to_csv(outdir / f"fig3_sigma_{_sigma_label(s)}.csv")
    write_csv(outdir / "fig3_summary.csv", SUMMARY_HEADER, _summary_rows(scan))
    print(f"wrote {len(sigmas)} trajectories and fig3_summary.csv to {outdir}")
    if not scan.monotone:
        print("note: growth rate not monotone in sigma_bar")
    return EXIT_OK


def cmd_cs_example(system, run, params, outdir: Path) -> int:
    (outdir / "derived_params.txt").write_text(_derived_report(system))
    res = run_cs_example(system, run)
    res.series.to_csv(outdir / f"cs_trajectory_sigma_{_sigma_label(run.sigma_bar)}.csv")
    rows = [
        ("t_sat_bar", res.t_sat),
        ("a2_max", res.a2_max),
        ("t_sat_s", res.t_sat_seconds),
        ("intracavity_W_per_cm2", res.intracavity / 1e4),
        ("transmitted_W_per_cm2", res.transmitted / 1e4),
        ("dominant_grating_period_m", res.dominant_grating_period),
    ]
    write_csv(outdir / "saturation_report.csv", ("quantity", "value"), rows)
    lines = [c.line() for c in res.checks]
    (outdir / "checks.txt").write_text("\n".join(lines) + "\n")
    print("\n".join(lines))
    return EXIT_OK if res.passed else EXIT_FAIL


COMMANDS = {
    "derive-params": cmd_derive_params,
    "run": cmd_run,
    "growth-rate": cmd_growth_rate,
    "scan-sigma": cmd_scan_sigma,
    "fig3": cmd_fig3,
    "cs-example": cmd_cs_example,
}


def execute(command: str, system, run: RunConfig, overrides: dict, params: dict, outdir: Path) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    _write_manifest(outdir, command, system, run, overrides, params)
    return COMMANDS[command](system, run, params, outdir)


# ------------------------------------------------------------ argument parsing


def _add_common(p: argparse.ArgumentParser, run_flags: bool = True):
    p.add_argument("--config", type=Path, default=None, help="config file (default: bundled cs_example)")
    p.add_argument("--out", type=Path, default=None, help=f"output directory (default: ${OUTPUT_ENV} or ./carlfwm-output)")
    if run_flags:
        g = p.add_argument_group("run overrides")
        for name, typ in FLAG_FIELDS.items():
            g.add_argument("--" + name.replace("_", "-"), dest=name, type=typ, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="carlfwm", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"carlfwm {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive-params", help="physical config -> scaled parameter report")
    _add_common(p, run_flags=False)

    p = sub.add_parser("run", help="integrate one trajectory and write CSV")
    _add_common(p)
    p.add_argument("--phase-space", action="store_true", help="also dump the final (theta, p_bar) per particle")

    p = sub.add_parser("growth-rate", help="roots of the linear dispersion cubic, optionally checked by simulation")
    _add_common(p)
    p.add_argument("--kappas", type=float, nargs="+", default=[0.0, 0.01, 0.05])
    p.add_argument("--simulate", action="store_true", help="fit the growth rate from a cold-beam simulation too")

    for name, hlp in (("scan-sigma", "growth rate and saturation across sigma_bar"), ("fig3", "trajectories per sigma_bar + summary")):
        p = sub.add_parser(name, help=hlp)
        _add_common(p)
        p.add_argument("--sigmas", type=float, nargs="+", default=list(FIG3_SIGMAS))
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("cs-example", help="full Cs pipeline with pass/fail against the reference numbers")
    _add_common(p)

    p = sub.add_parser("replay", help="re-run a command from its manifest.json")
    p.add_argument("manifest", type=Path)
    p.add_argument("--out", type=Path, default=None)
    return ap


def _outdir(arg) -> Path:
    if arg is not None:
        return arg
    return Path(os.environ.get(OUTPUT_ENV, "carlfwm-output"))


def _params_from_args(args) -> dict:
    params = {}
    for key in ("kappas", "simulate", "sigmas", "workers", "phase_space"):
        if hasattr(args, key):
            params[key] = getattr(args, key)
    if args.command == "cs-example":
        params = {}
    return params


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "replay":
            manifest = json.loads(args.manifest.read_text())
            loaded = loads(manifest["config"], source=str(args.manifest))
            command = manifest["command"]
            run = RunConfig(**loaded.run)
            overrides = manifest.get("overrides", {})
            params = manifest.get("params", {})
            outdir = args.out if args.out is not None else args.manifest.parent
        else:
            command = args.command
            loaded = load(args.config if args.config is not None else bundled_path())
            overrides = {k: getattr(args, k) for k in FLAG_FIELDS if getattr(args, k, None) is not None}
            if command == "cs-example":
                overrides.setdefault("sigma_bar", 0.1)
            run = resolve_run(loaded.system, loaded.run, overrides)
            params = _params_from_args(args)
            outdir = _outdir(args.out)
        return execute(command, loaded.system, run, overrides, params, outdir)
    except (ConfigError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        if isinstance(exc, NoSaturation):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrationError as exc:
        print(f"error: numerical blow-up: {exc}", file=sys.stderr)
        return EXIT_BLOWUP


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
