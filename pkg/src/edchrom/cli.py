"""Command-line entry point: run experiments, sweeps and the error/order study.

Artifacts are written to --out: one ``profile_t<T>.csv`` per output time
(header ``z,c1..cN,w1..wN``, shortest round-trip decimals), ``errors.csv`` for
sweep/table modes, and ``manifest.json`` echoing the configuration, time-step
summary, timings and the mass-conservation ledger.  Identical configurations
rerun single-threaded produce byte-identical files; a manifest can be fed back
through --config to reproduce its run.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, backends, harness
from .flux import SchemeKind
from .stepper import run

_CONFIG_SECTIONS = {
    "harness": {"experiment"},
    "flux": {"scheme"},
    "stepper": {"m", "k", "t", "da"},
    "isotherm": {"nu"},
    "cli": {"out", "mref", "jobs"},
}
_SCHEME_NAMES = [k.value for k in SchemeKind]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edchrom", description=__doc__.splitlines()[0])
    p.add_argument("--config", type=Path, help="INI config or a previous manifest.json; flags override")
    p.add_argument("--experiment", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--scheme", help="one of %s (comma-list allowed with --sweep)" % "|".join(_SCHEME_NAMES))
    p.add_argument("--m", help="grid size; comma-separated list for --sweep/--table1")
    p.add_argument("--mref", type=int, help="reference grid size (default 25600)")
    p.add_argument("--nu", type=float, help="Toth heterogeneity exponent in (0,1]")
    p.add_argument("--Da", type=float, help="apparent dispersion coefficient >= 0")
    p.add_argument("--T", type=float, help="final time")
    p.add_argument("--K", type=float, help="CFL factor in (0,1], default 0.8")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p.add_argument("--table1", action="store_true", help="run the error/order study (experiment 4)")
    p.add_argument("--sweep", action="store_true", help="efficiency sweep over schemes and grids")
    p.add_argument("--jobs", type=int, default=1, help="parallel processes for sweep entries")
    p.add_argument("--single-thread", action="store_true", help="force serial execution")
    return p


def _read_ini(path: Path) -> dict:
    cp = configparser.ConfigParser()
    with open(path) as fh:
        cp.read_file(fh)
    flat: dict = {}
    for section in cp.sections():
        if section not in _CONFIG_SECTIONS:
            raise ValueError(f"{path}: unknown config section [{section}]")
        for key, value in cp.items(section):
            if key.lower() not in _CONFIG_SECTIONS[section]:
                raise ValueError(f"{path}: unknown key {key!r} in section [{section}]")
            flat[key.lower()] = value
    return flat


def _read_manifest(path: Path) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    if "config" not in data:
        raise ValueError(f"{path}: not a manifest (missing 'config')")
    cfg = data["config"]
    return {k.lower(): v for k, v in cfg.items() if v is not None}


def parse_config(argv=None):
    """Merge --config file values with command-line flags (flags win)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    merged = {}
    if args.config is not None:
        loader = _read_manifest if args.config.suffix == ".json" else _read_ini
        merged.update(loader(args.config))
    for key in ("experiment", "scheme", "m", "mref", "nu", "T", "K", "jobs"):
        val = getattr(args, key)
        if val is not None and not (key == "jobs" and val == 1 and "jobs" in merged):
            merged[key.lower()] = val
    if args.Da is not None:
        merged["da"] = args.Da
    merged["out"] = str(args.out)
    merged["table1"] = args.table1 or bool(merged.get("table1"))
    merged["sweep"] = args.sweep or bool(merged.get("sweep"))
    merged["single_thread"] = args.single_thread or bool(merged.get("single_thread"))
    return _validate(merged, parser)


def _validate(merged: dict, parser):
    if merged.get("k") is not None and not 0.0 < float(merged["k"]) <= 1.0:
        parser.error(f"K must be in (0, 1], got {merged['k']}")
    if merged.get("da") is not None and float(merged["da"]) < 0:
        parser.error("Da must be >= 0")
    scheme_raw = merged.get("scheme")
    if scheme_raw is None:
        if not merged["table1"] and not merged["sweep"]:
            parser.error("missing --scheme; valid schemes: " + ", ".join(_SCHEME_NAMES))
        schemes = None
    else:
        try:
            schemes = [SchemeKind.from_name(s) for s in str(scheme_raw).split(",")]
        except ValueError as err:
            parser.error(str(err))
    ms = None
    if merged.get("m") is not None:
        ms = [int(s) for s in str(merged["m"]).split(",")]
    merged["schemes"] = schemes
    merged["ms"] = ms
    merged.setdefault("experiment", 1)
    merged["experiment"] = int(merged["experiment"])
    merged.setdefault("mref", 25600)
    merged["mref"] = int(merged["mref"])
    for key in ("nu", "da", "t", "k"):
        if merged.get(key) is not None:
            merged[key] = float(merged[key])
    merged["jobs"] = 1 if merged["single_thread"] else int(merged.get("jobs", 1))
    return merged


def _fmt(x) -> str:
    return repr(float(x))


def emit_profiles(out_dir: Path, result, model) -> list:
    """One CSV per snapshot, columns z, c1..cN, w1..wN in user component order."""
    out_dir.mkdir(parents=True, exist_ok=True)
    n = model.n_components
    header = "z," + ",".join(f"c{i+1}" for i in range(n)) + "," + ",".join(f"w{i+1}" for i in range(n))
    paths = []
    for snap in result.snapshots:
        z = (np.arange(snap.w.shape[1]) + 0.5) / snap.w.shape[1]
        c_user = model.to_user(snap.c)
        w_user = model.to_user(snap.w)
        path = out_dir / f"profile_t{snap.t:g}.csv"
        with open(path, "w", newline="\n") as fh:
            fh.write(header + "\n")
            for j in range(z.size):
                row = [_fmt(z[j])] + [_fmt(x) for x in c_user[:, j]] + [_fmt(x) for x in w_user[:, j]]
                fh.write(",".join(row) + "\n")
        paths.append(path)
    return paths


def emit_errors(out_path: Path, reports) -> Path:
    """CSV table of error reports; theta is blank where no 2m companion exists."""
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", newline="\n") as fh:
        fh.write("scheme,nu,Da,m,e_m,e_m_trimmed,theta_m,seconds\n")
        for r in reports:
            theta = "" if r.theta_m is None else _fmt(r.theta_m)
            fh.write(",".join([r.scheme, _fmt(r.nu), _fmt(r.D_a), str(r.m),
                               _fmt(r.e_m), _fmt(r.e_m_trimmed), theta,
                               _fmt(r.wall_seconds)]) + "\n")
    return out_path


def emit_manifest(out_dir: Path, merged: dict, result=None, reports=None) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    config_echo = {k: merged.get(k) for k in
                   ("experiment", "scheme", "m", "mref", "nu", "da", "t", "k",
                    "table1", "sweep", "single_thread")}
    doc = {"version": __version__, "backend": backends.NAME, "config": config_echo}
    if result is not None:
        doc["run"] = {
            "n_steps": result.n_steps,
            "dt_min": result.dt_min,
            "dt_max": result.dt_max,
            "wall_seconds": result.wall_seconds,
            "mass_ledger_max_defect": result.max_mass_defect,
            "min_w": result.min_w,
            "snapshot_times": [s.t for s in result.snapshots],
        }
    if reports is not None:
        doc["n_reports"] = len(reports)
    path = out_dir / "manifest.json"
    with open(path, "w", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def print_table1(groups, ms, out=sys.stdout):
    """Blocked error/order table: e_m x 1e6 and theta_m per parameter block."""
    das = sorted({key[1] for key in groups}, reverse=True)
    nus = sorted({key[2] for key in groups})
    schemes = []
    for key in groups:
        if key[0] not in schemes:
            schemes.append(key[0])
    for scheme in schemes:
        out.write(f"\n{scheme}\n")
        head = "m".rjust(6)
        for da in das:
            for nu in nus:
                head += f" | Da={da:g} nu={nu:g}".ljust(24)
        out.write(head + "\n")
        for i, m in enumerate(ms):
            line = str(m).rjust(6)
            for da in das:
                for nu in nus:
                    reports = groups[(scheme, da, nu)]
                    r = reports[i]
                    theta = "-" if r.theta_m is None else f"{r.theta_m:.2f}"
                    line += f" | {r.e_m * 1e6:10.2f}  {theta:>5}"
            out.write(line + "\n")


def _run_single(merged: dict) -> int:
    scheme = merged["schemes"][0]
    m = (merged["ms"] or [800])[0]
    model, config = harness.experiment_preset(
        merged["experiment"], scheme, m, nu=merged.get("nu"), D_a=merged.get("da"),
        T=merged.get("t"), K=merged.get("k") or 0.8)
    result = run(config, model)
    out_dir = Path(merged["out"])
    paths = emit_profiles(out_dir, result, model)
    merged = dict(merged, scheme=scheme.value, m=m)
    emit_manifest(out_dir, merged, result=result)
    print(f"wrote {len(paths)} profile(s) and manifest.json to {out_dir}")
    return 0


def _run_sweep(merged: dict) -> int:
    schemes = merged["schemes"] or list(SchemeKind)
    ms = merged["ms"] or [100, 200, 400, 800]
    exp = merged["experiment"]
    t_final = merged.get("t") or harness._EXP_DEFAULTS[exp]["T"]
    ref_scheme = SchemeKind.COMP_UPW5 if exp == 4 else SchemeKind.CHR_UPW
    ref = harness.reference_solution(exp, ref_scheme, merged["mref"], t_final,
                                     nu=merged.get("nu"), D_a=merged.get("da"))
    reports = harness.efficiency_sweep(schemes, ms, exp, t_final, ref,
                                       nu=merged.get("nu"), D_a=merged.get("da"),
                                       jobs=merged["jobs"])
    out_dir = Path(merged["out"])
    emit_errors(out_dir / "errors.csv", reports)
    merged = dict(merged, scheme=",".join(s.value for s in schemes), m=",".join(map(str, ms)))
    emit_manifest(out_dir, merged, reports=reports)
    print(f"wrote errors.csv ({len(reports)} rows) to {out_dir}")
    return 0


def _run_table1(merged: dict) -> int:
    ms = merged["ms"] or [100, 200, 400, 800, 1600]
    nus = [merged["nu"]] if merged.get("nu") is not None else [0.95, 1.0]
    das = [merged["da"]] if merged.get("da") is not None else [1e-4, 1e-5]
    schemes = merged["schemes"] or [SchemeKind.CHR_UPW, SchemeKind.COMP_UPW5, SchemeKind.COMP_GLF]
    groups = {}
    all_reports = []
    for da in das:
        for nu in nus:
            ref = harness.reference_solution(4, SchemeKind.COMP_UPW5, merged["mref"],
                                             0.5, nu=nu, D_a=da)
            for scheme in schemes:
                reports = harness.efficiency_sweep([scheme], ms, 4, 0.5, ref,
                                                   nu=nu, D_a=da, jobs=merged["jobs"])
                groups[(scheme.value, da, nu)] = reports
                all_reports.extend(reports)
    print_table1(groups, ms)
    out_dir = Path(merged["out"])
    emit_errors(out_dir / "errors.csv", all_reports)
    merged = dict(merged, scheme=",".join(s.value for s in schemes), m=",".join(map(str, ms)))
    emit_manifest(out_dir, merged, reports=all_reports)
    return 0


def main(argv=None) -> int:
    merged = parse_config(argv)
    if merged["table1"]:
        return _run_table1(merged)
    if merged["sweep"]:
        return _run_sweep(merged)
    return _run_single(merged)


if __name__ == "__main__":
    sys.exit(main())
