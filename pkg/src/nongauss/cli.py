"""Command-line surface.

Usage:
    nongauss <command> --config cfg.json [--out DIR] [--seed N] [--format csv|json]

Commands: evolve, design, wigner, master, snr, acceptance.

Every command reads a JSON config with a top-level "schema_version": 1 and
command-specific keys (unknown keys are rejected), and writes <command>.csv
(or .json with --format json) plus a sidecar <command>.meta.json carrying the
artifact version, the full config echo, the seed, and command-specific
metadata.  Identical config + seed gives byte-identical outputs.

Config schemas (all keys optional unless marked *):

  state block (used by evolve/wigner/master/snr):
      type*: coherent | squeezed | yurke_stoler | fock
      alpha: [re, im] or number      (coherent / squeezed / yurke_stoler)
      r, theta: squeeze magnitude / angle   (squeezed)
      n: occupation                  (fock)
      dim*: basis truncation

  evolve:   state*, chi (Kerr rate, default 1.0), gamma (phase-channel rate,
            default chi * <N> so CG tracks the mean-field phase), times*
            (list, or {"start":, "stop":, "count":}), angles (list, default
            8 angles in [0, pi))
  design:   species (default cs133), total_mass_kg* (list), radius_m*,
            time_s*, repetitions* (list), mode (first_order |
            nonperturbative, default first_order)
  wigner:   state*, chi_t (Kerr phase applied before plotting, default 0),
            xmax (default 6), points (default 101)
  master:   state*, rates* ({lambda_R, lambda_I, kappa_geom} or
            {kappa_RR, kappa_IR, kappa_II}), times*, offdiag (index pair,
            default [0, 1]), angles (as in evolve), tol (gaussianity
            threshold, default 1e-8)
  snr:      state*, chi_t*, angles* (list of quadrature angles),
            repetitions*, estimate (bool: also draw `repetitions` samples
            per angle with the run seed and report the k-statistic)
  acceptance: criteria (list like ["A1", "A4"], default all)

Exit codes: 0 success, 1 acceptance criterion failed, 2 config error,
3 numerical non-convergence, 4 truncation error.
"""

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from . import acceptance as acceptance_mod
from . import analytic, channels, cumulants, experiment, fock
from .errors import ConfigError, NongaussError
from .util import child_seed

SCHEMA_VERSION = 1
ARTIFACT_VERSION = 1


# ------------------------------------------------------------- config plumbing

def load_config(path, allowed, required):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    version = cfg.pop("schema_version", None)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"schema_version must be {SCHEMA_VERSION}, got {version!r}")
    unknown = sorted(set(cfg) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown config keys: {unknown}")
    missing = sorted(set(required) - set(cfg))
    if missing:
        raise ConfigError(f"missing config keys: {missing}")
    return cfg


def _as_complex(value, key):
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2:
        return complex(value[0], value[1])
    raise ConfigError(f"{key} must be a number or [re, im] pair")


def build_state(block):
    if not isinstance(block, dict) or "type" not in block or "dim" not in block:
        raise ConfigError("state block needs at least 'type' and 'dim'")
    kind = block["type"]
    dim = int(block["dim"])
    extra = set(block) - {"type", "dim", "alpha", "r", "theta", "n"}
    if extra:
        raise ConfigError(f"unknown state keys: {sorted(extra)}")
    alpha = _as_complex(block.get("alpha", 0.0), "alpha")
    if kind == "coherent":
        return fock.coherent_state(alpha, dim)
    if kind == "squeezed":
        xi = fock.SqueezeParams(r=float(block.get("r", 0.0)),
                                theta=float(block.get("theta", 0.0)))
        return fock.squeezed_coherent_state(alpha, xi, dim)
    if kind == "yurke_stoler":
        return fock.yurke_stoler_state(alpha, dim)
    if kind == "fock":
        return fock.fock_state(int(block.get("n", 0)), dim)
    raise ConfigError(f"unknown state type {kind!r}")


def parse_times(spec):
    if isinstance(spec, list):
        return [float(t) for t in spec]
    if isinstance(spec, dict) and set(spec) == {"start", "stop", "count"}:
        return [float(t) for t in
                np.linspace(spec["start"], spec["stop"], int(spec["count"]))]
    raise ConfigError("times must be a list or {start, stop, count}")


def parse_angles(cfg, default_count=8):
    angles = cfg.get("angles")
    if angles is None:
        return [float(p) for p in np.linspace(0.0, math.pi, default_count, endpoint=False)]
    if not isinstance(angles, list) or not angles:
        raise ConfigError("angles must be a non-empty list")
    return [float(p) for p in angles]


# --------------------------------------------------------------- file writing

def _py(value):
    """Coerce numpy scalars so CSV repr and JSON serialization are uniform."""
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    return value


def _fmt(value):
    if isinstance(value, float):
        return repr(value)  # shortest round-trip
    return str(value)


def write_artifact(out_dir, command, columns, rows, fmt, config, seed, meta=None):
    os.makedirs(out_dir, exist_ok=True)
    data_path = os.path.join(out_dir, f"{command}.{fmt}")
    sidecar_path = os.path.join(out_dir, f"{command}.meta.json")
    sidecar = {
        "artifact": f"nongauss.{command}",
        "artifact_version": ARTIFACT_VERSION,
        "schema_version": SCHEMA_VERSION,
        "columns": list(columns),
        "seed": seed,
        "format": fmt,
        "config": config,
    }
    if meta:
        sidecar.update({k: _py(v) for k, v in meta.items()})
    rows = [[_py(v) for v in row] for row in rows]
    try:
        with open(data_path, "w") as fh:
            if fmt == "csv":
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(columns)
                for row in rows:
                    writer.writerow([_fmt(v) for v in row])
            else:
                json.dump({"columns": list(columns),
                           "rows": [[v for v in row] for row in rows]},
                          fh, indent=1, sort_keys=True)
                fh.write("\n")
        with open(sidecar_path, "w") as fh:
            json.dump(sidecar, fh, indent=1, sort_keys=True)
            fh.write("\n")
    except BaseException:
        for path in (data_path, sidecar_path):
            if os.path.exists(path):
                os.unlink(path)
        raise
    return data_path


# ------------------------------------------------------------------- commands

def _angle_cumulants(state, angles):
    rows = []
    for phi in angles:
        mu = fock.quadrature_moments(state, phi, max_order=4)
        kap = cumulants.cumulants_from_moments(mu, phi=phi)
        rows.append((phi, kap[3], kap[4]))
    return rows


def cmd_evolve(cfg, out_dir, seed, fmt):
    cfg = dict(cfg)
    state0 = build_state(cfg["state"])
    chi = float(cfg.get("chi", 1.0))
    mean_n0 = fock.normal_ordered_expect(state0, 1, 1).real
    gamma = float(cfg.get("gamma", chi * mean_n0))
    times = parse_times(cfg["times"])
    angles = parse_angles(cfg)
    rows = []
    for t in times:
        evolved = (("qg", fock.kerr_evolve(state0, fock.KerrParams(chi=chi), t)),
                   ("cg", fock.phase_evolve(state0, gamma, t)))
        for channel, st in evolved:
            mean_n = fock.normal_ordered_expect(st, 1, 1).real
            fidelity = abs(np.vdot(state0.amps, st.amps)) ** 2
            for phi, k3, k4 in _angle_cumulants(st, angles):
                rows.append((channel, t, phi, k3, k4, mean_n, fidelity))
    return write_artifact(out_dir, "evolve",
                          ("channel", "t", "phi", "kappa3", "kappa4", "mean_n", "fidelity"),
                          rows, fmt, cfg, seed, meta={"chi": chi, "gamma": gamma})


def cmd_design(cfg, out_dir, seed, fmt):
    species = cfg.get("species", "cs133")
    masses = cfg["total_mass_kg"]
    reps_list = cfg["repetitions"]
    radius = float(cfg["radius_m"])
    t = float(cfg["time_s"])
    mode = cfg.get("mode", "first_order")
    if not isinstance(masses, list) or not isinstance(reps_list, list):
        raise ConfigError("total_mass_kg and repetitions must be lists")
    m_atom = experiment.CONSTANTS.mass(species)
    rows = []
    for m_total in masses:
        atoms = experiment.atoms_for_mass(m_total, species)
        scale = experiment.interaction_scale(m_total, radius, t)
        for reps in reps_list:
            p = experiment.ExperimentParams(mass=m_atom, atom_count=atoms,
                                            radius=radius, time=t,
                                            repetitions=int(reps))
            snr = experiment.design_snr(p, mode=mode)
            rows.append((species, float(m_total), atoms, radius, t, int(reps),
                         scale, mode, snr))
    return write_artifact(out_dir, "design",
                          ("species", "total_mass_kg", "atoms", "radius_m", "time_s",
                           "repetitions", "chi_t_n2", "mode", "snr"),
                          rows, fmt, cfg, seed)


def cmd_wigner(cfg, out_dir, seed, fmt):
    state = build_state(cfg["state"])
    chi_t = float(cfg.get("chi_t", 0.0))
    if chi_t:
        state = fock.kerr_evolve(state, fock.KerrParams(chi=1.0), chi_t)
    xmax = float(cfg.get("xmax", 6.0))
    points = int(cfg.get("points", 101))
    axis = np.linspace(-xmax, xmax, points)
    grid = fock.wigner(state, axis, axis)
    rows = [(float(x), float(p), float(grid.values[i, j]))
            for i, p in enumerate(grid.p_axis)
            for j, x in enumerate(grid.x_axis)]
    meta = {"convention": grid.convention,
            "trace_estimate": grid.trace_estimate,
            "min_w": float(np.min(grid.values)),
            "chi_t": chi_t}
    return write_artifact(out_dir, "wigner", ("x", "p", "w"), rows, fmt, cfg, seed, meta)


def _channel_spec(rates):
    if not isinstance(rates, dict):
        raise ConfigError("rates must be an object")
    if set(rates) == {"lambda_R", "lambda_I", "kappa_geom"}:
        return channels.ChannelSpec.from_couplings(
            float(rates["lambda_R"]), float(rates["lambda_I"]), float(rates["kappa_geom"]))
    if set(rates) == {"kappa_RR", "kappa_IR", "kappa_II"}:
        return channels.ChannelSpec(kappa_RR=float(rates["kappa_RR"]),
                                    kappa_IR=float(rates["kappa_IR"]),
                                    kappa_II=float(rates["kappa_II"]))
    raise ConfigError("rates must give {lambda_R, lambda_I, kappa_geom} "
                      "or {kappa_RR, kappa_IR, kappa_II}")


def cmd_master(cfg, out_dir, seed, fmt):
    state = build_state(cfg["state"]).to_mixed()
    spec = _channel_spec(cfg["rates"])
    times = parse_times(cfg["times"])
    angles = parse_angles(cfg)
    tol = float(cfg.get("tol", 1e-8))
    m, n = (int(i) for i in cfg.get("offdiag", [0, 1]))
    rows = []
    for t in times:
        st = channels.master_evolve(state, spec, t)
        report = channels.gaussianity_report(st, angles, tol=tol)
        k3 = max(abs(row["kappa3"]) for row in report["angles"])
        k4 = max(abs(row["kappa4"]) for row in report["angles"])
        rows.append((t, abs(st.rho[m, n]), st.trace(), k3, k4,
                     int(report["non_gaussian"])))
    return write_artifact(out_dir, "master",
                          ("t", "offdiag_abs", "trace", "max_kappa3", "max_kappa4",
                           "non_gaussian"),
                          rows, fmt, cfg, seed,
                          meta={"offdiag": [m, n], "tol": tol})


def cmd_snr(cfg, out_dir, seed, fmt):
    block = dict(cfg["state"])
    if block.get("type") != "squeezed":
        raise ConfigError("snr needs a squeezed state block (exact cumulant path)")
    alpha = _as_complex(block.get("alpha", 0.0), "alpha")
    if alpha.imag:
        raise ConfigError("snr supports real alpha only")
    xi = fock.SqueezeParams(r=float(block.get("r", 0.0)),
                            theta=float(block.get("theta", 0.0)))
    chi_t = float(cfg["chi_t"])
    reps = int(cfg["repetitions"])
    angles = cfg["angles"]
    if not isinstance(angles, list) or not angles:
        raise ConfigError("angles must be a non-empty list")
    estimate = bool(cfg.get("estimate", False))
    state = build_state(block) if estimate else None
    if estimate:
        state = fock.kerr_evolve(state, fock.KerrParams(chi=1.0), chi_t)
    rows = []
    for idx, phi in enumerate(float(p) for p in angles):
        kap = analytic.exact_cumulants(alpha.real, xi, phi, 1.0, chi_t)
        var = cumulants.var_k4(kap, reps)
        snr = cumulants.snr(kap[4], var)
        if estimate:
            samples = fock.sample_quadrature(state, phi, reps, child_seed(seed, idx))
            k4_hat = cumulants.k_statistics(samples).k4
        else:
            k4_hat = float("nan")
        rows.append((phi, kap[2], kap[4], var, snr, k4_hat))
    return write_artifact(out_dir, "snr",
                          ("phi", "kappa2", "kappa4", "var_k4", "snr", "k4_estimate"),
                          rows, fmt, cfg, seed,
                          meta={"chi_t": chi_t, "repetitions": reps})


def cmd_acceptance(cfg, out_dir, seed, fmt):
    wanted = cfg.get("criteria")
    checks = acceptance_mod.ALL_CHECKS
    if wanted is not None:
        by_name = {c.__name__.replace("check_", "").upper(): c for c in checks}
        try:
            checks = [by_name[name.upper()] for name in wanted]
        except KeyError as exc:
            raise ConfigError(f"unknown criterion {exc}") from exc
    results = [check() for check in checks]
    for res in results:
        print(res.line())
    rows = [(res.criterion, int(res.passed), res.measured, res.detail)
            for res in results]
    write_artifact(out_dir, "acceptance",
                   ("criterion", "passed", "measured", "detail"),
                   rows, fmt, cfg, seed,
                   meta={"all_passed": all(res.passed for res in results)})
    return 0 if all(res.passed for res in results) else 1


COMMANDS = {
    "evolve": (cmd_evolve, {"state", "chi", "gamma", "times", "angles"},
               {"state", "times"}),
    "design": (cmd_design,
               {"species", "total_mass_kg", "radius_m", "time_s", "repetitions", "mode"},
               {"total_mass_kg", "radius_m", "time_s", "repetitions"}),
    "wigner": (cmd_wigner, {"state", "chi_t", "xmax", "points"}, {"state"}),
    "master": (cmd_master, {"state", "rates", "times", "offdiag", "angles", "tol"},
               {"state", "rates", "times"}),
    "snr": (cmd_snr, {"state", "chi_t", "angles", "repetitions", "estimate"},
            {"state", "chi_t", "angles", "repetitions"}),
    "acceptance": (cmd_acceptance, {"criteria"}, set()),
}


def main(argv=None):
    parser = argparse.ArgumentParser(prog="nongauss", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="JSON config path (optional for acceptance)")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--seed", type=int, default=0, help="master seed (u64)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    args = parser.parse_args(argv)
    func, allowed, required = COMMANDS[args.command]
    try:
        if args.config is None:
            if required:
                raise ConfigError(f"{args.command} requires --config")
            cfg = {}
        else:
            cfg = load_config(args.config, allowed, required)
        if args.seed < 0 or args.seed >= 2**64:
            raise ConfigError("seed must be a u64")
        out = func(cfg, args.out, args.seed, args.format)
    except NongaussError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return getattr(exc, "exit_code", 2)
    if args.command == "acceptance":
        return out
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
