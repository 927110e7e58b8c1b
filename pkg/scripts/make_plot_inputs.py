#!/usr/bin/env python3
"""Emit the CSV/JSON artifacts the plotting package consumes:
a Wigner grid (Yurke-Stoler, negativity visible), a kappa4(t) comparison of
Kerr vs phase evolution, and an SNR design sweep.

Usage: make_plot_inputs.py [out_dir]   (default: plot_inputs/)
"""

import json
import sys
import tempfile

from nongauss import cli

WIGNER = {
    "schema_version": 1,
    "state": {"type": "yurke_stoler", "alpha": 2.0, "dim": 45},
    "xmax": 10.0,
    "points": 121,
}

EVOLVE = {
    "schema_version": 1,
    "state": {"type": "coherent", "alpha": 2.0, "dim": 60},
    "chi": 1.0,
    "times": {"start": 0.0, "stop": 0.2, "count": 21},
    "angles": [0.0],
}

DESIGN = {
    "schema_version": 1,
    "total_mass_kg": [1e-16, 3e-16, 1e-15, 3e-15, 1e-14],
    "radius_m": 200e-6,
    "time_s": 2.0,
    "repetitions": [10000, 40000, 160000],
}


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "plot_inputs"
    for command, config in (("wigner", WIGNER), ("evolve", EVOLVE), ("design", DESIGN)):
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
            json.dump(config, fh)
            path = fh.name
        code = cli.main([command, "--config", path, "--out", out, "--seed", "0"])
        if code != 0:
            sys.exit(code)


if __name__ == "__main__":
    main()
