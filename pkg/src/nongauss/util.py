"""Small shared helpers: seed derivation and stable summation."""

import hashlib
import math

import numpy as np


def child_seed(parent_seed, task_index):
    """Deterministic per-task seed: blake2b over "parent:index", truncated to 64 bits.

    This is the seed-splitting rule for parallel sampling/sweeps; fixed so that
    results are reproducible regardless of scheduling.
    """
    h = hashlib.blake2b(f"{int(parent_seed)}:{int(task_index)}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def rng_for(seed):
    return np.random.Generator(np.random.PCG64(int(seed)))


def power_sums(values, max_power):
    """S_p = sum(x^p) for p=1..max_power, each accumulated exactly (math.fsum).

    High-order power sums of ~1e6 samples lose many digits under naive
    accumulation; fsum keeps them exact at float precision.
    """
    x = np.asarray(values, dtype=float)
    out = []
    xp = np.ones_like(x)
    for _ in range(max_power):
        xp = xp * x
        out.append(math.fsum(xp))
    return out


def reduce_angle(phi):
    """Reduce an angle to [0, 2pi)."""
    out = float(phi) % (2.0 * math.pi)
    # tiny negative inputs round up to exactly 2 pi under float modulo
    return 0.0 if out >= 2.0 * math.pi else out
