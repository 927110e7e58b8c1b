"""Lab-parameter calculator: couplings, interaction scales and design SNR.

Maps (species mass, atom number, trap radius, hold time, repetitions,
magnetic field) to the self-interaction energy of a trapped condensate in
the Gaussian ground state, the dimensionless interaction scale chi t N^2,
the s-wave contact coupling, and the detection SNR of the fourth cumulant.

Unit policy: SI internally.  Helpers for micrometre / gauss / Bohr-radius
inputs are provided here so conversions live in one place.
"""

import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .errors import ConfigError, DomainError, ResonancePole
from .fock import SqueezeParams
from . import analytic, cumulants

MICROMETER = 1e-6
GAUSS = 1e-4  # tesla

CONSTANTS_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ConstantsRegistry:
    G: float
    hbar: float
    c: float
    mu0: float
    bohr_radius: float
    masses: dict  # species tag -> kg
    feshbach_defaults: dict = field(default_factory=dict)

    def mass(self, species):
        if species not in self.masses:
            raise ConfigError(f"unknown species {species!r}; have {sorted(self.masses)}")
        return self.masses[species]


def load_constants(path=None):
    """Parse the key = value constants file (see data/constants.cfg)."""
    if path is None:
        text = resources.files("nongauss.data").joinpath("constants.cfg").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    kv = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"bad constants line: {line!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        kv[key] = val
    version = int(kv.pop("schema_version", "-1"))
    if version != CONSTANTS_SCHEMA_VERSION:
        raise ConfigError(f"constants schema_version {version} != {CONSTANTS_SCHEMA_VERSION}")
    masses = {}
    fesh = {}
    plain = {}
    for key, val in kv.items():
        if key.startswith("mass."):
            masses[key[5:]] = float(val)
        elif key.startswith("feshbach."):
            _, species, name = key.split(".")
            fesh.setdefault(species, {})[name] = float(val)
        else:
            plain[key] = float(val)
    try:
        return ConstantsRegistry(
            G=plain["G"], hbar=plain["hbar"], c=plain["c"], mu0=plain["mu0"],
            bohr_radius=plain["bohr_radius"], masses=masses, feshbach_defaults=fesh)
    except KeyError as exc:
        raise ConfigError(f"constants file missing {exc}") from exc


CONSTANTS = load_constants()


@dataclass(frozen=True)
class ExperimentParams:
    mass: float  # single-particle mass, kg
    atom_count: float
    radius: float  # effective trap radius R, m
    time: float  # hold time, s
    repetitions: int
    trap_frequency: float = None  # rad/s; if given must satisfy R = sqrt(hbar/(m omega0))

    def __post_init__(self):
        for name in ("mass", "atom_count", "radius", "time", "repetitions"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.trap_frequency is not None:
            r_implied = math.sqrt(CONSTANTS.hbar / (self.mass * self.trap_frequency))
            if abs(r_implied - self.radius) > 1e-9 * self.radius:
                raise ConfigError(
                    f"radius {self.radius} inconsistent with trap frequency "
                    f"(implies {r_implied})")

    @property
    def total_mass(self):
        return self.mass * self.atom_count


@dataclass(frozen=True)
class FeshbachParams:
    a_bg: float  # background scattering length, m
    B0: float  # resonance position, gauss
    Delta: float  # resonance width, gauss

    def __post_init__(self):
        if self.Delta == 0:
            raise ConfigError("Feshbach Delta must be nonzero")

    def zero_crossing(self):
        return self.B0 + self.Delta


def default_feshbach(species="cs133", constants=CONSTANTS):
    cfg = constants.feshbach_defaults.get(species)
    if cfg is None:
        raise ConfigError(f"no Feshbach defaults for species {species!r}")
    return FeshbachParams(a_bg=cfg["a_bg_bohr"] * constants.bohr_radius,
                          B0=cfg["B0_gauss"], Delta=cfg["Delta_gauss"])


def lambda_qg_gaussian(m, R, constants=CONSTANTS):
    """Self-gravity energy of the Gaussian ground-state density: the 6-d
    double integral -G m^2 (|psi|^2 x |psi|^2)/|r - r'| collapses to
    -sqrt(2/pi) G m^2 / R for psi with variance R^2/2 per axis."""
    if R <= 0:
        raise DomainError("R must be positive")
    return -math.sqrt(2.0 / math.pi) * constants.G * m * m / R


def interaction_scale(M, R, t, constants=CONSTANTS):
    """chi t N^2 = sqrt(2/pi) G M^2 t / (hbar R) with M the total mass."""
    return math.sqrt(2.0 / math.pi) * constants.G * M * M * t / (constants.hbar * R)


def g_s(a_s, m, constants=CONSTANTS):
    """Contact coupling 4 pi hbar^2 a_s / m."""
    return 4.0 * math.pi * constants.hbar**2 * a_s / m


def lambda_s(a_s, m, R, constants=CONSTANTS):
    """s-wave interaction energy scale sqrt(2/pi) a_s hbar^2 / (m R^3)."""
    return math.sqrt(2.0 / math.pi) * a_s * constants.hbar**2 / (m * R**3)


def feshbach_a_s(B, p):
    """a_s(B) = a_bg [1 - Delta / (B - B0)]; B in gauss."""
    if B == p.B0:
        raise ResonancePole(f"B = B0 = {p.B0} gauss")
    return p.a_bg * (1.0 - p.Delta / (B - p.B0))


def planck_ratio(M, R, t, constants=CONSTANTS):
    """(M / M_P) (delta_tau / t_P) with delta_tau = sqrt(2/pi) G M t / (R c^2).

    Algebraically identical to interaction_scale; kept as an independent
    computation through Planck units as a consistency check.
    """
    m_planck = math.sqrt(constants.hbar * constants.c / constants.G)
    t_planck = math.sqrt(constants.hbar * constants.G / constants.c**5)
    delta_tau = math.sqrt(2.0 / math.pi) * constants.G * M * t / (R * constants.c**2)
    return (M / m_planck) * (delta_tau / t_planck)


def atoms_for_mass(M_total, species, constants=CONSTANTS):
    return int(round(M_total / constants.mass(species)))


FIRST_ORDER_SNR_COEFF = 4.9  # large-N optimal-angle coefficient of chi t N^2 sqrt(M)


def design_snr(p, r=None, mode="first_order", constants=CONSTANTS):
    """Detection SNR for the given design.

    first_order: 4.9 chi t N^2 sqrt(reps), the large-N optimal-angle value of
    the first-order formula at full squeezing.
    nonperturbative: exact cumulants at the numerically optimal quadrature
    angle (scanned in the scaled variable nu e^{2r}, where the optimum lives
    for strong squeezing), SNR = |kappa4| / sqrt(Var(k4)).
    """
    scale = interaction_scale(p.total_mass, p.radius, p.time, constants)
    reps = p.repetitions
    if mode == "first_order":
        return FIRST_ORDER_SNR_COEFF * scale * math.sqrt(reps)
    if mode != "nonperturbative":
        raise ConfigError(f"unknown design_snr mode {mode!r}")
    n_atoms = p.atom_count
    if r is None:
        r = math.asinh(math.sqrt(n_atoms))  # full squeezing: <N> = sinh^2 r
    chi_t = scale / n_atoms**2
    xi = SqueezeParams(r=r, theta=0.0)

    def snr_at(nu):
        kap = analytic.exact_cumulants(0.0, xi, nu / 2.0, chi_t, 1.0)
        return cumulants.snr(kap[4], cumulants.var_k4(kap, reps))

    unit = math.exp(-2.0 * r)
    ws = np.concatenate([-np.geomspace(0.5, 2000.0, 22)[::-1],
                         np.geomspace(0.5, 2000.0, 22)])
    vals = [snr_at(w * unit) for w in ws]
    i = int(np.argmax(vals))
    lo = ws[max(i - 1, 0)]
    hi = ws[min(i + 1, len(ws) - 1)]
    for w in np.linspace(lo, hi, 17):
        s = snr_at(w * unit)
        if s > vals[i]:
            vals[i] = s
    return vals[i]
