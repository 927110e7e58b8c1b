import math

import numpy as np
import pytest
from scipy.integrate import quad

from nongauss import experiment
from nongauss.errors import ConfigError, DomainError, ResonancePole


def test_lambda_qg_gaussian_vs_pair_distance_quadrature():
    # -G m^2 <1/|x - x'|> with x, x' iid Gaussian, variance R^2/2 per axis:
    # the pair distance is Maxwell with scale R, so integrate (1/d) p(d) dd
    m, R = 3e-15, 180e-6
    pdf = lambda d: math.sqrt(2 / math.pi) * d**2 / R**3 * math.exp(-d**2 / (2 * R**2))
    inv_mean, err = quad(lambda d: pdf(d) / d, 0, 20 * R)
    assert err < 1e-8 * inv_mean
    want = -experiment.CONSTANTS.G * m**2 * inv_mean
    got = experiment.lambda_qg_gaussian(m, R)
    assert abs(got - want) < 1e-10 * abs(want)


def test_lambda_qg_gaussian_bad_radius():
    with pytest.raises(DomainError):
        experiment.lambda_qg_gaussian(1e-15, 0.0)


def test_interaction_scale_anchor():
    assert abs(experiment.interaction_scale(1e-14, 200e-6, 2.0) - 0.505) < 5e-4


def test_interaction_scale_consistent_with_lambda():
    # chi t N^2 = |lambda_qg| N^2 t / hbar with m = M / N
    M, R, t, n = 2e-15, 150e-6, 1.5, 1e9
    lam = experiment.lambda_qg_gaussian(M / n, R)
    want = abs(lam) * n**2 * t / experiment.CONSTANTS.hbar
    assert abs(experiment.interaction_scale(M, R, t) - want) < 1e-12 * want


def test_planck_ratio_identity():
    for M in (1e-17, 1e-14):
        for R in (50e-6, 400e-6):
            a = experiment.interaction_scale(M, R, 2.0)
            b = experiment.planck_ratio(M, R, 2.0)
            assert abs(a - b) < 1e-12 * a


def test_lambda_s_matches_contact_overlap():
    # lambda_s = g_s int |psi|^4 for the Gaussian with per-axis variance R^2/2
    a_s, m, R = 100 * experiment.CONSTANTS.bohr_radius, 2.2e-25, 1e-6
    dens = lambda r: (math.pi * R**2) ** -1.5 * math.exp(-r**2 / R**2)
    overlap, err = quad(lambda r: 4 * math.pi * r**2 * dens(r) ** 2, 0, 20 * R)
    want = experiment.g_s(a_s, m) * overlap
    got = experiment.lambda_s(a_s, m, R)
    assert abs(got - want) < 1e-9 * abs(want)


def test_feshbach_zero_crossing_and_pole():
    p = experiment.default_feshbach("cs133")
    b0 = p.zero_crossing()
    assert abs(b0 - 17.0) < 1e-12
    assert abs(experiment.feshbach_a_s(b0, p)) < 1e-22
    with pytest.raises(ResonancePole):
        experiment.feshbach_a_s(p.B0, p)
    # far from resonance a_s -> a_bg
    assert abs(experiment.feshbach_a_s(1e6, p) / p.a_bg - 1.0) < 1e-4


def test_constants_file_roundtrip(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("schema_version = 1\nG = 1.0\nhbar = 2.0\nc = 3.0\n"
                   "mu0 = 4.0\nbohr_radius = 5.0\nmass.x = 6.0\n"
                   "feshbach.x.a_bg_bohr = 7.0\nfeshbach.x.B0_gauss = 8.0\n"
                   "feshbach.x.Delta_gauss = 9.0\n")
    reg = experiment.load_constants(str(cfg))
    assert reg.G == 1.0
    assert reg.mass("x") == 6.0
    assert reg.feshbach_defaults["x"]["Delta_gauss"] == 9.0


def test_constants_file_rejects_bad_version(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("schema_version = 99\nG = 1.0\n")
    with pytest.raises(ConfigError):
        experiment.load_constants(str(cfg))


def test_unknown_species_raises():
    with pytest.raises(ConfigError):
        experiment.CONSTANTS.mass("unobtainium")
    with pytest.raises(ConfigError):
        experiment.default_feshbach("unobtainium")


def test_experiment_params_validation():
    with pytest.raises(ConfigError):
        experiment.ExperimentParams(mass=-1.0, atom_count=1, radius=1.0,
                                    time=1.0, repetitions=1)
    m = experiment.CONSTANTS.mass("cs133")
    omega = experiment.CONSTANTS.hbar / (m * (200e-6) ** 2)
    p = experiment.ExperimentParams(mass=m, atom_count=10, radius=200e-6,
                                    time=1.0, repetitions=5, trap_frequency=omega)
    assert abs(p.total_mass - 10 * m) < 1e-40
    with pytest.raises(ConfigError):
        experiment.ExperimentParams(mass=m, atom_count=10, radius=100e-6,
                                    time=1.0, repetitions=5, trap_frequency=omega)


def test_atoms_for_mass_roundtrip():
    n = experiment.atoms_for_mass(1e-15, "cs133")
    assert abs(n * experiment.CONSTANTS.mass("cs133") - 1e-15) < experiment.CONSTANTS.mass("cs133")


def test_design_snr_first_order_scalings():
    m = experiment.CONSTANTS.mass("cs133")
    def snr(mass_total, reps):
        p = experiment.ExperimentParams(mass=m,
                                        atom_count=experiment.atoms_for_mass(mass_total, "cs133"),
                                        radius=200e-6, time=2.0, repetitions=reps)
        return experiment.design_snr(p, mode="first_order")
    base = snr(1e-15, 10000)
    assert abs(snr(1e-15, 40000) / base - 2.0) < 1e-9      # sqrt(M) scaling
    assert abs(snr(2e-15, 10000) / base - 4.0) < 1e-6      # M_total^2 scaling
    scale = experiment.interaction_scale(1e-15, 200e-6, 2.0)
    assert abs(base - experiment.FIRST_ORDER_SNR_COEFF * scale * 100.0) < 1e-9


def test_design_snr_bad_mode():
    m = experiment.CONSTANTS.mass("cs133")
    p = experiment.ExperimentParams(mass=m, atom_count=100, radius=200e-6,
                                    time=2.0, repetitions=10)
    with pytest.raises(ConfigError):
        experiment.design_snr(p, mode="exactly")
