import math

import numpy as np
import pytest

from nongauss import channels, cumulants, fock
from nongauss.errors import ConfigError


def coherent_rho(alpha=1.5, dim=30):
    return fock.coherent_state(alpha, dim=dim).to_mixed()


def test_channel_spec_consistency_enforced():
    spec = channels.ChannelSpec.from_couplings(0.4, 0.3, 1.2)
    assert abs(spec.kappa_RR - 1.2**2 * 0.4**2 / 4) < 1e-15
    assert abs(spec.kappa_IR - 1.2**2 * 0.3 * 0.4 / 2) < 1e-15
    with pytest.raises(ConfigError):
        channels.ChannelSpec(kappa_RR=1.0, kappa_IR=0.0, kappa_II=0.0,
                             lambda_R=0.4, lambda_I=0.3, kappa_geom=1.2,
                             consistent=True)


def test_master_matches_hull_analytic():
    rho = coherent_rho()
    for lr, li, kg in ((0.8, 0.0, 1.0), (0.3, 0.2, 0.7), (0.0, 0.4, 1.2)):
        spec = channels.ChannelSpec.from_couplings(lr, li, kg)
        a = channels.master_evolve(rho, spec, 0.05)
        b = channels.hull_analytic(rho, lr, li, kg, 0.05)
        assert np.max(np.abs(a.rho - b.rho)) < 1e-12


def test_hull_quadrature_converges_to_analytic():
    rho = coherent_rho(dim=25)
    a = channels.hull_evolve(rho, 0.3, 0.2, 0.7, 0.04, nodes=64)
    b = channels.hull_analytic(rho, 0.3, 0.2, 0.7, 0.04)
    assert np.max(np.abs(a.rho - b.rho)) < 1e-9


def test_master_semigroup():
    rho = coherent_rho()
    spec = channels.ChannelSpec.from_couplings(0.3, 0.2, 0.7)
    one = channels.master_evolve(rho, spec, 0.09)
    two = channels.master_evolve(channels.master_evolve(rho, spec, 0.04), spec, 0.05)
    assert np.max(np.abs(one.rho - two.rho)) < 1e-12


def test_master_hermiticity_preserved():
    rho = coherent_rho()
    spec = channels.ChannelSpec.from_couplings(0.5, 0.1, 1.0)
    out = channels.master_evolve(rho, spec, 0.1)
    assert out.herm_defect() < 1e-12


def test_dephasing_only_decay_rate():
    # lambda_I = 0: rho_mn(t) = e^{-kappa_RR (m-n)^2 t} (x phase) rho_mn(0)
    rho = coherent_rho(dim=20)
    spec = channels.ChannelSpec.from_couplings(0.6, 0.0, 1.0)
    t = 0.3
    out = channels.master_evolve(rho, spec, t)
    for m, n in ((0, 1), (0, 3), (2, 5)):
        want = abs(rho.rho[m, n]) * math.exp(-spec.kappa_RR * (m - n) ** 2 * t)
        assert abs(abs(out.rho[m, n]) - want) < 1e-14
    assert abs(out.trace() - 1.0) < 1e-12


def test_trace_grows_when_kappa_ii_positive():
    rho = coherent_rho(dim=20)
    spec = channels.ChannelSpec.from_couplings(0.0, 0.4, 1.0)
    traces = [channels.master_evolve(rho, spec, t).trace() for t in (0.0, 0.05, 0.1)]
    assert traces[0] < traces[1] < traces[2]
    assert not channels.master_evolve(rho, spec, 0.05).normalized


def test_nonhermitian_maps_coherent_to_coherent():
    alpha, lr, li, t = 2.0, 0.3, 0.05, 1.0
    st0 = fock.coherent_state(alpha, dim=50)
    out, norm = channels.nonhermitian_evolve(st0, lr, li, t)
    target = fock.coherent_state(alpha * np.exp(-1j * lr * t) * np.exp(-li * t), dim=50)
    assert abs(abs(np.vdot(target.amps, out.amps)) - 1.0) < 1e-10
    assert 0 < norm < 1


def test_nonhermitian_zero_norm_rejected():
    st0 = fock.fock_state(3, dim=8)
    with pytest.raises(ConfigError):
        channels.nonhermitian_evolve(st0, 0.0, 500.0, 10.0)


def test_hull_nodes_weights_normalized():
    nodes = channels.hull_nodes(0.7, 32)
    assert abs(sum(s.weight for s in nodes) - 1.0) < 1e-12
    # mixture second moment <g^2> = 1/(2 t)
    m2 = sum(s.weight * s.g**2 for s in nodes)
    assert abs(m2 - 1.0 / (2 * 0.7)) < 1e-10


def test_schrodinger_newton_scaling():
    assert channels.schrodinger_newton_lambda(-2.5e-30, 1e6) == -2.5e-24


def test_gaussianity_report_flags_kerr_not_vacuum():
    angles = np.linspace(0, math.pi, 8, endpoint=False)
    vac = fock.fock_state(0, dim=10)
    rep = channels.gaussianity_report(vac, angles)
    assert not rep["non_gaussian"]
    kerr = fock.kerr_evolve(fock.coherent_state(2.0, dim=60), fock.KerrParams(chi=1.0), 0.1)
    rep2 = channels.gaussianity_report(kerr, angles)
    assert rep2["non_gaussian"]
    assert any(abs(row["kappa4"]) > 1e-3 for row in rep2["angles"])


def test_gaussianity_survives_gaussian_channels():
    angles = np.linspace(0, math.pi, 8, endpoint=False)
    sq = fock.squeezed_coherent_state(0.8, fock.SqueezeParams(0.5, 0.2), dim=70)
    out, _ = channels.nonhermitian_evolve(sq, 0.4, 0.2, 1.0)
    rep = channels.gaussianity_report(out, angles)
    assert not rep["non_gaussian"]


def test_hull_averaged_state_can_leave_flagged_statistics():
    # mixing Gaussian members is allowed to produce nonzero averaged kappa4;
    # the report is a witness of non-Gaussian statistics, not hull membership
    rho = coherent_rho(alpha=2.0, dim=40)
    out = channels.master_evolve(rho, channels.ChannelSpec.from_couplings(3.0, 0.0, 1.0), 0.1)
    rep = channels.gaussianity_report(out, [0.0, 0.5, 1.0])
    assert rep["non_gaussian"]
