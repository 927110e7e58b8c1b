"""Classical-gravity channel models: mean-field phase shift, non-Hermitian
quadratic evolution, a number-basis stochastic master equation, and its
Gaussian-convex-hull quadrature solution.

All maps here are diagonal in the number basis, so mixed-state evolution is
element-wise on rho_mn.  The master equation and the hull integral must agree;
the sign of the kappa_IR commutator term is fixed by carrying out the hull's
Gaussian integral (see ChannelSpec docstring), which yields

    rho_mn(t) = exp{ t [ +i kappa_IR (m^2 - n^2)
                         - kappa_RR (m - n)^2
                         + kappa_II (m + n)^2 ] } rho_mn(0).

Trace is not preserved when kappa_II > 0; averaged states are returned
unnormalized with normalized=False and downstream moment code divides by the
trace.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, QuadratureUnconverged
from .fock import MixedState, PureState, phase_evolve, quadrature_moments
from .cumulants import cumulants_from_moments


@dataclass(frozen=True)
class ChannelSpec:
    """Rates of the number-basis master equation.

    When built via from_couplings the three kappas are tied to the underlying
    (lambda_R, lambda_I, kappa_geom) by
        kappa_RR = kappa^2 lambda_R^2 / 4
        kappa_IR = kappa^2 lambda_I lambda_R / 2
        kappa_II = kappa^2 lambda_I^2 / 4
    and the constructor enforces consistency.  Direct construction with
    arbitrary rates is allowed via consistent=False.
    """
    kappa_RR: float
    kappa_IR: float
    kappa_II: float
    lambda_R: float = 0.0
    lambda_I: float = 0.0
    kappa_geom: float = 0.0
    consistent: bool = False

    def __post_init__(self):
        if self.consistent:
            k2 = self.kappa_geom**2
            expect = (k2 * self.lambda_R**2 / 4.0,
                      k2 * self.lambda_I * self.lambda_R / 2.0,
                      k2 * self.lambda_I**2 / 4.0)
            got = (self.kappa_RR, self.kappa_IR, self.kappa_II)
            for e, g in zip(expect, got):
                if abs(e - g) > 1e-12 * max(1.0, abs(e)):
                    raise ConfigError(f"inconsistent channel rates {got} vs {expect}")

    @classmethod
    def from_couplings(cls, lambda_R, lambda_I, kappa_geom):
        k2 = kappa_geom**2
        return cls(kappa_RR=k2 * lambda_R**2 / 4.0,
                   kappa_IR=k2 * lambda_I * lambda_R / 2.0,
                   kappa_II=k2 * lambda_I**2 / 4.0,
                   lambda_R=lambda_R, lambda_I=lambda_I, kappa_geom=kappa_geom,
                   consistent=True)


@dataclass(frozen=True)
class HullSample:
    g: float
    weight: float


def schrodinger_newton_lambda(lambda_qg, n_atoms):
    """Mean-field (state-sourced) coupling: N times the pairwise energy."""
    return n_atoms * lambda_qg


def nonhermitian_evolve(state, lambda_R, lambda_I, t):
    """c_n(t) = e^{-i lambda_R n t} e^{-lambda_I n t} c_n(0).

    Returns (renormalized PureState, pre-normalization norm).  The map is
    Gaussian-preserving: it is a phase rotation combined with a damping that
    maps coherent/squeezed states to coherent/squeezed states.
    """
    n = np.arange(state.dim)
    amps = state.amps * np.exp((-1j * lambda_R - lambda_I) * n * t)
    norm = float(np.linalg.norm(amps))
    if norm == 0:
        raise ConfigError("state damped to zero norm")
    return PureState(amps=amps / norm, tail_mass=state.tail_mass), norm


def master_evolve(rho, spec, t):
    """Element-wise closed-form solution of the number-basis master equation."""
    if isinstance(rho, PureState):
        rho = rho.to_mixed()
    n = np.arange(rho.dim)
    m = n[:, None]
    k = n[None, :]
    expo = t * (1j * spec.kappa_IR * (m**2 - k**2).astype(float)
                - spec.kappa_RR * (m - k).astype(float) ** 2
                + spec.kappa_II * (m + k).astype(float) ** 2)
    out = rho.rho * np.exp(expo)
    normalized = spec.kappa_II == 0
    return MixedState(rho=out, normalized=normalized and rho.normalized)


def hull_nodes(t, count):
    """Gauss-Hermite nodes/weights for the mixture weight P(g,t) = sqrt(t/pi) e^{-g^2 t}."""
    x, w = np.polynomial.hermite.hermgauss(count)
    return [HullSample(g=float(xi / math.sqrt(t)), weight=float(wi / math.sqrt(math.pi)))
            for xi, wi in zip(x, w)]


def _hull_apply(rho, lambda_R, lambda_I, kappa_geom, t, count):
    n = np.arange(rho.shape[0])
    out = np.zeros_like(rho, dtype=complex)
    for node in hull_nodes(t, count):
        # e^{-i k lR n g t - k lI n g t} rho e^{+i k lR n g t - k lI n g t}
        left = np.exp((-1j * kappa_geom * lambda_R - kappa_geom * lambda_I) * n * node.g * t)
        right = np.exp((1j * kappa_geom * lambda_R - kappa_geom * lambda_I) * n * node.g * t)
        out += node.weight * (left[:, None] * rho * right[None, :])
    return out


def hull_evolve(rho0, lambda_R, lambda_I, kappa_geom, t, nodes=64):
    """Average of diagonal phase-and-damping maps over the Gaussian mixture.

    Converges (nodes -> infinity) to
      rho_mn(t) = exp{ t [ i kappa lambda_R (m-n) + kappa lambda_I (m+n) ]^2 / 4 } rho_mn(0),
    the closed form that fixes the master-equation signs above.
    """
    if isinstance(rho0, PureState):
        rho0 = rho0.to_mixed()
    cur = _hull_apply(rho0.rho, lambda_R, lambda_I, kappa_geom, t, nodes)
    for count in (2 * nodes, 4 * nodes, 8 * nodes):
        nxt = _hull_apply(rho0.rho, lambda_R, lambda_I, kappa_geom, t, count)
        if np.max(np.abs(nxt - cur)) <= 1e-10:
            normalized = lambda_I == 0
            return MixedState(rho=nxt, normalized=normalized and rho0.normalized)
        cur = nxt
    raise QuadratureUnconverged(f"hull quadrature not converged at {8 * nodes} nodes")


def hull_analytic(rho0, lambda_R, lambda_I, kappa_geom, t):
    """The nodes -> infinity limit of hull_evolve, in closed form."""
    if isinstance(rho0, PureState):
        rho0 = rho0.to_mixed()
    n = np.arange(rho0.dim)
    m = n[:, None]
    k = n[None, :]
    z = 1j * kappa_geom * lambda_R * (m - k) + kappa_geom * lambda_I * (m + k)
    out = rho0.rho * np.exp(t * z**2 / 4.0)
    return MixedState(rho=out, normalized=(lambda_I == 0 and rho0.normalized))


def gaussianity_report(state, angles, tol=1e-8):
    """kappa_3(phi), kappa_4(phi) per angle from exact moments.

    A sufficient witness of non-Gaussianity of the averaged quadrature
    statistics; NOT a hull-membership test (mixtures inside the Gaussian
    convex hull can show nonzero averaged cumulants).
    """
    rows = []
    flagged = False
    for phi in angles:
        mu = quadrature_moments(state, phi, max_order=4)
        kap = cumulants_from_moments(mu, source="exact", phi=phi)
        k3, k4 = kap[3], kap[4]
        bad = abs(k3) > tol or abs(k4) > tol
        flagged = flagged or bad
        rows.append({"phi": float(phi), "kappa3": k3, "kappa4": k4, "non_gaussian": bad})
    return {"non_gaussian": flagged, "tolerance": tol, "angles": rows}
