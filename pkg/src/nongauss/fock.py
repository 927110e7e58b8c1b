"""Truncated Fock-space states: construction, diagonal evolutions, moments,
quadrature statistics, sampling and Wigner evaluation.

Conventions used everywhere in this package:
  - quadrature q(phi) = a e^{-i phi} + a^dag e^{i phi}, so [x, p] = 2i and the
    vacuum has unit quadrature variance;
  - squeeze operator S(xi) = exp((xi* a^2 - xi a^dag^2)/2), xi = r e^{i theta},
    giving <q(phi)^2> = cosh 2r - cos(2 phi - theta) sinh 2r for squeezed vacuum;
  - attractive self-interaction by default: the number-diagonal phase in
    kerr_evolve carries sign(lambda) = -1 unless told otherwise.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gammaln
from scipy.sparse import identity as sparse_identity, kron as sparse_kron, diags
from scipy.sparse.linalg import expm_multiply

from .errors import (
    TruncationTooSmall,
    IndexOverflow,
    GridUnderflow,
    DimensionLimit,
    TooFewSamples,
)
from .util import rng_for, reduce_angle

DEFAULT_EPS_TRUNC = 1e-10


@dataclass(frozen=True)
class SqueezeParams:
    r: float
    theta: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("squeeze magnitude r must be >= 0")


@dataclass(frozen=True)
class KerrParams:
    chi: float  # rad/s, chi = |lambda|/hbar
    omega: float = 0.0

    def __post_init__(self):
        if self.chi < 0:
            raise ValueError("chi must be >= 0 (sign handled separately)")


@dataclass(frozen=True)
class PureState:
    amps: np.ndarray  # complex, length dim
    tail_mass: float = 0.0  # reported construction-time tail bound

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=complex)
        if a.ndim != 1 or a.size < 2:
            raise ValueError("amps must be a vector of length >= 2")
        object.__setattr__(self, "amps", a)

    @property
    def dim(self):
        return self.amps.size

    def norm_sq(self):
        return float(np.sum(np.abs(self.amps) ** 2))

    def to_mixed(self):
        return MixedState(np.outer(self.amps, self.amps.conj()))


@dataclass(frozen=True)
class MixedState:
    rho: np.ndarray  # D x D complex
    normalized: bool = True  # False when a channel does not preserve trace

    def __post_init__(self):
        r = np.asarray(self.rho, dtype=complex)
        if r.ndim != 2 or r.shape[0] != r.shape[1] or r.shape[0] < 2:
            raise ValueError("rho must be a square matrix, dim >= 2")
        object.__setattr__(self, "rho", r)

    @property
    def dim(self):
        return self.rho.shape[0]

    def trace(self):
        return float(np.real(np.trace(self.rho)))

    def herm_defect(self):
        return float(np.max(np.abs(self.rho - self.rho.conj().T)))

    def purity(self):
        tr = np.trace(self.rho)
        return float(np.real(np.trace(self.rho @ self.rho) / tr**2))


@dataclass(frozen=True)
class SampleSet:
    phi: float
    values: np.ndarray
    seed: int

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(v)):
            raise ValueError("sample values must be finite")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "phi", reduce_angle(self.phi))


@dataclass(frozen=True)
class WignerGrid:
    x_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray  # shape (len(p_axis), len(x_axis))
    convention: str = "q=a e^{-i phi}+h.c.; (x,p)=(2 Re beta, 2 Im beta)"
    trace_estimate: float = float("nan")  # grid integral, should match trace


# ---------------------------------------------------------------- constructors

def fock_state(n, dim):
    if n >= dim:
        raise TruncationTooSmall(1.0, 0.0, f"Fock |{n}> needs dim > {n}")
    amps = np.zeros(dim, dtype=complex)
    amps[n] = 1.0
    return PureState(amps, tail_mass=0.0)


def _coherent_amps(alpha, dim):
    # c_n = e^{-|a|^2/2} a^n / sqrt(n!) evaluated in log space
    n = np.arange(dim)
    if alpha == 0:
        amps = np.zeros(dim, dtype=complex)
        amps[0] = 1.0
        return amps, 0.0
    logmag = -abs(alpha) ** 2 / 2 + n * np.log(abs(alpha)) - 0.5 * gammaln(n + 1)
    phase = np.angle(alpha) * n
    amps = np.exp(logmag + 1j * phase)
    tail = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
    return amps, tail


def coherent_state(alpha, dim, eps_trunc=DEFAULT_EPS_TRUNC):
    amps, tail = _coherent_amps(complex(alpha), dim)
    if tail > eps_trunc:
        raise TruncationTooSmall(tail, eps_trunc)
    return PureState(amps, tail_mass=tail)


def squeezed_coherent_state(alpha, xi, dim, eps_trunc=1e-8):
    """D(alpha) S(xi) |0>, amplitudes by three-term recurrence.

    The state is annihilated by cosh(r) (a - alpha) + e^{i theta} sinh(r) (a^dag - alpha*),
    which gives the recurrence below; c_0 from the closed-form vacuum overlap.
    """
    alpha = complex(alpha)
    c, s = np.cosh(xi.r), np.sinh(xi.r)
    eith = np.exp(1j * xi.theta)
    amps = np.zeros(dim, dtype=complex)
    amps[0] = 1.0  # unnormalized; renormalized below, tail checked first
    drive = c * alpha + s * eith * np.conj(alpha)
    for n in range(dim - 1):
        prev = amps[n - 1] if n >= 1 else 0.0
        amps[n + 1] = (drive * amps[n] - s * eith * np.sqrt(n) * prev) / (c * np.sqrt(n + 1))
    # exact norm of the full (untruncated) state relative to c_0 = 1:
    # |<0|D S|0>|^2 = sech(r) exp(-|a|^2 - Re(e^{i theta} tanh r a*^2))
    log_norm_full = -np.log(c) - abs(alpha) ** 2 - np.real(eith * (s / c) * np.conj(alpha) ** 2)
    got = float(np.sum(np.abs(amps) ** 2))
    tail = max(0.0, 1.0 - got / np.exp(-log_norm_full))
    if tail > eps_trunc:
        raise TruncationTooSmall(tail, eps_trunc)
    amps /= np.sqrt(got)
    return PureState(amps, tail_mass=tail)


def yurke_stoler_state(alpha, dim, eps_trunc=DEFAULT_EPS_TRUNC):
    """(|alpha> + i |-alpha>)/sqrt(2), exactly normalized including the
    e^{-2|alpha|^2} overlap of the two branches."""
    a1, t1 = _coherent_amps(complex(alpha), dim)
    a2, _ = _coherent_amps(-complex(alpha), dim)
    if t1 > eps_trunc:
        raise TruncationTooSmall(t1, eps_trunc)
    amps = (a1 + 1j * a2) / np.sqrt(2.0)
    norm = np.sqrt(np.sum(np.abs(amps) ** 2) + t1)  # tail carries the same weight
    amps = amps / norm
    return PureState(amps, tail_mass=t1)


# ----------------------------------------------------------------- evolutions

def kerr_evolve(state, k, t, lam_sign=-1):
    """c_n(t) = exp(-i [omega n + (chi/2) sign(lambda) n(n-1)] t) c_n(0).

    Diagonal in the number basis, hence exact in the truncated space.
    lam_sign=-1 is attractive self-interaction (the default throughout).
    """
    n = np.arange(state.dim)
    phase = -(k.omega * n + 0.5 * k.chi * lam_sign * n * (n - 1)) * t
    return PureState(state.amps * np.exp(1j * phase), tail_mass=state.tail_mass)


def phase_evolve(state, gamma, t, hbar=1.0):
    """c_n(t) = e^{-i gamma n t / hbar} c_n(0): number-phase channel."""
    n = np.arange(state.dim)
    return PureState(state.amps * np.exp(-1j * gamma * n * t / hbar), tail_mass=state.tail_mass)


# --------------------------------------------------------------- expectations

def normal_ordered_expect(state, m, n):
    """<a^dag^m a^n> by index-shifted summation; exact in the truncated space."""
    if isinstance(state, PureState):
        dim = state.dim
        if m >= dim or n >= dim:
            raise IndexOverflow(f"(m,n)=({m},{n}) exceeds dim={dim}")
        k = np.arange(n, dim)
        j = k - n + m
        keep = j < dim
        k, j = k[keep], j[keep]
        w = np.exp(0.5 * (gammaln(k + 1) - gammaln(k - n + 1))
                   + 0.5 * (gammaln(j + 1) - gammaln(k - n + 1)))
        return complex(np.sum(np.conj(state.amps[j]) * w * state.amps[k]))
    dim = state.dim
    if m >= dim or n >= dim:
        raise IndexOverflow(f"(m,n)=({m},{n}) exceeds dim={dim}")
    k = np.arange(n, dim)
    j = k - n + m
    keep = j < dim
    k, j = k[keep], j[keep]
    w = np.exp(0.5 * (gammaln(k + 1) - gammaln(k - n + 1))
               + 0.5 * (gammaln(j + 1) - gammaln(k - n + 1)))
    # Tr[rho a^dag^m a^n] = sum_k rho[k, j] * <j| a^dag^m a^n |k> with j = k-n+m
    return complex(np.sum(state.rho[k, j] * w))


@lru_cache(maxsize=32)
def _q_power_coeffs(order):
    """Normal-ordered expansion of q(phi)^order.

    Returns {(m, n): integer coefficient}; each term contributes
    coeff * e^{i phi (m - n)} <a^dag^m a^n>.  Built by repeated right
    multiplication, using a^dag^m a^n a^dag = a^dag^{m+1} a^n + n a^dag^m a^{n-1}.
    """
    terms = {(0, 0): 1}
    for _ in range(order):
        new = {}
        for (m, n), cf in terms.items():
            new[(m, n + 1)] = new.get((m, n + 1), 0) + cf
            new[(m + 1, n)] = new.get((m + 1, n), 0) + cf
            if n:
                new[(m, n - 1)] = new.get((m, n - 1), 0) + cf * n
        terms = new
    return terms


def quadrature_moments(state, phi, max_order=8, expect=None):
    """mu_1..mu_max of q(phi) from normal-ordered expectations.

    `expect` can replace the in-state evaluator, e.g. with an analytic one;
    it must map (m, n) -> <a^dag^m a^n>.
    """
    if max_order > 8:
        raise ValueError("moments implemented up to order 8")
    if expect is None:
        trace = 1.0
        if isinstance(state, MixedState):
            trace = np.real(np.trace(state.rho))
        def expect(m, n):
            if m >= state.dim or n >= state.dim:
                return 0.0  # a^n (n >= D) vanishes identically on the truncated space
            return normal_ordered_expect(state, m, n) / trace
    mus = []
    for order in range(1, max_order + 1):
        acc = 0.0 + 0.0j
        for (m, n), cf in _q_power_coeffs(order).items():
            acc += cf * np.exp(1j * phi * (m - n)) * expect(m, n)
        mus.append(float(np.real(acc)))
    return np.array(mus)


# ------------------------------------------------------- quadrature pdf/sampling

def hermite_functions(x, nmax):
    """u_n(x) = (2 pi)^{-1/4} (2^n n!)^{-1/2} H_n(x/sqrt 2) e^{-x^2/4}, n < nmax.

    Upward recurrence with the Gaussian folded in, so values stay bounded for
    large n (no overflow up to n ~ 500+).
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax, x.size))
    u0 = (2 * np.pi) ** -0.25 * np.exp(-x * x / 4.0)
    out[0] = u0
    if nmax > 1:
        out[1] = x * u0  # h_1(y) = sqrt(2) y h_0; y = x/sqrt(2)
    for n in range(1, nmax - 1):
        out[n + 1] = (x * out[n] - np.sqrt(n) * out[n - 1]) / np.sqrt(n + 1)
    return out


def quadrature_pdf(state, phi, x_grid):
    """p(x) = |sum_n c_n e^{-i n phi} u_n(x)|^2 for pure states; for mixed
    states the double sum over rho."""
    x_grid = np.asarray(x_grid, dtype=float)
    if isinstance(state, PureState):
        u = hermite_functions(x_grid, state.dim)
        coef = state.amps * np.exp(-1j * phi * np.arange(state.dim))
        psi = coef @ u
        return np.abs(psi) ** 2
    u = hermite_functions(x_grid, state.dim)
    idx = np.arange(state.dim)
    # p(x) = sum_{mn} rho_mn e^{-i phi (m-n)} u_m(x) u_n(x)
    w = state.rho * np.exp(-1j * phi * (idx[:, None] - idx[None, :]))
    return np.real(np.einsum("mx,mn,nx->x", u, w, u))


def _adaptive_grid(state, phi, mass_tol=1e-9):
    mu = quadrature_moments(state, phi, max_order=2)
    center, sigma = mu[0], np.sqrt(max(mu[1] - mu[0] ** 2, 1e-12))
    half = 8.0 * sigma + 2.0
    npts = max(2001, 32 * state.dim + 1)
    for _ in range(8):
        x = np.linspace(center - half, center + half, npts)
        p = quadrature_pdf(state, phi, x)
        mass = np.trapezoid(p, x)
        if mass >= 1.0 - mass_tol:
            return x, p
        half *= 1.5
        npts = int(npts * 1.5) | 1
    raise GridUnderflow(f"pdf mass on grid {mass:.12f} < {1 - mass_tol}")


def sample_quadrature(state, phi, count, seed):
    """Inverse-CDF sampling on an adaptive grid; deterministic given seed."""
    if count < 4:
        raise TooFewSamples("need at least 4 samples")
    x, p = _adaptive_grid(state, phi)
    dx = x[1] - x[0]
    cdf = np.concatenate(([0.0], np.cumsum((p[1:] + p[:-1]) * 0.5 * dx)))
    cdf /= cdf[-1]
    u = rng_for(seed).random(count)
    vals = np.interp(u, cdf, x)
    return SampleSet(phi=phi, values=vals, seed=int(seed))


# ----------------------------------------------------------------- Wigner

def wigner(state, x_grid, p_grid):
    """W(x,p) via displaced parity, W = (1/2pi) sum_{jk} rho_jk (-1)^j <k|D(2 beta)|j>,
    with beta = (x + i p)/2; vacuum gives (1/2pi) e^{-(x^2+p^2)/2}."""
    rho = state.to_mixed().rho if isinstance(state, PureState) else state.rho
    dim = rho.shape[0]
    x = np.asarray(x_grid, dtype=float)
    p = np.asarray(p_grid, dtype=float)
    X, P = np.meshgrid(x, p)
    gamma = X + 1j * P  # = 2 beta
    u = np.abs(gamma) ** 2
    pref = np.exp(-u / 2.0)
    total = np.zeros_like(u, dtype=complex)
    lg = gammaln(np.arange(dim + 1) + 1)
    for d in range(dim):
        jmax = dim - d
        # Laguerre L_j^{(d)}(u) upward in j, accumulated with the diagonal of rho
        Lm1 = np.zeros_like(u)
        L = np.ones_like(u)
        acc = np.zeros_like(u, dtype=complex)
        for j in range(jmax):
            w = np.exp(0.5 * (lg[j] - lg[j + d]))
            acc = acc + rho[j, j + d] * ((-1) ** j) * w * L
            Lnext = ((2 * j + 1 + d - u) * L - (j + d) * Lm1) / (j + 1)
            Lm1, L = L, Lnext
        term = (gamma**d) * pref * acc
        total += term if d == 0 else term + np.conj(term)
    vals = np.real(total) / (2 * np.pi)
    tr_est = float(np.trapezoid(np.trapezoid(vals, x, axis=1), p))
    return WignerGrid(x_axis=x, p_axis=p, values=vals, trace_estimate=tr_est)


# ----------------------------------------------------------------- two modes

@dataclass(frozen=True)
class TwoModeState:
    amps: np.ndarray  # (dim_l, dim_r) complex

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=complex)
        if a.ndim != 2:
            raise ValueError("two-mode amplitudes must be a matrix")
        object.__setattr__(self, "amps", a)

    @property
    def dims(self):
        return self.amps.shape


@dataclass(frozen=True)
class TwoModeGenerator:
    """Hermitian quadratic generator
    H = omega_l N_l + omega_r N_r + (hop a_l^dag a_r + h.c.) + (squeeze a_l^dag a_r^dag + h.c.)."""
    omega_l: float = 0.0
    omega_r: float = 0.0
    hop: complex = 0.0
    squeeze: complex = 0.0


MAX_PRODUCT_DIM = 4096


def two_mode_product(left, right):
    return TwoModeState(np.outer(left.amps, right.amps))


def _lower(dim):
    return diags(np.sqrt(np.arange(1, dim)), 1)


def two_mode_evolve(state, gen, t):
    dl, dr = state.dims
    if dl * dr > MAX_PRODUCT_DIM:
        raise DimensionLimit(f"product dimension {dl * dr} > {MAX_PRODUCT_DIM}")
    al = sparse_kron(_lower(dl), sparse_identity(dr))
    ar = sparse_kron(sparse_identity(dl), _lower(dr))
    H = (gen.omega_l * (al.conj().T @ al) + gen.omega_r * (ar.conj().T @ ar)).astype(complex)
    if gen.hop:
        H = H + gen.hop * (al.conj().T @ ar) + np.conj(gen.hop) * (ar.conj().T @ al)
    if gen.squeeze:
        H = H + gen.squeeze * (al.conj().T @ ar.conj().T) + np.conj(gen.squeeze) * (al @ ar)
    vec = state.amps.reshape(-1)
    out = expm_multiply(-1j * t * H.tocsc(), vec)
    return TwoModeState(out.reshape(dl, dr))


def beam_splitter(state, transmission=0.5):
    """Apply a beam splitter of given intensity transmission; 0.5 is 50:50."""
    angle = np.arccos(np.sqrt(transmission))
    return two_mode_evolve(state, TwoModeGenerator(hop=1.0), angle)


def reduced_state(state, which="left"):
    a = state.amps
    rho = a @ a.conj().T if which == "left" else a.T @ a.conj()
    return MixedState(rho)
