"""Moments -> cumulants, unbiased k-statistics, Var(k4) and SNR assembly."""

from dataclasses import dataclass

import math
import numpy as np

from .errors import TooFewSamples
from .util import power_sums


@dataclass(frozen=True)
class CumulantSet:
    kappa: np.ndarray  # kappa_1..kappa_8
    source: str = "exact"  # exact | estimated
    phi: float = 0.0

    def __post_init__(self):
        k = np.asarray(self.kappa, dtype=float)
        object.__setattr__(self, "kappa", k)
        if self.source == "exact" and k.size >= 2 and k[1] < -1e-12:
            raise ValueError("exact kappa_2 must be non-negative")

    def __getitem__(self, order):
        return float(self.kappa[order - 1])


@dataclass(frozen=True)
class KStatistics:
    k2: float
    k3: float
    k4: float
    sample_count: int

    def __post_init__(self):
        if self.sample_count < 4:
            raise TooFewSamples("k4 needs at least 4 samples")


def cumulants_from_moments(mu, source="exact", phi=0.0):
    """kappa_n = mu_n - sum_{m=1}^{n-1} C(n-1, m-1) mu_{n-m} kappa_m.

    mu is the vector of raw moments mu_1..mu_k (k <= 8); mu_0 = 1 implied.
    """
    mu = np.asarray(mu, dtype=float)
    mu0 = np.concatenate(([1.0], mu))
    kap = np.zeros(mu.size)
    for n in range(1, mu.size + 1):
        acc = mu0[n]
        for m in range(1, n):
            acc -= math.comb(n - 1, m - 1) * mu0[n - m] * kap[m - 1]
        kap[n - 1] = acc
    return CumulantSet(kappa=kap, source=source, phi=phi)


def kappa4_from_moments(mu):
    """Explicit fourth cumulant, kept as an independent cross-check of the
    recursion: mu4 - 4 mu1 mu3 - 3 mu2^2 + 12 mu2 mu1^2 - 6 mu1^4."""
    m1, m2, m3, m4 = mu[0], mu[1], mu[2], mu[3]
    return m4 - 4 * m1 * m3 - 3 * m2**2 + 12 * m2 * m1**2 - 6 * m1**4


def k_statistics(samples):
    """Unbiased k2, k3, k4 from power sums S_p = sum x^p, n = sample count:
      k2 = (n S2 - S1^2) / (n (n-1))
      k3 = (2 S1^3 - 3 n S1 S2 + n^2 S3) / (n (n-1) (n-2))
      k4 = (-6 S1^4 + 12 n S1^2 S2 - 3 n (n-1) S2^2
            - 4 n (n+1) S1 S3 + n^2 (n+1) S4) / (n (n-1) (n-2) (n-3))
    Power sums are accumulated exactly; E[k_j] = kappa_j is a tested property.
    """
    values = samples.values if hasattr(samples, "values") else np.asarray(samples, float)
    n = len(values)
    if n < 4:
        raise TooFewSamples(f"{n} samples < 4")
    s1, s2, s3, s4 = power_sums(values, 4)
    k2 = (n * s2 - s1**2) / (n * (n - 1))
    k3 = (2 * s1**3 - 3 * n * s1 * s2 + n**2 * s3) / (n * (n - 1) * (n - 2))
    k4 = (-6 * s1**4 + 12 * n * s1**2 * s2 - 3 * n * (n - 1) * s2**2
          - 4 * n * (n + 1) * s1 * s3 + n**2 * (n + 1) * s4) / (n * (n - 1) * (n - 2) * (n - 3))
    return KStatistics(k2=k2, k3=k3, k4=k4, sample_count=n)


def var_k4(kappa, M):
    """Variance of the k4 estimator over M samples:
      Var(k4) = k8/M + 16 k2 k6/(M-1) + 48 k3 k5/(M-1) + 34 k4^2/(M-1)
                + 72 M k2^2 k4 / ((M-1)(M-2)) + 144 M k2 k3^2 / ((M-1)(M-2))
                + 24 M (M+1) k2^4 / ((M-1)(M-2)(M-3))
    """
    if M < 4:
        raise TooFewSamples("variance formula needs M >= 4")
    k2, k3, k4_, k5, k6, k8 = (kappa[2], kappa[3], kappa[4], kappa[5], kappa[6], kappa[8])
    return (k8 / M
            + 16 * k2 * k6 / (M - 1)
            + 48 * k3 * k5 / (M - 1)
            + 34 * k4_**2 / (M - 1)
            + 72 * M * k2**2 * k4_ / ((M - 1) * (M - 2))
            + 144 * M * k2 * k3**2 / ((M - 1) * (M - 2))
            + 24 * M * (M + 1) * k2**4 / ((M - 1) * (M - 2) * (M - 3)))


def var_k4_large_m(kappa, M):
    """M >> 1 reduction of var_k4 (everything at 1/M)."""
    k2, k3, k4_, k5, k6, k8 = (kappa[2], kappa[3], kappa[4], kappa[5], kappa[6], kappa[8])
    return (k8 + 16 * k2 * k6 + 48 * k3 * k5 + 34 * k4_**2
            + 72 * k2**2 * k4_ + 144 * k2 * k3**2 + 24 * k2**4) / M


def snr(kappa4, variance):
    """|kappa4| / sqrt(Var(k4)); zero signal gives zero."""
    if kappa4 == 0:
        return 0.0
    return abs(kappa4) / math.sqrt(variance)


def snr_squeezed_vacuum_first_order(r, nu, chi, t, M):
    """First-order detection SNR for squeezed vacuum at quadrature angle nu = 2 phi - theta:
    sqrt(6 M) t chi sinh^2(2r) |sin nu (sinh 2r - cos nu cosh 2r)| / (cosh 2r - cos nu sinh 2r)^2.
    """
    s2, c2 = math.sinh(2 * r), math.cosh(2 * r)
    num = math.sqrt(6 * M) * t * chi * s2**2 * abs(math.sin(nu) * (s2 - math.cos(nu) * c2))
    return num / (c2 - math.cos(nu) * s2) ** 2


def snr_reverse_protocol(r, nu, chi, tau, M=None):
    """Reverse-protocol SNR, sqrt(3/2) chi tau |sin 2 nu| sinh^2(2r).

    The source expression carries no repetition factor; pass M to apply the
    sqrt(M) scaling used by every other SNR here (both variants are exposed
    on purpose -- the normalization of the printed formula is ambiguous).
    """
    base = math.sqrt(1.5) * chi * tau * abs(math.sin(2 * nu)) * math.sinh(2 * r) ** 2
    if M is None:
        return base
    return base * math.sqrt(M)
