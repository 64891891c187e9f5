"""Concrete rate models: thermal amplitude damping and Ohmic dephasing.

Thermal model
-------------
A two-level system coupled to a thermal reservoir with mean occupation N
heats and dissipates at rates

    gamma1(t) = 2 N f(t),        gamma2(t) = 2 (N + 1) f(t),

where f(t) = -2 Re{cdot(t)/c(t)} is borrowed from the exactly solvable
zero-temperature damping model with memory amplitude

    c(tau) = exp(-tau/2) [cosh(d tau/2) + sinh(d tau/2)/d] c(0),
    d = sqrt(1 - 2 R).

R > 0 measures the system-reservoir coupling against the spectral width.
For R < 1/2 the ratio x(tau) = [c(tau)/c(0)]^2 decays monotonically and
f >= 0; for R > 1/2 it oscillates, c has isolated zeros where f diverges,
and f is temporarily negative.  Everything population-related has the
closed form

    Gamma(t) = -(2N+1) ln x(t),
    P1(t)    = x^(2N+1) P1(0) + (N+1)/(2N+1) [1 - x^(2N+1)],

which stays finite through the zeros of c.

Ohmic dephasing
---------------
Pure dephasing driven by a bosonic bath with spectral density

    J(w) = alpha (w/w_c)^s exp(-w/w_c).

Two thermal-kernel conventions for the rate are supported:

    kernel="paper":       gamma3(t) = 2 int dw J(w) coth(w/T)  sin(w t)
    kernel="literature":  gamma3(t) = 2 int dw J(w) coth(w/(2T)) sin(w t)/w

with coth -> 1 at T = 0 (units hbar = k_B = 1).  At T = 0 both have
closed forms in u = w_c t, used as oracles for the quadrature:

    paper:      gamma3 = 2 a G(s+1) w_c (1+u^2)^(-(s+1)/2) sin((s+1) atan u)
    literature: gamma3 = 2 a G(s)   (1+u^2)^(-s/2)        sin(s atan u)

(G is Euler's gamma function).  The accumulated GammaTilde is
nonnegative for every s, T and both kernels, so adding this dephasing
never endangers complete positivity; its rate does go negative, for
s > 1 (paper kernel) or s > 2 (literature kernel), which is what makes
the combined dynamics non-Markovian at weak dissipative coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import gamma as _gamma_fn

from .coeffs import CoefficientSet, QuadratureConfig, RateProfile, _quad, _zero

__all__ = [
    "ThermalParams",
    "OhmicParams",
    "MemorySample",
    "amplitude_memory",
    "thermal_zeros",
    "thermal_profile",
    "thermal_closed_form",
    "thermal_coefficients",
    "ohmic_rate",
    "ohmic_gamma_tilde",
    "ohmic_closed_form",
    "ohmic_profile",
    "markov_rate_limit",
]

KERNELS = ("paper", "literature")


@dataclass(frozen=True)
class ThermalParams:
    """Thermal amplitude-damping model parameters."""

    R: float
    N: float = 0.0

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError("R must be strictly positive")
        if self.N < 0:
            raise ValueError("N must be non-negative")


@dataclass(frozen=True)
class OhmicParams:
    """Ohmic-class dephasing parameters (units hbar = k_B = 1)."""

    alpha: float
    s: float
    omega_c: float = 1.0
    T: float = 0.0
    kernel: str = "literature"

    def __post_init__(self):
        if not (self.alpha > 0 and self.s > 0 and self.omega_c > 0):
            raise ValueError("alpha, s and omega_c must be strictly positive")
        if self.T < 0:
            raise ValueError("T must be non-negative")
        if self.kernel not in KERNELS:
            raise ValueError(f"kernel must be one of {KERNELS}")


@dataclass(frozen=True)
class MemorySample:
    """c(tau)/c(0), x = (c/c(0))^2 and f = -2 Re{cdot/c} at one time."""

    tau: float
    c_ratio: float
    x: float
    f: float
    singular: bool = False


# Degenerate d -> 0 branch is taken inside this band around R = 1/2.
_DEGENERATE_BAND = 1e-14


def amplitude_memory(R: float, tau: float) -> MemorySample:
    """Evaluate the damping memory c/c(0), x and the rate function f.

    Branches on the discriminant 1 - 2R: real hyperbolic functions for
    R < 1/2 (written overflow-free in terms of decaying exponentials),
    trigonometric ones for R > 1/2, and the polynomial limit at R = 1/2.
    At a zero of c the rate f diverges; the sample is flagged singular
    with x = 0 and f = +/-inf.
    """
    if not R > 0:
        raise ValueError("R must be strictly positive")
    if tau < 0:
        raise ValueError("tau must be non-negative")

    disc = 1.0 - 2.0 * R
    if abs(disc) <= _DEGENERATE_BAND:
        c = math.exp(-tau / 2) * (1.0 + tau / 2)
        f = (tau / 2) / (1.0 + tau / 2)
        return MemorySample(tau=tau, c_ratio=c, x=c * c, f=f)

    if disc > 0:
        d = math.sqrt(disc)
        # 2 e^{-z} cosh z = 1 + e^{-2z} etc. keeps every exponent <= 0
        e = math.exp(-d * tau)
        c = 0.5 * (math.exp(-(1 - d) * tau / 2) * (1 + 1 / d)
                   + math.exp(-(1 + d) * tau / 2) * (1 - 1 / d))
        f = (2 * R / d) * (1 - e) / ((1 + 1 / d) + e * (1 - 1 / d))
        return MemorySample(tau=tau, c_ratio=c, x=c * c, f=f)

    delta = math.sqrt(-disc)
    w = delta * tau / 2
    bracket = math.cos(w) + math.sin(w) / delta
    scale = math.hypot(1.0, 1.0 / delta)
    if abs(bracket) <= 8 * 2.220446049250313e-16 * scale:
        return MemorySample(tau=tau, c_ratio=0.0, x=0.0, f=math.inf, singular=True)
    c = math.exp(-tau / 2) * bracket
    f = (2 * R / delta) * math.sin(w) / bracket
    return MemorySample(tau=tau, c_ratio=c, x=c * c, f=f)


def thermal_zeros(R: float, t_max: float) -> tuple[float, ...]:
    """Times in (0, t_max] where c vanishes and f diverges.

    Zeros exist only for R > 1/2, at tau_k = (2/delta)(k pi - atan delta)
    with delta = sqrt(2R - 1).
    """
    if R <= 0.5:
        return ()
    delta = math.sqrt(2 * R - 1)
    zeros = []
    k = 1
    while True:
        tau = (2.0 / delta) * (k * math.pi - math.atan(delta))
        if tau > t_max:
            break
        zeros.append(tau)
        k += 1
    return tuple(zeros)


def thermal_profile(p: ThermalParams, t_max: float = 200.0) -> RateProfile:
    """Rate profile gamma1 = 2N f, gamma2 = 2(N+1) f, gamma3 = omega = 0.

    ``singular_points`` holds the zeros of c up to t_max (empty for
    R <= 1/2).
    """

    def _f(t: float) -> float:
        return amplitude_memory(p.R, t).f

    gamma1 = _zero if p.N == 0 else (lambda t: 2.0 * p.N * _f(t))
    return RateProfile(
        gamma1=gamma1,
        gamma2=lambda t: 2.0 * (p.N + 1.0) * _f(t),
        gamma3=_zero,
        omega=_zero,
        singular_points=thermal_zeros(p.R, t_max),
    )


def thermal_closed_form(p: ThermalParams, t: float) -> tuple[float, float]:
    """(Gamma, g) of the thermal model in closed form.

    Gamma = -(2N+1) ln x(t), reported as +inf where x = 0, and
    g = (N+1)/(2N+1) [1 - x^(2N+1)].  Valid for every R and t, also
    across the singularities of the rates.
    """
    m = amplitude_memory(p.R, t)
    two_n1 = 2.0 * p.N + 1.0
    mu = (p.N + 1.0) / two_n1
    if m.x <= 0.0:
        return math.inf, mu
    xp = m.x ** two_n1
    # + 0.0 normalizes the -0.0 produced by log(1) at t = 0
    return -two_n1 * math.log(m.x) + 0.0, mu * (1.0 - xp)


def thermal_coefficients(p: ThermalParams, t: float) -> CoefficientSet:
    """Closed-form CoefficientSet of the purely thermal model."""
    gamma, g = thermal_closed_form(p, t)
    return CoefficientSet(t=t, Gamma=gamma, GammaTilde=0.0, Omega=0.0, g=g)


def _coth(x: float) -> float:
    # exact for all x > 0; expm1 keeps small arguments accurate and the
    # cutoff (coth - 1 ~ 2 exp(-2x) ~ 1e-304 there) avoids overflow
    if x > 350.0:
        return 1.0
    return 1.0 + 2.0 / math.expm1(2.0 * x)


def _thermal_factor(p: OhmicParams, w: float) -> float:
    if p.T == 0:
        return 1.0
    if p.kernel == "paper":
        return _coth(w / p.T)
    return _coth(w / (2.0 * p.T))


def _spectral(p: OhmicParams, w: float) -> float:
    return p.alpha * (w / p.omega_c) ** p.s * math.exp(-w / p.omega_c)


def ohmic_rate(p: OhmicParams, t: float, cfg: QuadratureConfig | None = None) -> float:
    """Dephasing rate gamma3(t) by adaptive quadrature over frequency.

    The semi-infinite integral is truncated at
    w_max = max(50 w_c, 10/t); the neglected tail is bounded by the
    exp(-w/w_c) factor, exp(-50) ~ 2e-22 relative to the integrand
    scale, far below the quadrature tolerances.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0.0:
        return 0.0
    cfg = cfg or QuadratureConfig()
    w_max = max(50.0 * p.omega_c, 10.0 / t)

    if p.kernel == "paper":
        def integrand(w):
            if w <= 0.0:
                return 0.0
            return 2.0 * _spectral(p, w) * _thermal_factor(p, w) * math.sin(w * t)
    else:
        def integrand(w):
            if w <= 0.0:
                return 0.0
            return 2.0 * _spectral(p, w) * _thermal_factor(p, w) * math.sin(w * t) / w

    return _quad(integrand, 0.0, w_max, cfg)


def ohmic_gamma_tilde(p: OhmicParams, t: float, cfg: QuadratureConfig | None = None) -> float:
    """GammaTilde(t) = int_0^t gamma3 as a single frequency integral.

    Swapping the time and frequency integrals turns the accumulated
    dephasing into

        paper:      2 int dw J coth(w/T)    [1 - cos(w t)] / w
        literature: 2 int dw J coth(w/(2T)) [1 - cos(w t)] / w^2

    whose integrands are pointwise nonnegative, which is why this model
    always has GammaTilde >= 0.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0.0:
        return 0.0
    cfg = cfg or QuadratureConfig()
    w_max = max(50.0 * p.omega_c, 10.0 / t)
    power = 1.0 if p.kernel == "paper" else 2.0

    def integrand(w):
        if w <= 0.0:
            return 0.0
        # 1 - cos(w t) written cancellation-free
        osc = 2.0 * math.sin(0.5 * w * t) ** 2
        return 2.0 * _spectral(p, w) * _thermal_factor(p, w) * osc / w ** power

    return _quad(integrand, 0.0, w_max, cfg)


def ohmic_closed_form(p: OhmicParams, t: float) -> tuple[float, float]:
    """(gamma3, GammaTilde) at T = 0 in closed form.

    paper kernel:

        gamma3     = 2 a G(s+1) w_c (1+u^2)^(-(s+1)/2) sin((s+1) atan u)
        GammaTilde = (2 a G(s+1)/s) [1 - (1+u^2)^(-s/2) cos(s atan u)]

    literature kernel:

        gamma3     = 2 a G(s) (1+u^2)^(-s/2) sin(s atan u)
        GammaTilde = (2 a G(s-1)/w_c) [1 - (1+u^2)^(-(s-1)/2) cos((s-1) atan u)]

    with u = w_c t and the s -> 1 literature limit
    (a/w_c) ln(1 + u^2).  Raises ValueError for T != 0.
    """
    if p.T != 0:
        raise ValueError("closed form is only valid at T = 0")
    if t < 0:
        raise ValueError("t must be non-negative")
    u = p.omega_c * t
    theta = math.atan(u)
    one_u2 = 1.0 + u * u

    if p.kernel == "paper":
        gs1 = _gamma_fn(p.s + 1.0)
        rate = (2.0 * p.alpha * gs1 * p.omega_c
                * one_u2 ** (-(p.s + 1.0) / 2.0) * math.sin((p.s + 1.0) * theta))
        tilde = (2.0 * p.alpha * gs1 / p.s) * (
            1.0 - one_u2 ** (-p.s / 2.0) * math.cos(p.s * theta))
        return rate, tilde

    gs = _gamma_fn(p.s)
    rate = 2.0 * p.alpha * gs * one_u2 ** (-p.s / 2.0) * math.sin(p.s * theta)
    nu = p.s - 1.0
    if abs(nu) < 1e-9:
        tilde = (p.alpha / p.omega_c) * math.log(one_u2)
    else:
        tilde = (2.0 * p.alpha * _gamma_fn(nu) / p.omega_c) * (
            1.0 - one_u2 ** (-nu / 2.0) * math.cos(nu * theta))
    return rate, tilde


def ohmic_profile(p: OhmicParams, cfg: QuadratureConfig | None = None) -> RateProfile:
    """Pure-dephasing rate profile for the Ohmic model.

    gamma3 comes from the closed form at T = 0 and from frequency
    quadrature otherwise; gamma1, gamma2 and omega vanish.
    """
    if p.T == 0:
        gamma3 = lambda t: ohmic_closed_form(p, t)[0]
    else:
        gamma3 = lambda t: ohmic_rate(p, t, cfg)
    return RateProfile(gamma3=gamma3)


def markov_rate_limit(R: float) -> float:
    """Long-time limit of the zero-T dissipation rate, 2 (1 - sqrt(1-2R)).

    Only exists for 0 < R < 1/2; for R >= 1/2 the rate keeps oscillating
    between singularities and has no stationary positive limit.
    """
    if not 0 < R < 0.5:
        raise ValueError("requires 0 < R < 1/2")
    return 2.0 * (1.0 - math.sqrt(1.0 - 2.0 * R))
