"""Direct numerical integration of the qubit master equation.

Integrates

    drho/dt = -i w(t) [sigma_z, rho]
              + gamma1(t)/2 (S+ rho S- - {S- S+, rho}/2)
              + gamma2(t)/2 (S- rho S+ - {S+ S-, rho}/2)
              + gamma3(t)/2 (sigma_z rho sigma_z - rho)

in the basis where the ground state |1> comes first, with the inversion
operators S+ = |2><1| (heating pumps ground to excited) and
S- = |1><2| (dissipation relaxes excited to ground), and
sigma_z = |1><1| - |2><2| so that <sigma_z> = 2 P1 - 1.  This route
never touches the closed-form solution and serves as its independent
check.

The state is advanced in the three real parameters (P1, Re alpha,
Im alpha); the trace and Hermiticity are therefore preserved
structurally, not up to solver error.  Profiles with a rate singularity
inside the integration window are refused: the generator diverges there
even though the map stays finite, and the closed-form route is the
authority across such points.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import solve_ivp

from .coeffs import RateProfile

__all__ = [
    "IntegrationError",
    "SIGMA_Z",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "validate_density_matrix",
    "liouvillian",
    "integrate_me",
]

SIGMA_Z = np.diag([1.0 + 0j, -1.0 + 0j])
# ground state first: S+ = |2><1| excites, S- = |1><2| de-excites
SIGMA_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


class IntegrationError(RuntimeError):
    """The master-equation integration could not be completed."""


def validate_density_matrix(rho, tol: float = 1e-9) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity of a 2x2 state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError("density matrix must be 2x2")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError("density matrix must have unit trace")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def _dissipator(jump: np.ndarray, rho: np.ndarray) -> np.ndarray:
    jd = jump.conj().T
    anticom = jd @ jump @ rho + rho @ jd @ jump
    return jump @ rho @ jd - 0.5 * anticom


def liouvillian(profile: RateProfile, t: float, rho) -> np.ndarray:
    """Right-hand side of the master equation at time t."""
    rho = np.asarray(rho, dtype=complex)
    g1, g2, g3, w = profile.rates(t)
    out = -1j * w * (SIGMA_Z @ rho - rho @ SIGMA_Z)
    out = out + 0.5 * g1 * _dissipator(SIGMA_PLUS, rho)
    out = out + 0.5 * g2 * _dissipator(SIGMA_MINUS, rho)
    out = out + 0.5 * g3 * (SIGMA_Z @ rho @ SIGMA_Z - rho)
    return out


def _pack(rho: np.ndarray) -> np.ndarray:
    return np.array([rho[0, 0].real, rho[0, 1].real, rho[0, 1].imag])


def _unpack(y: np.ndarray) -> np.ndarray:
    p1, re_a, im_a = y
    a = complex(re_a, im_a)
    return np.array([[p1, a], [a.conjugate(), 1.0 - p1]], dtype=complex)


def integrate_me(
    profile: RateProfile,
    rho0,
    t_end: float,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    t_eval=None,
    method: str = "RK45",
) -> np.ndarray:
    """Integrate the master equation from rho0 to t_end.

    Parameters
    ----------
    profile : RateProfile
        Generator rates; must be free of singular points on [0, t_end].
    rho0 : array_like
        Valid 2x2 density matrix at t = 0.
    t_end : float
        Final time.
    rtol, atol : float
        Local error control of the embedded Runge-Kutta pair.
    t_eval : sequence of float, optional
        Report the state at these times instead of only at t_end.

    Returns
    -------
    ndarray
        2x2 state at t_end, or an array of shape (len(t_eval), 2, 2).
    """
    rho0 = validate_density_matrix(rho0)
    if t_end < 0:
        raise ValueError("t_end must be non-negative")
    for s in profile.singular_points:
        if 0.0 <= s <= t_end:
            raise IntegrationError(
                f"rate singularity at t = {s:g} inside [0, {t_end:g}]; "
                "use the closed-form route across singular generators")

    if t_end == 0.0:
        if t_eval is None:
            return rho0.copy()
        return np.array([rho0.copy() for _ in t_eval])

    def rhs(t, y):
        drho = liouvillian(profile, t, _unpack(y))
        return [drho[0, 0].real, drho[0, 1].real, drho[0, 1].imag]

    sol = solve_ivp(
        rhs,
        (0.0, float(t_end)),
        _pack(rho0),
        method=method,
        rtol=rtol,
        atol=atol,
        t_eval=t_eval,
        dense_output=False,
    )
    if not sol.success:
        reached = sol.t[-1] if sol.t.size else 0.0
        raise IntegrationError(
            f"integration failed near t = {reached:g}: {sol.message}")
    if t_eval is None:
        return _unpack(sol.y[:, -1])
    return np.array([_unpack(sol.y[:, i]) for i in range(sol.y.shape[1])])
