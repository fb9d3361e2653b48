"""Logarithmic-derivative ratio and differential-equation residual checks.

The starlikeness ratio is P(z) = z g'(z) / g(z), normalized so P(0) = 1.
Two residuals are exposed as numerical self-tests of the implementation:

    z^2 g'' + 2 L z g' + (z^2 - 2 eta z - 2 L) g          = 0
    z P' + P^2 + (2L - 1) P + z^2 - 2 eta z - 2L          = 0

both of which the series satisfies identically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, NearZeroOfG
from .series import (
    DEFAULT_TOL,
    CoulombParams,
    eval_g,
    eval_g_prime,
    eval_g_second,
)

# P is a disk diagnostic; allow a little headroom past the unit circle.
P_RADIUS_LIMIT = 1.5


@dataclass(frozen=True)
class RatioValue:
    """Value of the ratio P at a point, with optional zero-distance context."""

    z: complex
    P: complex
    nearest_zero_distance: float | None = None


def eval_p(
    params: CoulombParams,
    z: complex,
    tol: float = DEFAULT_TOL,
    zero_set=None,
) -> RatioValue:
    """Evaluate P(z) = z g'(z) / g(z); exactly 1 at the origin.

    Raises NearZeroOfG when |g(z)| < 10 * tol, where the ratio loses all
    accuracy.  When a zero set is supplied, the distance from z to its
    closest listed zero is reported alongside the value.
    """
    z = complex(z)
    nearest = None
    if zero_set is not None and zero_set.zeros:
        nearest = min(abs(z - rho) for rho in zero_set.zeros)
    if z == 0:
        return RatioValue(z=z, P=1.0 + 0.0j, nearest_zero_distance=nearest)
    g = eval_g(params, z, tol)
    # the pole guard outranks the radius guard: a request at a zero of g is
    # diagnosed as such even when the point also lies outside the window
    if abs(g.value) < 10 * tol:
        raise NearZeroOfG(
            f"|g({z!r})| = {abs(g.value):.3e} is below 10*tol = {10 * tol:.3e}"
        )
    if abs(z) > P_RADIUS_LIMIT:
        raise DomainError(
            f"|z| = {abs(z):.4g} exceeds the diagnostic radius {P_RADIUS_LIMIT}"
        )
    gp = eval_g_prime(params, z, tol)
    return RatioValue(z=z, P=z * gp.value / g.value, nearest_zero_distance=nearest)


def ode_residual_g(params: CoulombParams, z: complex, tol: float = DEFAULT_TOL) -> float:
    """|z^2 g'' + 2 L z g' + (z^2 - 2 eta z - 2 L) g| from series evaluations."""
    z = complex(z)
    L, eta = params.L, params.eta
    g = eval_g(params, z, tol).value
    gp = eval_g_prime(params, z, tol).value
    gpp = eval_g_second(params, z, tol).value
    return abs(z * z * gpp + 2 * L * z * gp + (z * z - 2 * eta * z - 2 * L) * g)


def ode_residual_p(params: CoulombParams, z: complex, tol: float = DEFAULT_TOL) -> float:
    """Residual of the Riccati-type equation satisfied by P.

    P' is formed analytically as (g' + z g'') / g - z (g'/g)^2, which stays
    finite wherever g does not vanish; the origin is exact by construction.
    """
    z = complex(z)
    L, eta = params.L, params.eta
    if z == 0:
        # z P' -> 0 and P -> 1, so the residual collapses to |1 + (2L-1) - 2L|
        return abs(1 + (2 * L - 1) - 2 * L)
    g = eval_g(params, z, tol).value
    if abs(g) < 10 * tol:
        raise NearZeroOfG(
            f"|g({z!r})| = {abs(g):.3e} is below 10*tol = {10 * tol:.3e}"
        )
    gp = eval_g_prime(params, z, tol).value
    gpp = eval_g_second(params, z, tol).value
    P = z * gp / g
    p_prime = (gp + z * gpp) / g - z * (gp / g) ** 2
    return abs(z * p_prime + P * P + (2 * L - 1) * P + z * z - 2 * eta * z - 2 * L)
