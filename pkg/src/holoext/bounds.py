"""Extension-norm bounds for radial scenarios on the unit ball.

A scenario fixes the pair (unit ball of C^n, V = {z' = 0}), a radial weight
phi = k u(log |z'|^2) built from a catalog profile (or the trivial weight),
and polynomial boundary data f on V.  Three upper bounds for the weighted
norm of the least-norm extension are evaluated:

  * the direct generator bound: sigma_k * integral_V |f|^2 e^(-phi + 2kB),
  * the lift route: apply the generator bound (or the indicatrix bound) on
    the Hartogs lift with the trivial weight, then descend by the mean value
    inequality, dividing by sigma_k,
  * the indicatrix bound: integral_V vol(I_w) |f|^2 e^(-phi).

All closed-form constants come from exact integer factorials times powers of
pi.  The Jacobian constant is pinned to 1 throughout: the subvarieties are
linear coordinate slices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bergman import MultiIndexBasis, gram_matrix, min_norm_extension
from .errors import UnsupportedModelError
from .geometry import Ball, HartogsLift
from .green import BallPairModel, BallPointModel, RadialLiftModel
from .integrate import QuadratureResult, fubini_sides, mc_integrate, radial_integrate
from .weights import RadialProfile, RadialWeight, TrivialWeight, _fiber_psi_batch

__all__ = [
    "ExtensionScenario",
    "BoundReport",
    "sigma_mu",
    "generator_bound_rhs",
    "weighted_trace_direct",
    "lift_route_rhs",
    "indicatrix_bound_rhs",
    "strictness_gap",
    "ball_bound_ratio",
    "ball_bound_integral",
    "ball_bound_integral_mc",
    "minimal_norm_squared",
    "build_bound_report",
    "disc_scenario",
    "ball2_scenario",
]


def sigma_mu(k: int):
    """(sigma_k, mu_k): volumes of the unit ball in C^k and of S^(2k-1)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return (
        math.pi**k / math.factorial(k),
        2.0 * math.pi**k / math.factorial(k - 1),
    )


def _ball_moment(m: int, beta: tuple, q: int) -> float:
    """integral_(B^m) |z^beta|^2 (1 - |z|^2)^q dV = pi^m beta! q! / (m+|beta|+q)!.

    For m = 0 the slice is a point and the moment is 1.
    """
    if m == 0:
        if beta != ():
            raise ValueError("point slice carries only the empty index")
        return 1.0
    num = math.prod(math.factorial(b) for b in beta) * math.factorial(q)
    return math.pi**m * num / math.factorial(m + sum(beta) + q)


@dataclass
class ExtensionScenario:
    """Unit-ball pair with a radial (or trivial) weight and polynomial data.

    ``f_coeffs`` maps z''-multi-indices (length n - k) to coefficients; the
    default extends the constant function 1.
    """

    name: str
    ambient_dim: int
    codim: int
    profile: RadialProfile | None
    f_coeffs: dict | None = None
    degree: int = 8

    def __post_init__(self):
        n, k = self.ambient_dim, self.codim
        if not 1 <= k <= n:
            raise ValueError("need 1 <= codim <= ambient_dim")
        if self.f_coeffs is None:
            self.f_coeffs = {(0,) * (n - k): 1.0}  # the constant function 1
        self.f_coeffs = {tuple(key): complex(val) for key, val in self.f_coeffs.items()}
        for key in self.f_coeffs:
            if len(key) != n - k:
                raise ValueError(f"f index {key} must have length {n - k}")

    def domain(self) -> Ball:
        return Ball(radius=1.0, dim=self.ambient_dim)

    def weight(self):
        if self.profile is None:
            return TrivialWeight()
        return RadialWeight(self.profile, self.codim)

    def lift_domain(self) -> HartogsLift:
        return HartogsLift(self.domain(), self.weight(), self.codim)

    def lift_model(self) -> RadialLiftModel:
        if self.profile is None:
            raise UnsupportedModelError(
                "the lift of the trivially weighted ball is a ball-times-ball "
                "product with no catalog Green model"
            )
        return RadialLiftModel(
            profile=self.profile, pole_dim=self.codim, base_dim=self.ambient_dim
        )

    def direct_model(self):
        n, k = self.ambient_dim, self.codim
        return BallPointModel(n) if k == n else BallPairModel(k, n - k)

    def _f_norm_factor(self, extra_power: int) -> float:
        """sum_beta |f_beta|^2 * integral_(B^(n-k)) |z^beta|^2 (1-|z|^2)^extra."""
        m = self.ambient_dim - self.codim
        return sum(
            abs(c) ** 2 * _ball_moment(m, beta, extra_power)
            for beta, c in self.f_coeffs.items()
        )


def generator_bound_rhs(c_jac: float, k: int, weighted_trace: float) -> float:
    """Generator bound C sigma_k * integral_V |f|^2 e^(-phi + 2kB)."""
    if c_jac < 1.0:
        raise ValueError("the Jacobian constant satisfies C >= 1")
    if weighted_trace < 0.0:
        raise ValueError("weighted trace must be nonnegative")
    sigma_k, _ = sigma_mu(k)
    return c_jac * sigma_k * weighted_trace


def weighted_trace_direct(scenario: ExtensionScenario) -> float:
    """integral_V |f|^2 e^(-phi + 2kB) for the direct pair.

    The weight vanishes on V and the gap function there is
    B(0, z'') = log(1 - |z''|^2) / 2, so e^(2kB) = (1 - |z''|^2)^k and the
    trace reduces to exact ball moments of f.
    """
    return scenario._f_norm_factor(scenario.codim)


def _fiber_integral(scenario: ExtensionScenario) -> float:
    """integral_(B^k) e^(-2k psi(w)) dV(w), the fiber side of the identity."""
    if scenario.profile is None:
        raise UnsupportedModelError("fiber integral requires a radial profile")
    _, rhs = fubini_sides(scenario.profile, scenario.codim, 0.0)
    return rhs.value


def lift_route_rhs(scenario: ExtensionScenario) -> float:
    """Sharpest lift-route bound on the weighted extension norm.

    Both available bounds on the lift (generator bound with the exact gap
    B = -psi, and the indicatrix bound) are evaluated; the minimum is
    descended through the mean value inequality, i.e. divided by sigma_k.
    """
    k = scenario.codim
    sigma_k, _ = sigma_mu(k)
    model = scenario.lift_model()  # raises for non-catalog lifts
    f_factor = scenario._f_norm_factor(0)
    # generator route on the lift: sigma_k * int |f|^2 e^(2k B~), B~ = -psi
    generator_bound = sigma_k * f_factor * _fiber_integral(scenario)
    # indicatrix route on the lift: int |f|^2 vol(I_w), closed form per fiber point
    profile = model.profile

    def vol_integrand(r):
        return sigma_k * np.exp(-2.0 * k * _fiber_psi_batch(profile, r * r))

    indicatrix_bound = f_factor * radial_integrate(vol_integrand, k, 1.0).value
    return min(generator_bound, indicatrix_bound) / sigma_k


def indicatrix_bound_rhs(scenario: ExtensionScenario) -> float:
    """Indicatrix bound integral_V vol(I_w) |f|^2 e^(-phi) for the direct pair.

    On the unit ball the indicatrix at z'' is the ball of radius
    sqrt(1 - |z''|^2) in C^k, so vol(I) = sigma_k (1 - |z''|^2)^k.
    """
    sigma_k, _ = sigma_mu(scenario.codim)
    scenario.direct_model()  # validates that a catalog form exists
    return sigma_k * scenario._f_norm_factor(scenario.codim)


def strictness_gap(scenario: ExtensionScenario) -> float:
    """Direct bound minus lift-route bound, in extension-norm units.

    Positive for scenarios whose lift is strictly pseudoconvex with -B
    plurisubharmonic; zero (non-strict) for degenerate data f = 0.
    """
    return indicatrix_bound_rhs(scenario) - lift_route_rhs(scenario)


def ball_bound_ratio(n: int) -> float:
    """Lift-to-direct bound ratio for the standard weight on the ball:
    (mu_n / 2) (n-1)! n! / (2n)! = pi^n n! / (2n)!.

    Below 1 for every n >= 2; equals pi/2 at n = 1, which is why the
    comparison there carries no improvement.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    return math.pi**n * math.factorial(n) / math.factorial(2 * n)


def ball_bound_integral(n: int) -> QuadratureResult:
    """integral_(B^n) (1 - |w|^2)^n dV by radial quadrature; equals the ratio."""
    return radial_integrate(lambda r: (1.0 - r * r) ** n, n, 1.0)


def ball_bound_integral_mc(n: int, samples: int, seed: int) -> QuadratureResult:
    """Monte Carlo cross-check of integral_(B^n) (1 - |w|^2)^n dV."""
    return mc_integrate(
        Ball(radius=1.0, dim=n),
        lambda pts: (1.0 - np.sum(np.abs(pts) ** 2, axis=1)) ** n,
        samples,
        seed,
    )


def minimal_norm_squared(scenario: ExtensionScenario, degree: int | None = None):
    """Least norm-squared of an extension of f in the truncated space."""
    d = scenario.degree if degree is None else degree
    basis = MultiIndexBasis(scenario.ambient_dim, d, scenario.codim)
    gram = gram_matrix(scenario.domain(), scenario.weight(), basis)
    return min_norm_extension(scenario.f_coeffs, gram)


@dataclass(frozen=True)
class BoundReport:
    """All bounds for one scenario, with the constants used."""

    scenario: str
    sigma_k: float
    mu_k: float
    weighted_trace: float
    generator_bound: float
    lift_route_bound: float
    indicatrix_bound: float
    minimal_norm_squared: float
    strictness_margin: float
    strict: bool


def build_bound_report(scenario: ExtensionScenario, degree: int | None = None) -> BoundReport:
    """Evaluate every bound plus the truncated least-norm solve."""
    sigma_k, mu_k = sigma_mu(scenario.codim)
    trace = weighted_trace_direct(scenario)
    lift_bound = lift_route_rhs(scenario)
    direct_bound = indicatrix_bound_rhs(scenario)
    extension = minimal_norm_squared(scenario, degree)
    margin = direct_bound - lift_bound
    return BoundReport(
        scenario=scenario.name,
        sigma_k=sigma_k,
        mu_k=mu_k,
        weighted_trace=trace,
        generator_bound=generator_bound_rhs(1.0, scenario.codim, trace),
        lift_route_bound=lift_bound,
        indicatrix_bound=direct_bound,
        minimal_norm_squared=extension.norm_squared,
        strictness_margin=margin,
        strict=margin > 0.0,
    )


def disc_scenario(profile: RadialProfile | None = None) -> ExtensionScenario:
    """Unit disc, V = {0}, phi = u(log |z|^2); log-singular profile by default."""
    from .weights import LogSingularProfile

    return ExtensionScenario(
        name="disc_radial",
        ambient_dim=1,
        codim=1,
        profile=LogSingularProfile() if profile is None else profile,
    )


def ball2_scenario(profile: RadialProfile | None = None) -> ExtensionScenario:
    """Unit ball of C^2, V = {0}, phi = 2 u(log |z|^2)."""
    from .weights import LogSingularProfile

    return ExtensionScenario(
        name="ball2_radial",
        ambient_dim=2,
        codim=2,
        profile=LogSingularProfile() if profile is None else profile,
    )
