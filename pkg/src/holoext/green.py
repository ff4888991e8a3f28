"""Closed-form pluricomplex Green function models for catalog pairs.

A model pairs a domain with the linear subvariety V = {z' = 0} and exposes

  * the Green function G with logarithmic poles along V,
  * the gap function B, defined by the exact rearrangement
    B(p) = log |psi(p)| - G(p) with psi the generator tuple (so the defining
    inequality log |psi| - B <= G holds with equality),
  * the Azukawa directional form A(X) = lim_(a -> 0) G(aX, w) - log |a|,
    whose sublevel set {A < 0} is the indicatrix.

Only models with elementary closed forms are shipped; pairs without one raise
UnsupportedModelError upstream.  Every catalog form has the shape
A(X) = log |X| + c with c >= 0 depending on the base point, so indicatrices
are balls of radius e^(-c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import Ball, HartogsLift, SubvarietySpec, as_point
from .integrate import QuadratureResult, _ball_volume, _box_volume, _draw_box, _stream, _Z99
from .weights import RadialProfile, RadialWeight, _fiber_psi_batch, fiber_psi

__all__ = [
    "BallPointModel",
    "BallPairModel",
    "RadialLiftModel",
    "AzukawaForm",
    "eval_green",
    "gap_B",
    "azukawa",
    "indicatrix_volume",
    "sublevel_scaling",
]

_LIMIT_LADDER = (1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class AzukawaForm:
    """Directional form A(X) = log |X| + log_shift for X in C^pole_dim."""

    pole_dim: int
    log_shift: float
    base_point: tuple = ()

    def evaluate(self, direction):
        x = np.asarray(direction, dtype=complex).ravel()
        if x.size != self.pole_dim:
            raise ValueError(f"direction must have {self.pole_dim} coordinates")
        norm = float(np.linalg.norm(x))
        if norm == 0.0:
            raise ValueError("direction must be nonzero")
        return math.log(norm) + self.log_shift

    @property
    def indicatrix_radius(self):
        return math.exp(-self.log_shift)


@dataclass(frozen=True)
class BallPointModel:
    """Unit ball of C^n with V = {0}: G(z) = log |z|."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def pole_dim(self):
        return self.n

    @property
    def ambient_dim(self):
        return self.n

    def domain(self):
        return Ball(radius=1.0, dim=self.n)

    def subvariety(self):
        return SubvarietySpec(codim=self.n, ambient_dim=self.n)

    def green(self, p):
        r = float(np.linalg.norm(p))
        return math.log(r) if r > 0.0 else -math.inf

    def green_batch(self, pts):
        with np.errstate(divide="ignore"):
            return np.log(np.linalg.norm(pts, axis=1))

    def gap(self, p):
        return 0.0

    def azukawa_form(self, base_point=()):
        base = np.asarray(base_point, dtype=complex).ravel()
        if base.size != 0:
            raise ValueError("the pole is a single point; base_point must be empty")
        return AzukawaForm(pole_dim=self.n, log_shift=0.0)

    def embed(self, pole_part, base_point=()):
        return np.asarray(pole_part, dtype=complex).ravel()


@dataclass(frozen=True)
class BallPairModel:
    """Unit ball of C^(k+n) with V = {z' = 0}.

    G(z', z'') = log(|z'| / sqrt(1 - |z''|^2)), so the gap function is
    B = log(sqrt(1 - |z''|^2)) <= 0 and the indicatrix at z'' is the ball of
    radius sqrt(1 - |z''|^2) in C^k.
    """

    pole_dim: int
    base_dim: int

    def __post_init__(self):
        if self.pole_dim < 1 or self.base_dim < 1:
            raise ValueError("pole_dim and base_dim must be positive integers")

    @property
    def ambient_dim(self):
        return self.pole_dim + self.base_dim

    def domain(self):
        return Ball(radius=1.0, dim=self.ambient_dim)

    def subvariety(self):
        return SubvarietySpec(codim=self.pole_dim, ambient_dim=self.ambient_dim)

    def _split(self, p):
        p = as_point(p, self.ambient_dim)
        return p[: self.pole_dim], p[self.pole_dim :]

    def green(self, p):
        zp, zpp = self._split(p)
        r = float(np.linalg.norm(zp))
        shift = -0.5 * math.log1p(-float(np.sum(np.abs(zpp) ** 2)))
        return (math.log(r) if r > 0.0 else -math.inf) + shift

    def green_batch(self, pts):
        r = np.linalg.norm(pts[:, : self.pole_dim], axis=1)
        w2 = np.sum(np.abs(pts[:, self.pole_dim :]) ** 2, axis=1)
        with np.errstate(divide="ignore"):
            return np.log(r) - 0.5 * np.log1p(-w2)

    def gap(self, p):
        _, zpp = self._split(p)
        return 0.5 * math.log1p(-float(np.sum(np.abs(zpp) ** 2)))

    def azukawa_form(self, base_point):
        w = np.asarray(base_point, dtype=complex).ravel()
        if w.size != self.base_dim:
            raise ValueError(f"base point must have {self.base_dim} coordinates")
        w2 = float(np.sum(np.abs(w) ** 2))
        if w2 >= 1.0:
            raise DomainError("base point must lie inside the unit ball of V")
        return AzukawaForm(
            pole_dim=self.pole_dim,
            log_shift=-0.5 * math.log1p(-w2),
            base_point=tuple(w),
        )

    def embed(self, pole_part, base_point):
        return np.concatenate(
            [
                np.asarray(pole_part, dtype=complex).ravel(),
                np.asarray(base_point, dtype=complex).ravel(),
            ]
        )


@dataclass(frozen=True)
class RadialLiftModel:
    """Hartogs lift of the unit ball of C^n under phi = k u(log |z'|^2).

    Points are laid out as (z', z'', w) with the fiber w in C^k last.  The
    Green function is G(z, w) = log |z'| + psi(w) with
    psi(w) = -u^(-1)(-log |w|^2)/2, and the gap function is B = -psi(w).
    For the log-singular profile this model coincides with the ball pair.
    """

    profile: RadialProfile
    pole_dim: int
    base_dim: int

    def __post_init__(self):
        if self.pole_dim < 1 or self.base_dim < self.pole_dim:
            raise ValueError("need 1 <= pole_dim <= base_dim")

    @property
    def ambient_dim(self):
        return self.base_dim + self.pole_dim

    def weight(self):
        return RadialWeight(self.profile, self.pole_dim)

    def domain(self):
        return HartogsLift(
            base=Ball(radius=1.0, dim=self.base_dim),
            weight=self.weight(),
            fiber_dim=self.pole_dim,
        )

    def subvariety(self):
        return SubvarietySpec(
            codim=self.pole_dim, ambient_dim=self.ambient_dim, lifted=True
        )

    def _split(self, p):
        p = as_point(p, self.ambient_dim)
        return p[: self.pole_dim], p[self.base_dim :]

    def green(self, p):
        zp, w = self._split(p)
        r = float(np.linalg.norm(zp))
        return (math.log(r) if r > 0.0 else -math.inf) + fiber_psi(self.profile, w)

    def green_batch(self, pts):
        r = np.linalg.norm(pts[:, : self.pole_dim], axis=1)
        w2 = np.sum(np.abs(pts[:, self.base_dim :]) ** 2, axis=1)
        with np.errstate(divide="ignore"):
            return np.log(r) + _fiber_psi_batch(self.profile, w2)

    def gap(self, p):
        _, w = self._split(p)
        return -fiber_psi(self.profile, w)

    def azukawa_form(self, base_point):
        v = np.asarray(base_point, dtype=complex).ravel()
        if v.size != self.base_dim:
            raise ValueError(
                f"base point must have {self.base_dim} coordinates (z'' then w)"
            )
        w = v[self.base_dim - self.pole_dim :]
        return AzukawaForm(
            pole_dim=self.pole_dim,
            log_shift=fiber_psi(self.profile, w),
            base_point=tuple(v),
        )

    def embed(self, pole_part, base_point):
        return np.concatenate(
            [
                np.asarray(pole_part, dtype=complex).ravel(),
                np.asarray(base_point, dtype=complex).ravel(),
            ]
        )


def eval_green(model, p) -> float:
    """Green function value at an interior point; -inf on the pole set."""
    p = as_point(p, model.ambient_dim)
    if not model.domain().contains(p):
        raise DomainError("point lies outside the model domain")
    return model.green(p)


def gap_B(model, p) -> float:
    """Gap function B(p) = log |psi(p)| - G(p), continuous across V."""
    p = as_point(p, model.ambient_dim)
    if not model.domain().contains(p):
        raise DomainError("point lies outside the model domain")
    return model.gap(p)


def azukawa(model, base_point, direction, verify=False, tol=1e-6) -> float:
    """Directional limit A(X) of G along the pole block at a point of V.

    With ``verify=True`` the closed form is checked against the finite-scale
    quotient G(a X, w) - log a on a fixed ladder a in {1e-2, 1e-3, 1e-4}; a
    mismatch beyond ``tol`` signals model drift and raises.
    """
    form = model.azukawa_form(base_point)
    value = form.evaluate(direction)
    if verify:
        x = np.asarray(direction, dtype=complex).ravel()
        unit = x / float(np.linalg.norm(x))
        target = value - math.log(float(np.linalg.norm(x)))  # A at the unit direction
        for lam in _LIMIT_LADDER:
            probe = eval_green(model, model.embed(lam * unit, base_point)) - math.log(lam)
            if abs(probe - target) > tol:
                raise RuntimeError(
                    f"directional limit at scale {lam} drifted from the closed "
                    f"form by {abs(probe - target):.3e}"
                )
    return value


def indicatrix_volume(
    form: AzukawaForm, method="closed_form", samples=200_000, seed=0
) -> QuadratureResult:
    """Euclidean volume of the indicatrix {X : A(X) < 0} in C^pole_dim."""
    probe = form.log_shift + math.log(1e3)
    if probe < 0.0:
        raise ValueError("indicatrix is unbounded: A < 0 at |X| = 1e3")
    k = form.pole_dim
    exact = _ball_volume(k) * math.exp(-2.0 * k * form.log_shift)
    if method == "closed_form":
        return QuadratureResult(value=exact, error_estimate=0.0, samples_or_nodes=0)
    if method != "monte_carlo":
        raise ValueError("method must be 'closed_form' or 'monte_carlo'")
    radius = form.indicatrix_radius
    radii = np.full(k, radius)
    boxvol = _box_volume(radii)
    hits = 0
    done = 0
    shard = 0
    chunk = 1_000_000
    while done < samples:
        m = min(chunk, samples - done)
        pts = _draw_box(_stream(seed, shard), m, radii)
        hits += int(np.sum(np.sum(np.abs(pts) ** 2, axis=1) < radius**2))
        done += m
        shard += 1
    p_hat = hits / samples
    value = boxvol * p_hat
    half = _Z99 * boxvol * math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / samples)
    return QuadratureResult(
        value=value, error_estimate=half, samples_or_nodes=samples, seed=seed
    )


def _sublevel_radii(model, t):
    """Bounding radii of {G < t/2}: the pole block shrinks to e^(t/2)."""
    radii = model.domain().bounding_radii().copy()
    cap = math.exp(0.5 * t)
    radii[: model.pole_dim] = np.minimum(radii[: model.pole_dim], cap)
    return radii


def sublevel_scaling(model, chi, t: float, samples: int, seed: int) -> QuadratureResult:
    """Rescaled sublevel integral e^(-k t) * integral_{G < t/2} chi.

    Samples the sublevel set's own bounding box (the domain box would almost
    never hit {G < t/2} for very negative t).  ``chi`` is a vectorized
    nonnegative integrand.  An empty sublevel set at the given resolution
    yields a zero-valued result with a warning note rather than an error.
    """
    if t >= 0.0:
        raise ValueError("t must be negative")
    k = model.pole_dim
    domain = model.domain()
    radii = _sublevel_radii(model, t)
    boxvol = _box_volume(radii)
    s1 = s2 = 0.0
    n_hit = 0
    done = 0
    shard = 0
    chunk = 1_000_000
    while done < samples:
        m = min(chunk, samples - done)
        pts = _draw_box(_stream(seed, shard), m, radii)
        mask = domain.contains_batch(pts)
        if mask.any():
            sub = model.green_batch(pts[mask]) < 0.5 * t
            mask[mask] = sub
        y = np.zeros(m)
        if mask.any():
            y[mask] = np.asarray(chi(pts[mask]), dtype=float)
            n_hit += int(mask.sum())
        s1 += float(y.sum())
        s2 += float(np.dot(y, y))
        done += m
        shard += 1
    scale = math.exp(-k * t) * boxvol
    if n_hit == 0:
        return QuadratureResult(
            value=0.0,
            error_estimate=0.0,
            samples_or_nodes=samples,
            seed=seed,
            converged=False,
            note="sublevel set not resolved at this sample count",
        )
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0)
    return QuadratureResult(
        value=scale * mean,
        error_estimate=_Z99 * scale * math.sqrt(var / samples),
        samples_or_nodes=samples,
        seed=seed,
    )
