"""Truncated weighted Bergman spaces on model domains.

A truncated space is spanned by monomials z^alpha with |alpha| <= d.  The
Gram matrix of the weighted inner product

    <z^alpha, z^beta> = integral_Omega z^alpha conj(z^beta) e^(-phi) dV

is assembled either exactly (for weights invariant under the diagonal torus
the matrix is diagonal, and each diagonal entry reduces to a 1D radial
integral against exact angular moments) or by shared-sample Monte Carlo.

The least-norm extension of boundary data f living on V = {z' = 0} minimizes
c^H G c subject to pinning every pole-free coefficient of F to the matching
coefficient of f; the stationarity (KKT) system is solved densely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy.linalg import cholesky, solve, solve_triangular

from .errors import DomainError, GramConditioningError, InfeasibleConstraintError
from .geometry import Ball
from .integrate import _box_volume, _draw_box, _stream, _Z99, radial_integrate
from .weights import (
    BallStandardWeight,
    EpsilonRegularizedWeight,
    RadialWeight,
    TrivialWeight,
)

__all__ = [
    "MultiIndexBasis",
    "GramMatrix",
    "ExtensionResult",
    "monomial_values",
    "gram_matrix",
    "min_norm_extension",
    "kernel_diag_at",
]


@dataclass(frozen=True)
class MultiIndexBasis:
    """Monomial multi-indices of total degree <= d in C^ambient_dim.

    ``pole_dim`` records how many leading coordinates form the pole block z';
    restriction to V = {z' = 0} kills every index with a nonzero entry there.
    """

    ambient_dim: int
    degree: int
    pole_dim: int
    indices: tuple = field(init=False)

    def __post_init__(self):
        if self.ambient_dim < 1 or self.degree < 0:
            raise ValueError("need ambient_dim >= 1 and degree >= 0")
        if not 1 <= self.pole_dim <= self.ambient_dim:
            raise ValueError("pole_dim must satisfy 1 <= k <= ambient_dim")
        idx = sorted(
            a
            for a in product(range(self.degree + 1), repeat=self.ambient_dim)
            if sum(a) <= self.degree
        )
        object.__setattr__(self, "indices", tuple(idx))

    def __len__(self):
        return len(self.indices)

    def is_pole_free(self, alpha):
        return all(a == 0 for a in alpha[: self.pole_dim])

    def pole_free_positions(self):
        return [i for i, a in enumerate(self.indices) if self.is_pole_free(a)]

    def restriction_index(self, alpha):
        """z''-part of a pole-free index."""
        return tuple(alpha[self.pole_dim :])

    def without(self, positions):
        """Copy of the basis with the given positions dropped."""
        drop = set(positions)
        clone = MultiIndexBasis(self.ambient_dim, self.degree, self.pole_dim)
        kept = tuple(a for i, a in enumerate(self.indices) if i not in drop)
        object.__setattr__(clone, "indices", kept)
        return clone


def monomial_values(basis: MultiIndexBasis, pts) -> np.ndarray:
    """Matrix of monomial values, one column per basis index."""
    pts = np.atleast_2d(np.asarray(pts, dtype=complex))
    cols = [np.prod(pts ** np.asarray(a), axis=1) for a in basis.indices]
    return np.stack(cols, axis=1)


@dataclass
class GramMatrix:
    """Hermitian positive definite Gram matrix over a monomial basis."""

    basis: MultiIndexBasis
    matrix: np.ndarray
    method: str
    domain: object
    weight: object
    half_widths: np.ndarray | None = None
    excluded: tuple = ()
    _chol: np.ndarray | None = field(default=None, repr=False)

    def cholesky_factor(self):
        if self._chol is None:
            try:
                self._chol = cholesky(self.matrix, lower=True)
            except np.linalg.LinAlgError as exc:  # pragma: no cover - scipy raises
                raise GramConditioningError(str(exc))
        return self._chol

    def norm_squared(self, coeffs):
        c = np.asarray(coeffs, dtype=complex)
        return float(np.real(np.vdot(c, self.matrix @ c)))


def _radial_reduction(weight, n):
    """Pole-block size and the radial factor e^(-phi(r)) of a torus-invariant
    weight, or raise if the weight has no single-radius reduction."""
    if isinstance(weight, TrivialWeight):
        return n, lambda r: np.ones_like(r)
    if isinstance(weight, BallStandardWeight):
        return n, lambda r: (1.0 - r * r) ** weight.n
    if isinstance(weight, RadialWeight):
        prof, k = weight.profile, weight.k

        def factor(r):
            t = np.log(r * r)
            out = np.zeros_like(r)
            ok = t < prof.upper_limit
            if ok.any():
                out[ok] = np.exp(-k * prof.value(t[ok]))
            return out

        return k, factor
    if isinstance(weight, EpsilonRegularizedWeight):
        kb, inner_factor = _radial_reduction(weight.inner, n)
        if kb != n:
            raise ValueError(
                "regularized weight with a strict pole block is not radial in "
                "a single radius; use method='monte_carlo'"
            )
        eps = weight.eps
        return n, lambda r: inner_factor(r) * (1.0 - r * r) ** eps
    raise ValueError(f"no radial reduction for weight {type(weight).__name__}")


def _diag_entry(weight, n, kb, radial_factor, alpha):
    """Exact diagonal Gram entry by angular moments and 1D quadrature."""
    a1, a2 = alpha[:kb], alpha[kb:]
    m1, m2 = sum(a1), sum(a2)
    nk = n - kb
    angular = (
        math.factorial(kb - 1)
        * math.prod(math.factorial(a) for a in a1)
        / math.factorial(kb - 1 + m1)
    )
    slice_moment = (
        math.pi**nk
        * math.prod(math.factorial(a) for a in a2)
        / math.factorial(nk + m2)
    )

    def g(r):
        return r ** (2 * m1) * (1.0 - r * r) ** (nk + m2) * radial_factor(r)

    quad = radial_integrate(g, kb, 1.0)
    return angular * slice_moment * quad.value, quad


def gram_matrix(
    domain,
    weight,
    basis: MultiIndexBasis,
    method: str = "radial_exact",
    samples: int = 500_000,
    seed: int = 0,
) -> GramMatrix:
    """Assemble the Gram matrix of the truncated weighted Bergman space.

    ``radial_exact`` applies to torus-invariant weights on the unit ball: the
    matrix is exactly diagonal and each entry is a 1D radial quadrature.
    Monomials whose quadrature diverges or fails to converge are excluded and
    reported.  ``monte_carlo`` estimates the full matrix from shared samples
    and records per-entry 99% half-widths.
    """
    n = basis.ambient_dim
    if domain.ambient_dim != n:
        raise ValueError("basis and domain dimensions disagree")
    if method == "radial_exact":
        if not (isinstance(domain, Ball) and domain.radius == 1.0):
            raise ValueError("radial_exact requires the unit ball")
        kb, radial_factor = _radial_reduction(weight, n)
        diag = np.zeros(len(basis))
        bad = []
        for i, alpha in enumerate(basis.indices):
            value, quad = _diag_entry(weight, n, kb, radial_factor, alpha)
            if not (quad.converged and np.isfinite(value) and value > 0.0):
                bad.append((alpha, "non-convergent or non-finite radial quadrature"))
            else:
                diag[i] = value
        if bad:
            keep = [i for i, a in enumerate(basis.indices) if a not in {b[0] for b in bad}]
            basis = basis.without(
                [i for i in range(len(diag)) if i not in keep]
            )
            diag = diag[keep]
        return GramMatrix(
            basis=basis,
            matrix=np.diag(diag).astype(complex),
            method="radial_exact",
            domain=domain,
            weight=weight,
            excluded=tuple(bad),
        )
    if method != "monte_carlo":
        raise ValueError("method must be 'radial_exact' or 'monte_carlo'")

    radii = domain.bounding_radii()
    boxvol = _box_volume(radii)
    width = len(basis)
    acc = np.zeros((width, width), dtype=complex)
    acc2 = np.zeros((width, width))
    done = 0
    shard = 0
    while done < samples:
        m = min(1_000_000, samples - done)
        pts = _draw_box(_stream(seed, shard), m, radii)
        mask = domain.contains_batch(pts)
        if mask.any():
            inside = pts[mask]
            vals = monomial_values(basis, inside)
            wts = np.exp(-weight.value_batch(inside))
            acc += (vals * wts[:, None]).conj().T @ vals
            p2 = np.abs(vals) ** 2
            acc2 += (p2 * (wts**2)[:, None]).T @ p2
        done += m
        shard += 1
    mean = acc / samples
    gram = boxvol * 0.5 * (mean + mean.conj().T)
    var = np.maximum(acc2 / samples - np.abs(mean) ** 2, 0.0)
    half = _Z99 * boxvol * np.sqrt(var / samples)
    result = GramMatrix(
        basis=basis,
        matrix=gram,
        method="monte_carlo",
        domain=domain,
        weight=weight,
        half_widths=half,
    )
    try:
        result.cholesky_factor()
    except GramConditioningError:
        raise GramConditioningError(
            "sampled Gram matrix is not positive definite; increase samples"
        )
    return result


@dataclass
class ExtensionResult:
    """Least-norm extension: coefficients, norm, and constraint residual."""

    coefficients: np.ndarray
    basis: MultiIndexBasis
    norm_squared: float
    constraint_residual: float
    multipliers: np.ndarray
    bound_report: object | None = None

    @property
    def max_pole_coefficient(self):
        """Largest coefficient magnitude on monomials with a z' factor."""
        mags = [
            abs(self.coefficients[i])
            for i, a in enumerate(self.basis.indices)
            if not self.basis.is_pole_free(a)
        ]
        return max(mags, default=0.0)

    def restriction_coefficients(self):
        """Coefficients of the restriction to V, keyed by z''-index."""
        return {
            self.basis.restriction_index(a): complex(self.coefficients[i])
            for i, a in enumerate(self.basis.indices)
            if self.basis.is_pole_free(a)
        }


def min_norm_extension(f_coeffs, gram: GramMatrix) -> ExtensionResult:
    """Minimize c^H G c subject to the restriction to V matching f.

    ``f_coeffs`` maps z''-multi-indices (tuples of length ambient_dim - k) to
    coefficients.  Every pole-free basis monomial is constrained: its
    coefficient is pinned to the matching coefficient of f (zero when f has
    none).  Data outside the truncated basis is rejected with the degree that
    would be needed.
    """
    basis = gram.basis
    n2 = basis.ambient_dim - basis.pole_dim
    restriction = {
        basis.restriction_index(a): i
        for i, a in enumerate(basis.indices)
        if basis.is_pole_free(a)
    }
    for key, coeff in f_coeffs.items():
        key = tuple(key)
        if len(key) != n2:
            raise InfeasibleConstraintError(
                f"f index {key} must have length {n2}", needed_degree=None
            )
        if key not in restriction and coeff != 0:
            raise InfeasibleConstraintError(
                f"monomial {key} of f exceeds the truncation degree "
                f"{basis.degree}; need degree >= {sum(key)}",
                needed_degree=sum(key),
            )

    pinned = sorted(restriction.items())
    m = len(pinned)
    size = len(basis)
    sel = np.zeros((m, size))
    b = np.zeros(m, dtype=complex)
    for row, (key, col) in enumerate(pinned):
        sel[row, col] = 1.0
        b[row] = complex(f_coeffs.get(key, 0.0))

    kkt = np.zeros((size + m, size + m), dtype=complex)
    kkt[:size, :size] = gram.matrix
    kkt[:size, size:] = sel.conj().T
    kkt[size:, :size] = sel
    rhs = np.concatenate([np.zeros(size, dtype=complex), b])
    sol = solve(kkt, rhs, assume_a="her")
    coeffs = sol[:size]
    residual = float(np.max(np.abs(sel @ coeffs - b))) if m else 0.0
    return ExtensionResult(
        coefficients=coeffs,
        basis=basis,
        norm_squared=gram.norm_squared(coeffs),
        constraint_residual=residual,
        multipliers=sol[size:],
    )


def kernel_diag_at(gram: GramMatrix, p) -> float:
    """Diagonal of the reproducing kernel, K(p, p), at an interior point.

    Computed as |L^(-1) v(p)|^2 from the Cholesky factor; the reciprocal is
    the least norm-squared among elements with value 1 at p.
    """
    p = np.asarray(p, dtype=complex).ravel()
    if not gram.domain.contains(p):
        raise DomainError("kernel evaluation point must be interior")
    v = monomial_values(gram.basis, p[None, :])[0]
    y = solve_triangular(gram.cholesky_factor(), v, lower=True)
    return float(np.sum(np.abs(y) ** 2))
