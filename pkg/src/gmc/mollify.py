"""Unit-mass bumps shrinking to the identity, and smoothing by them.

The profile is the standard compactly supported bump c exp(-1/(1-(x/r)^2)),
normalized by quadrature at construction time (the 1-d normalization integral
is computed, never hard-coded). Scaling j_n(x) = n^dim j(n x) shrinks the
support while preserving unit mass; the pushforward through exp turns the
scaled bump into a test function on the group (both shipped models have unit
Jacobian on the relevant region).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import heisenberg as hb
from . import torus as tr
from .errors import PreconditionError, QuadratureAccuracyError
from .groups import GroupModel
from .hermite import legendre_on_interval
from .vectors import CoefficientVector


def _bump_unit(u: np.ndarray) -> np.ndarray:
    """exp(-1/(1-u^2)) on |u| < 1, zero outside; vectorized and overflow-safe."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    out[inside] = np.exp(-1.0 / (1.0 - ui * ui))
    return out


def unit_bump_mass(nodes: int = 400) -> float:
    """Quadrature value of the 1-d normalization integral over [-1, 1]."""
    x, w = legendre_on_interval(-1.0, 1.0, nodes)
    return float(w @ _bump_unit(x))


@dataclass(frozen=True)
class BumpProfile:
    """1-d unit-mass bump of the given radius."""

    radius: float
    normalization: float
    quad_nodes: int

    @staticmethod
    def standard(radius: float = 0.25, quad_nodes: int = 400) -> "BumpProfile":
        if radius <= 0:
            raise PreconditionError("bump radius must be positive")
        coarse = unit_bump_mass(quad_nodes)
        fine = unit_bump_mass(quad_nodes + 100)
        if abs(coarse - fine) > 1e-12 * (1.0 + abs(fine)):
            raise QuadratureAccuracyError("bump normalization has not converged", coarse, fine)
        return BumpProfile(radius, 1.0 / (radius * coarse), quad_nodes)

    def __call__(self, x) -> np.ndarray:
        return self.normalization * _bump_unit(np.asarray(x, dtype=float) / self.radius)

    def mass(self, nodes: int | None = None) -> float:
        x, w = legendre_on_interval(-self.radius, self.radius, nodes or self.quad_nodes)
        return float(w @ self(x))


@dataclass(frozen=True)
class ScaledBump:
    """j_n(x) = n^dim j(n x), a product bump over dim axes."""

    profile: BumpProfile
    n: int
    dim: int

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError("scaling index n must be at least 1")

    @property
    def radius(self) -> float:
        return self.profile.radius / self.n

    def axis(self, x) -> np.ndarray:
        """The 1-d factor n j(n x)."""
        return self.n * self.profile(self.n * np.asarray(x, dtype=float))

    def __call__(self, *coords) -> np.ndarray:
        if len(coords) != self.dim:
            raise PreconditionError(f"expected {self.dim} coordinates")
        out = None
        for c in coords:
            v = self.axis(c)
            out = v if out is None else out * v
        return out

    def axis_mass(self, nodes: int | None = None) -> float:
        x, w = legendre_on_interval(-self.radius, self.radius, nodes or self.profile.quad_nodes)
        return float(w @ self.axis(x))


def make_jn(profile: BumpProfile, n: int, dim: int) -> ScaledBump:
    return ScaledBump(profile, n, dim)


# --------------------------------------------------------------------------
# pushforward through exp
# --------------------------------------------------------------------------


def _profile_transform(profile: BumpProfile, xi: np.ndarray, nodes: int) -> np.ndarray:
    """jhat(xi) = int j(x) cos(2 pi xi x) dx over the support (real, even)."""
    x, w = legendre_on_interval(-profile.radius, profile.radius, nodes)
    vals = profile(x) * w
    out = np.empty(len(xi))
    chunk = max(1, (1 << 22) // max(len(x), 1))
    for lo in range(0, len(xi), chunk):
        block = xi[lo : lo + chunk]
        out[lo : lo + chunk] = np.cos(2.0 * np.pi * np.outer(block, x)) @ vals
    return out


def _torus_pushforward(jn: ScaledBump, coeff_floor: float = 1e-14) -> tr.TorusTestFunction:
    """Fourier coefficients of the pushed-forward bump, truncated at the floor.

    The transform of the scaled bump at frequency m is jhat(m/n) with jhat
    the unit-scale profile transform, so the needed bandwidth is n times the
    frequency where jhat falls below the floor (found by cheap probing).
    """
    if jn.dim != 1:
        raise PreconditionError("the circle pushforward takes a 1-d bump")
    if not jn.radius < 0.5:
        min_n = int(math.floor(2.0 * jn.profile.radius)) + 1
        raise PreconditionError(
            f"exp is not injective on the support; need n >= {min_n}"
        )
    prof = jn.profile
    rho = prof.radius
    # probe for the cutoff frequency of the unit-scale transform
    xi_c = 4.0
    while xi_c < 1e6:
        probes = xi_c * np.array([0.85, 0.9, 0.95, 1.0])
        nodes = max(prof.quad_nodes, int(8 * xi_c * rho) + 64)
        if np.all(np.abs(_profile_transform(prof, probes, nodes)) < coeff_floor):
            break
        xi_c *= 1.6
    bandwidth = int(math.ceil(jn.n * xi_c))
    nodes = max(prof.quad_nodes, int(8 * xi_c * rho) + 64)
    ms = np.arange(0, bandwidth + 1)
    table = _profile_transform(prof, ms / jn.n, nodes)
    big = np.nonzero(np.abs(table) >= coeff_floor)[0]
    cut = int(big[-1]) if len(big) else 0
    coeffs = np.concatenate([table[cut:0:-1], table[: cut + 1]]).astype(np.complex128)
    return tr.TorusTestFunction(coeffs, real_valued=True)


def _heisenberg_pushforward(jn: ScaledBump, nodes: int, fd_step: float) -> hb.HTestFunction:
    if jn.dim != 3:
        raise PreconditionError("the Heisenberg pushforward takes a 3-d bump")
    r = jn.radius
    box = np.array([[-r, r], [-r, r], [-r, r]])

    def ev(p, q, t):
        return (jn.axis(p) * jn.axis(q) * jn.axis(t)).astype(np.complex128)

    return hb.HTestFunction(ev, box, nodes=nodes, fd_step=fd_step)


def push_forward(
    jn: ScaledBump,
    model: GroupModel,
    nodes: int | None = None,
    fd_step: float | None = None,
):
    """Model test function carrying the scaled bump through exp (unit Jacobian)."""
    if model.name == "torus":
        return _torus_pushforward(jn)
    if model.name == "heisenberg":
        return _heisenberg_pushforward(
            jn,
            nodes=nodes or hb.DEFAULT_QUADRATURE.box_nodes,
            fd_step=fd_step or hb.DEFAULT_QUADRATURE.fd_step,
        )
    raise PreconditionError(f"no pushforward for model {model.name!r}")


def standard_mollifier(model: GroupModel, n: int, radius: float = 0.25, **kwargs):
    """J_n for the standard profile at the given radius."""
    profile = BumpProfile.standard(radius)
    return push_forward(make_jn(profile, n, model.dim), model, **kwargs)


# --------------------------------------------------------------------------
# smoothing and convergence diagnostics
# --------------------------------------------------------------------------


def mollify(
    eta: CoefficientVector,
    n: int,
    model: GroupModel,
    profile: BumpProfile | None = None,
    **smooth_kwargs,
) -> CoefficientVector:
    """pi(J_n) eta: a smooth vector approximating eta as n grows."""
    profile = profile or BumpProfile.standard()
    f = push_forward(make_jn(profile, n, model.dim), model)
    return model.smooth_by(f, eta, **smooth_kwargs)


def gmc_approx(
    eta: CoefficientVector,
    zeta: CoefficientVector,
    f,
    n_list: Sequence[int],
    model: GroupModel,
    profile: BumpProfile | None = None,
    **eval_kwargs,
) -> list[tuple[int, complex, float]]:
    """Rows (n, value, residual) for the smooth approximations against f.

    value is the coefficient of the mollified vector paired through f and
    residual its distance to the unmollified evaluation.
    """
    base = model.gmc_eval(eta, zeta, f, **eval_kwargs)
    rows = []
    for n in n_list:
        approx = model.gmc_eval(
            mollify(eta, n, model, profile=profile), zeta, f, **eval_kwargs
        )
        rows.append((n, approx, abs(approx - base)))
    return rows
