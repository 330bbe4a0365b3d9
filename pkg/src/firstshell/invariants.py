"""Conserved functionals: energy, enstrophy, polynomial Casimirs, the quartic
Casimir with a velocity-scaled smooth cutoff, and the closed-form profile of
that quartic along the unit first shell.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import optimize

from .spectral import (
    GridSpec,
    RealField,
    SpectralField,
    _grid_arrays,
    forward_transform,
    l2_norm,
)
from .shell import perp_norm

GAP_IDENTITY_TOL = 1e-10


@dataclass(frozen=True)
class CutoffSpec:
    """Smooth even cutoff: 1 on [0, inner], 0 on [outer, inf), applied to
    w / (velocity_scale * ||u||_L2)."""

    inner: float = 1.0
    outer: float = 2.0
    velocity_scale: float = 10.0

    def __post_init__(self):
        if not 0 < self.inner < self.outer:
            raise ValueError("cutoff requires 0 < inner < outer")
        if self.velocity_scale <= 0:
            raise ValueError("velocity_scale must be positive")


@dataclass(frozen=True)
class CasimirSpec:
    """Polynomial integrand f(w) = sum_j coeffs[j] w^j, degree >= 1."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("polynomial Casimir needs degree >= 1")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))


def energy(s: SpectralField) -> float:
    """Kinetic energy: 4 pi^2 sum_{k != 0} |w_hat(k)|^2 / |k|^2 = int |u|^2."""
    arrays = _grid_arrays(s.grid.n)
    total = np.sum(np.abs(s.coeffs) ** 2 * arrays.inv_ksq_full)
    return float(4.0 * np.pi ** 2 * total)


def enstrophy(s: SpectralField) -> float:
    """||w||_L2^2."""
    return l2_norm(s) ** 2


def enstrophy_energy_gap(s: SpectralField) -> tuple[float, float]:
    """Both sides of the identity sum (1 - 1/|k|^2)|w_hat|^2 = Z - E.

    The multiplier vanishes exactly on |k| = 1, so the left side is carried
    entirely by the shell complement and satisfies
    perp^2 / 2 <= lhs <= perp^2. Both facts are checked before returning.
    """
    arrays = _grid_arrays(s.grid.n)
    mult = np.where(arrays.ksq_full > 0, 1.0 - arrays.inv_ksq_full, 0.0)
    lhs = float(4.0 * np.pi ** 2 * np.sum(mult * np.abs(s.coeffs) ** 2))
    rhs = enstrophy(s) - energy(s)
    if abs(lhs - rhs) >= GAP_IDENTITY_TOL * (1.0 + rhs):
        raise RuntimeError(f"gap identity violated: lhs={lhs!r} rhs={rhs!r}")
    p_sq = perp_norm(s) ** 2
    slack = GAP_IDENTITY_TOL * (1.0 + p_sq)
    if not (0.5 * p_sq - slack <= lhs <= p_sq + slack):
        raise RuntimeError(
            f"gap sandwich violated: perp^2/2={0.5 * p_sq!r} lhs={lhs!r} perp^2={p_sq!r}"
        )
    return lhs, rhs


def casimir(f: RealField, spec: CasimirSpec) -> float:
    """Grid quadrature of the polynomial Casimir int f(w)."""
    vals = np.polynomial.polynomial.polyval(f.values, spec.coeffs)
    return float(np.sum(vals) * f.grid.cell_area)


def _bump(t: np.ndarray) -> np.ndarray:
    """exp(-1/t) for t > 0, else 0 (the C-infinity one-sided mollifier)."""
    out = np.zeros_like(t)
    pos = t > 0
    with np.errstate(divide="ignore", over="ignore"):
        out[pos] = np.exp(-1.0 / t[pos])
    return out


def smooth_cutoff(x, spec: CutoffSpec = CutoffSpec()):
    """Even C-infinity cutoff: 1 for |x| <= inner, 0 for |x| >= outer,
    monotone in between via the standard g(t) / (g(t) + g(1-t)) step."""
    arr = np.abs(np.asarray(x, dtype=np.float64))
    t = np.clip((arr - spec.inner) / (spec.outer - spec.inner), 0.0, 1.0)
    t = np.atleast_1d(t)
    rising = _bump(t)
    falling = _bump(1.0 - t)
    out = 1.0 - rising / (rising + falling)
    out = out.reshape(np.shape(np.asarray(x, dtype=np.float64)))
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out)
    return out


def chi_is_active(f: RealField, spec: CutoffSpec = CutoffSpec()) -> bool:
    """True when any sample leaves the cutoff plateau |w| <= scale * ||u||."""
    u_norm = math.sqrt(energy(forward_transform(f)))
    return _chi_active_from_values(f.values, u_norm, spec)


def _chi_active_from_values(values: np.ndarray, u_norm: float, spec: CutoffSpec) -> bool:
    return bool(np.max(np.abs(values)) > spec.velocity_scale * u_norm * spec.inner)


def cutoff_quartic_casimir(f: RealField, spec: CutoffSpec = CutoffSpec()) -> float:
    """int w^4 * cutoff(w / (scale * ||u||_L2)); 0 for the zero field.

    On the plateau (max |w| <= scale * ||u||) this equals the plain quartic
    Casimir; the cutoff only engages for strongly concentrated vorticity.
    """
    u_norm = math.sqrt(energy(forward_transform(f)))
    return _quartic_with_cutoff(f.values, u_norm, f.grid.cell_area, spec)


def _quartic_with_cutoff(
    values: np.ndarray, u_norm: float, cell_area: float, spec: CutoffSpec
) -> float:
    if u_norm == 0.0:
        return 0.0
    w4 = values ** 4
    if not _chi_active_from_values(values, u_norm, spec):
        return float(np.sum(w4) * cell_area)
    cut = smooth_cutoff(values / (spec.velocity_scale * u_norm), spec)
    return float(np.sum(w4 * cut) * cell_area)


# ---------------------------------------------------------------------------
# The quartic profile along the unit first shell:
# theta -> int (cos(theta) cos x + sin(theta) cos y)^4.


def quartic_profile(theta: float) -> float:
    """Closed form 3 pi^2/2 * (5/4 - cos(4 theta)/4)."""
    return 1.5 * math.pi ** 2 * (1.25 - 0.25 * math.cos(4.0 * theta))


def quartic_profile_deriv(theta: float) -> float:
    """d/dtheta of the profile: 3 pi^2/2 * sin(4 theta)."""
    return 1.5 * math.pi ** 2 * math.sin(4.0 * theta)


def quartic_profile_second_deriv(theta: float) -> float:
    """Second derivative 6 pi^2 cos(4 theta); magnitude 6 pi^2 on the lattice."""
    return 6.0 * math.pi ** 2 * math.cos(4.0 * theta)


def quartic_profile_quadrature(theta: float, grid: GridSpec) -> float:
    """Grid quadrature of the quartic integrand (exact for n >= 8)."""
    xm, ym = grid.meshes()
    w = math.cos(theta) * np.cos(xm) + math.sin(theta) * np.cos(ym)
    return float(np.sum(w ** 4) * grid.cell_area)


def scan_roots(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    samples: int = 4097,
    xtol: float = 1e-12,
) -> list[float]:
    """Roots of f on [lo, hi]: bisection on every sampled sign change, plus
    samples where f is already at roundoff level (covers endpoint roots)."""
    xs = np.linspace(lo, hi, samples)
    fs = np.array([f(x) for x in xs])
    scale = float(np.max(np.abs(fs)))
    if scale == 0.0:
        raise ValueError("function vanishes identically on the scan grid")
    roots = [float(x) for x, v in zip(xs, fs) if abs(v) <= 1e-13 * scale]
    for i in range(samples - 1):
        if abs(fs[i]) <= 1e-13 * scale or abs(fs[i + 1]) <= 1e-13 * scale:
            continue
        if fs[i] * fs[i + 1] < 0:
            roots.append(float(optimize.bisect(f, xs[i], xs[i + 1], xtol=xtol)))
    roots.sort()
    spacing = (hi - lo) / (samples - 1)
    merged: list[float] = []
    for r in roots:
        if not merged or r - merged[-1] > 2 * spacing:
            merged.append(r)
    return merged


def casimir_values(fields: Sequence[RealField], spec: CasimirSpec) -> list[float]:
    """Convenience batch evaluation used by the diagnostics pipeline."""
    return [casimir(f, spec) for f in fields]
