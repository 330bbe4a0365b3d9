"""Torus geometry, Fourier transforms, and spectral calculus.

Everything operates on the periodic square [0, 2pi)^2 with an n x n
collocation grid. The Fourier convention is

    w(x) = sum_k w_hat(k) e^{i k.x},    ||w||_L2^2 = 4 pi^2 sum_k |w_hat(k)|^2,

with integer wavenumbers k = (k1, k2), k_i in {-n/2+1, ..., n/2}. Real-space
arrays are indexed [y, x] (row-major, x fastest); spectral arrays are indexed
[k2, k1] in standard FFT ordering. The Nyquist row/column (k = n/2) is kept
identically zero so that Hermitian symmetry survives differentiation.
"""

import functools
from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft

HERMITIAN_TOL = 1e-13
MEAN_TOL = 1e-12
DIVERGENCE_TOL = 1e-10


class FieldError(ValueError):
    """Raised when a field violates its construction invariants."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform n x n grid on [0, 2pi)^2; n must be even and >= 16."""

    n: int

    def __post_init__(self):
        if self.n % 2 != 0 or self.n < 16:
            raise FieldError(f"grid size must be even and >= 16, got n={self.n}")

    @property
    def spacing(self) -> float:
        return 2.0 * np.pi / self.n

    @property
    def cell_area(self) -> float:
        return self.spacing ** 2

    def meshes(self) -> tuple[np.ndarray, np.ndarray]:
        """Return (X, Y) coordinate arrays, shape (n, n), indexed [y, x]."""
        arrays = _grid_arrays(self.n)
        return arrays.xmesh, arrays.ymesh


class _GridArrays:
    """Precomputed wavenumber/mask arrays for one grid size (cached per n)."""

    def __init__(self, n: int):
        self.n = n
        x = np.arange(n) * (2.0 * np.pi / n)
        self.xmesh, self.ymesh = np.meshgrid(x, x)
        for a in (self.xmesh, self.ymesh):
            a.setflags(write=False)

        # Full-spectrum layout: axis 0 is k2 (y), axis 1 is k1 (x).
        kfull = np.fft.fftfreq(n, d=1.0 / n).astype(np.int64)
        self.k1_full = kfull[np.newaxis, :]
        self.k2_full = kfull[:, np.newaxis]
        self.ksq_full = (self.k1_full ** 2 + self.k2_full ** 2).astype(np.float64)
        with np.errstate(divide="ignore"):
            self.inv_ksq_full = np.where(self.ksq_full > 0, 1.0 / self.ksq_full, 0.0)

        # Half-spectrum layout used by rfft2: k1 in {0, ..., n/2}.
        khalf = np.arange(n // 2 + 1, dtype=np.int64)
        self.k1_half = khalf[np.newaxis, :]
        self.k2_half = kfull[:, np.newaxis]
        self.ksq_half = (self.k1_half ** 2 + self.k2_half ** 2).astype(np.float64)
        with np.errstate(divide="ignore"):
            self.inv_ksq_half = np.where(self.ksq_half > 0, 1.0 / self.ksq_half, 0.0)

        # 2/3-rule mask: drop max(|k1|, |k2|) > n/3.
        cutoff = n / 3.0
        kmax_full = np.maximum(np.abs(self.k1_full), np.abs(self.k2_full))
        self.dealias_full = kmax_full <= cutoff
        kmax_half = np.maximum(np.abs(self.k1_half), np.abs(self.k2_half))
        self.dealias_half = kmax_half <= cutoff

        # Parseval weights in half layout: interior k1 columns count twice.
        w = np.full(n // 2 + 1, 2.0)
        w[0] = 1.0
        w[n // 2] = 1.0
        self.half_weights = w[np.newaxis, :]

        # Index map sending k -> -k in full layout.
        self.reverse_index = (-np.arange(n)) % n

        nyq = n // 2
        self.nyquist_free = np.ones((n, n), dtype=bool)
        self.nyquist_free[nyq, :] = False
        self.nyquist_free[:, nyq] = False


@functools.lru_cache(maxsize=None)
def _grid_arrays(n: int) -> _GridArrays:
    return _GridArrays(n)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class RealField:
    """Zero-mean real scalar (vorticity) sampled on the grid, indexed [y, x]."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        n = self.grid.n
        if v.shape != (n, n):
            raise FieldError(f"expected shape {(n, n)}, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise FieldError("real field contains non-finite samples")
        scale = float(np.max(np.abs(v)))
        if abs(v.mean()) > MEAN_TOL * scale:
            raise FieldError(
                f"vorticity mean {v.mean():.3e} is not zero "
                f"(required for the velocity inversion)"
            )
        object.__setattr__(self, "values", _freeze(v))

    @classmethod
    def from_function(cls, grid: GridSpec, f) -> "RealField":
        """Sample f(x, y) on the grid."""
        xm, ym = grid.meshes()
        return cls(grid, f(xm, ym))


@dataclass(frozen=True)
class SpectralField:
    """Fourier coefficients of a real zero-mean field, full FFT layout [k2, k1].

    Invariants checked at construction: Hermitian symmetry, zero mean
    coefficient, zero Nyquist line, finite values.
    """

    grid: GridSpec
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        n = self.grid.n
        if c.shape != (n, n):
            raise FieldError(f"expected shape {(n, n)}, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise FieldError("spectral field contains non-finite coefficients")
        arrays = _grid_arrays(n)
        scale = float(np.max(np.abs(c)))
        if scale > 0.0:
            rev = arrays.reverse_index
            mirror = np.conj(c[np.ix_(rev, rev)])
            if np.max(np.abs(c - mirror)) > HERMITIAN_TOL * scale:
                raise FieldError("broken Hermitian symmetry: w_hat(-k) != conj(w_hat(k))")
            if abs(c[0, 0]) > MEAN_TOL * scale:
                raise FieldError(f"nonzero mean coefficient w_hat(0,0) = {c[0, 0]:.3e}")
            if np.max(np.abs(c[~arrays.nyquist_free])) > HERMITIAN_TOL * scale:
                raise FieldError("Nyquist row/column must be zero")
        c = c.copy()
        c[0, 0] = 0.0
        object.__setattr__(self, "coeffs", _freeze(c))

    def coeff(self, k1: int, k2: int) -> complex:
        """Coefficient of e^{i(k1 x + k2 y)}."""
        n = self.grid.n
        return complex(self.coeffs[k2 % n, k1 % n])

    @classmethod
    def from_modes(cls, grid: GridSpec, modes: dict[tuple[int, int], complex]) -> "SpectralField":
        """Build a field from {(k1, k2): coefficient}; conjugate pairs are
        filled in automatically for keys whose mirror is absent."""
        n = grid.n
        c = np.zeros((n, n), dtype=np.complex128)
        for (k1, k2), amp in modes.items():
            c[k2 % n, k1 % n] = amp
        for (k1, k2), amp in modes.items():
            if (-k1 % n, -k2 % n) != (k1 % n, k2 % n) and (-k1, -k2) not in modes:
                c[-k2 % n, -k1 % n] = np.conj(amp)
        return cls(grid, c)


@dataclass(frozen=True)
class VelocityField:
    """Incompressible velocity samples (u1, u2) on the grid, indexed [y, x]."""

    grid: GridSpec
    u1: np.ndarray
    u2: np.ndarray

    def __post_init__(self):
        n = self.grid.n
        u1 = np.asarray(self.u1, dtype=np.float64)
        u2 = np.asarray(self.u2, dtype=np.float64)
        if u1.shape != (n, n) or u2.shape != (n, n):
            raise FieldError(f"velocity components must have shape {(n, n)}")
        if not (np.all(np.isfinite(u1)) and np.all(np.isfinite(u2))):
            raise FieldError("velocity contains non-finite samples")
        scale = float(max(np.max(np.abs(u1)), np.max(np.abs(u2))))
        if scale > 0.0:
            arrays = _grid_arrays(n)
            d = 1j * arrays.k1_half * sfft.rfft2(u1) + 1j * arrays.k2_half * sfft.rfft2(u2)
            div = sfft.irfft2(d, s=(n, n))
            if np.max(np.abs(div)) > DIVERGENCE_TOL * scale:
                raise FieldError("velocity field is not discretely divergence-free")
        object.__setattr__(self, "u1", _freeze(u1))
        object.__setattr__(self, "u2", _freeze(u2))

    def max_speed(self) -> float:
        """max over the grid of |u1| + |u2| (advection speed for the CFL bound)."""
        return float(np.max(np.abs(self.u1) + np.abs(self.u2)))


# ---------------------------------------------------------------------------
# Transforms


def forward_transform(f: RealField) -> SpectralField:
    """Real samples -> Fourier coefficients (Nyquist and mean zeroed)."""
    n = f.grid.n
    c = sfft.fft2(f.values) / (n * n)
    arrays = _grid_arrays(n)
    c[~arrays.nyquist_free] = 0.0
    c[0, 0] = 0.0
    return SpectralField(f.grid, c)


def inverse_transform(s: SpectralField) -> RealField:
    """Fourier coefficients -> real samples, exactly real by construction."""
    n = s.grid.n
    half = np.ascontiguousarray(s.coeffs[:, : n // 2 + 1]) * (n * n)
    return RealField(s.grid, sfft.irfft2(half, s=(n, n)))


def velocity_from_vorticity(s: SpectralField) -> VelocityField:
    """Invert the vorticity to the incompressible velocity.

    u1_hat = +i k2 w_hat / |k|^2, u2_hat = -i k1 w_hat / |k|^2, i.e.
    u = grad_perp(laplace^{-1} w) so that curl u = d_x u2 - d_y u1 = w.
    """
    n = s.grid.n
    arrays = _grid_arrays(n)
    half = s.coeffs[:, : n // 2 + 1] * (n * n)
    u1h, u2h = _velocity_half(half, arrays)
    u1 = sfft.irfft2(u1h, s=(n, n))
    u2 = sfft.irfft2(u2h, s=(n, n))
    return VelocityField(s.grid, u1, u2)


def l2_norm(s: SpectralField) -> float:
    """L2 norm via Parseval: sqrt(4 pi^2 sum |w_hat|^2)."""
    total = np.sum(np.abs(s.coeffs) ** 2)
    return float(np.sqrt(4.0 * np.pi ** 2 * total))


def grid_l2_norm(f: RealField) -> float:
    """L2 norm by grid quadrature (the real-space cross-check of l2_norm)."""
    return float(np.sqrt(np.sum(f.values ** 2) * f.grid.cell_area))


def dealias(s: SpectralField) -> SpectralField:
    """2/3-rule truncation: zero all modes with max(|k1|, |k2|) > n/3."""
    arrays = _grid_arrays(s.grid.n)
    return SpectralField(s.grid, np.where(arrays.dealias_full, s.coeffs, 0.0))


# ---------------------------------------------------------------------------
# Half-spectrum internals shared with the time stepper. Arrays have shape
# (n, n//2 + 1) in rfft2 layout and carry the same normalization as
# SpectralField.coeffs scaled by n^2 (i.e. raw rfft2 output).


def _velocity_half(half: np.ndarray, arrays: _GridArrays):
    u1h = 1j * arrays.k2_half * arrays.inv_ksq_half * half
    u2h = -1j * arrays.k1_half * arrays.inv_ksq_half * half
    return u1h, u2h


def _half_from_field(s: SpectralField) -> np.ndarray:
    n = s.grid.n
    return np.ascontiguousarray(s.coeffs[:, : n // 2 + 1]) * (n * n)


def _field_from_half(grid: GridSpec, half: np.ndarray) -> SpectralField:
    """Hermitian-complete a half-spectrum array into a full SpectralField."""
    n = grid.n
    arrays = _grid_arrays(n)
    c = np.zeros((n, n), dtype=np.complex128)
    c[:, : n // 2 + 1] = half / (n * n)
    rev = arrays.reverse_index
    # Columns k1 = n/2+1 .. n-1 mirror columns n-k1 with k2 negated.
    src = np.conj(c[np.ix_(rev, np.arange(n // 2 - 1, 0, -1))])
    c[:, n // 2 + 1 :] = src
    c[~arrays.nyquist_free] = 0.0
    c[0, 0] = 0.0
    return SpectralField(grid, c)


def _half_norm_sq(half: np.ndarray, arrays: _GridArrays) -> float:
    """||w||_L2^2 from a raw rfft2 array (weights double interior columns)."""
    n = arrays.n
    total = np.sum(arrays.half_weights * np.abs(half) ** 2) / (n * n) ** 2
    return float(4.0 * np.pi ** 2 * total)
