import numpy as np
import pytest

from firstshell.spectral import GridSpec, RealField, SpectralField, forward_transform


@pytest.fixture(scope="session")
def grid64() -> GridSpec:
    return GridSpec(64)


@pytest.fixture(scope="session")
def grid32() -> GridSpec:
    return GridSpec(32)


def random_real_field(grid: GridSpec, seed: int) -> RealField:
    """Smooth random zero-mean field from a seeded band-limited draw."""
    rng = np.random.default_rng(seed)
    n = grid.n
    xm, ym = grid.meshes()
    v = np.zeros((n, n))
    for _ in range(8):
        k1, k2 = rng.integers(-5, 6, size=2)
        if k1 == 0 and k2 == 0:
            continue
        amp, phase = rng.normal(), rng.uniform(0, 2 * np.pi)
        v += amp * np.cos(k1 * xm + k2 * ym + phase)
    v -= v.mean()
    return RealField(grid, v)


def random_spectral_field(grid: GridSpec, seed: int) -> SpectralField:
    return forward_transform(random_real_field(grid, seed))
