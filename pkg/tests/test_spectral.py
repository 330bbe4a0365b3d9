"""Tests for the spectral substrate: transforms, velocity inversion, norms,
dealiasing, and the field invariants."""

import numpy as np
import pytest

from firstshell.spectral import (
    FieldError,
    GridSpec,
    RealField,
    SpectralField,
    VelocityField,
    dealias,
    forward_transform,
    grid_l2_norm,
    inverse_transform,
    l2_norm,
    velocity_from_vorticity,
)
from conftest import random_real_field, random_spectral_field

TWO_PI_SQ = 2.0 * np.pi ** 2


class TestGridSpec:
    def test_rejects_odd_and_small(self):
        with pytest.raises(FieldError):
            GridSpec(33)
        with pytest.raises(FieldError):
            GridSpec(8)

    def test_spacing(self):
        assert GridSpec(64).spacing == pytest.approx(2 * np.pi / 64)


class TestFieldInvariants:
    """Construction-time validation of the field types."""

    def test_real_field_rejects_nonfinite(self, grid64):
        v = np.zeros((64, 64))
        v[3, 5] = np.nan
        with pytest.raises(FieldError, match="non-finite"):
            RealField(grid64, v)

    def test_real_field_rejects_nonzero_mean(self, grid64):
        with pytest.raises(FieldError, match="mean"):
            RealField(grid64, np.ones((64, 64)))

    def test_spectral_field_rejects_broken_hermitian(self, grid64):
        c = np.zeros((64, 64), dtype=complex)
        c[0, 1] = 0.5  # (1,0) without its conjugate partner
        with pytest.raises(FieldError, match="Hermitian"):
            SpectralField(grid64, c)

    def test_spectral_field_rejects_nonzero_mean(self, grid64):
        with pytest.raises(FieldError, match="mean"):
            SpectralField.from_modes(grid64, {(0, 0): 1.0, (1, 0): 0.5, (-1, 0): 0.5})

    def test_spectral_field_rejects_nyquist_content(self, grid64):
        with pytest.raises(FieldError, match="Nyquist"):
            SpectralField.from_modes(grid64, {(32, 0): 0.5})

    def test_fields_are_immutable(self, grid64):
        f = random_real_field(grid64, seed=0)
        with pytest.raises(ValueError):
            f.values[0, 0] = 1.0

    def test_velocity_rejects_divergent_input(self, grid64):
        xm, _ = grid64.meshes()
        with pytest.raises(FieldError, match="divergence"):
            VelocityField(grid64, np.sin(xm), np.zeros_like(xm))


class TestTransforms:
    def test_cosine_x_coefficients(self, grid64):
        """f = cos(x) has exactly w_hat(+-1, 0) = 1/2."""
        s = forward_transform(RealField.from_function(grid64, lambda x, y: np.cos(x)))
        assert s.coeff(1, 0) == pytest.approx(0.5, abs=1e-14)
        assert s.coeff(-1, 0) == pytest.approx(0.5, abs=1e-14)
        rest = s.coeffs.copy()
        rest[0, 1] = rest[0, -1] = 0.0
        assert np.max(np.abs(rest)) < 1e-14

    def test_zero_field(self, grid64):
        s = forward_transform(RealField(grid64, np.zeros((64, 64))))
        assert np.all(s.coeffs == 0)

    def test_single_mode_reconstructions(self, grid64):
        xm, _ = grid64.meshes()
        cos_back = inverse_transform(
            SpectralField.from_modes(grid64, {(1, 0): 0.5, (-1, 0): 0.5})
        )
        assert np.allclose(cos_back.values, np.cos(xm), atol=1e-13)
        sin_back = inverse_transform(
            SpectralField.from_modes(grid64, {(1, 0): -0.5j, (-1, 0): 0.5j})
        )
        assert np.allclose(sin_back.values, np.sin(xm), atol=1e-13)

    @pytest.mark.parametrize("seed", range(50))
    def test_round_trip_is_identity(self, grid64, seed):
        """inverse(forward(f)) == f to 1e-12 relative max-norm."""
        f = random_real_field(grid64, seed)
        back = inverse_transform(forward_transform(f))
        scale = np.max(np.abs(f.values))
        assert np.max(np.abs(back.values - f.values)) < 1e-12 * scale

    @pytest.mark.parametrize("seed", [3, 17, 92])
    def test_spectral_round_trip(self, grid64, seed):
        s = random_spectral_field(grid64, seed)
        back = forward_transform(inverse_transform(s))
        assert np.max(np.abs(back.coeffs - s.coeffs)) < 1e-12 * np.max(np.abs(s.coeffs))


class TestVelocity:
    """Velocity inversion u = grad_perp(laplace^{-1} w)."""

    def test_cos_x(self, grid64):
        xm, _ = grid64.meshes()
        v = velocity_from_vorticity(
            forward_transform(RealField.from_function(grid64, lambda x, y: np.cos(x)))
        )
        assert np.allclose(v.u1, 0.0, atol=1e-13)
        assert np.allclose(v.u2, np.sin(xm), atol=1e-13)

    def test_cos_y(self, grid64):
        _, ym = grid64.meshes()
        v = velocity_from_vorticity(
            forward_transform(RealField.from_function(grid64, lambda x, y: np.cos(y)))
        )
        assert np.allclose(v.u1, -np.sin(ym), atol=1e-13)
        assert np.allclose(v.u2, 0.0, atol=1e-13)

    def test_cos_2x(self, grid64):
        """w = cos(2x): |k|^2 = 4 weighting gives u = (0, sin(2x)/2)."""
        xm, _ = grid64.meshes()
        v = velocity_from_vorticity(
            forward_transform(RealField.from_function(grid64, lambda x, y: np.cos(2 * x)))
        )
        assert np.allclose(v.u1, 0.0, atol=1e-13)
        assert np.allclose(v.u2, np.sin(2 * xm) / 2, atol=1e-13)

    def test_cos_2x_against_streamfunction_differences(self, grid64):
        """Cross-check u2 = d_x psi with psi = -cos(2x)/4 by 4th-order
        central differences of the analytic streamfunction."""
        n, h = grid64.n, grid64.spacing
        xm, _ = grid64.meshes()
        psi = -np.cos(2 * xm) / 4.0
        dpsi_dx = (
            -np.roll(psi, -2, axis=1)
            + 8 * np.roll(psi, -1, axis=1)
            - 8 * np.roll(psi, 1, axis=1)
            + np.roll(psi, 2, axis=1)
        ) / (12 * h)
        v = velocity_from_vorticity(
            forward_transform(RealField.from_function(grid64, lambda x, y: np.cos(2 * x)))
        )
        assert np.max(np.abs(v.u2 - dpsi_dx)) < 1e-4

    def test_curl_of_velocity_recovers_vorticity(self, grid64):
        """d_x u2 - d_y u1 == w (the sign convention fixed by the examples)."""
        s = random_spectral_field(grid64, seed=5)
        v = velocity_from_vorticity(s)
        import scipy.fft as sfft

        k = np.fft.fftfreq(64, d=1 / 64)
        curl = sfft.ifft2(
            1j * k[np.newaxis, :] * sfft.fft2(v.u2) - 1j * k[:, np.newaxis] * sfft.fft2(v.u1)
        ).real
        w = inverse_transform(s).values
        assert np.max(np.abs(curl - w)) < 1e-10 * np.max(np.abs(w))

    @pytest.mark.parametrize("seed", range(10))
    def test_divergence_free(self, grid64, seed):
        # construction itself enforces the invariant; just exercise it
        velocity_from_vorticity(random_spectral_field(grid64, seed))

    def test_rejects_nonzero_mean(self, grid64):
        # |k|=0 inversion is undefined; the field type already blocks it
        with pytest.raises(FieldError):
            SpectralField.from_modes(grid64, {(0, 0): 0.3})


class TestNorms:
    def test_cos_x_norm(self, grid64):
        s = forward_transform(RealField.from_function(grid64, lambda x, y: np.cos(x)))
        assert l2_norm(s) == pytest.approx(np.sqrt(TWO_PI_SQ), rel=1e-13)

    def test_zero_norm(self, grid64):
        assert l2_norm(SpectralField(grid64, np.zeros((64, 64), dtype=complex))) == 0.0

    @pytest.mark.parametrize("alpha", [1.0, 0.6, 1 / np.sqrt(2)])
    def test_unit_shell_combination(self, grid64, alpha):
        """alpha cos x + beta cos y with alpha^2 + beta^2 = 1 has the same
        norm as a single mode (orthogonality)."""
        beta = np.sqrt(1 - alpha ** 2)
        f = RealField.from_function(
            grid64, lambda x, y: alpha * np.cos(x) + beta * np.cos(y)
        )
        assert l2_norm(forward_transform(f)) == pytest.approx(np.sqrt(TWO_PI_SQ), rel=1e-12)

    @pytest.mark.parametrize("seed", range(20))
    def test_parseval_against_quadrature(self, grid64, seed):
        f = random_real_field(grid64, seed)
        assert l2_norm(forward_transform(f)) == pytest.approx(
            grid_l2_norm(f), rel=1e-10
        )


class TestDealias:
    def test_cutoff_boundary_n32(self, grid32):
        """At n=32 the 2/3 cutoff sits between |k|=10 and |k|=12."""
        kept = dealias(SpectralField.from_modes(grid32, {(10, 0): 0.5}))
        assert kept.coeff(10, 0) == pytest.approx(0.5)
        dropped = dealias(SpectralField.from_modes(grid32, {(12, 0): 0.5}))
        assert np.all(dropped.coeffs == 0)

    @pytest.mark.parametrize("seed", range(10))
    def test_projection_properties(self, grid64, seed):
        """Idempotent, norm non-increasing, and kept modes unchanged."""
        s = random_spectral_field(grid64, seed)
        d = dealias(s)
        assert np.array_equal(dealias(d).coeffs, d.coeffs)
        assert l2_norm(d) <= l2_norm(s) + 1e-15

    def test_energy_never_increases(self, grid64):
        from firstshell.invariants import energy

        for seed in range(10):
            s = random_spectral_field(grid64, seed)
            assert energy(dealias(s)) <= energy(s) * (1 + 1e-14)
