import math

import numpy as np
import pytest

from fisheye.errors import DomainError
from fisheye.lens import LensConfig, radial_mean_index
from fisheye.plasmon import (
    NOMINAL_TOTAL_LOSS,
    PlasmonStack,
    average_absorption,
    dispersion_residual,
    end_to_end_estimate,
    height_for_index,
    lens_height_profile,
    mirror_loss,
    solve_effective_index,
    sweep_effective_index,
    transverse_wavenumbers,
)


@pytest.fixture
def stack():
    return PlasmonStack()


@pytest.fixture
def lens_cfg():
    return LensConfig(radius=1.749)


class TestStack:
    def test_validation(self):
        with pytest.raises(DomainError):
            PlasmonStack(eps_metal=2.0 + 0.1j)
        with pytest.raises(DomainError):
            PlasmonStack(eps_dielectric=0.9)

    def test_limit_indices(self, stack):
        assert stack.flat_interface_index.real == pytest.approx(1.0204, abs=2e-4)
        assert stack.thick_film_index.real == pytest.approx(2.049, abs=2e-3)


class TestDispersionResidual:
    def test_flat_interface_root(self, stack):
        n0 = stack.flat_interface_index
        assert abs(dispersion_residual(n0, 0.0, stack)) < 1e-10

    def test_thick_film_root(self, stack):
        n_inf = stack.thick_film_index
        # choose d with Re(k_d eps_d) d >= 20 so tanh has saturated
        k_air, k_d, k_m = transverse_wavenumbers(n_inf, stack)
        d = 20.0 / (k_d * stack.eps_dielectric).real
        assert abs(dispersion_residual(n_inf, d, stack)) < 1e-6

    def test_decay_branches_at_limits(self, stack):
        for n in (stack.flat_interface_index, stack.thick_film_index):
            k_air, k_d, k_m = transverse_wavenumbers(n, stack)
            assert k_air.real > 0.0
            # the physical decay constants are the pre-division square roots
            assert (k_m * stack.eps_metal).real > 0.0
            assert (k_d * stack.eps_dielectric).real >= 0.0


class TestSolveEffectiveIndex:
    def test_zero_height(self, stack):
        sample = solve_effective_index(0.0, stack)
        assert sample.n == pytest.approx(1.020, abs=1e-3)
        assert sample.chi > 0.0

    def test_seeded_solve_matches_continuation(self, stack):
        by_continuation = solve_effective_index(80.0, stack)
        seeded = solve_effective_index(80.0, stack, seed=by_continuation.n_eff)
        assert seeded.n_eff == pytest.approx(by_continuation.n_eff, rel=1e-10)

    def test_negative_height_rejected(self, stack):
        with pytest.raises(DomainError):
            solve_effective_index(-1.0, stack)


class TestSweep:
    def test_published_range(self, stack):
        sweep = sweep_effective_index(200.0, stack)
        n = np.array([s.n for s in sweep])
        chi = np.array([s.chi for s in sweep])
        assert n[0] == pytest.approx(1.020, abs=1e-3)
        assert 1.9 < n[-1] < 2.05
        assert np.all(np.diff(n) > -1e-6)  # monotone rise
        assert np.all(chi > 0.0)
        assert chi[-1] > chi[0]  # losses grow with confinement

    def test_residuals_below_k0_scale(self, stack):
        sweep = sweep_effective_index(120.0, stack, step_nm=2.0)
        worst = max(abs(dispersion_residual(s.n_eff, s.height_nm, stack)) for s in sweep)
        assert worst < 1e-10 * stack.k0

    def test_grid_includes_endpoint(self, stack):
        sweep = sweep_effective_index(10.3, stack, step_nm=0.5)
        assert sweep[-1].height_nm == pytest.approx(10.3)


class TestHeightForIndex:
    def test_floor_maps_to_zero(self, stack):
        assert height_for_index(stack.flat_interface_index.real, stack) == 0.0

    def test_mid_target(self, stack):
        d = height_for_index(1.5, stack)
        assert 0.0 < d < 200.0
        assert solve_effective_index(d, stack).n == pytest.approx(1.5, abs=1e-4)

    def test_out_of_range_targets(self, stack):
        with pytest.raises(DomainError):
            height_for_index(2.5, stack)
        with pytest.raises(DomainError):
            height_for_index(0.99, stack)


class TestLensProfile:
    def test_conical_shape(self, stack, lens_cfg):
        profile = lens_height_profile(lens_cfg, stack, 101)
        rhos = [p[0] for p in profile]
        ds = [p[1] for p in profile]
        assert rhos[0] == 0.0 and rhos[-1] == 1.0
        assert ds[-1] == 0.0  # rim target n = 1 clamps to bare interface
        assert 150.0 < ds[0] < 250.0  # center needs index 2
        assert all(b <= a + 1e-9 for a, b in zip(ds, ds[1:]))

    def test_profile_realizes_index(self, stack, lens_cfg):
        profile = lens_height_profile(lens_cfg, stack, 21)
        for rho, d in profile[:-2]:
            target = 2.0 / (1.0 + rho * rho)
            if target >= stack.flat_interface_index.real:
                got = solve_effective_index(d, stack).n
                assert got == pytest.approx(target, abs=1e-6)

    def test_unreachable_center_rejected(self, stack):
        with pytest.raises(DomainError):
            lens_height_profile(LensConfig(radius=1.0, n0=1.2), stack, 11)


class TestAverageAbsorption:
    def test_published_level(self, stack, lens_cfg):
        avg = average_absorption(lens_cfg, stack, 400)
        assert avg == pytest.approx(3e-3, rel=0.3)

    def test_lossless_metal_gives_zero(self, lens_cfg):
        lossless = PlasmonStack(eps_metal=-25.23 + 0.0j)
        assert average_absorption(lens_cfg, lossless, 60) == pytest.approx(0.0, abs=1e-15)

    def test_sample_count_insensitive(self, stack, lens_cfg):
        coarse = average_absorption(lens_cfg, stack, 400)
        fine = average_absorption(lens_cfg, stack, 800)
        assert abs(fine - coarse) / fine < 1e-3


class TestMirrorLoss:
    def test_perfect_mirror(self, lens_cfg):
        assert mirror_loss(lens_cfg, 1.0, math.pi / 2.0) == 0.0

    def test_published_arithmetic(self, lens_cfg):
        # t^2 lambda0/(4 pi nbar R0) with r^2 = 0.95, nbar = pi/2, R0 = 1.749
        got = mirror_loss(lens_cfg, 0.95, radial_mean_index(lens_cfg))
        assert got == pytest.approx(1.45e-3, rel=5e-3)

    def test_inverse_radius_scaling(self):
        a = mirror_loss(LensConfig(radius=2.0), 0.95, 1.57)
        b = mirror_loss(LensConfig(radius=4.0), 0.95, 1.57)
        assert a == pytest.approx(2.0 * b, rel=1e-12)

    def test_validation(self, lens_cfg):
        with pytest.raises(DomainError):
            mirror_loss(lens_cfg, 0.0, 1.57)


class TestEndToEnd:
    def test_published_estimate(self, stack, lens_cfg):
        report = end_to_end_estimate(lens_cfg, stack, n_radial_samples=400)
        assert report.fidelity_nominal == pytest.approx(0.806, abs=5e-3)
        assert 0.74 <= report.fidelity_computed <= 0.78
        assert report.alpha_mirror_formula == pytest.approx(1.45e-3, rel=5e-3)
        assert report.alpha_mirror_reference == 4e-4
        assert NOMINAL_TOTAL_LOSS == 3.4e-3

    def test_ideal_components_give_unity(self, lens_cfg):
        lossless = PlasmonStack(eps_metal=-25.23 + 0.0j)
        report = end_to_end_estimate(
            lens_cfg, lossless, reflectivity_sq=1.0, eta=1e12, n_radial_samples=60
        )
        assert report.fidelity_computed == pytest.approx(1.0, abs=1e-9)
