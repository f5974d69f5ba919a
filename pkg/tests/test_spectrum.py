import math

import numpy as np
import numpy.polynomial.polynomial as npoly
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rotlandau import (
    HeunParams,
    NoAdmissibleRootError,
    PhysicalConfig,
    allowed_frequencies,
    channel_params,
    energy_level,
    generate_coefficients,
    ground_state_closed_form,
    nu_from_energy,
    theta_roots,
    truncation_polynomial,
)


def rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


class TestTruncationPolynomial:
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    @pytest.mark.parametrize("gamma", [0.0, 0.5, 1.0, 2.37])
    def test_degree_and_parity(self, n, gamma):
        poly = truncation_polynomial(n, gamma)
        assert len(poly.coeffs) == n + 2
        assert poly.coeffs[-1] != 0.0
        # definite parity: alternating entries are structural zeros
        for j in range(len(poly.coeffs)):
            if (j - (n + 1)) % 2 != 0:
                assert poly.coeffs[j] == 0.0

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
    @pytest.mark.parametrize("gamma", [0.0, 0.5, 1.0, 2.37])
    @pytest.mark.parametrize("theta", [0.3, 1.7, -2.2])
    def test_matches_numeric_recurrence(self, n, gamma, theta):
        poly = truncation_polynomial(n, gamma)
        series = generate_coefficients(HeunParams(gamma=gamma, theta=theta, nu=2.0 * n), n + 1)
        assert abs(poly(theta) - series.coeffs[n + 1]) <= 1e-12 * poly.evaluation_scale(theta)

    def test_quadratic_seed_example(self):
        # n = 2, gamma = 0 at theta = 1 must equal the recurrence's a_3
        poly = truncation_polynomial(2, 0.0)
        series = generate_coefficients(HeunParams(gamma=0.0, theta=1.0, nu=4.0), 3)
        assert abs(poly(1.0) - series.coeffs[3]) < 1e-14

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError, match="n:"):
            truncation_polynomial(0, 1.0)
        with pytest.raises(ValueError, match="gamma:"):
            truncation_polynomial(2, -1.0)


class TestThetaRoots:
    @pytest.mark.parametrize("gamma", [0.0, 1.0, 2.0, 3.7])
    def test_ground_family_roots(self, gamma):
        roots = theta_roots(truncation_polynomial(1, gamma))
        expected = math.sqrt(2.0 * (1.0 + 2.0 * gamma))
        assert len(roots) == 2
        assert rel(roots[1], expected) < 1e-14
        assert roots[0] == -roots[1]

    @pytest.mark.parametrize("gamma", [0.0, 1.0, 2.0])
    def test_first_excited_family_roots(self, gamma):
        roots = theta_roots(truncation_polynomial(2, gamma))
        expected = math.sqrt(12.0 + 16.0 * gamma)
        assert len(roots) == 3
        assert roots[1] == 0.0
        assert rel(roots[2], expected) < 1e-14

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8])
    @pytest.mark.parametrize("gamma", [0.0, 1.0, 2.5])
    def test_root_set_matches_jacobi_matrix(self, n, gamma):
        # the three-term recurrence at nu = 2n is the characteristic relation
        # of a symmetric tridiagonal matrix with zero diagonal; its eigenvalues
        # are an independent route to the same root set
        off = np.array(
            [
                math.sqrt((k + 1.0) * (k + 1.0 + 2.0 * gamma) * 2.0 * (n - k))
                for k in range(n)
            ]
        )
        eigs = np.sort(np.linalg.eigvalsh(np.diag(off, 1) + np.diag(off, -1)))
        roots = np.array(theta_roots(truncation_polynomial(n, gamma)))
        assert len(roots) == n + 1
        assert np.max(np.abs(roots - eigs)) < 1e-10 * max(1.0, np.max(np.abs(eigs)))

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 7])
    def test_polished_residuals(self, n):
        poly = truncation_polynomial(n, 1.3)
        for root in theta_roots(poly):
            assert abs(poly(root)) <= 1e-12 * poly.evaluation_scale(root)

    @pytest.mark.parametrize("n", [2, 3, 5, 6])
    def test_exact_sign_symmetry(self, n):
        roots = theta_roots(truncation_polynomial(n, 0.8))
        for a, b in zip(roots, reversed(roots)):
            assert a == -b


class TestAllowedFrequencies:
    def test_axisymmetric_ground_line(self, worked_config):
        lines = allowed_frequencies(1, 0, worked_config, branches=("plus",))
        assert len(lines) == 1
        line = lines[0]
        assert rel(line.theta_root, math.sqrt(2.0)) < 1e-14
        assert rel(line.varpi, 2.0) < 1e-13
        assert rel(line.omega, 2.0 * (-1.0 + math.sqrt(5.0))) < 1e-13
        assert rel(line.E, 4.0) < 1e-13
        assert line.terminated is True

    def test_unit_angular_momentum_line(self, worked_config):
        lines = allowed_frequencies(1, 1, worked_config)
        assert len(lines) == 2
        plus = [x for x in lines if x.omega_branch == "plus"][0]
        minus = [x for x in lines if x.omega_branch == "minus"][0]
        assert rel(plus.varpi, 2.0 / 3.0) < 1e-13
        assert rel(plus.omega, 0.4037008503093258) < 1e-12
        assert rel(plus.E, 2.0 - math.sqrt(13.0) / 3.0) < 1e-12
        assert minus.omega < 0
        assert rel(minus.E, 2.0 + math.sqrt(13.0) / 3.0) < 1e-12

    def test_branches_satisfy_defining_relation(self, worked_config):
        for l in (-2, 0, 3):
            for line in allowed_frequencies(2, l, worked_config):
                varpi_sq = 0.25 * line.omega**2 + worked_config.Omega * line.omega
                assert rel(math.sqrt(varpi_sq), line.varpi) < 1e-12

    def test_energy_consistent_with_channel_route(self, worked_config):
        for line in allowed_frequencies(3, 2, worked_config):
            ch = channel_params(worked_config, line.l, line.omega)
            assert line.E == energy_level(line.n, line.l, ch)
            # and the truncation label round-trips through the energy
            assert abs(nu_from_energy(ch, line.E) - 2.0 * line.n) < 1e-10

    def test_multiple_roots_for_deep_levels(self, worked_config):
        lines = allowed_frequencies(3, 1, worked_config, branches=("plus",))
        assert len(lines) == 2  # two positive truncation roots at n = 3
        assert lines[0].theta_root < lines[1].theta_root
        assert lines[0].E != lines[1].E

    def test_rows_sorted_by_branch_then_root(self, worked_config):
        lines = allowed_frequencies(3, 1, worked_config)
        key = [(x.omega_branch, x.theta_root) for x in lines]
        assert key == [
            ("plus", key[0][1]),
            ("plus", key[1][1]),
            ("minus", key[2][1]),
            ("minus", key[3][1]),
        ]
        assert key[0][1] < key[1][1]

    def test_repulsive_coupling_has_no_lines(self):
        cfg = PhysicalConfig(
            M=1.0, alpha=0.0, chi=0.0, B0=0.0, Omega=1.0, D=0.0, a=0.0, mu=0.0, tau2=0.0
        )
        with pytest.raises(NoAdmissibleRootError, match="no admissible root"):
            allowed_frequencies(1, 0, cfg)
        cfg_neg = PhysicalConfig(
            M=1.0, alpha=0.0, chi=0.0, B0=0.0, Omega=1.0, D=0.0, a=0.0, mu=-1.0, tau2=0.0
        )
        with pytest.raises(NoAdmissibleRootError):
            allowed_frequencies(1, 0, cfg_neg)

    def test_invalid_arguments(self, worked_config):
        with pytest.raises(ValueError, match="n:"):
            allowed_frequencies(0, 0, worked_config)
        with pytest.raises(ValueError, match="branch:"):
            allowed_frequencies(1, 0, worked_config, branches=("sideways",))

    def test_reflection_maps_branches_exactly(self, worked_config):
        flipped = PhysicalConfig(
            M=1.0, alpha=0.0, chi=0.0, B0=0.0, Omega=-1.0, D=0.0, a=0.0, mu=1.0, tau2=0.0
        )
        for n in (1, 2):
            for l in (-2, 1):
                plus = allowed_frequencies(n, l, worked_config, branches=("plus",))
                minus = allowed_frequencies(n, -l, flipped, branches=("minus",))
                for a, b in zip(plus, minus):
                    assert a.omega == -b.omega
                    assert a.E == b.E
                    assert a.varpi == b.varpi


class TestInertialFrameLimit:
    def test_branches_coincide_up_to_sign(self):
        cfg = PhysicalConfig(
            M=1.0, alpha=0.0, chi=0.0, B0=0.0, Omega=0.0, D=0.0, a=0.0, mu=1.0, tau2=0.0
        )
        lines = allowed_frequencies(1, 0, cfg)
        plus = [x for x in lines if x.omega_branch == "plus"][0]
        minus = [x for x in lines if x.omega_branch == "minus"][0]
        assert plus.omega == -minus.omega
        assert rel(plus.omega, 2.0 * plus.varpi) < 1e-14
        assert plus.E == minus.E

    def test_slow_rotation_continuity(self):
        base = dict(M=1.0, alpha=0.0, chi=0.0, B0=0.0, D=0.0, a=0.0, mu=1.0, tau2=0.0)
        cfg0 = PhysicalConfig(Omega=0.0, **base)
        cfg_eps = PhysicalConfig(Omega=1e-8, **base)
        for n in (1, 2):
            for l in (-1, 0, 2):
                for a, b in zip(
                    allowed_frequencies(n, l, cfg0), allowed_frequencies(n, l, cfg_eps)
                ):
                    assert rel(b.theta_root, a.theta_root) < 1e-12
                    assert rel(b.varpi, a.varpi) < 1e-12
                    assert rel(b.omega, a.omega) < 1e-6
                    assert abs(b.E - a.E) <= 1e-6 * max(1.0, abs(a.E))


class TestGroundStateClosedForm:
    @given(
        m=st.floats(0.3, 6.0),
        mu=st.floats(0.05, 3.0),
        Omega=st.one_of(st.floats(-2.0, -0.01), st.floats(0.01, 2.0)),
        tau2=st.floats(0.0, 1.5),
        l=st.integers(-3, 3),
    )
    def test_agrees_with_root_pipeline(self, m, mu, Omega, tau2, l):
        cfg = PhysicalConfig(
            M=m, alpha=0.0, chi=0.0, B0=0.0, Omega=Omega, D=0.0, a=0.0, mu=mu, tau2=tau2
        )
        gamma = math.sqrt(l * l + 2.0 * m * tau2)
        varpi_ref = 2.0 * m * mu * mu / (1.0 + 2.0 * gamma)
        pipeline = allowed_frequencies(1, l, cfg)
        for branch in ("plus", "minus"):
            closed = ground_state_closed_form(l, cfg, branch=branch)
            line = [x for x in pipeline if x.omega_branch == branch][0]
            assert rel(closed.varpi, varpi_ref) < 1e-12
            assert rel(line.varpi, closed.varpi) < 1e-12
            assert rel(line.omega, closed.omega) < 1e-12
            scale = max(1.0, abs(closed.E))
            assert abs(line.E - closed.E) <= 1e-12 * scale

    def test_worked_value(self, worked_config):
        closed = ground_state_closed_form(0, worked_config)
        assert rel(closed.E, 4.0) < 1e-13
        assert rel(closed.omega, 2.0 * (-1.0 + math.sqrt(5.0))) < 1e-13
