import math

import numpy as np
import pytest

from kgdwave import (
    BranchPointHit,
    MediumParams,
    ObsPoint,
    OriginPole,
    Regime,
    branch_sqrt,
    phase_function,
    refraction_index,
)

M_NEG = MediumParams(1.0, 0.0, 1.0)       # delta = -1/4
M_POS = MediumParams(1.0, 1.25, 1.0)      # delta = 1
M_NEG2 = MediumParams(2.0, 0.5, 1.0)      # delta = -1/2
M_TINY_A = MediumParams(1e-4, 5.0, 2.0)   # delta = 4.9999999975


class TestMediumParams:
    def test_discriminant_matches_all_figure_sets(self):
        assert M_NEG.delta == -0.25
        assert M_POS.delta == 1.0
        assert M_NEG2.delta == -0.5
        assert M_TINY_A.delta == pytest.approx(4.9999999975, abs=0, rel=1e-15)

    def test_regimes(self):
        assert M_NEG.regime is Regime.NegativeDelta
        assert M_POS.regime is Regime.PositiveDelta
        assert MediumParams(2.0, 1.0, 1.0).regime is Regime.ZeroDelta
        assert MediumParams(0.0, 0.0, 1.0).regime is Regime.ZeroDelta
        # telegraph limit b = 0 has delta = -a^2/4
        assert MediumParams(3.0, 0.0, 1.0).delta == -2.25

    @pytest.mark.parametrize("a,b,c", [(-1, 0, 1), (0, -1, 1), (0, 0, 0),
                                       (0, 0, -2), (math.nan, 0, 1)])
    def test_invalid_parameters_rejected(self, a, b, c):
        with pytest.raises(ValueError):
            MediumParams(a, b, c)

    def test_branch_point_ordering(self):
        b1, b2 = M_NEG.branch_points()
        assert b1 == -1.0 and b2 == 0.0
        b1, b2 = M_POS.branch_points()
        assert b1 == -0.5 - 1j and b2 == -0.5 + 1j


class TestObsPoint:
    def test_mu_and_theta(self):
        p = ObsPoint(M_NEG, 4.0, 8.0)
        assert p.mu == 0.5
        assert p.theta * p.mu == 1.0

    def test_cone_and_domain_checks(self):
        with pytest.raises(ValueError):
            ObsPoint(M_NEG, 9.0, 8.0)     # outside the cone
        with pytest.raises(ValueError):
            ObsPoint(M_NEG, -1.0, 8.0)
        with pytest.raises(ValueError):
            ObsPoint(M_NEG, 1.0, 0.0)
        with pytest.raises(ValueError):
            ObsPoint(M_NEG, 0.0, 1.0).theta


class TestBranchSqrt:
    def test_real_axis_value(self):
        # direct evaluation: sqrt((2.5)^2 - 0.25) = sqrt(6)
        assert branch_sqrt(M_NEG, 2.0) == pytest.approx(math.sqrt(6.0), rel=1e-15)

    def test_point_on_vertical_cut_raises(self):
        # s = -1/2 is the midpoint of the vertical cut of the delta > 0 medium
        with pytest.raises(BranchPointHit):
            branch_sqrt(M_POS, -0.5 + 0j)

    def test_branch_points_raise(self):
        for m in (M_NEG, M_POS):
            for b in m.branch_points():
                with pytest.raises(BranchPointHit):
                    branch_sqrt(m, b)

    def test_square_compare_at_i(self):
        # w(i)^2 must reproduce (i + 1/2)^2 - 1/4 = -1 + i
        w = branch_sqrt(M_NEG, 1j)
        assert w * w == pytest.approx(-1 + 1j, rel=4 * np.finfo(float).eps)

    @pytest.mark.parametrize("m", [M_NEG, M_POS, M_NEG2, M_TINY_A])
    def test_square_identity_random_grid(self, m):
        rng = np.random.default_rng(42)
        s = rng.uniform(-5, 5, 400) + 1j * rng.uniform(-5, 5, 400)
        s = s[np.abs(s + m.half_a) > 0.3]         # keep well off the cut
        w = branch_sqrt(m, s)
        rad = (s + m.half_a) ** 2 + m.delta
        tol = 4 * np.finfo(float).eps * np.maximum(np.abs(w) ** 2, np.abs(rad))
        assert np.all(np.abs(w * w - rad) <= tol + 1e-300)

    @pytest.mark.parametrize("m", [M_NEG, M_POS, M_NEG2, M_TINY_A])
    def test_right_half_plane_positive_real_part(self, m):
        rng = np.random.default_rng(7)
        s = rng.uniform(1e-3, 40, 500) + 1j * rng.uniform(-40, 40, 500)
        assert np.all(branch_sqrt(m, s).real > 0)

    @pytest.mark.parametrize("m", [M_NEG, M_POS])
    def test_schwarz_reflection(self, m):
        rng = np.random.default_rng(3)
        s = rng.uniform(-6, 6, 300) + 1j * rng.uniform(0.2, 6, 300)
        w_up = branch_sqrt(m, s)
        w_dn = branch_sqrt(m, np.conj(s))
        assert np.allclose(w_dn, np.conj(w_up), rtol=1e-14, atol=1e-15)

    @pytest.mark.parametrize("m", [M_NEG, M_POS, M_TINY_A])
    def test_asymptotic_sheet_both_directions(self, m):
        # w ~ s + a/2 at infinity on BOTH sides: the sheet is not principal
        for s in (1e8 + 0j, -1e8 + 0j, 1e8j, -1e8j):
            w = branch_sqrt(m, s)
            assert abs(w / (s + m.half_a) - 1) < 1e-12

    def test_cut_confinement_negative_delta(self):
        # crossing the vertical line ABOVE the real cut must be continuous
        eps = 1e-9
        up = branch_sqrt(M_NEG, -0.5 + eps + 1j)
        dn = branch_sqrt(M_NEG, -0.5 - eps + 1j)
        assert abs(up - dn) < 1e-7
        # crossing the real segment itself flips the imaginary part
        above = branch_sqrt(M_NEG, -0.5 + 1e-9j)
        below = branch_sqrt(M_NEG, -0.5 - 1e-9j)
        assert abs(above - np.conj(above)) > 0.4          # genuinely imaginary
        assert abs(above + below) < 1e-7                  # sign flip across cut

    def test_cut_confinement_positive_delta(self):
        # crossing the vertical line above the cut tip is continuous
        up = branch_sqrt(M_POS, -0.5 + 1e-9 + 2j)
        dn = branch_sqrt(M_POS, -0.5 - 1e-9 + 2j)
        assert abs(up - dn) < 1e-7
        # crossing the cut segment flips the real part
        right = branch_sqrt(M_POS, -0.5 + 1e-9 + 0.5j)
        left = branch_sqrt(M_POS, -0.5 - 1e-9 + 0.5j)
        assert abs(right + left) < 1e-7
        assert abs(right.real) > 0.5


class TestRefractionIndex:
    def test_vacuum_is_unity(self):
        m = MediumParams(0.0, 0.0, 1.0)
        for s in (1.0, 1j, -2 + 3j):
            assert refraction_index(m, s) == pytest.approx(1.0, rel=1e-15)

    def test_direct_value_on_real_axis(self):
        # n(10) = sqrt(10^2 + 1*10 + 0)/10 = sqrt(110)/10 = 1.0488088...
        expected = math.sqrt(110.0) / 10.0
        assert refraction_index(M_NEG, 10.0) == pytest.approx(expected, rel=1e-15)

    def test_high_frequency_limit(self):
        for m in (M_NEG, M_POS, M_NEG2):
            assert abs(refraction_index(m, 1e6 + 0j) - 1) < 1e-5

    def test_origin_pole(self):
        with pytest.raises(OriginPole):
            refraction_index(M_POS, 0.0)

    def test_zero_delta_exact_form(self):
        m = MediumParams(2.0, 1.0, 1.0)
        s = 3.0 + 4.0j
        assert refraction_index(m, s) == (s + 1.0) / s


class TestPhaseFunction:
    def test_mu_zero_identity(self):
        s = 0.3 - 2.7j
        assert phase_function(M_NEG, 0.0, s) == s

    def test_value_at_right_saddle(self):
        # saddle p2 = -1/2 + sqrt(1/3); F there is -1/2 + (3/4) sqrt(1/3)
        p2 = -0.5 + math.sqrt(1.0 / 3.0)
        expected = -0.5 + 0.75 * math.sqrt(1.0 / 3.0)
        val = phase_function(M_NEG, 0.5, p2)
        assert val.real == pytest.approx(expected, rel=1e-14)
        assert val.real == pytest.approx(-0.066987, abs=5e-7)
        assert val.imag == 0.0

    def test_imaginary_part_at_conjugate_saddles(self):
        # |Im F| at the saddles equals sqrt(delta (1 - mu^2)) = 0.866025...
        us = math.sqrt(1.0 / 0.75)
        omega = math.sqrt(0.75)
        for sign in (+1, -1):
            val = phase_function(M_POS, 0.5, complex(-0.5, sign * us))
            assert val.imag == pytest.approx(sign * omega, rel=1e-14)
            assert val.imag == pytest.approx(sign * 0.866025, abs=5e-7)

    def test_mu_range_validated(self):
        with pytest.raises(ValueError):
            phase_function(M_NEG, 1.0, 1.0)
        with pytest.raises(ValueError):
            phase_function(M_NEG, -0.1, 1.0)
