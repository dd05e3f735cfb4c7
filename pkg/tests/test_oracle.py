import math

import mpmath as mp
import numpy as np
import pytest

from helpers import (
    bisect_root,
    exact_smooth_delta,
    exact_smooth_n,
    i0_exact,
    i1_exact,
    j0_exact,
    j1_exact,
)
from kgdwave import (
    MediumParams,
    NonFiniteTransform,
    Overflow,
    bessel_i0,
    bessel_i1,
    bessel_j0,
    bessel_j1,
    exact_r_delta,
    exact_r_n,
    laplace_transform,
    recommended_talbot_nodes,
    talbot_invert,
)

M_NEG = MediumParams(1.0, 0.0, 1.0)
M_POS = MediumParams(1.0, 1.25, 1.0)
M_NEG2 = MediumParams(2.0, 0.5, 1.0)


class TestBessel:
    def test_series_constants(self):
        assert bessel_j0(0.0) == 1.0
        assert bessel_j1(0.0) == 0.0
        assert bessel_i0(0.0) == 1.0
        assert bessel_i1(0.0) == 0.0

    def test_first_zero_of_j0(self):
        # locate the zero with the independent rational-series oracle
        zero = bisect_root(j0_exact, 2.0, 3.0)
        assert abs(bessel_j0(zero)) < 1e-6
        assert zero == pytest.approx(2.404826, abs=5e-7)

    def test_i1_over_z_limit(self):
        for z in (1e-6, 1e-9, 1e-12):
            assert bessel_i1(z) / z == pytest.approx(0.5, rel=1e-5)

    @pytest.mark.parametrize("mine,oracle", [
        (bessel_j0, j0_exact), (bessel_j1, j1_exact),
        (bessel_i0, i0_exact), (bessel_i1, i1_exact),
    ])
    def test_series_range_absolute_accuracy(self, mine, oracle):
        for z in np.linspace(0.0, 12.0, 49):
            assert abs(mine(z) - oracle(z)) <= 1e-12 * max(1.0, abs(oracle(z)))

    @pytest.mark.parametrize("mine,oracle", [
        (bessel_j0, j0_exact), (bessel_j1, j1_exact),
        (bessel_i0, i0_exact), (bessel_i1, i1_exact),
    ])
    def test_asymptotic_overlap(self, mine, oracle):
        for z in np.linspace(12.001, 30.0, 31):
            ref = oracle(z)
            assert abs(mine(z) - ref) <= 1e-11 * max(1.0, abs(ref))

    def test_derivative_relations(self):
        # J0' = -J1 and I0' = I1 by central differences
        h = 1e-6
        for z in (0.5, 3.7, 9.0, 17.3):
            dj = (bessel_j0(z + h) - bessel_j0(z - h)) / (2 * h)
            assert dj == pytest.approx(-bessel_j1(z), abs=1e-7)
            di = (bessel_i0(z + h) - bessel_i0(z - h)) / (2 * h)
            assert di == pytest.approx(bessel_i1(z), rel=1e-7)

    def test_overflow_guard(self):
        with pytest.raises(Overflow):
            bessel_i0(800.0)
        with pytest.raises(Overflow):
            bessel_i1(750.0)

    def test_negative_argument_rejected(self):
        with pytest.raises(ValueError):
            bessel_j0(-1.0)


class TestExactResponses:
    def test_causality(self):
        r = exact_r_delta(M_NEG, 4.0, 3.0)
        assert r.smooth_part == 0.0
        assert not r.inside_cone
        assert r.wavefront_coeff == pytest.approx(math.exp(-2.0), rel=1e-15)
        rn = exact_r_n(M_NEG, 4.0, 3.0)
        assert rn.smooth_part == 0.0 and rn.wavefront_coeff == 0.0

    def test_fig3_point_against_series_oracle(self):
        # x=4, t=8: (x/c) sqrt(1/4) e^{-4} I1(sqrt(12))/sqrt(48)
        want = 4 * 0.5 * math.exp(-4.0) * i1_exact(math.sqrt(12.0)) / math.sqrt(48.0)
        got = exact_r_delta(M_NEG, 4.0, 8.0)
        assert got.smooth_part == pytest.approx(want, rel=1e-13)
        assert got.wavefront_coeff == pytest.approx(math.exp(-2.0), rel=1e-15)

    def test_wavefront_limits(self):
        # smooth part of r_delta at tau -> 0 via J1(w)/w -> 1/2 (I1 likewise)
        x = 3.0
        lim_pos = exact_r_delta(M_POS, x, x / M_POS.c).smooth_part
        assert lim_pos == pytest.approx(-x * M_POS.delta / 2 * math.exp(-M_POS.a * x / 2),
                                        rel=1e-12)
        lim_neg = exact_r_delta(M_NEG, x, x / M_NEG.c).smooth_part
        assert lim_neg == pytest.approx(x * (-M_NEG.delta) / 2 * math.exp(-M_NEG.a * x / 2),
                                        rel=1e-12)
        # r_n at the front is the pure attenuation factor
        rn = exact_r_n(M_POS, x, x / M_POS.c)
        assert rn.smooth_part == pytest.approx(math.exp(-M_POS.a * x / (2 * M_POS.c)),
                                               rel=1e-12)

    def test_on_axis_r_n(self):
        t = 5.0
        want = math.exp(-t / 2) * j0_exact(t * math.sqrt(M_POS.delta))
        assert exact_r_n(M_POS, 0.0, t).smooth_part == pytest.approx(want, rel=1e-13)

    def test_telegraph_reduction(self):
        # b = 0: r_n = e^{-at/2} I0((a/2) sqrt(t^2 - x^2/c^2))
        m = MediumParams(1.5, 0.0, 1.0)
        x, t = 2.0, 6.0
        tau = math.sqrt(t * t - x * x)
        want = math.exp(-m.a * t / 2) * i0_exact(m.a / 2 * tau)
        assert exact_r_n(m, x, t).smooth_part == pytest.approx(want, rel=1e-13)

    def test_degenerate_medium(self):
        m = MediumParams(2.0, 1.0, 1.0)
        assert exact_r_delta(m, 1.0, 3.0).smooth_part == 0.0
        assert exact_r_n(m, 1.0, 3.0).smooth_part == pytest.approx(math.exp(-3.0),
                                                                   rel=1e-15)

    def test_derivative_relation(self):
        # r_delta = -c * d/dx r_n, central differences, step 1e-4 * x
        for m, x, t in [(M_NEG, 3.0, 8.0), (M_POS, 3.0, 8.0), (M_NEG2, 2.0, 6.0)]:
            h = 1e-4 * x
            dn = (exact_r_n(m, x + h, t).smooth_part
                  - exact_r_n(m, x - h, t).smooth_part) / (2 * h)
            rd = exact_r_delta(m, x, t).smooth_part
            assert -m.c * dn == pytest.approx(rd, rel=1e-5)

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            exact_r_delta(M_NEG, -1.0, 1.0)
        with pytest.raises(ValueError):
            exact_r_n(M_NEG, 1.0, 0.0)


class TestTalbot:
    def test_textbook_pairs(self):
        assert talbot_invert(lambda s: 1 / s, 1.0) == pytest.approx(1.0, abs=1e-8)
        assert talbot_invert(lambda s: 1 / s**2, 2.5) == pytest.approx(2.5, abs=1e-8)
        assert talbot_invert(lambda s: 1 / (s**2 + 1), 1.0) == \
            pytest.approx(math.sin(1.0), abs=1e-6)

    def test_exponential_decay(self):
        assert talbot_invert(lambda s: 1 / (s + 3), 0.7) == \
            pytest.approx(math.exp(-2.1), rel=1e-8)

    def test_node_floor_and_domain(self):
        with pytest.raises(ValueError):
            talbot_invert(lambda s: 1 / s, 1.0, nodes=4)
        with pytest.raises(ValueError):
            talbot_invert(lambda s: 1 / s, -1.0)

    def test_non_finite_transform(self):
        with pytest.raises(NonFiniteTransform):
            talbot_invert(lambda s: mp.nan, 1.0)

    def test_recommended_nodes(self):
        m = MediumParams(1e-4, 5.0, 2.0)
        assert recommended_talbot_nodes(m, 100.0) > 64
        assert recommended_talbot_nodes(M_NEG, 100.0) == 64
        assert recommended_talbot_nodes(M_POS, 64.0) == 64

    @pytest.mark.parametrize("m,t_vals", [
        (M_NEG, [2.0, 5.0]),
        (M_NEG2, [2.0, 8.0]),
        (M_POS, [4.0, 10.0]),
    ])
    def test_talbot_matches_exact_r_n(self, m, t_vals):
        for t in t_vals:
            for mu in (0.2, 0.6, 0.9):
                x = mu * m.c * t
                nodes = recommended_talbot_nodes(m, t)
                got = talbot_invert(laplace_transform(m, x, "n"), t, nodes)
                want = exact_smooth_n(m, x, t)
                assert abs(got - want) <= 1e-6 * (1 + abs(want))

    def test_talbot_matches_exact_r_delta(self):
        for mu in (0.3, 0.7):
            t = 6.0
            x = mu * t
            got = talbot_invert(laplace_transform(M_NEG, x, "delta"), t,
                                recommended_talbot_nodes(M_NEG, t))
            want = exact_smooth_delta(M_NEG, x, t)
            assert abs(got - want) <= 1e-6 * (1 + abs(want))

    def test_transform_kind_validation(self):
        with pytest.raises(ValueError):
            laplace_transform(M_NEG, 1.0, "bogus")
