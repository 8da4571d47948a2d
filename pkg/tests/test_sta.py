"""Cl(1,3) layer tests: metric, splits, Faraday packing, bridge, bivectors."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffem import aps, sta
from cliffem.ga_core import CL3, CL13, Multivector


class TestMetric:
    def test_table_is_lorentzian(self):
        np.testing.assert_allclose(sta.metric_check(),
                                   np.diag([1.0, -1.0, -1.0, -1.0]), atol=0.0)

    def test_gamma0_squares_to_one(self):
        g0 = sta.gamma(0)
        assert g0.gp(g0).approx_eq(Multivector.scalar(CL13, 1.0), tol=0.0)

    def test_orthogonality(self):
        sym = (sta.gamma(0).gp(sta.gamma(1)) + sta.gamma(1).gp(sta.gamma(0))).scale(0.5)
        assert sym.norm_inf() == 0.0

    def test_spacelike_squares_negative(self):
        g2 = sta.gamma(2)
        assert g2.gp(g2).approx_eq(Multivector.scalar(CL13, -1.0), tol=0.0)

    def test_index_range(self):
        with pytest.raises(ValueError):
            sta.gamma(4)


class TestBridge:
    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_roundtrip_and_homomorphism(self, seed):
        rng = np.random.default_rng(seed)
        a = Multivector(CL3, rng.uniform(-1, 1, 8))
        b = Multivector(CL3, rng.uniform(-1, 1, 8))
        assert sta.to_aps(sta.from_aps(a)).approx_eq(a, tol=0.0)
        assert sta.from_aps(a.gp(b)).approx_eq(
            sta.from_aps(a).gp(sta.from_aps(b)), tol=1e-12)

    def test_pseudoscalars_correspond(self):
        assert sta.from_aps(aps.I3).approx_eq(sta.I4, tol=0.0)

    def test_image_is_even(self, rng):
        img = sta.from_aps(Multivector(CL3, rng.uniform(-1, 1, 8)))
        assert (img.grade(1) + img.grade(3)).norm_inf() == 0.0

    def test_odd_content_rejected(self):
        with pytest.raises(ValueError, match="even"):
            sta.to_aps(sta.gamma(0))


class TestSplits:
    def test_gamma0_splits_to_unity(self):
        one = Multivector.scalar(CL3, 1.0)
        assert sta.split_forward(sta.gamma(0)).approx_eq(one, tol=0.0)
        assert sta.split_backward(sta.gamma(0)).approx_eq(one, tol=0.0)

    def test_current_vector_splits(self):
        c_rho, j = 2.5, np.array([0.3, -0.6, 1.1])
        v = sta.spacetime_vector(np.concatenate(([c_rho], j)))
        fwd = aps.parts(sta.split_forward(v))
        bwd = aps.parts(sta.split_backward(v))
        assert fwd.rs == bwd.rs == c_rho
        np.testing.assert_allclose(fwd.rv, j)
        np.testing.assert_allclose(bwd.rv, -j)

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=30, deadline=None)
    def test_splits_differ_only_in_vector_part(self, seed):
        rng = np.random.default_rng(seed)
        v = sta.spacetime_vector(rng.uniform(-1, 1, 4))
        fwd, bwd = aps.parts(sta.split_forward(v)), aps.parts(sta.split_backward(v))
        assert fwd.rs == bwd.rs
        np.testing.assert_allclose(fwd.rv, -bwd.rv, atol=0.0)

    def test_split_is_linear_bijection(self, rng):
        comps = rng.uniform(-1, 1, 4)
        fwd = aps.parts(sta.split_forward(sta.spacetime_vector(comps)))
        rebuilt = sta.spacetime_vector(np.concatenate(([fwd.rs], fwd.rv)))
        assert rebuilt.approx_eq(sta.spacetime_vector(comps), tol=0.0)

    def test_non_vector_rejected(self):
        with pytest.raises(ValueError, match="grade-1"):
            sta.split_forward(sta.I4)


class TestFaraday:
    def test_zero_fields(self):
        assert sta.faraday_sta([0, 0, 0], [0, 0, 0]).norm_inf() == 0.0

    def test_pure_electric_packs_into_timelike_plane(self):
        f = sta.faraday_sta([1.0, 0.0, 0.0], [0.0, 0.0, 0.0])
        expected = sta.gamma(1).gp(sta.gamma(0))
        assert f.approx_eq(expected, tol=0.0)

    def test_pure_magnetic_is_pseudoscalar_times_timelike(self):
        f = sta.faraday_sta([0.0, 0.0, 0.0], [0.0, 0.0, 1.0])
        expected = sta.I4.gp(sta.gamma(3).gp(sta.gamma(0)))
        assert f.approx_eq(expected, tol=0.0)
        minus_g1g2 = sta.gamma(1).gp(sta.gamma(2)).scale(-1.0)
        assert f.approx_eq(minus_g1g2, tol=0.0)

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=30, deadline=None)
    def test_matches_bridge_of_cl3_field(self, seed):
        rng = np.random.default_rng(seed)
        e_vec, b_vec = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
        direct = sta.faraday_sta(e_vec, b_vec)
        bridged = sta.from_aps(aps.biparavector(e_vec, b_vec))
        assert direct.approx_eq(bridged, tol=1e-12)

    def test_component_extraction_inverts_packing(self, rng):
        e_vec, b_vec = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
        f = sta.faraday_sta(e_vec, b_vec)
        comps = sta.faraday_components(f)
        np.testing.assert_allclose(comps[1:, 0], e_vec, atol=1e-12)
        np.testing.assert_allclose(comps + comps.T, 0.0, atol=1e-12)
        rebuilt = Multivector.zero(CL13)
        for mu in range(4):
            for nu in range(4):
                rebuilt = rebuilt + sta.GAMMAS[mu].wedge(sta.GAMMAS[nu]).scale(
                    0.5 * comps[mu, nu])
        assert rebuilt.approx_eq(f, tol=1e-12)


class TestGrade13:
    def test_pure_vector(self):
        vec, tri = sta.grade_13_decompose(sta.gamma(0))
        assert vec.approx_eq(sta.gamma(0), tol=0.0)
        assert tri.norm_inf() == 0.0

    def test_vector_plus_trivector_read_off(self):
        m = sta.gamma(0) + sta.I4.gp(sta.gamma(1))
        vec, tri = sta.grade_13_decompose(m)
        assert vec.approx_eq(sta.gamma(0), tol=0.0)
        assert tri.approx_eq(sta.I4.gp(sta.gamma(1)), tol=0.0)
        assert (vec + tri).approx_eq(m, tol=0.0)

    def test_derivative_shape_matches_dot_wedge(self, rng):
        # grad F for a linear-coefficient field: assemble from constant slopes
        slopes_e = rng.uniform(-1, 1, (4, 3))
        slopes_b = rng.uniform(-1, 1, (4, 3))
        df = [sta.faraday_sta(slopes_e[mu], slopes_b[mu]) for mu in range(4)]
        grad_f = sta.GAMMAS[0].gp(df[0])
        for k in range(3):
            grad_f = grad_f - sta.GAMMAS[k + 1].gp(df[k + 1])
        vec, tri = sta.grade_13_decompose(grad_f)
        dot_part = Multivector.zero(CL13)
        wedge_part = Multivector.zero(CL13)
        for mu, sign in ((0, 1.0), (1, -1.0), (2, -1.0), (3, -1.0)):
            dot_part = dot_part + sta.GAMMAS[mu].scale(sign).dot(df[mu])
            wedge_part = wedge_part + sta.GAMMAS[mu].scale(sign).wedge(df[mu])
        assert vec.approx_eq(dot_part, tol=1e-12)
        assert tri.approx_eq(wedge_part, tol=1e-12)

    def test_even_content_rejected(self):
        with pytest.raises(ValueError, match="even-grade"):
            sta.grade_13_decompose(Multivector.scalar(CL13, 1.0))


class TestBivectorStructure:
    def test_all_families_exact(self):
        table = sta.bivector_commutator_table()
        assert table["count"] == 27
        assert table["failures"] == []
        assert all(v == 0.0 for v in table["worst"].values())

    def test_b1_cross_b2_is_i_b3(self):
        b1 = sta.gamma(1).gp(sta.gamma(0))
        b2 = sta.gamma(2).gp(sta.gamma(0))
        b3 = sta.gamma(3).gp(sta.gamma(0))
        assert b1.commutator(b2).approx_eq(sta.I4.gp(b3), tol=0.0)

    def test_ib1_cross_ib2_is_minus_i_b3(self):
        b1 = sta.I4.gp(sta.gamma(1).gp(sta.gamma(0)))
        b2 = sta.I4.gp(sta.gamma(2).gp(sta.gamma(0)))
        b3 = sta.I4.gp(sta.gamma(3).gp(sta.gamma(0)))
        assert b1.commutator(b2).approx_eq(-b3, tol=0.0)

    def test_self_commutator_vanishes(self):
        b1 = sta.gamma(1).gp(sta.gamma(0))
        assert b1.commutator(b1).norm_inf() == 0.0
