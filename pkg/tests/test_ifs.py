import json
import math

import numpy as np
import pytest

import fractalhull as fh


class TestOperatorNorm:
    def test_scaled_identity(self):
        assert fh.operator_norm(np.diag([0.5, 0.5])) == pytest.approx(0.5)

    def test_single_singular_value(self):
        assert fh.operator_norm([[0.0, 0.9], [0.0, 0.0]]) == pytest.approx(0.9)

    def test_complex_reciprocal_similarity(self):
        # multiplication by 1/(1+i) scales by 1/sqrt(2)
        w = 1.0 / (1.0 + 1.0j)
        a = [[w.real, -w.imag], [w.imag, w.real]]
        assert fh.operator_norm(a) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-15)

    def test_rejects_nonfinite(self):
        with pytest.raises(fh.ValidationError):
            fh.operator_norm([[np.nan, 0.0], [0.0, 0.5]])

    def test_rejects_nonsquare(self):
        with pytest.raises(fh.ValidationError):
            fh.operator_norm(np.zeros((2, 3)))

    def test_randomized_unit_vector_audit(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            a = rng.normal(size=(2, 2))
            norm = fh.operator_norm(a)
            ang = rng.uniform(0.0, 2.0 * math.pi, size=10_000)
            u = np.stack([np.cos(ang), np.sin(ang)], axis=1)
            sampled = np.max(np.linalg.norm(u @ a.T, axis=1))
            assert sampled <= norm + 1e-12
            assert sampled >= norm - 1e-6 * max(norm, 1.0)

    def test_power_iteration_matches_svd(self):
        rng = np.random.default_rng(5)
        for m in (3, 4, 7):
            a = rng.normal(size=(m, m))
            assert fh.operator_norm(a) == pytest.approx(
                float(np.linalg.norm(a, 2)), rel=1e-10)

    def test_one_by_one(self):
        assert fh.operator_norm([[-0.25]]) == 0.25


class TestValidateIfs:
    def test_single_contraction(self):
        ifs = fh.validate_ifs([(0.5 * np.eye(2), (0.0, 0.0))])
        assert ifs.dim == 2
        assert ifs.c == pytest.approx(0.5)

    def test_identity_rejected_with_index(self):
        with pytest.raises(fh.NotContractingError, match=r"c_1=1"):
            fh.validate_ifs([(np.eye(2), (0.0, 0.0))])

    def test_second_map_reported(self):
        good = (0.5 * np.eye(2), (0.0, 0.0))
        bad = (1.5 * np.eye(2), (1.0, 0.0))
        with pytest.raises(fh.NotContractingError, match=r"map 2"):
            fh.validate_ifs([good, bad])

    def test_empty_rejected(self):
        with pytest.raises(fh.ValidationError):
            fh.validate_ifs([])

    def test_dimension_mismatch(self):
        with pytest.raises(fh.ValidationError, match="dimension"):
            fh.validate_ifs([
                (0.5 * np.eye(2), (0.0, 0.0)),
                (0.5 * np.eye(3), (0.0, 0.0, 0.0)),
            ])

    def test_twindragon_contraction_factor(self, twindragon_ifs):
        assert twindragon_ifs.c == pytest.approx(1.0 / math.sqrt(2.0))

    def test_accepts_prebuilt_maps(self):
        m = fh.affine_map(0.3 * np.eye(2), (1.0, 2.0))
        ifs = fh.validate_ifs([m])
        assert ifs.maps[0] is m

    def test_stale_cached_norm_rejected(self):
        m = fh.AffineMap(np.eye(2) * 0.5, np.zeros(2), c=0.9)
        with pytest.raises(fh.ValidationError, match="stale"):
            fh.validate_ifs([m])


class TestMapFixedPoint:
    def test_pure_translation(self):
        m = fh.affine_map(np.zeros((2, 2)), (1.0, 2.0))
        assert fh.map_fixed_point(m) == pytest.approx([1.0, 2.0])

    def test_half_identity(self):
        m = fh.affine_map(0.5 * np.eye(2), (1.0, 0.0))
        assert fh.map_fixed_point(m) == pytest.approx([2.0, 0.0])

    def test_twindragon_second_map(self, twindragon_ifs):
        # x = (x + 1)/z with z = 1+i fixes x = 1/(z-1) = -i
        assert fh.map_fixed_point(twindragon_ifs.maps[1]) == pytest.approx(
            [0.0, -1.0], abs=1e-12)

    def test_residual_bound(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            a = rng.normal(size=(2, 2))
            a *= rng.uniform(0.1, 0.95) / fh.operator_norm(a)
            m = fh.affine_map(a, rng.uniform(-5.0, 5.0, size=2))
            x = fh.map_fixed_point(m)
            res = np.linalg.norm(m.a @ x + m.t - x)
            assert res <= 1e-10 * (1.0 + np.linalg.norm(x))


class TestChaosGame:
    def test_single_map_collapses_to_origin(self):
        ifs = fh.validate_ifs([(0.5 * np.eye(2), (0.0, 0.0))])
        cloud = fh.chaos_game_sample(ifs, 100, seed=1, burn_in=64)
        assert np.max(np.abs(cloud.points)) <= 1e-10

    def test_square_stays_in_unit_box(self, square_ifs):
        cloud = fh.chaos_game_sample(square_ifs, 5000, seed=2)
        assert np.all(cloud.points >= -1e-9)
        assert np.all(cloud.points <= 1.0 + 1e-9)

    def test_deterministic_bit_for_bit(self, twindragon_ifs):
        a = fh.chaos_game_sample(twindragon_ifs, 1000, seed=42, burn_in=10)
        b = fh.chaos_game_sample(twindragon_ifs, 1000, seed=42, burn_in=10)
        assert np.array_equal(a.points, b.points)
        c = fh.chaos_game_sample(twindragon_ifs, 1000, seed=43, burn_in=10)
        assert not np.array_equal(a.points, c.points)

    def test_dimension_generic(self):
        ifs = fh.validate_ifs([
            (0.5 * np.eye(3), (0.0, 0.0, 0.0)),
            (0.5 * np.eye(3), (0.5, 0.5, 0.5)),
        ])
        cloud = fh.chaos_game_sample(ifs, 500, seed=3)
        assert cloud.points.shape == (500, 3)
        assert np.all(cloud.points >= -1e-9) and np.all(cloud.points <= 1 + 1e-9)

    def test_count_validation(self, twindragon_ifs):
        with pytest.raises(fh.ValidationError):
            fh.chaos_game_sample(twindragon_ifs, 0, seed=1)


class TestComplexBaseIfs:
    def test_twindragon_maps(self):
        ifs = fh.complex_base_ifs(1 + 1j, 2)
        assert ifs.maps[0].a == pytest.approx(np.array([[0.5, 0.5], [-0.5, 0.5]]))
        assert ifs.maps[0].t == pytest.approx([0.0, 0.0])
        assert ifs.maps[1].t == pytest.approx([0.5, -0.5])

    def test_real_base_two(self):
        ifs = fh.complex_base_ifs(2, 2)
        assert ifs.maps[0].a == pytest.approx(0.5 * np.eye(2))
        assert ifs.maps[1].t == pytest.approx([0.5, 0.0])
        cloud = fh.chaos_game_sample(ifs, 2000, seed=5)
        assert np.max(np.abs(cloud.points[:, 1])) <= 1e-9
        assert np.all(cloud.points[:, 0] >= -1e-9)
        assert np.all(cloud.points[:, 0] <= 1.0 + 1e-9)

    def test_contraction_is_reciprocal_modulus(self):
        assert fh.complex_base_ifs(1 + 1j, 2).c == pytest.approx(1 / math.sqrt(2))

    @pytest.mark.parametrize("z", [1.0, 0.5 + 0.5j, -1.0])
    def test_small_base_rejected(self, z):
        with pytest.raises(fh.ValidationError):
            fh.complex_base_ifs(z, 2)

    def test_digit_count_rejected(self):
        with pytest.raises(fh.ValidationError):
            fh.complex_base_ifs(2 + 0j, 1)


class TestIfsDocuments:
    def test_raw_roundtrip(self, square_ifs):
        text = fh.format_ifs_document(square_ifs)
        doc = fh.parse_ifs_document(text)
        assert doc.complex_base is None
        assert doc.ifs.dim == 2
        assert len(doc.ifs.maps) == 4
        for m0, m1 in zip(square_ifs.maps, doc.ifs.maps):
            assert np.array_equal(m0.a, m1.a)
            assert np.array_equal(m0.t, m1.t)

    def test_complex_base_document(self):
        doc = fh.parse_ifs_document('{"complex_base": {"z": [1, 1], "n": 2}}')
        assert doc.complex_base == (1 + 1j, 2)
        assert doc.ifs.c == pytest.approx(1 / math.sqrt(2))

    def test_rejects_bad_json(self):
        with pytest.raises(fh.ValidationError):
            fh.parse_ifs_document("not json")

    def test_rejects_noncontracting(self):
        text = json.dumps(
            {"dim": 2, "maps": [{"A": [[1.0, 0.0], [0.0, 1.0]], "t": [0.0, 0.0]}]})
        with pytest.raises(fh.NotContractingError):
            fh.parse_ifs_document(text)

    def test_rejects_dim_mismatch(self):
        text = json.dumps(
            {"dim": 3, "maps": [{"A": [[0.5, 0.0], [0.0, 0.5]], "t": [0.0, 0.0]}]})
        with pytest.raises(fh.ValidationError):
            fh.parse_ifs_document(text)

    def test_rejects_missing_keys(self):
        with pytest.raises(fh.ValidationError):
            fh.parse_ifs_document('{"dim": 2}')
        with pytest.raises(fh.ValidationError):
            fh.parse_ifs_document('{"complex_base": {"z": [2, 0]}}')
