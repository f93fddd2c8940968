import math

import numpy as np
import pytest

import fractalhull as fh

SQRT2 = math.sqrt(2.0)
DENSE = np.linspace(0.0, 2.0 * math.pi, 720, endpoint=False)


class TestComplexBaseSystem:
    @pytest.mark.parametrize("z,expected", [
        (1 + 1j, (1, 4)),
        (2 + 0j, (0, 1)),
        (2j, (1, 2)),
        (-2 + 0j, (1, 1)),
        (2 * complex(math.cos(math.pi / 3), math.sin(math.pi / 3)), (1, 3)),
    ])
    def test_detection(self, z, expected):
        assert fh.complex_base_system(z, 2).rational_angle == expected

    def test_golden_angle_is_irrational(self):
        phi = math.pi * (math.sqrt(5.0) - 1) / 2
        z = 2 * complex(math.cos(phi), math.sin(phi))
        assert fh.complex_base_system(z, 2).rational_angle is None

    def test_explicit_declaration_checked(self):
        with pytest.raises(fh.ValidationError):
            fh.complex_base_system(1 + 1j, 2, rational_angle=(1, 3))
        with pytest.raises(fh.ValidationError):
            fh.complex_base_system(1 + 1j, 2, rational_angle=(2, 8))

    def test_modulus_validated(self):
        with pytest.raises(fh.ValidationError):
            fh.complex_base_system(0.5 + 0.5j, 2)

    def test_forced_irrational(self):
        sys_ = fh.complex_base_system(1 + 1j, 2, rational_angle=None)
        assert sys_.rational_angle is None
        assert sys_.phi == pytest.approx(math.pi / 4)


class TestEqualMapsWidth:
    def test_zero_matrix_gives_translation_support(self):
        ts = [(0.0, 0.0), (1.0, 0.5)]
        d = np.array([0.6, 0.8])
        val = fh.equal_maps_width(np.zeros((2, 2)), ts, d)
        assert val == pytest.approx(max(0.0, 1.0 * 0.6 + 0.5 * 0.8))

    def test_unit_square_width(self):
        ts = [(0, 0), (0.5, 0), (0, 0.5), (0.5, 0.5)]
        val = fh.equal_maps_width(0.5 * np.eye(2), ts, (1.0, 0.0), tol=1e-12)
        assert val == pytest.approx(1.0, abs=1e-9)

    def test_single_zero_translation(self):
        rng = np.random.default_rng(2)
        a = rng.normal(size=(2, 2))
        a *= 0.7 / fh.operator_norm(a)
        assert fh.equal_maps_width(a, [(0.0, 0.0)], (1.0, 0.0)) == 0.0

    def test_dimension_generic(self):
        ts = [(0, 0, 0), (1, 0, 0)]
        val = fh.equal_maps_width(0.5 * np.eye(3), ts, (1.0, 0.0, 0.0), tol=1e-12)
        assert val == pytest.approx(2.0, abs=1e-9)

    def test_self_consistency_recursion(self):
        rng = np.random.default_rng(31)
        tol = 1e-10
        for _ in range(20):
            a = rng.normal(size=(2, 2))
            a *= rng.uniform(0.1, 0.9) / fh.operator_norm(a)
            ts = rng.uniform(-1, 1, size=(int(rng.integers(1, 5)), 2))
            ang = rng.uniform(0, 2 * math.pi)
            d = np.array([math.cos(ang), math.sin(ang)])
            lhs = fh.equal_maps_width(a, ts, d, tol)
            v = a.T @ d
            nv = np.linalg.norm(v)
            rhs = nv * fh.equal_maps_width(a, ts, v / nv, tol) + np.max(ts @ d)
            assert abs(lhs - rhs) <= 2 * tol

    def test_rejects_expansion(self):
        with pytest.raises(fh.ValidationError):
            fh.equal_maps_width(np.eye(2), [(1.0, 0.0)], (1.0, 0.0))


class TestSymmetryCenter:
    def test_twindragon(self, twindragon_sys):
        assert fh.symmetry_center(twindragon_sys) == pytest.approx([0.0, -0.5])

    def test_real_base(self):
        assert fh.symmetry_center(fh.complex_base_system(2 + 0j, 2)) == \
            pytest.approx([0.5, 0.0])

    def test_three_digits(self):
        assert fh.symmetry_center(fh.complex_base_system(1 + 1j, 3)) == \
            pytest.approx([0.0, -1.0])


class TestWidthSeries:
    def test_twindragon_anchor_values(self, twindragon_sys):
        assert fh.centered_width(twindragon_sys, 0.0, 1e-12) == \
            pytest.approx(2.0 / 3.0, abs=1e-11)
        assert fh.centered_width(twindragon_sys, math.pi / 2, 1e-12) == \
            pytest.approx(5.0 / 6.0, abs=1e-11)

    def test_real_base_vertical_width_vanishes(self):
        sys_ = fh.complex_base_system(2 + 0j, 2)
        assert fh.centered_width(sys_, math.pi / 2, 1e-12) <= 1e-12

    def test_tail_bound_honored(self, twindragon_sys):
        coarse = fh.centered_width(twindragon_sys, 1.234, 1e-3)
        fine = fh.centered_width(twindragon_sys, 1.234, 1e-13)
        assert abs(coarse - fine) <= 1e-3

    def test_rational_matches_series(self, twindragon_sys):
        series = fh.centered_width(twindragon_sys, DENSE, 1e-13)
        exact = fh.rational_width(twindragon_sys, DENSE)
        assert np.max(np.abs(series - exact)) <= 1e-12

    def test_rational_antipodal_symmetry(self, twindragon_sys):
        a = fh.rational_width(twindragon_sys, DENSE)
        b = fh.rational_width(twindragon_sys, DENSE + math.pi)
        assert np.array_equal(a, b) or np.max(np.abs(a - b)) <= 1e-15

    def test_rational_needs_declaration(self):
        sys_ = fh.complex_base_system(1 + 1j, 2, rational_angle=None)
        with pytest.raises(fh.ValidationError):
            fh.rational_width(sys_, 0.0)


class TestExactPolygon:
    def test_twindragon_octagon_vertices(self, twindragon_sys):
        poly, tris = fh.exact_polygon(twindragon_sys)
        assert poly.method == "exact"
        assert len(poly) == 8
        # chained by hand from the edge construction
        expected = np.array([
            [2 / 3, -1.0], [2 / 3, -1 / 3], [0.0, 1 / 3], [-1 / 3, 1 / 3],
            [-2 / 3, 0.0], [-2 / 3, -2 / 3], [0.0, -4 / 3], [1 / 3, -4 / 3],
        ])
        start = np.argmin(np.linalg.norm(poly.vertices - expected[0], axis=1))
        rolled = np.roll(poly.vertices, -start, axis=0)
        assert np.allclose(rolled, expected, atol=1e-12)

    def test_twindragon_measures(self, twindragon_sys):
        poly, _ = fh.exact_polygon(twindragon_sys)
        assert fh.polygon_area(poly) == pytest.approx(5.0 / 3.0, abs=1e-9)
        assert fh.polygon_perimeter(poly) == pytest.approx(2 * (SQRT2 + 1), abs=1e-9)

    def test_segment_base_two(self):
        poly, tris = fh.exact_polygon(fh.complex_base_system(2 + 0j, 2))
        assert poly.degenerate and len(poly) == 2
        got = np.sort(poly.vertices, axis=0)
        assert np.allclose(got, [[0.0, 0.0], [1.0, 0.0]], atol=1e-12)
        assert len(tris) == 1
        assert tris[0].b + tris[0].c == pytest.approx(1.0)

    def test_hexagon(self):
        z = 2 * complex(math.cos(math.pi / 3), math.sin(math.pi / 3))
        sys_ = fh.complex_base_system(z, 2)
        poly, tris = fh.exact_polygon(sys_)
        assert len(poly) == 6
        sup = fh.polygon_width(poly, DENSE)
        assert np.max(np.abs(sup - fh.rational_width(sys_, DENSE))) <= 1e-9

    def test_edge_length_ledger(self, twindragon_sys):
        poly, tris = fh.exact_polygon(twindragon_sys)
        edges = np.linalg.norm(
            np.roll(poly.vertices, -1, axis=0) - poly.vertices, axis=1)
        r, (_, k) = twindragon_sys.r, twindragon_sys.rational_angle
        expected = sorted(
            [r ** -j / (1 - r ** -k) for j in range(1, k + 1)] * 2)
        assert np.allclose(sorted(edges), expected, atol=1e-12)

    def test_triangle_invariants(self):
        for z, n in ((1 + 1j, 2), (2j, 3), (1.5j, 2), (-2 + 0j, 4)):
            _, tris = fh.exact_polygon(fh.complex_base_system(z, n))
            for t in tris:
                assert t.b + t.c > 0
                assert t.a >= 0

    def test_needs_rational_angle(self):
        sys_ = fh.complex_base_system(1 + 1j, 2, rational_angle=None)
        with pytest.raises(fh.ValidationError):
            fh.exact_polygon(sys_)


class TestIrrationalPolygon:
    def test_huge_tol_keeps_dominant_edges(self):
        z = 2 * complex(math.cos(1.0), math.sin(1.0))
        sys_ = fh.complex_base_system(z, 2, rational_angle=None)
        poly = fh.irrational_polygon(sys_, 10.0)
        assert len(poly) <= 4

    def test_support_matches_series(self):
        z = 2 * complex(math.cos(1.0), math.sin(1.0))
        sys_ = fh.complex_base_system(z, 2, rational_angle=None)
        poly = fh.irrational_polygon(sys_, 1e-9)
        angles = np.linspace(0, 2 * math.pi, 1024, endpoint=False)
        sup = fh.polygon_width(poly, angles)
        ref = fh.centered_width(sys_, angles, 1e-13)
        assert np.max(np.abs(sup - ref)) <= 1e-8
        assert np.max(sup - ref) <= 1e-12  # inner approximation

    def test_rational_system_agrees_with_exact(self, twindragon_sys):
        forced = fh.complex_base_system(1 + 1j, 2, rational_angle=None)
        tol = 1e-9
        poly = fh.irrational_polygon(forced, tol)
        exact, _ = fh.exact_polygon(twindragon_sys)
        diff = fh.polygon_width(poly, DENSE) - fh.polygon_width(exact, DENSE)
        assert np.max(np.abs(diff)) <= tol


class TestPerimeterArea:
    def test_perimeter_values(self):
        assert fh.hull_perimeter(fh.complex_base_system(1 + 1j, 2)) == \
            pytest.approx(2 * (SQRT2 + 1))
        assert fh.hull_perimeter(fh.complex_base_system(2 + 0j, 2)) == \
            pytest.approx(2.0)
        assert fh.hull_perimeter(fh.complex_base_system(3 + 0j, 3)) == \
            pytest.approx(2.0)

    def test_area_twindragon(self, twindragon_sys):
        assert fh.hull_area(twindragon_sys, 1e-12) == \
            pytest.approx(5.0 / 3.0, abs=1e-11)

    def test_area_real_base_vanishes(self):
        assert fh.hull_area(fh.complex_base_system(2 + 0j, 2), 1e-12) <= 1e-12

    def test_area_base_2i(self):
        # odd |sin| pattern: (1/3) * (1/2 + 1/8 + 1/32 + ...) = 2/9
        assert fh.hull_area(fh.complex_base_system(2j, 2), 1e-13) == \
            pytest.approx(2.0 / 9.0, abs=1e-12)

    @pytest.mark.parametrize("z,n", [
        (1 + 1j, 2), (2j, 2),
        (2 * complex(math.cos(math.pi / 3), math.sin(math.pi / 3)), 2),
        (1.5j, 3),
    ])
    def test_series_matches_shoelace(self, z, n):
        sys_ = fh.complex_base_system(z, n)
        poly, _ = fh.exact_polygon(sys_)
        assert fh.hull_area(sys_, 1e-12) == pytest.approx(
            fh.polygon_area(poly), abs=1e-9 + 1e-12)

    def test_perimeter_independent_of_angle_series(self):
        # same r and n, four angles; the series polygons all close at 2
        for phi in (math.pi / 6, math.pi / 4, math.pi / 3, 1.0):
            z = 2 * complex(math.cos(phi), math.sin(phi))
            sys_ = fh.complex_base_system(z, 2, rational_angle=None)
            poly = fh.irrational_polygon(sys_, 1e-10)
            assert fh.polygon_perimeter(poly) == pytest.approx(2.0, abs=1e-8)


class TestIsodiametricGap:
    def test_zero_angle_full_bound(self):
        r = 1.7
        assert fh.isodiametric_gap(r, 0.0) == pytest.approx(
            (r + 1) / (math.pi * (r - 1)))

    def test_twindragon_point_frozen(self):
        # bound (3 + 2 sqrt(2))/pi minus the series value 5/3
        expected = (3 + 2 * SQRT2) / math.pi - 5.0 / 3.0
        assert fh.isodiametric_gap(SQRT2, math.pi / 4) == \
            pytest.approx(expected, abs=1e-10)

    def test_near_unit_modulus_stress(self):
        phi = math.pi * 1.6180339887498949
        assert fh.isodiametric_gap(1.01, phi) >= 0.0

    def test_rejects_small_modulus(self):
        with pytest.raises(fh.ValidationError):
            fh.isodiametric_gap(1.0, 0.5)

    def test_audit_grid_shape_and_sign(self):
        rs, phis, gaps = fh.isodiametric_audit(12, 64)
        assert gaps.shape == (12, 64)
        assert rs[0] == pytest.approx(1.05) and rs[-1] == pytest.approx(4.0)
        assert float(gaps.min()) >= -1e-12


class TestNumericAnalyticAgreement:
    @pytest.mark.parametrize("z,n", [
        (1 + 1j, 2),
        (2 * complex(math.cos(math.pi / 3), math.sin(math.pi / 3)), 2),
        (1.5j, 3),
    ])
    def test_solver_matches_closed_form(self, z, n):
        ifs = fh.complex_base_ifs(z, n)
        sys_ = fh.complex_base_system(z, n)
        w = fh.solve_width(ifs, 2048, 1e-6)
        wc = fh.rebase_width(w, fh.symmetry_center(sys_))
        ref = fh.rational_width(sys_, wc.grid.angles)
        tol = w.iter_error + w.interp_slack + 1e-6
        assert np.max(np.abs(wc.values - ref)) <= tol
