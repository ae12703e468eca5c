import numpy as np
import pytest

import detsurf._record as rec
from detsurf.detpoly import det_poly, scale, sign_normalize, substitute_linear
from detsurf.errors import DefinitenessError, DegenerateJetError
from detsurf.fixtures import FIXTURE_LABELS, fixture
from detsurf.surface import (
    convexity_check,
    curvature_census,
    interior_lattice,
    jet,
    radial_map,
    record_batch,
    singularity_scan,
    surface_mesh,
)
from detsurf.tensor import random_unimodular
from helpers import ellipsoid_gauss_curvature, fd_first_partials, fd_second_partials


class TestRadialMap:
    def test_unit_sphere_radius_one(self, unit_ball_poly, rng):
        for _ in range(10):
            s, t = rng.uniform(0.05, np.pi - 0.05), rng.uniform(0, 2 * np.pi)
            r, point = radial_map(unit_ball_poly, s, t)
            assert r == pytest.approx(1.0, abs=1e-14)
            assert np.linalg.norm(point) == pytest.approx(1.0, abs=1e-14)

    def test_scaled_ball_radius_half(self, unit_ball_poly):
        r, _ = radial_map(scale(unit_ball_poly, 16), 1.0, 2.0)
        assert r == pytest.approx(0.5, abs=1e-14)

    def test_fixture_radius_along_x_axis(self, t001_poly):
        # the x^4 coefficient is 1, so f(1, 0, 0) = 1 and r = 1 at (pi/2, 0)
        r, point = radial_map(t001_poly, np.pi / 2, 0.0)
        assert r == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(point, [1, 0, 0], atol=1e-12)

    def test_on_surface_property(self, rng):
        # f(x(s, t)) == 1 within 1e-10 everywhere, for every fixture
        ss, tt = interior_lattice(16, 32)
        for label in FIXTURE_LABELS:
            f = sign_normalize(det_poly(fixture(label)))
            out = record_batch(f, ss, tt)
            pts = out[:, rec.X : rec.X + 3]
            vals = np.array([float(f.evaluate(tuple(p))) for p in pts[::7]])
            assert np.abs(vals - 1.0).max() < 1e-10, label

    def test_indefinite_polynomial_rejected(self, x4_poly):
        from detsurf.detpoly import HomogeneousPolynomial

        indef = HomogeneousPolynomial(4, {(4, 0, 0): 1, (0, 4, 0): -1})
        with pytest.raises(DefinitenessError):
            radial_map(indef, np.pi / 2, np.pi / 2)


class TestJet:
    def test_sphere_values_at_equator(self, unit_ball_poly):
        j = jet(unit_ball_poly, np.pi / 2, 0.0)
        e, f, g = j.firstform
        assert (e, f, g) == pytest.approx((1.0, 0.0, 1.0), abs=1e-12)
        assert j.gauss_curv == pytest.approx(1.0, abs=1e-12)
        assert j.mean_curv == pytest.approx(-1.0, abs=1e-12)
        assert j.support == pytest.approx(1.0, abs=1e-12)

    def test_normal_is_unit_and_orthogonal(self, t020_poly, rng):
        for _ in range(20):
            s, t = rng.uniform(0.1, np.pi - 0.1), rng.uniform(0, 2 * np.pi)
            j = jet(t020_poly, s, t)
            assert np.linalg.norm(j.normal) == pytest.approx(1.0, abs=1e-10)
            assert abs(j.normal @ j.d1[0]) < 1e-10
            assert abs(j.normal @ j.d1[1]) < 1e-10
            assert j.support > 0

    def test_metric_positive_away_from_poles(self, t001_poly, rng):
        for _ in range(20):
            s, t = rng.uniform(0.2, np.pi - 0.2), rng.uniform(0, 2 * np.pi)
            j = jet(t001_poly, s, t)
            e, f, g = j.firstform
            assert e > 0 and g > 0 and e * g - f * f > 0

    def test_first_partials_match_finite_differences(self, rng, t001_poly, t020_poly):
        for f in (t001_poly, t020_poly):
            for _ in range(10):
                s, t = rng.uniform(0.3, np.pi - 0.3), rng.uniform(0, 2 * np.pi)
                j = jet(f, s, t)
                fd_s, fd_t = fd_first_partials(lambda a, b: radial_map(f, a, b)[1], s, t)
                assert np.linalg.norm(fd_s - j.d1[0]) <= 1e-6 * max(1, np.linalg.norm(j.d1[0]))
                assert np.linalg.norm(fd_t - j.d1[1]) <= 1e-6 * max(1, np.linalg.norm(j.d1[1]))

    def test_second_partials_match_finite_differences(self, rng, t001_poly, t020_poly):
        # step 1e-4: the 1e-5 step puts second-difference roundoff (~eps/h^2)
        # above the 1e-6 comparison tolerance
        for f in (t001_poly, t020_poly):
            for _ in range(10):
                s, t = rng.uniform(0.3, np.pi - 0.3), rng.uniform(0, 2 * np.pi)
                j = jet(f, s, t)
                fds = fd_second_partials(lambda a, b: radial_map(f, a, b)[1], s, t, h=1e-4)
                for fd, an in zip(fds, j.d2):
                    assert np.linalg.norm(fd - an) <= 1e-6 * max(1, np.linalg.norm(an))

    def test_ellipsoid_curvature_closed_form(self, rng, unit_ball_poly):
        a, b, c = 2.0, 1.0, 0.5   # volume-preserving stretch of the unit ball
        ell = substitute_linear(unit_ball_poly, ((1 / a, 0, 0), (0, 1 / b, 0), (0, 0, 1 / c)))
        for _ in range(20):
            s, t = rng.uniform(0.2, np.pi - 0.2), rng.uniform(0, 2 * np.pi)
            j = jet(ell, s, t)
            k_ref = ellipsoid_gauss_curvature(j.point, a, b, c)
            assert j.gauss_curv == pytest.approx(k_ref, rel=1e-10)

    def test_pole_proximity_raises(self, unit_ball_poly):
        with pytest.raises(DegenerateJetError):
            jet(unit_ball_poly, 1e-12, 0.0)

    def test_compactness_of_radial_range(self):
        # r attains finite positive extremes on the lattice
        ss, tt = interior_lattice(32, 64)
        for label in ("T001", "T207"):
            f = sign_normalize(det_poly(fixture(label)))
            r = record_batch(f, ss, tt)[:, rec.R]
            assert 0 < r.min() <= r.max() < np.inf


class TestCurvatureCensus:
    def test_sphere_is_all_elliptic(self, unit_ball_poly):
        assert curvature_census(unit_ball_poly, 32, 64, zero_tol=1e-8) == (2048, 0, 0)

    def test_counts_sum_to_lattice_size(self, t020_poly):
        kp, km, k0 = curvature_census(t020_poly, 24, 48)
        assert kp + km + k0 == 24 * 48
        assert km > 0  # hyperbolic points exist on the non-convex body

    def test_flat_circle_counts_as_zero(self, flatcap_poly):
        # odd mesh_s puts a lattice row exactly on the flat equator
        kp, km, k0 = curvature_census(flatcap_poly, 33, 64)
        assert k0 >= 64
        assert km == 0

    def test_sign_fractions_stable_for_convex_fixture(self, t001_poly):
        c0 = curvature_census(t001_poly, 32, 64)
        moved = substitute_linear(t001_poly, random_unimodular(3, seed=3))
        c1 = curvature_census(moved, 32, 64)
        n = 32 * 64
        assert all(abs(a - b) / n <= 0.05 for a, b in zip(c0, c1))

    def test_pointwise_sign_invariance_under_unimodular_map(self, t020_poly):
        # map surface points of the transformed body back and compare K signs
        m = random_unimodular(3, seed=77)
        moved = substitute_linear(t020_poly, m)
        ss, tt = interior_lattice(16, 32)
        out_moved = record_batch(moved, ss, tt)
        pts = out_moved[:, rec.X : rec.X + 3] @ m.as_array()
        u = pts / np.linalg.norm(pts, axis=1, keepdims=True)
        s2 = np.arccos(np.clip(u[:, 2], -1, 1))
        t2 = np.mod(np.arctan2(u[:, 1], u[:, 0]), 2 * np.pi)
        out_base = record_batch(t020_poly, s2, t2)
        k1, k2 = out_moved[:, rec.K], out_base[:, rec.K]
        clear = (np.abs(k1) > 1e-4 * np.abs(k1).max()) & (np.abs(k2) > 1e-4 * np.abs(k2).max())
        assert clear.sum() > 400
        assert (np.sign(k1[clear]) == np.sign(k2[clear])).all()


class TestConvexity:
    def test_sphere_convex(self, unit_ball_poly):
        assert convexity_check(unit_ball_poly).convex

    def test_fixture_t001_convex(self, t001_poly):
        assert convexity_check(t001_poly).convex

    def test_fixture_t020_not_convex(self, t020_poly):
        verdict = convexity_check(t020_poly)
        assert not verdict.convex
        s, t = verdict.witness
        assert jet(t020_poly, s, t).gauss_curv < 0

    def test_all_other_catalogue_fixtures_not_convex(self):
        for label in ("T010", "T099", "T119", "T207", "T237"):
            f = sign_normalize(det_poly(fixture(label)))
            assert not convexity_check(f).convex, label


class TestSingularityScan:
    def test_sphere_has_no_flags(self, unit_ball_poly):
        assert singularity_scan(unit_ball_poly, 32, 64, grad_tol=1e-3) == []

    def test_flat_capped_body_is_flagged(self, flatcap_poly):
        flags = singularity_scan(flatcap_poly, 32, 64, grad_tol=1e-2)
        assert flags
        # degeneracy is the flat caps: flags cluster at the poles
        assert all(f.s < 0.3 or f.s > np.pi - 0.3 for f in flags)
        # gradient never vanishes on the surface of a definite polynomial
        assert all(f.grad_norm > 1.0 for f in flags)

    def test_refinement_keeps_flagged_neighborhoods(self, flatcap_poly):
        coarse = singularity_scan(flatcap_poly, 32, 64, grad_tol=1e-2)
        fine = singularity_scan(flatcap_poly, 64, 128, grad_tol=1e-2)
        assert coarse and fine
        spacing = np.pi / 32
        fine_pts = np.array([(g.s, g.t) for g in fine])
        for g in coarse:
            d = np.hypot(fine_pts[:, 0] - g.s, fine_pts[:, 1] - g.t)
            assert d.min() <= spacing


class TestSurfaceMesh:
    def test_sphere_vertices_on_unit_sphere(self, unit_ball_poly):
        mesh = surface_mesh(unit_ball_poly, 8, 8)
        radii = np.linalg.norm(mesh.vertices, axis=1)
        assert np.abs(radii - 1.0).max() < 1e-10
        assert len(mesh.vertices) == 66

    def test_vertex_count_formula(self, t001_poly):
        mesh = surface_mesh(t001_poly, 32, 64)
        assert len(mesh.vertices) == 32 * 64 + 2
        assert len(mesh.faces) == 2 * 32 * 64

    def test_closed_genus_zero_triangulation(self, t020_poly):
        mesh = surface_mesh(t020_poly, 12, 16)
        assert mesh.euler_characteristic() == 2
        # every face references valid vertices
        assert mesh.faces.min() >= 0
        assert mesh.faces.max() < len(mesh.vertices)

    def test_mesh_size_floor(self, unit_ball_poly):
        with pytest.raises(ValueError):
            surface_mesh(unit_ball_poly, 3, 8)
