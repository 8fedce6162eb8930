import math

import numpy as np
import pytest

from reggescissors.exceptions import GeometryDomainError, QuadratureError
from reggescissors.klein import (
    KleinTetra,
    apply_isometry,
    dihedral_angles,
    klein_vertices,
    lorentz_boost,
    schlafli_residual,
    three_quarter_volume_numeric,
    volume_numeric,
)
from reggescissors.octahedron import tet_volume
from reggescissors.scissors import regge
from reggescissors.tetra import TetAngles, edge_lengths, three_quarter_volume

PI = math.pi


class TestRealization:
    def test_round_trip(self, finite_batch):
        for t in finite_batch[:8]:
            kt = klein_vertices(t)
            back = dihedral_angles(kt)
            for a, b in zip(t.as_tuple(), back.as_tuple()):
                assert a == pytest.approx(b, abs=1e-10)

    def test_gauge_fixing(self, generic):
        v = klein_vertices(generic).vertices
        assert np.linalg.norm(v[0]) < 1e-12          # vertex 0 at the origin
        assert abs(v[1][1]) < 1e-12 and abs(v[1][2]) < 1e-12
        assert v[1][0] > 0                            # vertex 1 on +x
        assert abs(v[2][2]) < 1e-12 and v[2][1] > 0   # vertex 2 in upper xy

    def test_vertices_inside_ball(self, finite_batch):
        for t in finite_batch[:8]:
            assert np.all(klein_vertices(t).radii() < 1.0)

    def test_equiangular_is_regular(self, equiangular):
        # all six hyperbolic edge lengths computed from coordinates agree
        v = klein_vertices(equiangular).vertices
        norms = 1.0 - np.sum(v**2, axis=1)
        dists = []
        for i in range(4):
            for j in range(i + 1, 4):
                cosh_d = (1.0 - v[i] @ v[j]) / math.sqrt(norms[i] * norms[j])
                dists.append(math.acosh(cosh_d))
        assert np.max(dists) - np.min(dists) < 1e-10
        assert dists[0] == pytest.approx(edge_lengths(equiangular)[0], abs=1e-9)

    def test_ideal_input_rejected(self):
        with pytest.raises(GeometryDomainError):
            klein_vertices(TetAngles(*(PI / 3,) * 6))


class TestVolumeNumeric:
    def test_matches_formula(self, finite_batch):
        for t in finite_batch[:5]:
            kt = klein_vertices(t)
            assert volume_numeric(kt, 1e-6) == pytest.approx(tet_volume(t), abs=1e-5)

    def test_tiny_tetra_is_euclidean(self):
        # near the origin the metric factor 1/(1-r^2)^2 is 1 + O(r^2)
        verts = 1e-3 * np.array(
            [[0.0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
        )
        euclid = abs(np.linalg.det(verts[1:] - verts[0])) / 6
        v = volume_numeric(KleinTetra(verts), 1e-15)
        assert v == pytest.approx(euclid, rel=1e-5)

    def test_isometry_invariance(self, generic):
        kt = klein_vertices(generic)
        moved = apply_isometry(kt, lorentz_boost(0.3, axis=0))
        assert not np.allclose(moved.vertices, kt.vertices)
        assert volume_numeric(moved, 1e-7) == pytest.approx(
            volume_numeric(kt, 1e-7), abs=1e-6
        )

    def test_regge_invariance_certified_without_formulas(self, finite_batch):
        # volume equality of T and R_b(T) checked by quadrature alone
        for t in finite_batch[:3]:
            v1 = volume_numeric(klein_vertices(t), 1e-6)
            v2 = volume_numeric(klein_vertices(regge(t, "b")), 1e-6)
            assert abs(v1 - v2) < 2e-5

    def test_budget_exhaustion_reports_achievement(self, generic):
        kt = klein_vertices(generic)
        with pytest.raises(QuadratureError) as exc:
            volume_numeric(kt, 1e-14, max_refine=8)
        assert exc.value.achieved > 0

    def test_rejects_outside_ball(self):
        verts = np.array([[0.0, 0, 0], [1.2, 0, 0], [0, 0.5, 0], [0, 0, 0.5]])
        with pytest.raises(GeometryDomainError):
            volume_numeric(KleinTetra(verts), 1e-6)

    def test_non_lorentz_matrix_rejected(self, generic):
        kt = klein_vertices(generic)
        with pytest.raises(GeometryDomainError):
            apply_isometry(kt, np.eye(4) * 2)


class TestSchlafli:
    def test_equiangular_residuals_equal(self, equiangular):
        res = schlafli_residual(equiangular, 1e-5)
        assert np.max(res) - np.min(res) < 1e-9

    def test_random_relative_residuals(self, finite_batch):
        for t in finite_batch[:5]:
            res = schlafli_residual(t, 1e-5)
            halves = np.array(edge_lengths(t)) / 2
            assert np.max(res / halves) < 1e-3

    def test_second_order_scaling(self, generic):
        # central differences: halving h should shrink the residual ~4x;
        # allow slack for the 1e-12 rounding floor of the volume evaluation
        r1 = np.max(schlafli_residual(generic, 8e-4))
        r2 = np.max(schlafli_residual(generic, 4e-4))
        assert r2 < r1 / 2

    def test_step_validation(self, generic):
        with pytest.raises(GeometryDomainError):
            schlafli_residual(generic, 1e-2)

    def test_requires_finite(self):
        with pytest.raises(GeometryDomainError):
            schlafli_residual(TetAngles(*(1.0,) * 6), 1e-5)


class TestThreeQuarterOracle:
    @pytest.mark.parametrize("abc", [(2.0, 0.8, 0.9), (1.2, 1.2, 1.2), (1.5, 1.0, 0.9)])
    def test_matches_formula(self, abc):
        assert three_quarter_volume_numeric(*abc) == pytest.approx(
            three_quarter_volume(*abc), abs=1e-5
        )

    def test_rejects_ideal_apex(self):
        with pytest.raises(GeometryDomainError):
            three_quarter_volume_numeric(1.0, 1.0, 1.0)
