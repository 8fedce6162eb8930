import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reggescissors.exceptions import GeometryDomainError, NonUnitRootError
from reggescissors.lobachevsky import lobachevsky
from reggescissors.octahedron import (
    OctSide,
    SLOT_ORDER,
    base_angles,
    bar_solution,
    dual_base,
    full_dihedral_angles,
    holonomy_polynomial,
    holonomy_residual,
    linear_residuals,
    octahedron_angles,
    octahedron_volume,
    solve_holonomy,
    tet_volume,
    u_volume,
    wrap_angle,
)
from reggescissors.tetra import TetAngles, prism_volume

PI = math.pi

# volume of the equiangular tetrahedron with all angles 1.2, frozen after
# cross-checking against the Klein-model quadrature oracle
EQUIANGULAR_12_VOLUME = 0.046712861991968745

angles6 = st.tuples(*[st.floats(1.05, 1.28)] * 6)


class TestBaseAngles:
    def test_equiangular(self):
        theta = 1.2
        b = base_angles(TetAngles(*(theta,) * 6))
        assert (b.a, b.b, b.d) == pytest.approx(((PI + theta) / 2,) * 3, abs=1e-15)
        assert b.c == pytest.approx((PI - 3 * theta) / 2, abs=1e-15)
        assert b.e == pytest.approx((PI - 3 * theta) / 2, abs=1e-15)
        assert (b.f, b.g, b.h) == pytest.approx(((PI + theta) / 2,) * 3, abs=1e-15)

    def test_direct_substitution(self):
        t = TetAngles(PI / 2, PI / 3, PI / 4, PI / 2, PI / 3, PI / 4)
        b = base_angles(t)
        assert b.a == pytest.approx((PI - PI / 4 + PI / 2 + PI / 3) / 2, abs=1e-15)

    def test_ring_sums_to_two_pi(self, generic):
        # the four angles around the firepole close up
        b = base_angles(generic)
        assert sum(b.ring()) == pytest.approx(2 * PI, abs=1e-12)


class TestBarSolution:
    def test_equiangular_values(self):
        theta = 1.2
        bars = bar_solution(TetAngles(*(theta,) * 6))
        assert bars.AB == pytest.approx(theta, abs=1e-15)
        assert bars.BC == pytest.approx(0.0, abs=1e-15)
        assert bars.CD == pytest.approx(-theta, abs=1e-15)
        assert bars.DA == pytest.approx(0.0, abs=1e-15)

    def test_direct_substitution(self):
        bars = bar_solution(TetAngles(0.9, 0.8, 0.7, 1.0, 1.1, 1.2))
        assert bars.AB == pytest.approx((0.9 + 1.0 + 2.2) / 4, abs=1e-15)

    @settings(max_examples=100, deadline=None)
    @given(angles6)
    def test_group_sums(self, angles):
        bars = bar_solution(TetAngles(*angles))
        assert sum(bars.plus()) == pytest.approx(0.0, abs=1e-12)
        assert sum(bars.minus()) == pytest.approx(2 * PI, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(angles6)
    def test_satisfies_linear_constraints(self, angles):
        t = TetAngles(*angles)
        bars = bar_solution(t)
        base = base_angles(t)
        residuals = [
            bars.AB + bars.AD - base.a,
            bars.AB + bars.BA + base.e - PI,
            bars.BC + bars.BA - base.b,
            bars.BC + bars.CB + base.f - PI,
            bars.CD + bars.CB - base.c,
            bars.CD + bars.DC + base.g - PI,
            bars.DA + bars.DC - base.d,
            bars.DA + bars.AD + base.h - PI,
        ]
        assert max(abs(r) for r in residuals) < 1e-12


class TestHolonomy:
    def test_end_coefficients_vanish(self, generic):
        poly = holonomy_polynomial(bar_solution(generic))
        assert abs(poly[0]) < 1e-12
        assert abs(poly[4]) < 1e-12

    def test_roots_on_unit_circle(self, finite_batch):
        for t in finite_batch:
            roots = solve_holonomy(t)
            assert abs(abs(roots.z_minus) - 1) < 1e-9
            assert abs(abs(roots.z_plus) - 1) < 1e-9
            assert roots.unit_defect < 1e-9

    def test_quadratic_residual_at_roots(self, generic):
        roots = solve_holonomy(generic)
        q2, q1, q0 = roots.quad_coeffs
        for z in (roots.z_minus, roots.z_plus):
            w = z * z
            assert abs(q2 * w * w + q1 * w + q0) < 1e-10

    def test_holonomy_product(self, finite_batch):
        for t in finite_batch:
            oa = octahedron_angles(t)
            assert holonomy_residual(oa) < 1e-10

    def test_shifted_bar_seed_gives_same_angles(self, generic):
        # the bar solution is one member of a one-parameter family; any other
        # member must produce the same octahedron angles (mod pi: a large
        # shift can wrap the half-argument branch of the root, which moves
        # every slot by pi without changing the solution)
        from reggescissors.scissors import canonical_angle

        bars = bar_solution(generic)
        a1 = octahedron_angles(generic, bars=bars).as_array()
        c1 = np.array([canonical_angle(x) for x in a1])
        for delta in (-0.4, 0.17, 0.9):
            shifted = bars.shifted(delta)
            a2 = octahedron_angles(generic, bars=shifted).as_array()
            c2 = np.array([canonical_angle(x) for x in a2])
            assert np.max(np.abs(c1 - c2)) < 1e-10

    def test_invalid_input_rejected(self):
        with pytest.raises(GeometryDomainError):
            solve_holonomy(TetAngles(*(1.5,) * 6))

    def test_hyperideal_accepted_and_flagged(self):
        roots = solve_holonomy(TetAngles(*(1.0,) * 6))
        assert roots.tet_class.value == "Hyperideal"
        assert roots.unit_defect < 1e-9


class TestOctAngles:
    def test_linear_constraints_solved(self, finite_batch):
        for t in finite_batch:
            base = base_angles(t)
            for side in (OctSide.O, OctSide.DUAL):
                oa = octahedron_angles(t, side)
                assert np.max(linear_residuals(oa, base)) < 1e-10

    def test_equiangular_slot_coincidences(self, equiangular):
        # equal opposite pairs force BA=DC, CB=AD, BC=DA exactly
        oa = octahedron_angles(equiangular)
        assert oa.BA == pytest.approx(oa.DC, abs=1e-12)
        assert oa.CB == pytest.approx(oa.AD, abs=1e-12)
        assert oa.BC == pytest.approx(oa.DA, abs=1e-12)

    def test_supplementary_duals(self, finite_batch):
        for t in finite_batch[:5]:
            base = base_angles(t)
            full_o = full_dihedral_angles(octahedron_angles(t, OctSide.O), base)
            full_d = full_dihedral_angles(octahedron_angles(t, OctSide.DUAL), base)
            for key in full_o:
                gap = abs(wrap_angle(full_o[key] + full_d[key] - PI))
                assert gap < 1e-9, key

    def test_hyperideal_octahedron_is_honest(self):
        # in the hyperideal regime the octahedron embeds and every slot angle
        # lies in (0, pi)
        oa = octahedron_angles(TetAngles(*(1.0,) * 6))
        assert np.all(oa.as_array() > 0)
        assert np.all(oa.as_array() < PI)


class TestVolumes:
    def test_equiangular_frozen_value(self, equiangular):
        assert tet_volume(equiangular) == pytest.approx(EQUIANGULAR_12_VOLUME, abs=1e-12)

    def test_plus_root_negates(self, finite_batch):
        for t in finite_batch:
            assert tet_volume(t, "plus") == pytest.approx(-tet_volume(t), abs=1e-9)

    def test_octahedron_pair_reconstructs_volume(self, finite_batch):
        for t in finite_batch:
            base = base_angles(t)
            vo = octahedron_volume(octahedron_angles(t, OctSide.O), base)
            vd = octahedron_volume(octahedron_angles(t, OctSide.DUAL), base)
            assert (vo + vd) / 2 == pytest.approx(tet_volume(t), abs=1e-10)

    def test_octahedron_volume_regroups_as_four_ideal_tetra(self, generic):
        base = base_angles(generic)
        oa = octahedron_angles(generic)
        by_tetra = sum(
            lobachevsky(x) + lobachevsky(y) + lobachevsky(r)
            for x, y, r in zip(
                (oa.AB, oa.BC, oa.CD, oa.DA),
                (oa.BA, oa.CB, oa.DC, oa.AD),
                base.ring(),
            )
        )
        assert octahedron_volume(oa, base) == pytest.approx(by_tetra, abs=1e-12)

    def test_u_volume_route(self, finite_batch):
        for t in finite_batch:
            prisms = [
                prism_volume(t.A, t.B, t.C),
                prism_volume(t.A, t.Bp, t.Cp),
                prism_volume(t.Ap, t.B, t.Cp),
                prism_volume(t.Ap, t.Bp, t.C),
            ]
            v = u_volume(t) - 0.5 * sum(prisms)
            assert v == pytest.approx(tet_volume(t), abs=1e-9)

    def test_u_volume_exceeds_tet_volume(self, generic):
        v = tet_volume(generic)
        assert u_volume(generic) > v > 0

    def test_monotone_toward_ideal(self):
        thetas = np.linspace(1.22, 1.06, 9)
        vols = [tet_volume(TetAngles(*(th,) * 6)) for th in thetas]
        assert all(v2 > v1 for v1, v2 in zip(vols, vols[1:]))
        assert vols[-1] < 1.0149416064096539

    def test_ideal_limit_matches_regular_ideal_volume(self):
        v = tet_volume(TetAngles(*(PI / 3,) * 6))
        assert v == pytest.approx(1.0149416064096539, abs=1e-12)

    def test_hyperideal_volume_rejected(self):
        with pytest.raises(GeometryDomainError):
            tet_volume(TetAngles(*(1.0,) * 6))

    def test_bad_root_label(self, generic):
        with pytest.raises(GeometryDomainError):
            tet_volume(generic, root="best")

    def test_dual_base_supplementary(self, generic):
        base = base_angles(generic)
        dual = dual_base(base)
        assert dual.a == pytest.approx(PI - base.a, abs=1e-15)
        assert dual.h == pytest.approx(PI - base.h, abs=1e-15)

    def test_volume_invariant_under_all_relabelings(self, generic):
        # the construction singles out the (A, A') pair; the volume must not
        from reggescissors.tetra import relabel, tetra_symmetries

        v = tet_volume(generic)
        for sigma in tetra_symmetries():
            assert tet_volume(relabel(generic, sigma)) == pytest.approx(v, abs=1e-9)
