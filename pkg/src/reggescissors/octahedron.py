"""The octahedron angle system behind the tetrahedron volume formula.

Extending all edges of a tetrahedron to infinity and cutting the resulting
ideal polyhedron leaves an ideal octahedron whose triangulation around a
chosen diagonal ("firepole", here the one preferring the (A, A') edge pair)
has eight unknown dihedral angles in slots

    AB, BA, BC, CB, CD, DC, DA, AD

tied by eight linear constraints plus one holonomy condition

    sin(AB) sin(BC) sin(CD) sin(DA)
    -------------------------------- = 1 .
    sin(BA) sin(CB) sin(DC) sin(AD)

A particular solution of the linear part (the "bar" solution) reduces the
holonomy condition, via z = exp(iZ), to a quadratic in w = z^2 whose two
unit-circle roots drive everything else: the slot angles are bars +- Z, the
octahedron volume is a sum of twelve Lobachevsky terms, and the two roots
give +V and -V of the tetrahedron through one 24-term expression.

For a finite (compact) tetrahedron the octahedron only exists by analytic
continuation: the quadrilateral angle c = (pi - A - B - C)/2 is negative, so
some slot angles leave (0, pi) and some pieces carry negative volume.  Root
labeling therefore uses the sign of the assembled tetrahedron volume, which
is the criterion that survives continuation (in the honestly embedded
hyperideal regime it coincides with all slots lying in (0, pi)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import DegenerateSystemError, GeometryDomainError, NonUnitRootError
from .lobachevsky import lobachevsky
from .tetra import TetAngles, TetraKind, classify

__all__ = [
    "BaseAngles",
    "BarSolution",
    "HolonomyRoots",
    "OctAngles",
    "OctSide",
    "SLOT_ORDER",
    "base_angles",
    "bar_solution",
    "dual_base",
    "full_dihedral_angles",
    "holonomy_polynomial",
    "holonomy_residual",
    "linear_residuals",
    "octahedron_angles",
    "octahedron_volume",
    "solve_holonomy",
    "tet_volume",
    "u_volume",
    "volume_remainder",
]

_PI = math.pi
_TWO_PI = 2 * math.pi

SLOT_ORDER = ("AB", "BA", "BC", "CB", "CD", "DC", "DA", "AD")
#: Slots whose angle is bar + Z (the others are bar - Z).
PLUS_SLOTS = ("AB", "BC", "CD", "DA")

#: Roots further than this from the unit circle mean Z is not real.
UNIT_ROOT_TOL = 1e-6


class OctSide(Enum):
    O = "O"
    DUAL = "O'"


def wrap_angle(x: float) -> float:
    """Reduce mod 2*pi into (-pi, pi]."""
    r = x - _TWO_PI * math.floor(x / _TWO_PI + 0.5)
    if r <= -_PI:
        r += _TWO_PI
    return r


@dataclass(frozen=True)
class BaseAngles:
    """Known angles of the octahedron: quadrilateral angles a..d at the four
    projected vertices and ring angles e..h on the four remaining edges."""

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    g: float
    h: float

    def ring(self):
        return (self.e, self.f, self.g, self.h)


@dataclass(frozen=True)
class BarSolution:
    """A particular solution of the linear constraints (Z = 0 seed)."""

    AB: float
    BA: float
    BC: float
    CB: float
    CD: float
    DC: float
    DA: float
    AD: float

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, s) for s in SLOT_ORDER])

    def plus(self):
        return (self.AB, self.BC, self.CD, self.DA)

    def minus(self):
        return (self.BA, self.CB, self.DC, self.AD)

    def shifted(self, delta: float) -> "BarSolution":
        """Another member of the one-parameter solution family."""
        vals = {}
        for s in SLOT_ORDER:
            vals[s] = getattr(self, s) + (delta if s in PLUS_SLOTS else -delta)
        return BarSolution(**vals)


@dataclass(frozen=True)
class HolonomyRoots:
    """Both roots of the holonomy quadratic with semantic labels.

    z_minus is the root whose assembled tetrahedron volume is positive;
    z_plus gives the negative of the volume.  Z_minus / Z_plus are the
    half-arguments (the additive angle offsets), fixed mod pi.
    """

    z_minus: complex
    z_plus: complex
    Z_minus: float
    Z_plus: float
    alphas: tuple[complex, complex, complex, complex]
    betas: tuple[complex, complex, complex, complex]
    quad_coeffs: tuple[complex, complex, complex]  # (w^2, w^1, w^0)
    discriminant: complex
    unit_defect: float
    tet_class: TetraKind


@dataclass(frozen=True)
class OctAngles:
    """Solved slot angles of one octahedron (O or its dual), each in (-pi, pi]."""

    AB: float
    BA: float
    BC: float
    CB: float
    CD: float
    DC: float
    DA: float
    AD: float
    which: OctSide

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, s) for s in SLOT_ORDER])


def base_angles(t: TetAngles) -> BaseAngles:
    A, B, C, Ap, Bp, Cp = t.as_tuple()
    return BaseAngles(
        a=(_PI - Cp + A + Bp) / 2,
        b=(_PI - Bp + A + Cp) / 2,
        c=(_PI - A - B - C) / 2,
        d=(_PI - A + B + C) / 2,
        e=(_PI - A - Bp - Cp) / 2,
        f=(_PI - Ap + Bp + C) / 2,
        g=(_PI - C + A + B) / 2,
        h=(_PI - B + Ap + Cp) / 2,
    )


def dual_base(base: BaseAngles) -> BaseAngles:
    """Base angles of the dual octahedron: all dihedral angles supplementary."""
    return BaseAngles(*(_PI - x for x in (base.a, base.b, base.c, base.d,
                                          base.e, base.f, base.g, base.h)))


def bar_solution(t: TetAngles) -> BarSolution:
    A, B, C, Ap, Bp, Cp = t.as_tuple()
    return BarSolution(
        AB=(A + Ap + 2 * Bp) / 4,
        BA=(_TWO_PI + A - Ap + 2 * Cp) / 4,
        BC=(A + Ap - 2 * Bp) / 4,
        CB=(_TWO_PI - A + Ap - 2 * C) / 4,
        CD=(-A - Ap - 2 * B) / 4,
        DC=(_TWO_PI - A + Ap + 2 * C) / 4,
        DA=(-A - Ap + 2 * B) / 4,
        AD=(_TWO_PI + A - Ap - 2 * Cp) / 4,
    )


def _alphas_betas(bars: BarSolution):
    alphas = tuple(cmath.exp(1j * x) for x in bars.plus())
    betas = tuple(cmath.exp(1j * x) for x in bars.minus())
    return alphas, betas


def _elementary(vals, k):
    total = 0j
    n = len(vals)
    import itertools

    for comb in itertools.combinations(range(n), k):
        p = 1.0 + 0j
        for i in comb:
            p *= vals[i]
        total += p
    return total


def holonomy_polynomial(bars: BarSolution) -> np.ndarray:
    """Coefficients [w^4, w^3, w^2, w^1, w^0] of the holonomy condition in
    w = z^2.  The w^4 and w^0 coefficients vanish identically because the
    plus bars sum to 0 and the minus bars to 2*pi, leaving a quadratic.
    """
    alphas, betas = _alphas_betas(bars)
    a2 = [a * a for a in alphas]
    b2 = [b * b for b in betas]
    pa = alphas[0] * alphas[1] * alphas[2] * alphas[3]
    pb = betas[0] * betas[1] * betas[2] * betas[3]
    return np.array(
        [
            pa - 1 / pb,
            _elementary(b2, 1) / pb - _elementary(a2, 3) / pa,
            _elementary(a2, 2) / pa - _elementary(b2, 2) / pb,
            _elementary(b2, 3) / pb - _elementary(a2, 1) / pa,
            1 / pa - pb,
        ],
        dtype=complex,
    )


def volume_remainder(t: TetAngles) -> float:
    """The Z-independent half-sum completing the volume formula."""
    A, B, C, Ap, Bp, Cp = t.as_tuple()
    terms = (
        (+1, (_PI + A - B - C) / 2),
        (-1, (_PI + B - A - C) / 2),
        (-1, (_PI + C - A - B) / 2),
        (+1, (_PI + Bp - Ap - C) / 2),
        (+1, (_PI + A + B + C) / 2),
        (+1, (_PI + C - Ap - Bp) / 2),
        (+1, (_PI - Ap + Bp + C) / 2),
        (-1, (_PI + Ap + Bp + C) / 2),
        (+1, (_PI + Ap - B - Cp) / 2),
        (-1, (_PI + A + Bp + Cp) / 2),
        (-1, (_PI + A - Bp - Cp) / 2),
        (+1, (_PI + Bp - A - Cp) / 2),
        (-1, (_PI - Ap - B + Cp) / 2),
        (+1, (_PI + Ap - B + Cp) / 2),
        (+1, (_PI + Ap + B + Cp) / 2),
        (+1, (_PI - A - Bp + Cp) / 2),
    )
    return 0.5 * sum(s * lobachevsky(x) for s, x in terms)


def _slot_sum(bars: BarSolution, Z: float) -> float:
    """Sum of the eight Lobachevsky slot terms at angle offset Z."""
    total = 0.0
    for s in SLOT_ORDER:
        total += lobachevsky(getattr(bars, s) + (Z if s in PLUS_SLOTS else -Z))
    return total


def solve_holonomy(t: TetAngles, bars: BarSolution | None = None) -> HolonomyRoots:
    """Solve the holonomy quadratic and label the roots semantically.

    Accepts Finite and Ideal tetrahedra; Hyperideal input is solved as well
    (there the octahedron is honestly embedded) and flagged via tet_class.
    Invalid input raises GeometryDomainError.  Roots off the unit circle
    beyond UNIT_ROOT_TOL raise NonUnitRootError; a collapsed quadratic or a
    failed sign test raises DegenerateSystemError with diagnostics.
    """
    kind = classify(t).kind
    if kind is TetraKind.INVALID:
        raise GeometryDomainError("holonomy system requires a valid hyperbolic tetrahedron")
    if bars is None:
        bars = bar_solution(t)
    poly = holonomy_polynomial(bars)
    q2, q1, q0 = poly[1], poly[2], poly[3]
    scale = max(abs(q2), abs(q1), abs(q0))
    if scale < 1e-12 or abs(q2) < 1e-13 * max(1.0, scale):
        raise DegenerateSystemError(
            "holonomy quadratic collapsed",
            {"|w2|": abs(q2), "|w1|": abs(q1), "|w0|": abs(q0)},
        )
    disc = q1 * q1 - 4 * q2 * q0
    sq = cmath.sqrt(disc)
    w_candidates = [(-q1 + sq) / (2 * q2), (-q1 - sq) / (2 * q2)]
    defect = max(abs(math.sqrt(abs(w)) - 1.0) for w in w_candidates)
    if defect > UNIT_ROOT_TOL:
        raise NonUnitRootError(
            f"holonomy root off the unit circle (|z|-1 = {defect:.3e}); "
            "no real angle offset exists",
            {"unit_defect": defect, "class": kind.value},
        )
    # project onto the unit circle; the defect is recorded as a diagnostic
    w_candidates = [w / abs(w) for w in w_candidates]
    Zs = [cmath.phase(w) / 2 for w in w_candidates]
    remainder = volume_remainder(t)
    vols = [_slot_sum(bars, Z) + remainder for Z in Zs]
    im = 0 if vols[0] >= vols[1] else 1
    if vols[im] < -1e-12:
        raise DegenerateSystemError(
            "neither holonomy root yields a nonnegative volume",
            {"volume_candidates": tuple(vols), "class": kind.value},
        )
    ip = 1 - im
    alphas, betas = _alphas_betas(bars)
    return HolonomyRoots(
        z_minus=cmath.exp(1j * Zs[im]),
        z_plus=cmath.exp(1j * Zs[ip]),
        Z_minus=Zs[im],
        Z_plus=Zs[ip],
        alphas=alphas,
        betas=betas,
        quad_coeffs=(q2, q1, q0),
        discriminant=disc,
        unit_defect=defect,
        tet_class=kind,
    )


def octahedron_angles(t: TetAngles, which: OctSide = OctSide.O,
                      bars: BarSolution | None = None,
                      roots: HolonomyRoots | None = None) -> OctAngles:
    """Slot angles of the octahedron (which = O) or its dual.

    The dual octahedron has supplementary dihedral angles; its slot seed is
    the negated/supplemented bar solution and its offset is driven by the
    other root (the dual quadratic is the reciprocal of the original, so its
    geometric root is the inverse of z_plus, i.e. the offset is -Z_plus).
    """
    if bars is None:
        bars = bar_solution(t)
    if roots is None:
        roots = solve_holonomy(t, bars)
    vals = {}
    if which is OctSide.O:
        Z = roots.Z_minus
        for s in SLOT_ORDER:
            vals[s] = wrap_angle(getattr(bars, s) + (Z if s in PLUS_SLOTS else -Z))
    else:
        Zp = roots.Z_plus
        for s in SLOT_ORDER:
            if s in PLUS_SLOTS:
                vals[s] = wrap_angle(-getattr(bars, s) - Zp)
            else:
                vals[s] = wrap_angle(_PI - getattr(bars, s) + Zp)
    return OctAngles(which=which, **vals)


def linear_residuals(oct_angles: OctAngles, base: BaseAngles) -> np.ndarray:
    """Residuals of the eight linear constraints, wrapped mod 2*pi.

    For the dual octahedron pass the same base; the supplementary base is
    substituted internally.
    """
    if oct_angles.which is OctSide.DUAL:
        base = dual_base(base)
    o = oct_angles
    raw = [
        o.AB + o.AD - base.a,
        o.AB + o.BA + base.e - _PI,
        o.BC + o.BA - base.b,
        o.BC + o.CB + base.f - _PI,
        o.CD + o.CB - base.c,
        o.CD + o.DC + base.g - _PI,
        o.DA + o.DC - base.d,
        o.DA + o.AD + base.h - _PI,
    ]
    return np.abs([wrap_angle(x) for x in raw])


def holonomy_residual(oct_angles: OctAngles) -> float:
    """|product of sine ratios - 1| for the solved slot angles."""
    o = oct_angles
    num = math.sin(o.AB) * math.sin(o.BC) * math.sin(o.CD) * math.sin(o.DA)
    den = math.sin(o.BA) * math.sin(o.CB) * math.sin(o.DC) * math.sin(o.AD)
    return abs(num / den - 1.0)


def full_dihedral_angles(oct_angles: OctAngles, base: BaseAngles) -> dict[str, float]:
    """The twelve dihedral angles of the (possibly virtual) octahedron.

    Keys: apex:{a..d} (edges to the top firepole end), ring:{e..h} (the
    equatorial edges), base:{a..d} (edges to the bottom firepole end).
    Corresponding entries of O and the dual sum to pi.
    """
    o = oct_angles
    if oct_angles.which is OctSide.DUAL:
        base = dual_base(base)
    return {
        "apex:a": o.AB + o.AD,
        "apex:b": o.BC + o.BA,
        "apex:c": o.CD + o.CB,
        "apex:d": o.DA + o.DC,
        "ring:e": base.e,
        "ring:f": base.f,
        "ring:g": base.g,
        "ring:h": base.h,
        "base:a": o.BA + o.DA,
        "base:b": o.AB + o.CB,
        "base:c": o.BC + o.DC,
        "base:d": o.CD + o.AD,
    }


def octahedron_volume(oct_angles: OctAngles, base: BaseAngles) -> float:
    """Volume as the twelve-term Lobachevsky sum over four ideal tetrahedra.

    For a finite source tetrahedron the continued octahedron O can have
    negative volume; O and its dual always satisfy V(O) + V(O') = 2 V(T).
    """
    ring = base.ring() if oct_angles.which is OctSide.O else dual_base(base).ring()
    total = sum(lobachevsky(x) for x in oct_angles.as_array())
    total += sum(lobachevsky(x) for x in ring)
    return float(total)


def u_volume(t: TetAngles, roots: HolonomyRoots | None = None) -> float:
    """Volume of the fully extended polyhedron (all edges pushed to infinity).

    Octahedron slot terms plus the Lobachevsky terms of the six original
    angles and the eight prism/tetra correction terms, exactly as the
    construction regroups them.
    """
    if roots is None:
        roots = solve_holonomy(t)
    A, B, C, Ap, Bp, Cp = t.as_tuple()
    bars = bar_solution(t)
    extra = (
        (+1, (_PI - A - Bp - Cp) / 2),
        (+1, (_PI + Ap - B - Cp) / 2),
        (+1, (_PI + Bp - A - Cp) / 2),
        (+1, (_PI + Cp - A - Bp) / 2),
        (+1, (_PI + A - B - C) / 2),
        (+1, (_PI + C - Ap - Bp) / 2),
        (+1, (_PI + Bp - Ap - C) / 2),
        (-1, (_PI + Ap + Bp + C) / 2),
    )
    total = _slot_sum(bars, roots.Z_minus)
    total += sum(lobachevsky(x) for x in (A, Ap, B, Bp, C, Cp))
    total += sum(s * lobachevsky(x) for s, x in extra)
    return float(total)


def tet_volume(t: TetAngles, root: str = "minus",
               roots: HolonomyRoots | None = None) -> float:
    """Hyperbolic volume of the tetrahedron (root="minus"), or its negative
    (root="plus", the dual-route identity)."""
    if root not in ("minus", "plus"):
        raise GeometryDomainError(f"root must be 'minus' or 'plus', got {root!r}")
    kind = classify(t).kind
    if kind not in (TetraKind.FINITE, TetraKind.IDEAL):
        raise GeometryDomainError(
            f"volume formula applies to Finite (or Ideal-limit) tetrahedra, got {kind.value}"
        )
    bars = bar_solution(t)
    if roots is None:
        roots = solve_holonomy(t, bars)
    Z = roots.Z_minus if root == "minus" else roots.Z_plus
    return _slot_sum(bars, Z) + volume_remainder(t)
