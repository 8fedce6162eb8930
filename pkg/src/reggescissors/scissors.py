"""Regge transforms, the 16-piece decomposition of 2T, and the congruence check.

Doubling a finite hyperbolic tetrahedron T yields, through the octahedron
construction, a decomposition of 2T into sixteen signed pieces L(theta):
halves of bilaterally symmetric ideal tetrahedra with signed volume
lob(theta).  Eight pieces come from the octahedron O (slot angles
bar +- Z_minus) and eight from its dual (negated slot angles at Z_plus); the
four ring pieces of O cancel against their supplementary partners in the
dual and never appear.

The Regge transform R_b fixes (B, B') and replaces the other four angles by
s_b - x with s_b = (A + C + A' + C')/2.  Composing R_b with the crossed pair
relabeling A -> C', C' -> A, A' -> C, C -> A' reproduces the original bar
solution except that the BA and DC bars trade places, and leaves the
holonomy quadratic untouched.  The congruence of 2T and 2 R_b(T) is thereby
visible slot by slot: swapping the BA and DC pieces (and their dual
partners, then mirroring, which moves no volume) turns one decomposition
into the other.  R_a and R_c reduce to R_b by conjugation with pair swaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import DegenerateSystemError, GeometryDomainError, NonUnitRootError
from .lobachevsky import lobachevsky
from .octahedron import SLOT_ORDER, PLUS_SLOTS, bar_solution, solve_holonomy, tet_volume
from .tetra import (
    SWAP_AB_PAIRS,
    SWAP_BC_PAIRS,
    TetAngles,
    TetraKind,
    classify,
    relabel,
    tetra_symmetries,
)

__all__ = [
    "Decomposition",
    "HalfDecomposition",
    "HalfPiece",
    "LPiece",
    "OrbitResult",
    "REGGE_B_IMAGE_RELABEL",
    "ReggeTransform",
    "ScissorsReport",
    "canonical_angle",
    "decompose",
    "halve",
    "permute_for_regge_b",
    "regge",
    "regge_orbit",
    "s_value",
    "verify_scissors",
]

_PI = math.pi

O_SIDE = "O"
DUAL_SIDE = "O'"

#: Vertex relabeling of the R_b image that aligns its default octahedron
#: construction with the permuted construction of the source: the crossed
#: (A,A') <-> (C,C') pair swap sending (A,B,C,A',B',C') to (C',B,A',C,B',A).
REGGE_B_IMAGE_RELABEL = (2, 1, 0, 3)

#: Conjugating relabel that turns each transform into the b-transform.
PAIR_CONJUGATION = {"a": SWAP_AB_PAIRS, "b": None, "c": SWAP_BC_PAIRS}

#: Canonical angles closer to zero than this are null pieces.
NULL_PIECE_TOL = 1e-12


def s_value(t: TetAngles, which: str) -> float:
    """The half-sum s_a, s_b, or s_c of the four angles moved by the transform."""
    if which == "a":
        return (t.B + t.C + t.Bp + t.Cp) / 2
    if which == "b":
        return (t.A + t.C + t.Ap + t.Cp) / 2
    if which == "c":
        return (t.A + t.B + t.Ap + t.Bp) / 2
    raise GeometryDomainError(f"transform must be one of 'a', 'b', 'c', got {which!r}")


def regge(t: TetAngles, which: str) -> TetAngles:
    """Apply one Regge transform.  Total affine involution; validity of the
    output is a separate question answered by classify()."""
    s = s_value(t, which)
    if which == "a":
        return TetAngles(t.A, s - t.B, s - t.C, t.Ap, s - t.Bp, s - t.Cp)
    if which == "b":
        return TetAngles(s - t.A, t.B, s - t.C, s - t.Ap, t.Bp, s - t.Cp)
    return TetAngles(s - t.A, s - t.B, t.C, s - t.Ap, s - t.Bp, t.Cp)


@dataclass(frozen=True)
class ReggeTransform:
    """One of the three generating transforms, as a value object."""

    which: str

    def __post_init__(self):
        if self.which not in ("a", "b", "c"):
            raise GeometryDomainError(f"transform must be 'a', 'b' or 'c', got {self.which!r}")

    def s(self, t: TetAngles) -> float:
        return s_value(t, self.which)

    def apply(self, t: TetAngles) -> TetAngles:
        return regge(t, self.which)


def canonical_angle(x: float) -> float:
    """Reduce a Lobachevsky argument mod pi into (-pi/2, pi/2].

    The piece with canonical angle theta has signed volume lob(theta);
    printed minus signs are folded in through oddness before calling this.
    Values within NULL_PIECE_TOL of zero collapse to exactly 0.0.
    """
    r = x - _PI * math.floor(x / _PI + 0.5)
    if r <= -_PI / 2:
        r += _PI
    if abs(r) < NULL_PIECE_TOL:
        return 0.0
    return r


@dataclass(frozen=True)
class LPiece:
    """Half of an isosceles ideal tetrahedron with apex angle 2*theta.

    The signed volume is lob(canonical_angle); raw_angle keeps the slot
    expression before reduction (sign already folded for dual pieces).
    """

    side: str  # O_SIDE or DUAL_SIDE
    slot: str  # one of SLOT_ORDER
    raw_angle: float
    canonical_angle: float

    @property
    def signed_volume(self) -> float:
        return lobachevsky(self.canonical_angle)

    @property
    def is_null(self) -> bool:
        return self.canonical_angle == 0.0


@dataclass(frozen=True)
class Decomposition:
    """The sixteen-piece decomposition of two copies of the source tetrahedron."""

    pieces: tuple[LPiece, ...]
    source: TetAngles
    source_kind: TetraKind
    firepole: str = "AA'"
    mirrored: bool = False

    def canonical_angles(self) -> np.ndarray:
        return np.array([p.canonical_angle for p in self.pieces])

    def total_volume(self) -> float:
        return float(sum(p.signed_volume for p in self.pieces))

    def piece(self, side: str, slot: str) -> LPiece:
        for p in self.pieces:
            if p.side == side and p.slot == slot:
                return p
        raise KeyError((side, slot))


@dataclass(frozen=True)
class HalfPiece:
    side: str
    slot: str
    half: int  # 0 or 1
    canonical_angle: float

    @property
    def signed_volume(self) -> float:
        return lobachevsky(self.canonical_angle) / 2.0


@dataclass(frozen=True)
class HalfDecomposition:
    """Dupont halving: each of the 16 pieces split along its symmetry plane
    into two congruent halves.  The 32 halves fall into two congruent
    16-half families (half index 0 and 1); either family reassembles one
    copy of the source tetrahedron, so each family sums to V and the whole
    collection still sums to 2V."""

    pieces: tuple[HalfPiece, ...]
    source: TetAngles

    def canonical_angles(self) -> np.ndarray:
        return np.array([p.canonical_angle for p in self.pieces])

    def total_volume(self) -> float:
        return float(sum(p.signed_volume for p in self.pieces))

    def copy_volume(self, half: int) -> float:
        """Signed volume of one congruent 16-half family (equals V)."""
        if half not in (0, 1):
            raise GeometryDomainError("half must be 0 or 1")
        return float(sum(p.signed_volume for p in self.pieces if p.half == half))


def decompose(t: TetAngles) -> Decomposition:
    """Decompose 2T into sixteen signed pieces (firepole on the (A,A') pair).

    Finite sources are the main case; Ideal sources are accepted (the kind
    is recorded so callers can see the degeneracy); Hyperideal and Invalid
    raise.
    """
    kind = classify(t).kind
    if kind not in (TetraKind.FINITE, TetraKind.IDEAL):
        raise GeometryDomainError(f"decompose requires a Finite or Ideal tetrahedron, got {kind.value}")
    bars = bar_solution(t)
    roots = solve_holonomy(t, bars)
    pieces = []
    for slot in SLOT_ORDER:
        sign = 1.0 if slot in PLUS_SLOTS else -1.0
        raw = getattr(bars, slot) + sign * roots.Z_minus
        pieces.append(LPiece(O_SIDE, slot, raw, canonical_angle(raw)))
    for slot in SLOT_ORDER:
        sign = 1.0 if slot in PLUS_SLOTS else -1.0
        raw = -(getattr(bars, slot) + sign * roots.Z_plus)
        pieces.append(LPiece(DUAL_SIDE, slot, raw, canonical_angle(raw)))
    return Decomposition(tuple(pieces), t, kind)


def permute_for_regge_b(d: Decomposition) -> Decomposition:
    """The congruence move: exchange the BA and DC pieces on both octahedra,
    then mirror.  The mirror is an isometry of every piece (each L(theta) is
    bilaterally symmetric), so only the flag changes; the piece multiset is
    exactly preserved."""
    if d.firepole != "AA'":
        raise GeometryDomainError(f"the b-move needs the AA' firepole, got {d.firepole!r}")
    by_key = {(p.side, p.slot): p for p in d.pieces}
    swapped = []
    for p in d.pieces:
        if p.slot in ("BA", "DC"):
            other = by_key[(p.side, "DC" if p.slot == "BA" else "BA")]
            swapped.append(replace(other, slot=p.slot))
        else:
            swapped.append(p)
    return replace(d, pieces=tuple(swapped), mirrored=not d.mirrored)


def halve(d: Decomposition) -> HalfDecomposition:
    """Split every piece along its symmetry plane into two congruent halves."""
    halves = []
    for p in d.pieces:
        for k in (0, 1):
            halves.append(HalfPiece(p.side, p.slot, k, p.canonical_angle))
    return HalfDecomposition(tuple(halves), d.source)


@dataclass(frozen=True)
class ScissorsReport:
    """Outcome of one scissors-congruence check.

    slot_gap is the worst per-slot canonical-angle difference between the
    permuted source decomposition and the aligned image decomposition;
    multiset_gap is the worst gap after sort-and-pair matching, and
    slot_permutation records the matching found (identity when the slot-level
    check already passes).
    """

    which: str
    passed: bool
    volume_gap: float
    multiset_gap: float
    slot_gap: float
    slot_permutation: tuple[int, ...]
    conjugation: tuple[int, ...] | None
    tol_volume: float
    tol_match: float
    volume: float
    volume_image: float
    transformed: TetAngles
    failure: str | None = None

    def to_payload(self) -> dict:
        return {
            "which": self.which,
            "passed": self.passed,
            "volume_gap": self.volume_gap,
            "multiset_gap": self.multiset_gap,
            "slot_gap": self.slot_gap,
            "slot_permutation": list(self.slot_permutation),
            "conjugation": list(self.conjugation) if self.conjugation else None,
            "tol_volume": self.tol_volume,
            "tol_match": self.tol_match,
            "volume": self.volume,
            "volume_image": self.volume_image,
            "transformed_angles": list(self.transformed.as_tuple()),
            "failure": self.failure,
        }


def _match_permutation(target: np.ndarray, values: np.ndarray) -> tuple[int, ...]:
    """Sort-and-pair matching; ties broken by slot order."""
    order_t = np.argsort(target, kind="stable")
    order_v = np.argsort(values, kind="stable")
    perm = [0] * len(values)
    for a, b in zip(order_v, order_t):
        perm[int(a)] = int(b)
    return tuple(perm)


def verify_scissors(t: TetAngles, which: str,
                    tol_volume: float = 1e-9, tol_match: float = 1e-9) -> ScissorsReport:
    """Check numerically that 2T and 2R(T) decompose into the same pieces.

    For which='b' the check is direct; 'a' and 'c' are conjugated through
    the corresponding pair swap first.  Invalid or degenerate configurations
    produce a failed report rather than an exception.
    """
    if which not in ("a", "b", "c"):
        raise GeometryDomainError(f"transform must be 'a', 'b' or 'c', got {which!r}")
    conj = PAIR_CONJUGATION[which]
    transformed = regge(t, which)

    def failed(reason: str) -> ScissorsReport:
        return ScissorsReport(
            which=which, passed=False, volume_gap=math.inf, multiset_gap=math.inf,
            slot_gap=math.inf, slot_permutation=(), conjugation=conj,
            tol_volume=tol_volume, tol_match=tol_match, volume=math.nan,
            volume_image=math.nan, transformed=transformed, failure=reason,
        )

    t0 = relabel(t, conj) if conj else t
    image = regge(t0, "b")
    kind_t = classify(t0).kind
    kind_i = classify(image).kind
    if kind_t is not TetraKind.FINITE:
        return failed(f"source tetrahedron is {kind_t.value}, not Finite")
    if kind_i is not TetraKind.FINITE:
        return failed(f"transform image is {kind_i.value}, not Finite")
    try:
        moved = permute_for_regge_b(decompose(t0))
        aligned = decompose(relabel(image, REGGE_B_IMAGE_RELABEL))
        v_src = tet_volume(t0)
        v_img = tet_volume(image)
    except (DegenerateSystemError, NonUnitRootError) as exc:
        return failed(f"angle system degenerate: {exc}")

    c_moved = moved.canonical_angles()
    c_image = aligned.canonical_angles()
    slot_gap = float(np.max(np.abs(c_moved - c_image)))
    multiset_gap = float(np.max(np.abs(np.sort(c_moved) - np.sort(c_image))))
    if slot_gap <= tol_match:
        permutation = tuple(range(16))
    else:
        # fall back to reporting the discovered sort-and-pair matching
        permutation = _match_permutation(c_image, c_moved)
    volume_gap = abs(v_src - v_img)
    passed = volume_gap <= tol_volume and multiset_gap <= tol_match
    return ScissorsReport(
        which=which, passed=passed, volume_gap=volume_gap,
        multiset_gap=multiset_gap, slot_gap=slot_gap,
        slot_permutation=permutation, conjugation=conj,
        tol_volume=tol_volume, tol_match=tol_match,
        volume=v_src, volume_image=v_img, transformed=transformed,
    )


@dataclass(frozen=True)
class OrbitResult:
    members: tuple[TetAngles, ...]
    volumes: tuple[float, ...]
    truncated: bool


def _equivalent(t1: TetAngles, t2: TetAngles, tol: float = 1e-10) -> bool:
    a2 = np.array(t2.as_tuple())
    for sigma in tetra_symmetries():
        if np.max(np.abs(np.array(relabel(t1, sigma).as_tuple()) - a2)) < tol:
            return True
    return False


def regge_orbit(t: TetAngles, max_size: int = 64) -> OrbitResult:
    """Closure of {t} under the three transforms, deduplicated up to
    relabeling symmetry; truncated (with a flag) at max_size members."""
    if max_size < 1:
        raise GeometryDomainError("max_size must be at least 1")
    members: list[TetAngles] = [t]
    frontier = [t]
    truncated = False
    while frontier:
        nxt = []
        for cur in frontier:
            for which in ("a", "b", "c"):
                img = regge(cur, which)
                if any(_equivalent(img, m) for m in members):
                    continue
                if len(members) >= max_size:
                    truncated = True
                    break
                members.append(img)
                nxt.append(img)
            if truncated:
                break
        if truncated:
            break
        frontier = nxt
    volumes = []
    for m in members:
        kind = classify(m).kind
        volumes.append(tet_volume(m) if kind in (TetraKind.FINITE, TetraKind.IDEAL) else math.nan)
    return OrbitResult(tuple(members), tuple(volumes), truncated)
