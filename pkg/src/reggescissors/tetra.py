"""Dihedral-angle data for hyperbolic tetrahedra: classification, prisms, symmetries.

Labeling conventions, fixed for the whole package:

* Vertices are numbered 0..3; face i is the face opposite vertex i.
* Opposite edge pairs carry the angle labels
      edge {0,1} -> A     edge {2,3} -> A'
      edge {0,2} -> B     edge {1,3} -> B'
      edge {0,3} -> C     edge {1,2} -> C'
  so vertex 0 meets (A, B, C), vertex 1 meets (A, B', C'),
  vertex 2 meets (A', B, C'), and vertex 3 meets (A', B', C).
* The Gram matrix is indexed by faces, G[i][i] = 1 and
  G[i][j] = -cos(angle on the edge shared by faces i and j); faces i and j
  intersect along the edge joining the two vertices other than i and j.

A tetrahedron with all angles strictly between 0 and pi is *Finite* when G
has signature (3,1) and all four vertex cofactors of G are positive,
*Ideal* when a cofactor vanishes, *Hyperideal* when the signature is right
but a vertex condition is reversed, and *Invalid* otherwise.  Vertex i is
finite exactly when the corresponding dual vector is timelike, i.e. when
the adjugate diagonal entry adj(G)[i][i] is positive (det G < 0 makes the
inverse diagonal negative, which is the timelike condition).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import GeometryDomainError
from .lobachevsky import lobachevsky

__all__ = [
    "IDENTITY_RELABEL",
    "SWAP_AB_PAIRS",
    "SWAP_AC_PAIRS",
    "SWAP_BC_PAIRS",
    "GramMatrix",
    "IdealTetAngles",
    "PrimeAngles",
    "TetAngles",
    "TetraClass",
    "TetraKind",
    "classify",
    "edge_lengths",
    "gram_matrix",
    "angles_from_gram",
    "ideal_volume",
    "prime_angles",
    "prism_volume",
    "prism_volume_by_tetrahedra",
    "relabel",
    "tetra_symmetries",
    "three_quarter_volume",
]

_PI = math.pi

#: Gram signature test tolerance on eigenvalues.
EIGENVALUE_TOL = 1e-10
#: A vertex cofactor this close to zero is classified as an ideal vertex.
IDEAL_COFACTOR_TOL = 1e-8

# angle label -> vertex pair of its edge
_EDGE_OF = {
    "A": (0, 1),
    "B": (0, 2),
    "C": (0, 3),
    "Ap": (2, 3),
    "Bp": (1, 3),
    "Cp": (1, 2),
}
_ANGLE_ORDER = ("A", "B", "C", "Ap", "Bp", "Cp")
_LABEL_OF_EDGE = {edge: name for name, edge in _EDGE_OF.items()}

GramMatrix = np.ndarray  # 4x4 symmetric, unit diagonal; see module docstring


@dataclass(frozen=True)
class TetAngles:
    """Six dihedral angles with the opposite-pair labeling (A,A'), (B,B'), (C,C').

    Construction only requires finite values; validity as a hyperbolic
    tetrahedron is decided by :func:`classify`.
    """

    A: float
    B: float
    C: float
    Ap: float
    Bp: float
    Cp: float

    def __post_init__(self):
        for name in _ANGLE_ORDER:
            if not math.isfinite(getattr(self, name)):
                raise GeometryDomainError(f"angle {name} must be finite")

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.A, self.B, self.C, self.Ap, self.Bp, self.Cp)

    @classmethod
    def of(cls, values) -> "TetAngles":
        vals = tuple(float(v) for v in values)
        if len(vals) != 6:
            raise GeometryDomainError("expected six angles (A, B, C, A', B', C')")
        return cls(*vals)

    def in_range(self) -> bool:
        """True when every angle lies strictly in (0, pi)."""
        return all(0.0 < x < _PI for x in self.as_tuple())


@dataclass(frozen=True)
class PrimeAngles:
    Aprime: float
    Bprime: float
    Cprime: float

    def as_tuple(self):
        return (self.Aprime, self.Bprime, self.Cprime)


@dataclass(frozen=True)
class IdealTetAngles:
    """Dihedral angles of an ideal tetrahedron; opposite edges share an angle."""

    alpha: float
    beta: float
    gamma: float

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma)


class TetraKind(Enum):
    FINITE = "Finite"
    IDEAL = "Ideal"
    HYPERIDEAL = "Hyperideal"
    INVALID = "Invalid"


@dataclass(frozen=True)
class TetraClass:
    kind: TetraKind
    det: float
    vertex_cofactors: tuple[float, float, float, float]
    eigenvalues: tuple[float, float, float, float]


def prime_angles(A: float, B: float, C: float) -> PrimeAngles:
    """Angles on the far edges of the prism over a vertex with angles (A, B, C).

    Each ideal vertex forces its three dihedral angles to sum to pi, which
    pins the primes as exact affine combinations.
    """
    return PrimeAngles(
        (_PI + A - B - C) / 2,
        (_PI + B - A - C) / 2,
        (_PI + C - A - B) / 2,
    )


def ideal_volume(t: IdealTetAngles) -> float:
    """Volume of an ideal tetrahedron: lob(alpha) + lob(beta) + lob(gamma).

    Angles may be negative (signed pieces of a non-convex object); only the
    angle sum pi is required.
    """
    a, b, c = t.as_tuple()
    if abs(a + b + c - _PI) > 1e-9:
        raise GeometryDomainError(
            f"ideal tetrahedron angles must sum to pi (got {a + b + c:.12f})"
        )
    return float(lobachevsky(a) + lobachevsky(b) + lobachevsky(c))


def prism_volume(A: float, B: float, C: float) -> float:
    """Volume of the doubled 3/4-ideal solid over apex angles (A, B, C).

    For A+B+C < pi this is the convex ideal prism; for A+B+C > pi it is the
    point-symmetric non-convex continuation, twice the 3/4-ideal tetrahedron.
    Both regimes share one formula.
    """
    p = prime_angles(A, B, C)
    terms = [A, p.Aprime, B, p.Bprime, C, p.Cprime]
    return float(sum(lobachevsky(x) for x in terms) - lobachevsky((_PI + A + B + C) / 2))


def prism_volume_by_tetrahedra(A: float, B: float, C: float) -> float:
    """The same volume assembled from the three-tetrahedron triangulation.

    Independent regrouping used as an internal consistency check against
    :func:`prism_volume`: the prism splits into ideal tetrahedra with angle
    triples (A', B', C), (A, B', C') and (C'-C, B, pi-B'), the last one
    signed in the non-convex regime.
    """
    p = prime_angles(A, B, C)
    t1 = IdealTetAngles(p.Aprime, p.Bprime, C)
    t2 = IdealTetAngles(A, p.Bprime, p.Cprime)
    t3 = IdealTetAngles(p.Cprime - C, B, _PI - p.Bprime)
    return ideal_volume(t1) + ideal_volume(t2) + ideal_volume(t3)


def three_quarter_volume(A: float, B: float, C: float) -> float:
    """Volume of the 3/4-ideal tetrahedron with finite-apex angles (A, B, C)."""
    if A + B + C <= _PI:
        raise GeometryDomainError(
            "3/4-ideal tetrahedron requires A + B + C > pi (finite apex)"
        )
    return prism_volume(A, B, C) / 2.0


def gram_matrix(t: TetAngles) -> GramMatrix:
    """Gram matrix of face normals; see the module docstring for conventions."""
    G = np.eye(4)
    angles = dict(zip(_ANGLE_ORDER, t.as_tuple()))
    for name, (i, j) in _EDGE_OF.items():
        k, l = (m for m in range(4) if m not in (i, j))
        G[k, l] = G[l, k] = -math.cos(angles[name])
    return G


def angles_from_gram(G: GramMatrix) -> TetAngles:
    """Invert :func:`gram_matrix` (exact arccos round trip)."""
    vals = {}
    for name, (i, j) in _EDGE_OF.items():
        k, l = (m for m in range(4) if m not in (i, j))
        vals[name] = math.acos(float(np.clip(-G[k, l], -1.0, 1.0)))
    return TetAngles(**vals)


def classify(t: TetAngles) -> TetraClass:
    """Classify the angle data as Finite / Ideal / Hyperideal / Invalid."""
    G = gram_matrix(t)
    eig = np.linalg.eigvalsh(G)
    det = float(np.prod(eig))
    # adjugate diagonal = vertex cofactors (det * inverse diagonal)
    try:
        cof = tuple(float(x) for x in np.diag(det * np.linalg.inv(G)))
    except np.linalg.LinAlgError:
        cof = tuple(float(np.linalg.det(np.delete(np.delete(G, i, 0), i, 1))) for i in range(4))
    result = TetraClass(TetraKind.INVALID, det, cof, tuple(float(x) for x in eig))
    if not t.in_range():
        return result
    signature_31 = eig[0] < -EIGENVALUE_TOL and eig[1] > EIGENVALUE_TOL
    if not signature_31:
        return result
    if all(c > IDEAL_COFACTOR_TOL for c in cof):
        kind = TetraKind.FINITE
    elif any(abs(c) <= IDEAL_COFACTOR_TOL for c in cof):
        kind = TetraKind.IDEAL
    else:
        kind = TetraKind.HYPERIDEAL
    return TetraClass(kind, det, cof, tuple(float(x) for x in eig))


def edge_lengths(t: TetAngles) -> tuple[float, float, float, float, float, float]:
    """Edge lengths (A, B, C, A', B', C' order) of a Finite tetrahedron.

    cosh(len of edge {i,j}) = adj(G)[i][j] / sqrt(adj(G)[i][i] adj(G)[j][j]).
    Non-finite tetrahedra (infinite or undefined lengths) raise.
    """
    cls = classify(t)
    if cls.kind is not TetraKind.FINITE:
        raise GeometryDomainError(f"edge lengths require a Finite tetrahedron (got {cls.kind.value})")
    G = gram_matrix(t)
    adj = np.linalg.det(G) * np.linalg.inv(G)
    out = []
    for name in _ANGLE_ORDER:
        i, j = _EDGE_OF[name]
        out.append(math.acosh(adj[i, j] / math.sqrt(adj[i, i] * adj[j, j])))
    return tuple(out)


# --- tetrahedral relabeling symmetries ------------------------------------

IDENTITY_RELABEL = (0, 1, 2, 3)
#: Exchanges the roles of the (A, A') and (B, B') edge pairs.
SWAP_AB_PAIRS = (0, 2, 1, 3)
#: Exchanges the roles of the (B, B') and (C, C') edge pairs.
SWAP_BC_PAIRS = (0, 1, 3, 2)
#: Exchanges the roles of the (A, A') and (C, C') edge pairs.
SWAP_AC_PAIRS = (0, 3, 2, 1)


def tetra_symmetries() -> list[tuple[int, int, int, int]]:
    """All 24 vertex permutations, i.e. all relabeling symmetries."""
    return list(itertools.permutations(range(4)))


def relabel(t: TetAngles, sigma) -> TetAngles:
    """Relabel angles by a vertex permutation: new angle at edge e is the old
    angle at edge sigma(e).  A bijection; relabel(relabel(t, s), s^-1) == t.
    """
    sigma = tuple(sigma)
    if sorted(sigma) != [0, 1, 2, 3]:
        raise GeometryDomainError(f"not a vertex permutation: {sigma!r}")
    angles = dict(zip(_ANGLE_ORDER, t.as_tuple()))
    new = {}
    for name, (i, j) in _EDGE_OF.items():
        image = tuple(sorted((sigma[i], sigma[j])))
        new[name] = angles[_LABEL_OF_EDGE[image]]
    return TetAngles(**new)
