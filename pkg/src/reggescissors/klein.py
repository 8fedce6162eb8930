"""Coordinate oracle: Klein-model realization, direct volume quadrature, and
the Schlafli differential check.

Everything here is independent of the Lobachevsky-sum volume formulas: a
tetrahedron is realized from its Gram matrix inside the projective ball
model, its volume is integrated numerically against the hyperbolic volume
element dV = dx dy dz / (1 - |x|^2)^2, and the derivative of the formula
volume is compared against edge lengths through dV = -1/2 sum l_i d(theta_i).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import GeometryDomainError, QuadratureError
from .octahedron import tet_volume
from .tetra import (
    TetAngles,
    TetraKind,
    classify,
    edge_lengths,
    gram_matrix,
    prime_angles,
)

__all__ = [
    "KleinTetra",
    "apply_isometry",
    "dihedral_angles",
    "klein_vertices",
    "lorentz_boost",
    "schlafli_residual",
    "three_quarter_volume_numeric",
    "volume_numeric",
]

_MINK = np.diag([1.0, 1.0, 1.0, -1.0])
_ROUND_TRIP_TOL = 1e-8

# edge label -> vertex pair, matching the conventions in tetra.py
_EDGE_OF = {"A": (0, 1), "B": (0, 2), "C": (0, 3), "Ap": (2, 3), "Bp": (1, 3), "Cp": (1, 2)}


@dataclass(frozen=True)
class KleinTetra:
    """Four Klein-ball vertex coordinates realizing a finite tetrahedron."""

    vertices: np.ndarray  # shape (4, 3), all |v| < 1
    source: TetAngles | None = None

    def radii(self) -> np.ndarray:
        return np.linalg.norm(self.vertices, axis=1)


def _hyperboloid_lift(klein_pts: np.ndarray) -> np.ndarray:
    t = 1.0 / np.sqrt(1.0 - np.sum(klein_pts**2, axis=1))
    return np.hstack([klein_pts * t[:, None], t[:, None]])


def _face_normals(lift: np.ndarray) -> np.ndarray:
    """Outward unit spacelike normals; row i is the face opposite vertex i."""
    normals = []
    for i in range(4):
        others = [j for j in range(4) if j != i]
        system = (_MINK @ lift[others].T).T
        _, _, vt = np.linalg.svd(system)
        n = vt[-1]
        norm2 = n @ _MINK @ n
        if norm2 <= 0:
            raise GeometryDomainError("degenerate face: normal is not spacelike")
        n = n / math.sqrt(norm2)
        if n @ _MINK @ lift[i] > 0:
            n = -n
        normals.append(n)
    return np.array(normals)


def dihedral_angles(kt: KleinTetra) -> TetAngles:
    """Recompute the six dihedral angles from coordinates."""
    lift = _hyperboloid_lift(np.asarray(kt.vertices, dtype=float))
    normals = _face_normals(lift)

    def ang(i: int, j: int) -> float:
        c = -(normals[i] @ _MINK @ normals[j])
        return math.acos(max(-1.0, min(1.0, c)))

    # the edge joining vertices i, j is shared by the two other faces
    vals = {}
    for name, (i, j) in _EDGE_OF.items():
        k, l = (m for m in range(4) if m not in (i, j))
        vals[name] = ang(k, l)
    return TetAngles(**vals)


def _gauge_fix(lift: np.ndarray) -> np.ndarray:
    """Minkowski Gram-Schmidt: vertex 0 to the origin, vertex 1 onto +x,
    vertex 2 into the upper xy half-plane.  Deterministic."""
    u0 = lift[0]

    def perp(x):
        return x + (x @ _MINK @ u0) * u0

    basis = []
    for cand in (lift[1], lift[2], lift[3]):
        v = perp(cand)
        for e in basis:
            v = v - (v @ _MINK @ e) * e
        norm2 = v @ _MINK @ v
        if norm2 <= 1e-14:
            raise GeometryDomainError("degenerate vertex configuration")
        basis.append(v / math.sqrt(norm2))
    rows = np.vstack([basis[0], basis[1], basis[2], -u0])  # -u0: <x,u0> has the wrong sign
    new = (rows @ _MINK @ lift.T).T
    new[:, 3] = np.abs(new[:, 3])
    return new


def klein_vertices(t: TetAngles) -> KleinTetra:
    """Realize a Finite tetrahedron in the Klein ball from its Gram matrix.

    The Gram matrix is factored through its (3,1) eigendecomposition into
    face normals, the vertices are the Minkowski-orthogonal complements of
    each normal triple, and the gauge is fixed by vertex order.  The
    realization is verified by recomputing the angles (round-trip < 1e-8).
    """
    cls = classify(t)
    if cls.kind is not TetraKind.FINITE:
        raise GeometryDomainError(f"Klein realization requires a Finite tetrahedron (got {cls.kind.value})")
    G = gram_matrix(t)
    lam, P = np.linalg.eigh(G)
    order = [1, 2, 3, 0]  # three positive eigenvalues first, negative last
    lam, P = lam[order], P[:, order]
    normals = np.diag(np.sqrt(np.abs(lam))) @ P.T  # columns: normals with N^T M N = G
    verts = []
    for k in range(4):
        others = [i for i in range(4) if i != k]
        system = (_MINK @ normals[:, others]).T
        _, _, vt = np.linalg.svd(system)
        v = vt[-1]
        q = v @ _MINK @ v
        if q >= 0:
            raise GeometryDomainError("vertex is not timelike; realization failed")
        v = v / math.sqrt(-q)
        if v[3] < 0:
            v = -v
        verts.append(v)
    lift = _gauge_fix(np.array(verts))
    klein = lift[:, :3] / lift[:, 3:4]
    kt = KleinTetra(vertices=klein, source=t)
    back = dihedral_angles(kt)
    err = max(abs(a - b) for a, b in zip(t.as_tuple(), back.as_tuple()))
    if err > _ROUND_TRIP_TOL:
        raise ArithmeticError(f"realization round-trip error {err:.3e} exceeds {_ROUND_TRIP_TOL}")
    return kt


# --- isometries -------------------------------------------------------------


def lorentz_boost(rapidity: float, axis: int = 0) -> np.ndarray:
    """Pure boost along a coordinate axis of the hyperboloid model."""
    if axis not in (0, 1, 2):
        raise GeometryDomainError("axis must be 0, 1 or 2")
    L = np.eye(4)
    c, s = math.cosh(rapidity), math.sinh(rapidity)
    L[axis, axis] = c
    L[3, 3] = c
    L[axis, 3] = L[3, axis] = s
    return L


def apply_isometry(kt: KleinTetra, L: np.ndarray) -> KleinTetra:
    """Apply a Lorentz matrix to the realization (volume must be invariant)."""
    L = np.asarray(L, dtype=float)
    if np.max(np.abs(L.T @ _MINK @ L - _MINK)) > 1e-9:
        raise GeometryDomainError("matrix is not a Lorentz isometry")
    lift = _hyperboloid_lift(np.asarray(kt.vertices, dtype=float)) @ L.T
    if np.any(lift[:, 3] <= 0):
        lift = -lift
    return KleinTetra(vertices=lift[:, :3] / lift[:, 3:4], source=kt.source)


# --- deterministic adaptive volume quadrature -------------------------------

_GL_N = 4
_glx, _glw = np.polynomial.legendre.leggauss(_GL_N)
_glx = (_glx + 1.0) / 2.0
_glw = _glw / 2.0
_U, _V, _W = np.meshgrid(_glx, _glx, _glx, indexing="ij")
# collapsed-cube (Duffy) map of [0,1]^3 onto the unit simplex
_RULE_WTS = (np.einsum("i,j,k->ijk", _glw, _glw, _glw) * (1 - _U) ** 2 * (1 - _V)).ravel()
_RULE_BARY = np.stack(
    [_U.ravel(), (_V * (1 - _U)).ravel(), (_W * (1 - _U) * (1 - _V)).ravel()], axis=1
)


def _rule_batch(verts: np.ndarray) -> np.ndarray:
    """Fixed-order quadrature of the hyperbolic volume element over a batch
    of Euclidean tetrahedra, shape (m, 4, 3) -> (m,)."""
    v0 = verts[:, 0, :]
    edges = verts[:, 1:, :] - v0[:, None, :]
    det = np.abs(np.linalg.det(edges))
    pts = v0[:, None, :] + np.einsum("nk,mkd->mnd", _RULE_BARY, edges)
    r2 = np.sum(pts**2, axis=2)
    vals = 1.0 / (1.0 - r2) ** 2
    return det * (vals @ _RULE_WTS)


def _split8(v: np.ndarray) -> np.ndarray:
    """Red refinement of one tetrahedron into eight, fixed interior diagonal."""
    m = {(i, j): (v[i] + v[j]) / 2 for i in range(4) for j in range(i + 1, 4)}
    return np.array(
        [
            [v[0], m[(0, 1)], m[(0, 2)], m[(0, 3)]],
            [m[(0, 1)], v[1], m[(1, 2)], m[(1, 3)]],
            [m[(0, 2)], m[(1, 2)], v[2], m[(2, 3)]],
            [m[(0, 3)], m[(1, 3)], m[(2, 3)], v[3]],
            [m[(0, 1)], m[(0, 2)], m[(0, 3)], m[(1, 3)]],
            [m[(0, 1)], m[(0, 2)], m[(1, 2)], m[(1, 3)]],
            [m[(0, 2)], m[(0, 3)], m[(1, 3)], m[(2, 3)]],
            [m[(0, 2)], m[(1, 2)], m[(1, 3)], m[(2, 3)]],
        ]
    )


def volume_numeric(kt: KleinTetra, tol: float = 1e-6, max_refine: int = 60000) -> float:
    """Hyperbolic volume by deterministic adaptive subdivision quadrature.

    Each leaf tetrahedron carries the error estimate |coarse - sum(children)|;
    the worst leaf is split until the total estimate drops below tol/2.
    Raises QuadratureError (with the achieved estimate) when the refinement
    budget runs out first.
    """
    if not tol > 0:
        raise GeometryDomainError("tol must be positive")
    verts = np.asarray(kt.vertices, dtype=float)
    if np.any(np.linalg.norm(verts, axis=1) >= 1.0 - 1e-12):
        raise GeometryDomainError("vertices must lie strictly inside the unit ball")
    heap: list = []
    counter = 0

    def push(tet: np.ndarray, coarse: float):
        nonlocal counter
        children = _split8(tet)
        fine = _rule_batch(children)
        err = abs(coarse - float(fine.sum()))
        heapq.heappush(heap, (-err, counter, children, fine))
        counter += 1

    push(verts, float(_rule_batch(verts[None])[0]))
    while True:
        total_err = sum(-item[0] for item in heap)
        if total_err < tol / 2:
            break
        if counter >= max_refine:
            raise QuadratureError(
                f"volume quadrature: refinement budget exhausted, achieved {total_err:.3e}",
                achieved=total_err,
            )
        _, _, children, fine = heapq.heappop(heap)
        for j in range(8):
            push(children[j], float(fine[j]))
    return float(sum(float(item[3].sum()) for item in heap))


# --- Schlafli differential check --------------------------------------------


def schlafli_residual(t: TetAngles, h: float = 1e-5) -> np.ndarray:
    """|central-difference dV/d(theta_i) + l_i / 2| for all six edges.

    The volume differential of a family of tetrahedra is -1/2 sum l_i
    d(theta_i); with the formula volume on one side and Gram-cofactor edge
    lengths on the other this couples every piece of the pipeline.  If a
    perturbation leaves the Finite class, h is shrunk once before failing.
    """
    if not 1e-7 <= h <= 1e-3:
        raise GeometryDomainError("h must lie in [1e-7, 1e-3]")
    if classify(t).kind is not TetraKind.FINITE:
        raise GeometryDomainError("Schlafli check requires a Finite tetrahedron")

    def try_residuals(step: float) -> np.ndarray | None:
        base = np.array(t.as_tuple())
        lengths = edge_lengths(t)
        out = np.empty(6)
        for i in range(6):
            up, dn = base.copy(), base.copy()
            up[i] += step
            dn[i] -= step
            tu, td = TetAngles.of(up), TetAngles.of(dn)
            if classify(tu).kind is not TetraKind.FINITE or classify(td).kind is not TetraKind.FINITE:
                return None
            deriv = (tet_volume(tu) - tet_volume(td)) / (2 * step)
            out[i] = abs(deriv + lengths[i] / 2)
        return out

    res = try_residuals(h)
    if res is None:
        res = try_residuals(h / 10)
    if res is None:
        raise GeometryDomainError("perturbation leaves the Finite class even after shrinking h")
    return res


# --- 3/4-ideal tetrahedron in the half-space model ---------------------------

_glx64, _glw64 = np.polynomial.legendre.leggauss(64)
_gx64 = (_glx64 + 1.0) / 2.0
_gw64 = _glw64 / 2.0


def _poincare(x: np.ndarray, ideal: bool) -> np.ndarray:
    if ideal:
        return x / np.linalg.norm(x)
    return x / (1.0 + math.sqrt(max(0.0, 1.0 - float(x @ x))))


def _rotation_to(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Rotation matrix sending unit vector a to unit vector b."""
    v = np.cross(a, b)
    c = float(a @ b)
    if np.linalg.norm(v) < 1e-14:
        if c > 0:
            return np.eye(3)
        # pick any axis orthogonal to a
        axis = np.eye(3)[int(np.argmin(np.abs(a)))]
        axis = axis - (axis @ a) * a
        axis /= np.linalg.norm(axis)
        return 2 * np.outer(axis, axis) - np.eye(3)
    vx = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
    return np.eye(3) + vx + vx @ vx / (1 + c)


def _duffy_column_integral(q_sing: np.ndarray, u: np.ndarray, w: np.ndarray,
                           center: np.ndarray, r2: float) -> float:
    """Integral of 1/(2 h^2) over the triangle (q_sing, u, w), h^2 the height
    of the hemisphere (center, r2).  The 1/h^2 blow-up at the rim corner
    q_sing cancels against the collapsed-square Jacobian."""
    S, T = np.meshgrid(_gx64, _gx64, indexing="ij")
    weights = np.outer(_gw64, _gw64)
    e1, e2 = u - q_sing, w - q_sing
    jac = abs(e1[0] * e2[1] - e1[1] * e2[0])
    direction = (1 - T)[..., None] * e1 + T[..., None] * e2
    pts = q_sing + S[..., None] * direction
    h2 = r2 - np.sum((pts - center) ** 2, axis=-1)
    return float(np.sum(weights * (jac * S) / (2.0 * h2)))


def three_quarter_volume_numeric(A: float, B: float, C: float) -> float:
    """Direct volume of the 3/4-ideal tetrahedron with apex angles (A, B, C).

    Realized from its Gram matrix, moved to the half-space model with one
    ideal vertex at infinity; the column over the shadow triangle integrates
    in closed form in the vertical coordinate, leaving a 2-d integral of
    1/(2 h^2) with rim singularities removed by collapsed-square maps.
    Independent of every Lobachevsky-sum formula.
    """
    if A + B + C <= math.pi:
        raise GeometryDomainError("3/4-ideal tetrahedron requires A + B + C > pi")
    p = prime_angles(A, B, C)
    t = TetAngles(A, B, C, p.Aprime, p.Bprime, p.Cprime)
    G = gram_matrix(t)
    lam, P = np.linalg.eigh(G)
    order = [1, 2, 3, 0]
    lam, P = lam[order], P[:, order]
    normals = np.diag(np.sqrt(np.abs(lam))) @ P.T
    verts = []
    for k in range(4):
        others = [i for i in range(4) if i != k]
        system = (_MINK @ normals[:, others]).T
        _, _, vt = np.linalg.svd(system)
        v = vt[-1]
        if v[3] < 0:
            v = -v
        q = v @ _MINK @ v
        if k == 0:
            if q >= -1e-12:
                raise GeometryDomainError("apex vertex is not timelike")
            v = v / math.sqrt(-q)
        else:
            if abs(q) > 1e-7:
                raise ArithmeticError(f"ideal vertex not lightlike (q={q:.2e})")
            v = v / v[3]
        verts.append(v)
    verts = np.array(verts)
    klein = verts[:, :3] / verts[:, 3:4]
    ball = [_poincare(klein[0], False)] + [_poincare(klein[i], True) for i in (1, 2, 3)]
    # send the first ideal vertex to infinity (rotate to -e3, then invert)
    R = _rotation_to(ball[1], np.array([0.0, 0.0, -1.0]))
    e3 = np.array([0.0, 0.0, 1.0])

    def to_half_space(x: np.ndarray) -> np.ndarray:
        y = R @ x
        d = y + e3
        return 2 * d / (d @ d) - e3

    apex = to_half_space(ball[0])
    q1 = to_half_space(ball[2])
    q2 = to_half_space(ball[3])
    if apex[2] <= 0 or max(abs(q1[2]), abs(q2[2])) > 1e-8:
        raise ArithmeticError("half-space transfer failed")
    a2, b2 = q1[:2], q2[:2]
    pxy, height = apex[:2], apex[2]
    # hemisphere through both boundary vertices and the apex
    lhs = np.array([2 * (b2 - a2), 2 * (pxy - a2)])
    rhs = np.array([b2 @ b2 - a2 @ a2, pxy @ pxy + height * height - a2 @ a2])
    center = np.linalg.solve(lhs, rhs)
    r2 = float((a2 - center) @ (a2 - center))
    mid = (a2 + b2) / 2
    return _duffy_column_integral(a2, mid, pxy, center, r2) + _duffy_column_integral(
        b2, pxy, mid, center, r2
    )
