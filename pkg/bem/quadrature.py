"""
Quadrature on flat triangles: symmetric rules for regular panels, panel-pair
classification, and the polar rule used for panel pairs sharing a vertex.
"""

import logging
from dataclasses import dataclass, asdict
from functools import lru_cache
from typing import Any, Dict, NamedTuple, Tuple

import numpy as np
from scipy import sparse
from scipy.spatial import cKDTree

from model.errors import QuadratureConfigError

logger = logging.getLogger(__name__)

MIN_REGULAR_ORDER = 1
MIN_NEAR_ORDER = 2
MIN_SINGULAR_ORDER = 2

# Composite radial rule: pieces shrink by RADIAL_GRADING toward the pole
RADIAL_PIECES = 6
RADIAL_GRADING = 4.0


@dataclass(frozen=True)
class QuadratureSettings:
    """
    regular_order / near_order: polynomial degree of the triangle rule used
    for well separated and for neighbouring panels.
    singular_order: Gauss points per angular variable and per radial piece
    for panels sharing a vertex.
    """
    regular_order: int = 4
    near_order: int = 5
    singular_order: int = 3
    near_factor: float = 3.0
    decay_cutoff: float = 46.0

    def __post_init__(self):
        errors = []
        if self.regular_order < MIN_REGULAR_ORDER:
            errors.append(f"regular_order must be >= {MIN_REGULAR_ORDER}, got {self.regular_order}")
        if self.near_order < MIN_NEAR_ORDER:
            errors.append(f"near_order must be >= {MIN_NEAR_ORDER}, got {self.near_order}")
        if self.singular_order < MIN_SINGULAR_ORDER:
            errors.append(f"singular_order must be >= {MIN_SINGULAR_ORDER}, got {self.singular_order}")
        if self.near_factor < 0:
            errors.append(f"near_factor must be non-negative, got {self.near_factor}")
        if self.decay_cutoff <= 0:
            errors.append(f"decay_cutoff must be positive, got {self.decay_cutoff}")
        if errors:
            raise QuadratureConfigError("; ".join(errors))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'QuadratureSettings':
        return cls(**{k: v for k, v in data.items() if k in cls.__annotations__})

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _readonly(*arrays):
    for array in arrays:
        array.setflags(write=False)
    return arrays


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """n-point Gauss-Legendre nodes and weights on [0, 1]"""
    x, w = np.polynomial.legendre.leggauss(n)
    return _readonly(0.5 * (x + 1.0), 0.5 * w)


def _permutations_of(a: float, b: float) -> np.ndarray:
    return np.array([[a, b, b], [b, a, b], [b, b, a]])


@lru_cache(maxsize=None)
def triangle_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Barycentric points (q, 3) and weights summing to one, exact for
    polynomials of the given degree.
    """
    if order <= 1:
        points = np.array([[1.0, 1.0, 1.0]]) / 3.0
        weights = np.array([1.0])
    elif order == 2:
        points = _permutations_of(2.0 / 3.0, 1.0 / 6.0)
        weights = np.full(3, 1.0 / 3.0)
    elif order <= 4:
        a, b = 0.445948490915965, 0.091576213509771
        points = np.vstack([_permutations_of(1.0 - 2.0 * a, a), _permutations_of(1.0 - 2.0 * b, b)])
        weights = np.concatenate([np.full(3, 0.223381589678011), np.full(3, 0.109951743655322)])
    elif order == 5:
        a, b = 0.470142064105115, 0.101286507323456
        points = np.vstack([
            np.array([[1.0, 1.0, 1.0]]) / 3.0,
            _permutations_of(1.0 - 2.0 * a, a),
            _permutations_of(1.0 - 2.0 * b, b),
        ])
        weights = np.concatenate([[0.225], np.full(3, 0.132394152788506), np.full(3, 0.125939180544827)])
    else:
        # collapsed Gauss-Legendre product rule
        t, w = gauss_legendre((order + 3) // 2)
        u, v = np.meshgrid(t, t, indexing='ij')
        wu, wv = np.meshgrid(w, w, indexing='ij')
        xi, eta = u.ravel(), (v * (1.0 - u)).ravel()
        points = np.stack([1.0 - xi - eta, xi, eta], axis=1)
        weights = 2.0 * (wu * wv * (1.0 - u)).ravel()
    return _readonly(points, weights)


class PairClasses(NamedTuple):
    """Ordered panel pairs by integration class; far pairs are everything else"""
    singular: np.ndarray
    near: np.ndarray
    special: sparse.csr_matrix


def classify_pairs(mesh, settings: QuadratureSettings) -> PairClasses:
    """
    singular: the panels share at least one vertex (including a == b)
    near: centroid distance below near_factor times the larger diameter
    """
    n0 = mesh.n_triangles
    incidence = sparse.csr_matrix(
        (np.ones(3 * n0), (np.repeat(np.arange(n0), 3), mesh.triangles.ravel())),
        shape=(n0, mesh.n_vertices),
    )
    touching = (incidence @ incidence.T).tocoo()
    singular = np.stack([touching.row, touching.col], axis=1).astype(np.int64)

    radius = settings.near_factor * mesh.h_max
    candidates = cKDTree(mesh.centroids).query_pairs(radius, output_type='ndarray')
    if len(candidates):
        a, b = candidates[:, 0], candidates[:, 1]
        distance = np.linalg.norm(mesh.centroids[a] - mesh.centroids[b], axis=1)
        limit = settings.near_factor * np.maximum(mesh.diameters[a], mesh.diameters[b])
        candidates = candidates[distance < limit]
    shares = set(map(tuple, singular.tolist()))
    near = [pair for pair in candidates.tolist() if tuple(pair) not in shares]
    near = np.array(near + [[b, a] for a, b in near], dtype=np.int64).reshape(-1, 2)

    pairs = np.vstack([singular, near])
    special = sparse.csr_matrix(
        (np.ones(len(pairs), dtype=bool), (pairs[:, 0], pairs[:, 1])), shape=(n0, n0)
    )
    logger.debug(f"Panel pairs: {len(singular)} singular, {len(near)} near, "
                 f"{n0 * n0 - len(pairs)} far")
    return PairClasses(singular, near, special)


class PairPoints(NamedTuple):
    """
    Quadrature points for a batch of P panel pairs with Q points each:
    x on the test panel, y on the trial panel, weights w including both
    area elements, and the barycentric coordinates bx, by of x and y.
    """
    x: np.ndarray
    y: np.ndarray
    w: np.ndarray
    bx: np.ndarray
    by: np.ndarray


def product_rule(mesh, a: np.ndarray, b: np.ndarray, order: int) -> PairPoints:
    """Tensor product of the same triangle rule on both panels"""
    bary, weights = triangle_rule(order)
    q = len(weights)
    xa = np.einsum('qk,pkd->pqd', bary, mesh.corners[a])
    yb = np.einsum('qk,pkd->pqd', bary, mesh.corners[b])
    x = np.repeat(xa, q, axis=1)
    y = np.tile(yb, (1, q, 1))
    w = np.outer(weights, weights).ravel()[None, :] * (mesh.areas[a] * mesh.areas[b])[:, None]
    bx = np.broadcast_to(np.repeat(bary, q, axis=0), x.shape)
    by = np.broadcast_to(np.tile(bary, (q, 1)), y.shape)
    return PairPoints(x, y, w, bx, by)


def _barycentric(mesh, panels: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Barycentric coordinates of in-plane points, extended linearly outside the panel"""
    grads = mesh.barycentric_gradients[panels]
    origin = mesh.corners[panels][:, 0]
    offset = points - origin[:, None, :]
    l1 = np.einsum('pqd,pd->pq', offset, grads[:, 1])
    l2 = np.einsum('pqd,pd->pq', offset, grads[:, 2])
    return np.stack([1.0 - l1 - l2, l1, l2], axis=-1)


def _polar_rule(mesh, a: np.ndarray, b: np.ndarray, outer_order: int, n: int) -> PairPoints:
    """
    Outer points x on panel a; the inner integral over panel b is taken in
    polar coordinates about the projection p of x onto the plane of b.
    Panel b is split into the three signed triangles (p, A, B) over its
    edges. The angle is parametrized by xi = asinh(t / d), where d is the
    distance from p to the edge line, so that the edge distance d cosh(xi)
    times the angular Jacobian is constant. The radial rule is composite
    Gauss on pieces graded toward the pole, never finer than the height of
    x above the plane.
    """
    bary, outer_w = triangle_rule(outer_order)
    t, tw = gauss_legendre(n)
    corners_b = mesh.corners[b]
    normal_b = mesh.normals[b]
    scale = mesh.diameters[b]

    x = np.einsum('qk,pkd->pqd', bary, mesh.corners[a])                     # (P, qo, 3)
    wx = outer_w[None, :] * mesh.areas[a][:, None]
    height = np.einsum('pqd,pd->pq', x - corners_b[:, None, 0], normal_b)
    p = x - height[..., None] * normal_b[:, None, :]

    P, qo = wx.shape
    m = RADIAL_PIECES
    ys, ws = [], []
    for edge in range(3):
        A = corners_b[:, edge][:, None, :]
        B = corners_b[:, (edge + 1) % 3][:, None, :]
        length = np.linalg.norm(B - A, axis=-1, keepdims=True)
        e_t = (B - A) / length
        along = np.einsum('pqd,pqd->pq', p - A, np.broadcast_to(e_t, p.shape))
        foot = A + along[..., None] * e_t
        d = np.linalg.norm(foot - p, axis=-1)
        usable = d > 1e-12 * scale[:, None]
        d_safe = np.where(usable, d, scale[:, None])
        e_n = (foot - p) / d_safe[..., None]
        orient = np.einsum('pqd,pd->pq', np.cross(B - A, p - A), normal_b)
        sign = np.where(usable, np.sign(orient), 0.0)

        xi_a = np.arcsinh(-along / d_safe)
        xi_b = np.arcsinh((length[..., 0] - along) / d_safe)
        xi = xi_a[..., None] + (xi_b - xi_a)[..., None] * t                  # (P, qo, n)
        w_xi = (xi_b - xi_a)[..., None] * tw / np.cosh(xi)
        omega = (e_n[:, :, None, :] + np.sinh(xi)[..., None] * e_t[:, :, None, :]) / np.cosh(xi)[..., None]
        rho_max = d_safe[..., None] * np.cosh(xi)                            # (P, qo, n)

        # breakpoints rho_max * G^-j clipped below at the height, plus the pole
        floor = np.minimum(np.abs(height)[..., None], rho_max)
        levels = RADIAL_GRADING ** -np.arange(m)
        stops = np.maximum(rho_max[..., None] * levels, floor[..., None])  # descending
        lo = np.concatenate([stops[..., 1:], np.zeros_like(stops[..., :1])], axis=-1)
        hi = stops
        rho = lo[..., None] + (hi - lo)[..., None] * t                      # (P, qo, n, m, n)
        w_rho = (hi - lo)[..., None] * tw * rho

        y = p[:, :, None, None, None, :] + rho[..., None] * omega[:, :, :, None, None, :]
        w = (wx * sign)[:, :, None, None, None] * w_xi[..., None, None] * w_rho
        ys.append(y.reshape(P, qo, -1, 3))
        ws.append(w.reshape(P, qo, -1))

    y = np.concatenate(ys, axis=2)
    w = np.concatenate(ws, axis=2)
    inner = y.shape[2]
    x_full = np.repeat(x[:, :, None, :], inner, axis=2).reshape(P, -1, 3)
    bx = np.repeat(np.broadcast_to(bary, (P, qo, 3))[:, :, None, :], inner, axis=2).reshape(P, -1, 3)
    y = y.reshape(P, -1, 3)
    by = _barycentric(mesh, b, y)
    return PairPoints(x_full, y, w.reshape(P, -1), bx, by)


def singular_rule(mesh, a: np.ndarray, b: np.ndarray, settings: QuadratureSettings) -> PairPoints:
    """
    Polar rule for pairs sharing a vertex, applied with each panel as the
    outer one and averaged. The averaged point set for (b, a) is the mirror
    of the one for (a, b).
    """
    forward = _polar_rule(mesh, a, b, settings.near_order, settings.singular_order)
    backward = _polar_rule(mesh, b, a, settings.near_order, settings.singular_order)
    return PairPoints(
        np.concatenate([forward.x, backward.y], axis=1),
        np.concatenate([forward.y, backward.x], axis=1),
        0.5 * np.concatenate([forward.w, backward.w], axis=1),
        np.concatenate([forward.bx, backward.by], axis=1),
        np.concatenate([forward.by, backward.bx], axis=1),
    )


def points_per_pair(settings: QuadratureSettings) -> Dict[str, int]:
    q_regular = len(triangle_rule(settings.regular_order)[1])
    q_near = len(triangle_rule(settings.near_order)[1])
    n = settings.singular_order
    return {
        'far': q_regular ** 2,
        'near': q_near ** 2,
        'singular': 2 * q_near * 3 * n * RADIAL_PIECES * n,
    }
