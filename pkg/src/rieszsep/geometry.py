"""Point configurations on the unit sphere S^d in R^(d+1)."""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DomainError

__all__ = [
    "Configuration",
    "SeparationRecord",
    "chordal_distance",
    "exterior_radius",
    "min_separation",
    "near_duplicates",
    "pairwise_distances",
    "random_uniform",
    "roots_of_unity",
    "scale_to_radius",
]

NORM_TOL = 1e-12
DUPLICATE_TOL = 1e-12


def pairwise_distances(points):
    """Full (N, N) matrix of chordal distances, computed from differences."""
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def near_duplicates(points, tol=DUPLICATE_TOL):
    """Index pairs ``(i, j)``, ``i < j``, closer than ``tol``.

    Sorting on the first coordinate limits the distance checks to pairs whose
    first coordinates already agree within ``tol``, so large sets stay cheap.
    """
    order = np.argsort(points[:, 0], kind="stable")
    xs = points[order, 0]
    found = []
    for gap in range(1, len(xs)):
        cand = np.nonzero(xs[gap:] - xs[:-gap] <= tol)[0]
        if cand.size == 0:
            break
        a, b = order[cand], order[cand + gap]
        close = np.linalg.norm(points[a] - points[b], axis=1) <= tol
        found.extend(zip(np.minimum(a, b)[close].tolist(), np.maximum(a, b)[close].tolist()))
    return sorted(found)


@dataclass(frozen=True, eq=False)
class Configuration:
    """N distinct unit vectors in R^(d+1), stored as a read-only (N, d+1) array."""

    points: np.ndarray
    dim_d: int = field(default=None)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float, copy=True)
        if pts.ndim != 2 or pts.shape[0] < 2 or pts.shape[1] < 2:
            raise ConfigurationError(
                f"need an (N, d+1) array with N >= 2, d >= 1; got shape {pts.shape}")
        d = pts.shape[1] - 1
        if self.dim_d is not None and self.dim_d != d:
            raise ConfigurationError(f"points live in R^{pts.shape[1]}, not on S^{self.dim_d}")
        if not np.all(np.isfinite(pts)):
            raise ConfigurationError("non-finite coordinates")
        off = np.abs(np.linalg.norm(pts, axis=1) - 1.0)
        if off.max() > NORM_TOL:
            i = int(off.argmax())
            raise ConfigurationError(f"point {i} is off the sphere by {off[i]:.3e}")
        dup = near_duplicates(pts)
        if dup:
            raise ConfigurationError(f"points {dup[0][0]} and {dup[0][1]} coincide")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dim_d", d)

    @classmethod
    def from_array(cls, points, renormalize=True):
        """Build from raw coordinates, optionally projecting rows onto the sphere."""
        pts = np.asarray(points, dtype=float)
        if renormalize:
            pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
        return cls(pts)

    @property
    def n(self):
        return self.points.shape[0]

    def __len__(self):
        return self.n

    def rotated(self, q):
        """Image under an orthogonal map ``q`` of shape (d+1, d+1)."""
        return Configuration.from_array(self.points @ np.asarray(q).T)


@dataclass(frozen=True)
class SeparationRecord:
    n: int
    min_distance: float
    pair: tuple
    scaled: float


def chordal_distance(x, y):
    """Euclidean distance between two points of equal dimension."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DomainError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(np.linalg.norm(x - y))


def min_separation(c):
    """Smallest pairwise distance, its pair (lexicographically first on ties)
    and the value scaled by ``N^(1/d)``."""
    dist = pairwise_distances(c.points)
    iu, ju = np.triu_indices(c.n, k=1)
    flat = dist[iu, ju]
    k = int(np.argmin(flat))  # first hit in row-major order = smallest (i, j)
    m = float(flat[k])
    return SeparationRecord(
        n=c.n,
        min_distance=m,
        pair=(int(iu[k]), int(ju[k])),
        scaled=m * c.n ** (1.0 / c.dim_d),
    )


def roots_of_unity(n, phase=0.0):
    """The n-th roots of unity on S^1, optionally rotated by ``phase``."""
    if n < 2:
        raise DomainError("roots_of_unity needs n >= 2")
    theta = phase + 2.0 * np.pi * np.arange(n) / n
    return Configuration(np.column_stack([np.cos(theta), np.sin(theta)]))


def _gaussian_directions(rng, n, dim):
    while True:
        g = rng.standard_normal((n, dim))
        norms = np.linalg.norm(g, axis=1)
        if np.all(norms > 0):
            return g / norms[:, None]


def random_uniform(d, n, seed=0):
    """``n`` independent uniform points on S^d (normalized Gaussians)."""
    if d < 1 or n < 2:
        raise DomainError("random_uniform needs d >= 1 and n >= 2")
    rng = np.random.default_rng(seed)
    pts = _gaussian_directions(rng, n, d + 1)
    # redraw the (probability zero) near-duplicates
    while dup := near_duplicates(pts):
        bad = sorted({j for _, j in dup})
        pts[bad] = _gaussian_directions(rng, len(bad), d + 1)
    return Configuration(pts)


def scale_to_radius(x, r):
    """Rescale the nonzero vector ``x`` to Euclidean norm ``r``."""
    x = np.asarray(x, dtype=float)
    nrm = np.linalg.norm(x)
    if nrm == 0.0:
        raise DomainError("cannot rescale the zero vector")
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r!r}")
    return (r / nrm) * x


def exterior_radius(n, d):
    """``1 + n^(-1/d)``, the shell radius used for the exterior field checks."""
    return 1.0 + n ** (-1.0 / d)
