"""Quadrature grids on the sphere and sampled functions living on them.

The colatitude nodes are Gauss-Legendre in cos(theta) and the azimuth is
sampled uniformly.  With the default node counts (L+1 colatitudes,
2L+1 azimuths) the quadrature integrates products of two band-limited
functions of band at most L exactly, up to rounding, which is what the
orthonormality and round-trip checks rely on.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BandLimitExceeded,
    GridMismatch,
    InsufficientNodes,
    SpinWeightMismatch,
)
from .modes import SWMode, NORTH, SOUTH, profile
from .serial import fmt17

_grid_cache = {}


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Product grid: Gauss-Legendre colatitudes x uniform azimuths."""

    band_limit: int
    theta: np.ndarray
    theta_weights: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        for name in ("theta", "theta_weights", "phi"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_theta(self):
        return self.theta.shape[0]

    @property
    def n_phi(self):
        return self.phi.shape[0]

    @property
    def shape(self):
        return (self.n_theta, self.n_phi)

    @property
    def phi_weight(self):
        return 2.0 * np.pi / self.n_phi

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SphereGrid):
            return NotImplemented
        return (
            self.band_limit == other.band_limit
            and np.array_equal(self.theta, other.theta)
            and np.array_equal(self.theta_weights, other.theta_weights)
            and np.array_equal(self.phi, other.phi)
        )

    __hash__ = object.__hash__


def make_grid(band_limit, n_theta=None, n_phi=None):
    """Build (or fetch from cache) the grid for the given band limit."""
    L = int(band_limit)
    if L != band_limit or L < 0:
        raise ValueError(f"band limit must be a nonnegative integer, got {band_limit!r}")
    if n_theta is None:
        n_theta = L + 1
    if n_phi is None:
        n_phi = 2 * L + 1
    n_theta = int(n_theta)
    n_phi = int(n_phi)
    if n_theta < L + 1:
        raise InsufficientNodes(
            f"need at least {L + 1} colatitude nodes for band limit {L}, got {n_theta}"
        )
    if n_phi < 2 * L + 1:
        raise InsufficientNodes(
            f"need at least {2 * L + 1} azimuth nodes for band limit {L}, got {n_phi}"
        )
    key = (L, n_theta, n_phi)
    grid = _grid_cache.get(key)
    if grid is None:
        x, w = np.polynomial.legendre.leggauss(n_theta)
        # leggauss returns x ascending, so arccos is descending; flip to
        # keep theta ascending (north pole side first).
        theta = np.arccos(x)[::-1]
        weights = w[::-1]
        phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
        grid = SphereGrid(L, theta, weights, phi)
        _grid_cache[key] = grid
    return grid


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of one spin-weighted function on a SphereGrid.

    samples has shape (n_theta, n_phi), colatitude varying slowest.  The
    frame tag records which local tangent frame the values refer to;
    gauge rotations update it.
    """

    grid: SphereGrid
    spin_weight: int
    samples: np.ndarray
    frame: str = "spherical"

    def __post_init__(self):
        s = int(self.spin_weight)
        if s != self.spin_weight:
            raise ValueError(f"spin weight must be an integer, got {self.spin_weight!r}")
        object.__setattr__(self, "spin_weight", s)
        arr = np.ascontiguousarray(self.samples, dtype=np.complex128)
        if arr.shape != self.grid.shape:
            raise GridMismatch(
                f"samples shape {arr.shape} does not match grid shape {self.grid.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)


def sample_swsh(grid, mode):
    """Evaluate one basis mode on every grid node."""
    if not isinstance(mode, SWMode):
        mode = SWMode(*mode)
    if mode.j > grid.band_limit:
        raise BandLimitExceeded(
            f"mode j={mode.j} exceeds grid band limit {grid.band_limit}"
        )
    p = profile(mode.s, mode.j, mode.m, grid.theta)
    ph = np.exp(1j * mode.m * grid.phi)
    return GridFunction(grid, mode.s, p[:, None] * ph[None, :])


def inner_product(fa, fb):
    """Quadrature form of integral(conj(fa) * fb) over the sphere."""
    if not (fa.grid is fb.grid or fa.grid == fb.grid):
        raise GridMismatch("functions live on different grids")
    if fa.spin_weight != fb.spin_weight:
        raise SpinWeightMismatch(
            f"spin weights differ: {fa.spin_weight} vs {fb.spin_weight}"
        )
    ring = np.einsum("tp,tp->t", np.conj(fa.samples), fb.samples)
    return complex(np.dot(fa.grid.theta_weights, ring) * fa.grid.phi_weight)


def norm(f):
    return float(np.sqrt(max(inner_product(f, f).real, 0.0)))


def apply_gauge(f, xi):
    """Rotate the tangent frame by angle xi; values pick up exp(i*s*xi)."""
    xi = np.asarray(xi, dtype=np.float64)
    phase = np.exp(1j * f.spin_weight * xi)
    samples = f.samples * np.broadcast_to(phase, f.samples.shape)
    tag = f.frame if f.frame.endswith("+gauge") else f.frame + "+gauge"
    return GridFunction(f.grid, f.spin_weight, samples, frame=tag)


@dataclass(frozen=True, eq=False)
class FrameField:
    """Orthonormal tangent pair (a, b) plus the radial direction on a grid.

    Each field has shape (n_theta, n_phi, 3), Cartesian components last.
    """

    grid: SphereGrid
    a_vec: np.ndarray
    b_vec: np.ndarray
    k_hat: np.ndarray

    def __post_init__(self):
        want = self.grid.shape + (3,)
        for name in ("a_vec", "b_vec", "k_hat"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.float64)
            if arr.shape != want:
                raise GridMismatch(f"{name} shape {arr.shape} != {want}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def standard_frame(grid):
    """Coordinate frame: a along increasing theta, b along increasing phi."""
    th = grid.theta[:, None]
    ph = grid.phi[None, :]
    ct, st = np.cos(th), np.sin(th)
    cp, sp = np.cos(ph), np.sin(ph)
    shape = grid.shape
    a = np.empty(shape + (3,))
    b = np.empty(shape + (3,))
    k = np.empty(shape + (3,))
    a[..., 0] = ct * cp
    a[..., 1] = ct * sp
    a[..., 2] = -st * np.ones_like(ph)
    b[..., 0] = -sp * np.ones_like(th)
    b[..., 1] = cp * np.ones_like(th)
    b[..., 2] = 0.0
    k[..., 0] = st * cp
    k[..., 1] = st * sp
    k[..., 2] = ct * np.ones_like(ph)
    return FrameField(grid, a, b, k)


def gauge_rotate_frame(frame, xi):
    """Rotate (a, b) by xi about k_hat, the same sense apply_gauge assumes."""
    xi = np.asarray(xi, dtype=np.float64)
    c = np.cos(xi)[..., None] if xi.ndim else np.cos(xi)
    s = np.sin(xi)[..., None] if xi.ndim else np.sin(xi)
    a = c * frame.a_vec - s * frame.b_vec
    b = s * frame.a_vec + c * frame.b_vec
    return FrameField(frame.grid, a, b, frame.k_hat)


def frame_residual(frame):
    """Worst deviation from right-handed orthonormality across the grid."""
    a, b, k = frame.a_vec, frame.b_vec, frame.k_hat
    dots = [
        np.einsum("tpi,tpi->tp", a, a) - 1.0,
        np.einsum("tpi,tpi->tp", b, b) - 1.0,
        np.einsum("tpi,tpi->tp", k, k) - 1.0,
        np.einsum("tpi,tpi->tp", a, b),
        np.einsum("tpi,tpi->tp", a, k),
        np.einsum("tpi,tpi->tp", b, k),
    ]
    handed = np.cross(a, b) - k
    vals = [float(np.abs(d).max()) for d in dots]
    vals.append(float(np.abs(handed).max()))
    return max(vals)


def pole_limit_extrapolate(f, pole):
    """Directional limit of f at a pole from its nearest colatitude rings.

    The surviving azimuthal dependence at the pole is a pure phase fixed
    by the spin weight; it is stripped, the three nearest rings are
    averaged, and the ring means are extrapolated to the pole in the
    variable u = 1 -+ cos(theta), which is quadratic in the polar
    distance and makes a three-point fit accurate.  Returns the limit
    and a residual bounding both ring anisotropy and fit inconsistency.
    """
    grid = f.grid
    if grid.n_theta < 3:
        raise InsufficientNodes("pole extrapolation needs at least 3 colatitude rings")
    s = f.spin_weight
    if pole == NORTH:
        idx = [0, 1, 2]
        u = 1.0 - np.cos(grid.theta[idx])
        phase = np.exp(1j * s * grid.phi)
    elif pole == SOUTH:
        n = grid.n_theta
        idx = [n - 1, n - 2, n - 3]
        u = 1.0 + np.cos(grid.theta[idx])
        phase = np.exp(-1j * s * grid.phi)
    else:
        raise ValueError(f"pole must be {NORTH!r} or {SOUTH!r}, got {pole!r}")
    rings = f.samples[idx, :] * phase[None, :]
    means = rings.mean(axis=1)
    # Lagrange weights for extrapolation to u = 0.
    w = np.empty(3)
    for k in range(3):
        others = [u[l] for l in range(3) if l != k]
        w[k] = (others[0] * others[1]) / ((others[0] - u[k]) * (others[1] - u[k]))
    limit = complex(np.dot(w, means))
    g0 = np.einsum("k,kp->p", w, rings)
    residual = float(np.abs(g0 - limit).max())
    return limit, residual


def write_grid_csv(f, path):
    """Write samples as CSV rows theta,phi,re,im with a one-line header."""
    lines = [f"# spin_weight={f.spin_weight} L={f.grid.band_limit} frame={f.frame}"]
    for it in range(f.grid.n_theta):
        th = fmt17(f.grid.theta[it])
        row = f.samples[it]
        for ip in range(f.grid.n_phi):
            lines.append(
                f"{th},{fmt17(f.grid.phi[ip])},{fmt17(row[ip].real)},{fmt17(row[ip].imag)}"
            )
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_grid_csv(path):
    """Inverse of write_grid_csv; nodes must match a Gauss-Legendre grid."""
    with open(path) as fh:
        header = fh.readline().strip()
        body = fh.read().split()
    if not header.startswith("# "):
        raise ValueError("missing header line")
    fields = dict(kv.split("=", 1) for kv in header[2:].split())
    try:
        s = int(fields["spin_weight"])
        L = int(fields["L"])
        frame = fields["frame"]
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed header {header!r}") from exc
    thetas, phis, res, ims = [], [], [], []
    for line in body:
        parts = line.split(",")
        if len(parts) != 4:
            raise ValueError(f"malformed row {line!r}")
        thetas.append(float(parts[0]))
        phis.append(float(parts[1]))
        res.append(float(parts[2]))
        ims.append(float(parts[3]))
    theta_nodes = sorted(set(thetas))
    phi_nodes = sorted(set(phis))
    n_theta, n_phi = len(theta_nodes), len(phi_nodes)
    if n_theta * n_phi != len(thetas):
        raise ValueError("rows do not form a complete product grid")
    grid = make_grid(L, n_theta=n_theta, n_phi=n_phi)
    if not (
        np.array_equal(grid.theta, np.array(theta_nodes))
        and np.array_equal(grid.phi, np.array(phi_nodes))
    ):
        raise ValueError("node layout does not match a Gauss-Legendre grid")
    if not (
        np.array_equal(np.array(thetas), np.repeat(theta_nodes, n_phi))
        and np.array_equal(np.array(phis), np.tile(phi_nodes, n_theta))
    ):
        raise ValueError("rows must be ordered colatitude-major")
    samples = (np.array(res) + 1j * np.array(ims)).reshape(n_theta, n_phi)
    return GridFunction(grid, s, samples, frame=frame)
