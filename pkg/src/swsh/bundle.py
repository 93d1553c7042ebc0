"""Polarization-bundle sections embedded in ambient tensor space.

A helicity-h state is represented as a tensor field on the sphere,
components in C^3 (|h|=1) or C^3 x C^3 (|h|=2), lying in the rank-one
fiber spanned by e_h = 2^{-|h|/2}(a +- i b)^{(x)|h|} for a tangent frame
(a, b).  This module builds those frames, embeds scalar spin-weighted
functions as sections, and realizes the split of the rotation generator
into a pointwise part (projected spin action) and a differential part
(projected orbital action), together with the finite-difference rotation
generator they are checked against.

Rank bookkeeping: the projector is slot-wise I - k k^T, the spin matrices
act per tensor slot, and the orbital operator differentiates ambient
components as ordinary scalars (spectrally) before projecting.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch, UnsupportedHelicity
from .grid import GridFunction, SphereGrid, standard_frame
from .modes import profile
from .transform import analyze

_STENCIL = ((2.0, -1.0), (1.0, 8.0), (-1.0, -8.0), (-2.0, 1.0))
ROTATION_STEP = 1e-4


@dataclass(frozen=True, eq=False)
class EmbeddedSection:
    """Ambient tensor samples of one helicity-h section.

    components has shape grid.shape + (3,)*|h|.  Transversality and
    rank-one fiber membership are properties of physical sections; they
    are measured by the residual helpers, not enforced here, because
    intermediate operator results carry small numerical violations.
    """

    grid: SphereGrid
    helicity: int
    components: np.ndarray

    def __post_init__(self):
        h = int(self.helicity)
        if abs(h) not in (1, 2):
            raise UnsupportedHelicity(f"|h| must be 1 or 2, got h={h}")
        object.__setattr__(self, "helicity", h)
        want = self.grid.shape + (3,) * abs(h)
        arr = np.ascontiguousarray(self.components, dtype=np.complex128)
        if arr.shape != want:
            raise GridMismatch(f"components shape {arr.shape} != {want}")
        arr.setflags(write=False)
        object.__setattr__(self, "components", arr)

    @property
    def rank(self):
        return abs(self.helicity)


@dataclass(frozen=True)
class VectorOperatorResult:
    """The three Cartesian components of a vector operator applied to a section."""

    x: EmbeddedSection
    y: EmbeddedSection
    z: EmbeddedSection

    def __getitem__(self, i):
        return (self.x, self.y, self.z)[i]


def frame_m_vector(frame, sign):
    """Null combination (a + i*sign*b)/sqrt(2) of a tangent frame."""
    return (frame.a_vec + 1j * sign * frame.b_vec) / math.sqrt(2.0)


def e_h_tensor(grid, h, frame=None):
    """Unit fiber tensor e_h on every node, shape grid.shape + (3,)*|h|."""
    if abs(h) not in (1, 2):
        raise UnsupportedHelicity(f"|h| must be 1 or 2, got h={h}")
    if frame is None:
        frame = standard_frame(grid)
    m = frame_m_vector(frame, +1 if h > 0 else -1)
    if abs(h) == 1:
        return m
    return m[..., :, None] * m[..., None, :]


def embed(f, frame=None):
    """Section f * e_h from a scalar of spin weight s = -h."""
    h = -f.spin_weight
    e = e_h_tensor(f.grid, h, frame=frame)
    extra = (None,) * abs(h)
    return EmbeddedSection(f.grid, h, f.samples[(..., *extra)] * e)


def extract(section, frame=None):
    """Scalar of spin weight -h recovered by contraction with conj(e_h)."""
    e = e_h_tensor(section.grid, section.helicity, frame=frame)
    axes = tuple(range(2, 2 + section.rank))
    vals = np.sum(np.conj(e) * section.components, axis=axes)
    return GridFunction(section.grid, -section.helicity, vals)


def _slot_contract_k(components, k_hat, slot, rank):
    """Contract one tensor slot with k_hat."""
    if rank == 1:
        return np.einsum("tpc,tpc->tp", components, k_hat)
    if slot == 0:
        return np.einsum("tpcd,tpc->tpd", components, k_hat)
    return np.einsum("tpcd,tpd->tpc", components, k_hat)


def _project_components(components, k_hat, rank):
    """Slot-wise transverse projector I - k k^T applied to every slot."""
    out = components
    for slot in range(rank):
        contr = _slot_contract_k(out, k_hat, slot, rank)
        if rank == 1:
            out = out - k_hat * contr[..., None]
        elif slot == 0:
            out = out - k_hat[..., :, None] * contr[..., None, :]
        else:
            out = out - k_hat[..., None, :] * contr[..., :, None]
    return out


def transversality_residual(section, frame=None):
    """Max over nodes and slots of |k_hat contracted into the section|."""
    if frame is None:
        frame = standard_frame(section.grid)
    k = frame.k_hat
    worst = 0.0
    for slot in range(section.rank):
        contr = _slot_contract_k(section.components, k, slot, section.rank)
        worst = max(worst, float(np.abs(contr).max()))
    return worst


def rank1_residual(section, frame=None):
    """Max deviation of the section from the line spanned by e_h."""
    f = extract(section, frame=frame)
    return float(
        np.abs(section.components - embed(f, frame=frame).components).max()
    )


def section_add(a, b):
    if a.grid is not b.grid and a.grid != b.grid:
        raise GridMismatch("sections live on different grids")
    if a.helicity != b.helicity:
        raise UnsupportedHelicity(
            f"helicities differ: {a.helicity} vs {b.helicity}"
        )
    return EmbeddedSection(a.grid, a.helicity, a.components + b.components)


def section_scale(c, a):
    return EmbeddedSection(a.grid, a.helicity, c * a.components)


def section_norm(section):
    """Quadrature L2 norm over nodes and tensor slots."""
    grid = section.grid
    axes = tuple(range(1, 1 + section.rank + 1))
    ring = np.sum(np.abs(section.components) ** 2, axis=axes)
    val = float(np.dot(grid.theta_weights, ring) * grid.phi_weight)
    return math.sqrt(max(val, 0.0))


_EPS = np.zeros((3, 3, 3))
for _a, _b, _c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS[_a, _b, _c] = 1.0
    _EPS[_a, _c, _b] = -1.0


def _spin_axis(components, axis_index, rank):
    """Spin matrix of one axis acting on every tensor slot: (S_a v)_b = -i eps_abc v_c."""
    s_mat = -1j * _EPS[axis_index]
    if rank == 1:
        return np.einsum("bc,tpc->tpb", s_mat, components)
    return np.einsum("bc,tpcd->tpbd", s_mat, components) + np.einsum(
        "bc,tpdc->tpdb", s_mat, components
    )


def apply_projected_spin(section, frame=None):
    """J_par: spin matrices per slot, then the transverse projector."""
    if frame is None:
        frame = standard_frame(section.grid)
    k = frame.k_hat
    rank = section.rank
    parts = []
    for a in range(3):
        raw = _spin_axis(section.components, a, rank)
        parts.append(
            EmbeddedSection(
                section.grid,
                section.helicity,
                _project_components(raw, k, rank),
            )
        )
    return VectorOperatorResult(*parts)


def _component_fields(components, rank):
    """Iterate (index, scalar field) over ambient tensor components."""
    if rank == 1:
        for c in range(3):
            yield (c,), components[..., c]
    else:
        for c in range(3):
            for d in range(3):
                yield (c, d), components[..., c, d]


def _spectral_derivatives(grid, field):
    """(d/dtheta, d/dphi) of one scalar field via its mode expansion."""
    coeffs = analyze(GridFunction(grid, 0, field))
    dth = np.zeros(grid.shape, dtype=np.complex128)
    dph = np.zeros(grid.shape, dtype=np.complex128)
    for (j, m), v in coeffs.sorted_items():
        ring = np.exp(1j * m * grid.phi)[None, :]
        dp = profile(0, j, m, grid.theta, order=1)
        dth += v * dp[:, None] * ring
        if m:
            p = profile(0, j, m, grid.theta)
            dph += (1j * m) * v * p[:, None] * ring
    return dth, dph


def apply_projected_orbital(section, frame=None, d_theta=None, d_phi=None):
    """J_perp: orbital differentiation of ambient components, then projection.

    Components are differentiated as ordinary scalar functions on the
    sphere, spectrally by default.  Callers holding closed-form
    derivatives (frame fields, say, whose raw components are not
    band-limited) may pass d_theta/d_phi arrays of the component shape
    to bypass the spectral step.
    """
    if frame is None:
        frame = standard_frame(section.grid)
    grid = section.grid
    rank = section.rank
    if (d_theta is None) != (d_phi is None):
        raise ValueError("pass both d_theta and d_phi or neither")
    if d_theta is None:
        d_theta = np.zeros_like(section.components)
        d_phi = np.zeros_like(section.components)
        for idx, field in _component_fields(section.components, rank):
            dth, dph = _spectral_derivatives(grid, field)
            d_theta[(..., *idx)] = dth
            d_phi[(..., *idx)] = dph
    else:
        d_theta = np.asarray(d_theta, dtype=np.complex128)
        d_phi = np.asarray(d_phi, dtype=np.complex128)
        if d_theta.shape != section.components.shape:
            raise GridMismatch("d_theta shape does not match components")
        if d_phi.shape != section.components.shape:
            raise GridMismatch("d_phi shape does not match components")
    inv_sin = 1.0 / np.sin(grid.theta)[:, None]
    dphi_over_sin = d_phi * inv_sin[(..., *((None,) * rank))]
    k = frame.k_hat
    # L = -i (e_phi d/dtheta - e_theta (1/sin) d/dphi), per Cartesian axis.
    e_th, e_ph = frame.a_vec, frame.b_vec
    parts = []
    extra = (None,) * rank
    for a in range(3):
        raw = -1j * (
            e_ph[(..., a, *extra)] * d_theta
            - e_th[(..., a, *extra)] * dphi_over_sin
        )
        parts.append(
            EmbeddedSection(
                section.grid,
                section.helicity,
                _project_components(raw, k, rank),
            )
        )
    return VectorOperatorResult(*parts)


def _unit_axis(axis):
    u = np.asarray(axis, dtype=np.float64)
    n = np.linalg.norm(u)
    if abs(n - 1.0) > 1e-8:
        raise ValueError(f"axis must be a unit vector, |axis| = {n}")
    return u / n


def _rotation_matrix(axis, angle):
    u = _unit_axis(axis)
    c, s = math.cos(angle), math.sin(angle)
    ux = np.array(
        [
            [0.0, -u[2], u[1]],
            [u[2], 0.0, -u[0]],
            [-u[1], u[0], 0.0],
        ]
    )
    return c * np.eye(3) + s * ux + (1.0 - c) * np.outer(u, u)


_resample_cache = {}


def _resample_matrix(grid, axis_key, angle):
    """Mode-synthesis matrix at the nodes pulled back by the rotation.

    Entry [(node), (j,m)] is the ordinary (spin-0) harmonic at
    R(axis, -angle) applied to the node direction, so that multiplying
    analysis coefficients by it resamples a scalar field on the rotated
    grid exactly when the field is band-limited.
    """
    key = (id(grid), grid.band_limit, axis_key, angle)
    mat = _resample_cache.get(key)
    if mat is not None:
        return mat
    rot = _rotation_matrix(axis_key, -angle)
    th = grid.theta[:, None]
    ph = grid.phi[None, :]
    st = np.sin(th)
    xyz = np.stack(
        [
            (st * np.cos(ph)).ravel(),
            (st * np.sin(ph)).ravel(),
            (np.cos(th) * np.ones_like(ph)).ravel(),
        ],
        axis=1,
    )
    pulled = xyz @ rot.T
    tp = np.arccos(np.clip(pulled[:, 2], -1.0, 1.0))
    pp = np.arctan2(pulled[:, 1], pulled[:, 0])
    L = grid.band_limit
    cols = []
    for j in range(L + 1):
        for m in range(-j, j + 1):
            cols.append(profile(0, j, m, tp) * np.exp(1j * m * pp))
    mat = np.stack(cols, axis=1)
    _resample_cache[key] = mat
    return mat


def _mode_vector(coeffs, band_limit):
    vec = np.zeros((band_limit + 1) ** 2, dtype=np.complex128)
    pos = 0
    for j in range(band_limit + 1):
        for m in range(-j, j + 1):
            vec[pos] = coeffs.get(j, m)
            pos += 1
    return vec


def _rotate_section_samples(section, axis_key, angle, comp_coeffs):
    """Components of R^angle section(R^-angle k) on the original nodes."""
    grid = section.grid
    mat = _resample_matrix(grid, axis_key, angle)
    pulled = np.empty_like(section.components)
    for idx, _ in _component_fields(section.components, section.rank):
        vals = mat @ comp_coeffs[idx]
        pulled[(..., *idx)] = vals.reshape(grid.shape)
    rot = _rotation_matrix(axis_key, angle)
    if section.rank == 1:
        return np.einsum("bc,tpc->tpb", rot, pulled)
    return np.einsum("bc,de,tpce->tpbd", rot, rot, pulled)


def apply_J_rotation(section, axis):
    """Rotation generator i d/dpsi at psi=0 of the pulled-back rotated section.

    Fourth-order central stencil in the rotation angle with step
    ROTATION_STEP; resampling is spectral, so it is exact for
    band-limited sections.
    """
    axis = _unit_axis(axis)
    axis_key = tuple(float(v) for v in axis)
    grid = section.grid
    comp_coeffs = {
        idx: _mode_vector(analyze(GridFunction(grid, 0, field)), grid.band_limit)
        for idx, field in _component_fields(section.components, section.rank)
    }
    delta = ROTATION_STEP
    acc = np.zeros_like(section.components)
    for mult, weight in _STENCIL:
        acc += weight * _rotate_section_samples(
            section, axis_key, mult * delta, comp_coeffs
        )
    generator = 1j * acc / (12.0 * delta)
    return EmbeddedSection(grid, section.helicity, generator)


def commutator_report(h, test_sections, floor=0.1):
    """Residuals of the nonstandard commutators over a batch of sections.

    All residuals are relative to each section's norm (zero sections
    contribute zero).  The two defect entries witness that the would-be
    standard SO(3) relations fail: they are expected to EXCEED the floor
    on at least one section, and the report records the largest observed
    value together with the floor used.
    """
    if abs(h) not in (1, 2):
        raise UnsupportedHelicity(f"|h| must be 1 or 2, got h={h}")
    test_sections = list(test_sections)
    pairs = ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    worst = {"par_par": 0.0, "perp_par": 0.0, "perp_perp": 0.0}
    defect = {"par": 0.0, "perp": 0.0}
    for section in test_sections:
        if section.helicity != h:
            raise UnsupportedHelicity(
                f"section helicity {section.helicity} does not match h={h}"
            )
        nrm = section_norm(section)
        if nrm == 0.0:
            continue
        par = apply_projected_spin(section)
        perp = apply_projected_orbital(section)
        par_of_perp = [apply_projected_spin(perp[i]) for i in range(3)]
        perp_of_par = [apply_projected_orbital(par[i]) for i in range(3)]
        perp_of_perp = [apply_projected_orbital(perp[i]) for i in range(3)]
        par_of_par = [apply_projected_spin(par[i]) for i in range(3)]
        for a, b, c in pairs:
            # [J_par_a, J_par_b] = 0, defect against i eps J_par_c
            comm = par_of_par[b][a].components - par_of_par[a][b].components
            worst["par_par"] = max(
                worst["par_par"], _comp_norm(section.grid, comm, section.rank) / nrm
            )
            d = comm - 1j * par[c].components
            defect["par"] = max(
                defect["par"], _comp_norm(section.grid, d, section.rank) / nrm
            )
            # [J_perp_a, J_par_b] = i eps J_par_c
            comm = perp_of_par[b][a].components - par_of_perp[a][b].components
            r = comm - 1j * par[c].components
            worst["perp_par"] = max(
                worst["perp_par"], _comp_norm(section.grid, r, section.rank) / nrm
            )
            # [J_perp_a, J_perp_b] = i eps (J_perp_c - J_par_c)
            comm = perp_of_perp[b][a].components - perp_of_perp[a][b].components
            r = comm - 1j * (perp[c].components - par[c].components)
            worst["perp_perp"] = max(
                worst["perp_perp"], _comp_norm(section.grid, r, section.rank) / nrm
            )
            d = comm - 1j * perp[c].components
            defect["perp"] = max(
                defect["perp"], _comp_norm(section.grid, d, section.rank) / nrm
            )
    return {
        "h": h,
        "n_sections": len(test_sections),
        "identity_residuals": worst,
        "defects": defect,
        "defect_floor": floor,
        "defects_exceed_floor": bool(
            defect["par"] >= floor and defect["perp"] >= floor
        ),
    }


def _comp_norm(grid, components, rank):
    axes = tuple(range(1, 1 + rank + 1))
    ring = np.sum(np.abs(components) ** 2, axis=axes)
    return math.sqrt(max(float(np.dot(grid.theta_weights, ring) * grid.phi_weight), 0.0))
