"""Forward and inverse transforms between grid samples and mode coefficients.

Both directions are direct dense transforms, separable in the azimuth:
a plain DFT over phi followed by colatitude quadrature per m, O(L^3)
overall.  Accumulation order is fixed (ascending j, then ascending m,
then colatitude node) so repeated runs produce identical bytes.

Coefficients with magnitude below 1e-13 are stored as exact zeros,
which keeps the sparse entry maps clean.
"""

import json
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from .errors import BandLimitExceeded
from .grid import GridFunction
from .modes import profile, validate_mode
from .serial import json_dumps

COEFF_CLIP = 1e-13


@dataclass(frozen=True, eq=False)
class CoefficientSet:
    """Sparse mode coefficients of one spin-weighted function.

    entries maps (j, m) to a complex amplitude; keys satisfy
    |s| <= j <= band_limit and |m| <= j.  Missing keys mean zero.
    """

    spin_weight: int
    band_limit: int
    entries: "MappingProxyType"

    def __post_init__(self):
        s = int(self.spin_weight)
        L = int(self.band_limit)
        if L < abs(s):
            raise ValueError(f"band limit {L} is below |spin weight| {abs(s)}")
        clean = {}
        for (j, m), v in self.entries.items():
            validate_mode(s, j, m)
            if j > L:
                raise BandLimitExceeded(f"entry j={j} exceeds band limit {L}")
            v = complex(v)
            if abs(v) >= COEFF_CLIP:
                clean[(int(j), int(m))] = v
        object.__setattr__(self, "spin_weight", s)
        object.__setattr__(self, "band_limit", L)
        object.__setattr__(self, "entries", MappingProxyType(clean))

    def get(self, j, m):
        return self.entries.get((j, m), 0j)

    def sorted_items(self):
        return sorted(self.entries.items())

    def __eq__(self, other):
        if not isinstance(other, CoefficientSet):
            return NotImplemented
        return (
            self.spin_weight == other.spin_weight
            and self.band_limit == other.band_limit
            and dict(self.entries) == dict(other.entries)
        )

    __hash__ = None


def coefficient_set(spin_weight, band_limit, entries=None):
    return CoefficientSet(spin_weight, band_limit, dict(entries or {}))


def analyze(f, band_limit=None):
    """Project a grid function onto the mode basis up to the band limit."""
    grid = f.grid
    L = grid.band_limit if band_limit is None else int(band_limit)
    if L > grid.band_limit:
        raise BandLimitExceeded(
            f"analysis band limit {L} exceeds grid band limit {grid.band_limit}"
        )
    s = f.spin_weight
    if L < abs(s):
        return coefficient_set(s, abs(s))
    ms = np.arange(-L, L + 1)
    # Azimuthal DFT: ring_modes[t, k] = sum_p f[t,p] exp(-i m_k phi_p) dphi
    dft = np.exp(-1j * np.outer(grid.phi, ms))
    ring_modes = (f.samples @ dft) * grid.phi_weight
    w = grid.theta_weights
    entries = {}
    for j in range(abs(s), L + 1):
        for m in range(-j, j + 1):
            p = profile(s, j, m, grid.theta)
            a = complex(np.dot(w * p, ring_modes[:, m + L]))
            if abs(a) >= COEFF_CLIP:
                entries[(j, m)] = a
    return CoefficientSet(s, L, entries)


def synthesize(c, grid):
    """Evaluate the mode sum on every node of the grid."""
    if c.band_limit > grid.band_limit:
        raise BandLimitExceeded(
            f"coefficient band limit {c.band_limit} exceeds grid band limit"
            f" {grid.band_limit}"
        )
    out = np.zeros(grid.shape, dtype=np.complex128)
    for (j, m), v in c.sorted_items():
        p = profile(c.spin_weight, j, m, grid.theta)
        out += v * p[:, None] * np.exp(1j * m * grid.phi)[None, :]
    return GridFunction(grid, c.spin_weight, out)


def mode_counts(spin_weight, j_max):
    """Number of independent modes at each j up to j_max."""
    s = abs(int(spin_weight))
    return {j: (2 * j + 1 if j >= s else 0) for j in range(int(j_max) + 1)}


def coefficients_to_json(c):
    payload = {
        "spin_weight": c.spin_weight,
        "band_limit": c.band_limit,
        "entries": [
            {"j": j, "m": m, "re": v.real, "im": v.imag}
            for (j, m), v in c.sorted_items()
        ],
    }
    return json_dumps(payload)


def coefficients_from_json(text):
    payload = json.loads(text)
    try:
        s = payload["spin_weight"]
        L = payload["band_limit"]
        entries = {
            (e["j"], e["m"]): complex(e["re"], e["im"]) for e in payload["entries"]
        }
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed coefficient JSON: {exc}") from exc
    return coefficient_set(s, L, entries)


def write_coefficients_json(c, path):
    with open(path, "w", newline="\n") as fh:
        fh.write(coefficients_to_json(c) + "\n")


def read_coefficients_json(path):
    with open(path) as fh:
        return coefficients_from_json(fh.read())
