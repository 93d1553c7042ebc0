"""Integer bookkeeping of rotation-group multiplets.

Spectra are multisets of irreducibles V_j recorded as multiplicity maps.
A spectrum either describes a complete (finite-support, exact
everywhere) collection, j_max = None, or is the truncation of an
infinite tower, exact only for j <= j_max and unspecified above.  Tensor
products track that soundness window explicitly so cutoff artifacts can
never masquerade as structure; see spectrum_tensor.

factor_search answers: which orbital spectra O satisfy
V_a (x) O = target on the sound window?  It peels constraints from the
lowest unresolved j upward with bounded backtracking, which is exact for
the bounded multiplicities searched here.
"""

from dataclasses import dataclass
from types import MappingProxyType

from .errors import NegativeSpin, SearchBudgetExceeded
from .serial import json_dumps


@dataclass(frozen=True, eq=False)
class MultipletSpectrum:
    """Multiplicity map j -> count; j_max = None means exact everywhere."""

    multiplicities: "MappingProxyType"
    j_max: "int | None" = None

    def __post_init__(self):
        clean = {}
        for j, count in self.multiplicities.items():
            j = int(j)
            count = int(count)
            if j < 0:
                raise ValueError(f"multiplet label j={j} is negative")
            if count < 0:
                raise ValueError(f"multiplicity of j={j} is negative: {count}")
            if count:
                clean[j] = count
        j_max = self.j_max
        if j_max is not None:
            j_max = int(j_max)
            bad = [j for j in clean if j > j_max]
            if bad:
                raise ValueError(f"entries above cutoff j_max={j_max}: {sorted(bad)}")
        object.__setattr__(self, "multiplicities", MappingProxyType(clean))
        object.__setattr__(self, "j_max", j_max)

    @property
    def complete(self):
        return self.j_max is None

    def multiplicity(self, j):
        if self.j_max is not None and j > self.j_max:
            raise ValueError(
                f"spectrum is unspecified above its cutoff j_max={self.j_max}"
            )
        return self.multiplicities.get(j, 0)

    def dimension(self):
        """Total dimension of the stored window."""
        return sum((2 * j + 1) * c for j, c in self.multiplicities.items())

    def max_j(self):
        return max(self.multiplicities, default=-1)

    def sorted_items(self):
        return sorted(self.multiplicities.items())

    def __eq__(self, other):
        if not isinstance(other, MultipletSpectrum):
            return NotImplemented
        return (
            self.j_max == other.j_max
            and dict(self.multiplicities) == dict(other.multiplicities)
        )

    __hash__ = None


def spectrum(multiplicities, j_max=None):
    return MultipletSpectrum(dict(multiplicities), j_max)


def tensor_decompose(a, b):
    """V_a (x) V_b = V_|a-b| + ... + V_(a+b), each once."""
    for name, val in (("a", a), ("b", b)):
        if val != int(val):
            raise ValueError(f"{name}={val!r} is not an integer")
        if val < 0:
            raise NegativeSpin(f"{name}={val} is negative")
    a, b = int(a), int(b)
    return spectrum({j: 1 for j in range(abs(a - b), a + b + 1)})


def spectrum_tensor(sa, sb):
    """Multiplicity convolution of two spectra with a sound cutoff.

    A truncated factor is only known up to its cutoff, and each
    multiplet V_k of the other factor smears content by +-k in j, so the
    product is certain only up to (cutoff - largest partner spin).  The
    result carries the tightest such window; both factors complete gives
    a complete result.
    """
    if sa.complete and sb.complete:
        cutoff = None
    else:
        bounds = []
        if sa.j_max is not None:
            bounds.append(sa.j_max - sb.max_j())
        if sb.j_max is not None:
            bounds.append(sb.j_max - sa.max_j())
        cutoff = min(bounds)
    out = {}
    for ja, ca in sa.multiplicities.items():
        for jb, cb in sb.multiplicities.items():
            for j in range(abs(ja - jb), ja + jb + 1):
                if cutoff is not None and j > cutoff:
                    continue
                out[j] = out.get(j, 0) + ca * cb
    if cutoff is not None and cutoff < -1:
        cutoff = -1
    return spectrum(out, cutoff)


def massless_spectrum(h, j_max):
    """One multiplet per j >= |h|: V_|h| + V_(|h|+1) + ..., truncated."""
    if h != int(h):
        raise ValueError(f"h={h!r} is not an integer")
    h = abs(int(h))
    j_max = int(j_max)
    if j_max < h:
        raise ValueError(f"j_max={j_max} is below |h|={h}")
    return spectrum({j: 1 for j in range(h, j_max + 1)}, j_max)


def massive_spectrum(s, j_max):
    """Massive spin-s tower: (2j+1) V_j below j=s, then (2s+1) V_j, truncated."""
    if s != int(s):
        raise ValueError(f"s={s!r} is not an integer")
    if s < 0:
        raise NegativeSpin(f"s={s} is negative")
    s = int(s)
    j_max = int(j_max)
    if j_max < 0:
        raise ValueError(f"j_max={j_max} is negative")
    return spectrum(
        {j: (2 * j + 1 if j < s else 2 * s + 1) for j in range(j_max + 1)}, j_max
    )


def factor_search(target, a, l_max=None, max_mult=3, branch_limit=64):
    """All orbital spectra O with V_a (x) O = target, multiplicities <= max_mult.

    For a truncated target the equation is enforced on the sound window
    min(target cutoff, l_max - a); orbital content that cannot influence
    the window is canonically zero.  For a complete target the equation
    is enforced everywhere.  Peels from the lowest deficient j upward,
    branching only when a value is genuinely undetermined; more than
    branch_limit such branch points raises SearchBudgetExceeded.

    Returns complete spectra, deterministically ordered.
    """
    if a != int(a):
        raise ValueError(f"a={a!r} is not an integer")
    if a < 0:
        raise NegativeSpin(f"a={a} is negative")
    a = int(a)
    if not isinstance(target, MultipletSpectrum):
        raise TypeError("target must be a MultipletSpectrum")
    if max_mult < 1:
        raise ValueError(f"max_mult must be positive, got {max_mult}")

    if target.complete:
        if l_max is None:
            l_max = target.max_j() + a
        l_top = int(l_max)
        window = l_top + a
    else:
        if l_max is None:
            l_max = target.j_max + a
        window = min(target.j_max, int(l_max) - a)
        l_top = min(int(l_max), window + a)
    if l_top < 0 or window < 0:
        return []
    if target.complete and target.max_j() > window:
        return []  # content beyond what any admitted orbital factor can reach

    want = [target.multiplicities.get(j, 0) for j in range(window + 1)]
    supply = [0] * (window + 1)
    assigned = {}
    solutions = []
    budget = {"branches": 0}

    def covered(l):
        # the j values V_a (x) V_l contributes to, clipped to the window
        lo = max(abs(l - a), 0)
        hi = min(l + a, window)
        return range(lo, hi + 1)

    def coverers(j):
        # the l values able to contribute at j
        lo = max(0, j - a, a - j)
        return range(lo, min(j + a, l_top) + 1)

    def viable_values(l0):
        # upper bound: never overshoot any covered j; lower bound: leave
        # no covered j short of what the other undecided coverers can
        # still supply.  Equal bounds mean the value is forced.
        ub = max_mult
        lb = 0
        for j in covered(l0):
            gap = want[j] - supply[j]
            ub = min(ub, gap)
            slack = sum(
                max_mult for l in coverers(j) if l != l0 and l not in assigned
            )
            lb = max(lb, gap - slack)
        if lb > ub:
            return []
        return range(max(lb, 0), ub + 1)

    def recurse():
        j_star = next(
            (j for j in range(window + 1) if supply[j] < want[j]), None
        )
        if j_star is None:
            solutions.append(dict(assigned))
            return
        candidates = [l for l in coverers(j_star) if l not in assigned]
        if not candidates:
            return
        l0 = candidates[0]
        vals = list(viable_values(l0))
        if len(vals) > 1:
            budget["branches"] += 1
            if budget["branches"] > branch_limit:
                raise SearchBudgetExceeded(
                    f"factor search exceeded {branch_limit} branch points"
                )
        for v in vals:
            assigned[l0] = v
            for j in covered(l0):
                supply[j] += v
            recurse()
            for j in covered(l0):
                supply[j] -= v
            del assigned[l0]

    recurse()
    results = [
        spectrum({l: v for l, v in sol.items() if v})
        for sol in solutions
    ]
    results.sort(key=lambda sp: tuple(sp.sorted_items()))
    return results


def spectrum_to_json(sp):
    payload = {
        "j_max": sp.j_max if sp.j_max is not None else sp.max_j(),
        "multiplicities": {str(j): c for j, c in sp.sorted_items()},
    }
    return json_dumps(payload)
